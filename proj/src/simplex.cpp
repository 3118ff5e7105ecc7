//
// gmrelax - Copyright 2026 The gmrelax Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "gmrelax/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace gmrelax {

namespace {

using Tableau = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

constexpr double kInf = std::numeric_limits<double>::infinity();

// How an original variable is expressed through nonnegative columns.
struct VarMap {
  enum Kind { shift, negate, split } kind = shift;
  Eigen::Index col = -1;   // primary column
  Eigen::Index col2 = -1;  // negative part for split
  double offset = 0.0;
};

class Solver {
 public:
  // `m` is the initial tableau [A | b]; its columns are the fixed reference
  // from which the working tableau is periodically rebuilt.
  Solver(Tableau m, std::vector<Eigen::Index> basis, Eigen::Index structural,
         const SimplexOptions& opt)
      : m_(m), t_(std::move(m)), basis_(std::move(basis)), structural_(structural),
        opt_(opt) {}

  // Maximizes cost^T y over columns [0, allowed). Returns false if unbounded.
  //
  // Pivots follow Dantzig's rule (largest reduced cost, largest pivot on
  // ratio ties) until a run of degenerate pivots starts; from then on
  // Bland's rule is used until the objective moves again. Every
  // non-degenerate pivot strictly improves the objective, so no basis can
  // repeat and the method cannot cycle.
  bool optimize(const Eigen::RowVectorXd& cost, Eigen::Index allowed) {
    cost_ = cost;
    refresh();
    int degenerate = 0;
    for (;;) {
      const bool bland = degenerate >= kBlandAfter;
      Eigen::Index enter = -1;
      for (Eigen::Index j = 0; j < allowed; ++j) {
        if (reduced_(j) <= opt_.cost_tol) continue;
        if (enter < 0 || (!bland && reduced_(j) > reduced_(enter))) enter = j;
        if (bland) break;
      }
      if (enter < 0) {
        // Accept optimality only on a freshly rebuilt tableau.
        if (since_refresh_ == 0) return true;
        refresh();
        continue;
      }
      const Eigen::Index leave = ratio_test(enter, bland);
      if (leave < 0) {
        if (since_refresh_ == 0) return false;
        refresh();
        continue;
      }
      const double step = t_(leave, t_.cols() - 1);
      degenerate = step > 0.0 ? 0 : degenerate + 1;
      pivot(leave, enter);
      if (since_refresh_ >= kRefreshInterval) refresh();
    }
  }

  // Smallest ratio; ties go to the smallest basic column index under Bland,
  // otherwise to the largest pivot element.
  Eigen::Index ratio_test(Eigen::Index enter, bool bland) const {
    const Eigen::Index rhs = t_.cols() - 1;
    Eigen::Index leave = -1;
    double best = kInf;
    for (Eigen::Index r = 0; r < t_.rows(); ++r) {
      const double a = t_(r, enter);
      if (a <= opt_.pivot_tol) continue;
      const double ratio = t_(r, rhs) / a;
      if (leave < 0) {
        best = ratio;
        leave = r;
        continue;
      }
      const double slack = 1e-12 * (1.0 + std::abs(best));
      if (ratio < best - slack) {
        best = ratio;
        leave = r;
      } else if (ratio <= best + slack) {
        const bool better =
            bland ? basis_[static_cast<std::size_t>(r)] < basis_[static_cast<std::size_t>(leave)]
                  : a > t_(leave, enter);
        if (better) {
          best = std::min(best, ratio);
          leave = r;
        }
      }
    }
    return leave;
  }

  void pivot(Eigen::Index r, Eigen::Index j) {
    if (++pivots_ > opt_.max_pivots)
      throw std::runtime_error("simplex: pivot limit exhausted");
    const Eigen::Index cols = t_.cols() - 1;
    t_.row(r) /= t_(r, j);
    for (Eigen::Index i = 0; i < t_.rows(); ++i) {
      if (i == r) continue;
      const double f = t_(i, j);
      if (f != 0.0) t_.row(i) -= f * t_.row(r);
    }
    if (reduced_.size() == cols) {
      const double f = reduced_(j);
      if (f != 0.0) reduced_ -= f * t_.row(r).head(cols);
    }
    basis_[static_cast<std::size_t>(r)] = j;
    clean();
    ++since_refresh_;
  }

  // Drives artificial columns (index >= structural) out of the basis after
  // phase I. A row whose structural entries all vanish is redundant; its
  // artificial stays basic at level zero and never re-enters.
  void purge_artificials() {
    reduced_.resize(0);
    for (Eigen::Index r = 0; r < t_.rows(); ++r) {
      if (basis_[static_cast<std::size_t>(r)] < structural_) continue;
      Eigen::Index best = -1;
      for (Eigen::Index j = 0; j < structural_; ++j)
        if (std::abs(t_(r, j)) > opt_.pivot_tol &&
            (best < 0 || std::abs(t_(r, j)) > std::abs(t_(r, best)) * 10.0))
          best = j;
      if (best >= 0) pivot(r, best);
    }
    rebuild();
  }

  Eigen::VectorXd basic_solution(Eigen::Index ncols) const {
    Eigen::VectorXd y = Eigen::VectorXd::Zero(ncols);
    const Eigen::Index rhs = t_.cols() - 1;
    for (Eigen::Index r = 0; r < t_.rows(); ++r) {
      const Eigen::Index b = basis_[static_cast<std::size_t>(r)];
      if (b < ncols) y(b) = t_(r, rhs);
    }
    return y;
  }

  int pivots() const { return pivots_; }

 private:
  static constexpr int kRefreshInterval = 50;
  static constexpr int kBlandAfter = 8;

  // T = B^-1 M for the current basis, removing accumulated round-off.
  void rebuild() {
    const auto m = static_cast<Eigen::Index>(basis_.size());
    if (m == 0) {
      t_ = m_;
      since_refresh_ = 0;
      return;
    }
    Eigen::MatrixXd b(m, m);
    for (Eigen::Index c = 0; c < m; ++c) b.col(c) = m_.col(basis_[static_cast<std::size_t>(c)]);
    t_ = Eigen::PartialPivLU<Eigen::MatrixXd>(b).solve(Eigen::MatrixXd(m_));
    for (Eigen::Index c = 0; c < m; ++c) {
      t_.col(basis_[static_cast<std::size_t>(c)]).setZero();
      t_(c, basis_[static_cast<std::size_t>(c)]) = 1.0;
    }
    clean();
    since_refresh_ = 0;
  }

  void refresh() {
    rebuild();
    const Eigen::Index cols = t_.cols() - 1;
    reduced_ = cost_;
    for (Eigen::Index r = 0; r < t_.rows(); ++r) {
      const double cb = cost_(basis_[static_cast<std::size_t>(r)]);
      if (cb != 0.0) reduced_ -= cb * t_.row(r).head(cols);
    }
  }

  // Flushes round-off: tiny entries to zero, and keeps the basic solution
  // nonnegative so the ratio test never sees a spurious negative rhs.
  void clean() {
    const Eigen::Index cols = t_.cols() - 1;
    for (Eigen::Index i = 0; i < t_.rows(); ++i) {
      auto row = t_.row(i);
      row = (row.array().abs() < 1e-12).select(0.0, row);
      if (row(cols) < 0.0 && row(cols) > -opt_.feasibility_tol) row(cols) = 0.0;
    }
  }

  Tableau m_;
  Tableau t_;
  std::vector<Eigen::Index> basis_;
  Eigen::Index structural_;
  SimplexOptions opt_;
  Eigen::RowVectorXd cost_;
  Eigen::RowVectorXd reduced_;
  int pivots_ = 0;
  int since_refresh_ = 0;
};

}  // namespace

LpSolution simplex_lp(const LinearProgram& lp, const SimplexOptions& opt) {
  const Eigen::Index nvar = lp.objective.size();
  const Eigen::Index nrow = lp.equality_matrix.rows();
  if (lp.equality_matrix.cols() != nvar && nrow > 0)
    throw std::invalid_argument("simplex: constraint matrix width != variable count");
  if (lp.equality_rhs.size() != nrow)
    throw std::invalid_argument("simplex: rhs length != constraint count");
  if ((lp.lower.size() != 0 && lp.lower.size() != nvar) ||
      (lp.upper.size() != 0 && lp.upper.size() != nvar))
    throw std::invalid_argument("simplex: bound vector length != variable count");
  if (!lp.objective.allFinite() || !lp.equality_matrix.allFinite() ||
      !lp.equality_rhs.allFinite())
    throw std::invalid_argument("simplex: non-finite data");

  const Eigen::VectorXd lower =
      lp.lower.size() ? lp.lower : Eigen::VectorXd::Zero(nvar);
  const Eigen::VectorXd upper =
      lp.upper.size() ? lp.upper : Eigen::VectorXd::Constant(nvar, kInf);

  // Column layout: mapped variables, then upper-bound slacks.
  std::vector<VarMap> map(static_cast<std::size_t>(nvar));
  std::vector<Eigen::Index> bounded;  // variables needing an upper-bound row
  Eigen::Index ncols = 0;
  for (Eigen::Index j = 0; j < nvar; ++j) {
    const double lo = lower(j), hi = upper(j);
    if (std::isnan(lo) || std::isnan(hi) || lo == kInf || hi == -kInf || lo > hi)
      throw std::invalid_argument("simplex: invalid bounds");
    auto& m = map[static_cast<std::size_t>(j)];
    if (std::isfinite(lo)) {
      m = {VarMap::shift, ncols++, -1, lo};
      if (std::isfinite(hi)) bounded.push_back(j);
    } else if (std::isfinite(hi)) {
      m = {VarMap::negate, ncols++, -1, hi};
    } else {
      m = {VarMap::split, ncols, ncols + 1, 0.0};
      ncols += 2;
    }
  }
  const Eigen::Index nslack = static_cast<Eigen::Index>(bounded.size());
  const Eigen::Index structural = ncols + nslack;
  const Eigen::Index rows = nrow + nslack;

  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(rows, structural);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(rows);
  Eigen::RowVectorXd cost = Eigen::RowVectorXd::Zero(structural);
  for (Eigen::Index j = 0; j < nvar; ++j) {
    const auto& m = map[static_cast<std::size_t>(j)];
    const double sign = m.kind == VarMap::negate ? -1.0 : 1.0;
    if (nrow > 0) {
      a.col(m.col).head(nrow) = sign * lp.equality_matrix.col(j);
      if (m.kind == VarMap::split) a.col(m.col2).head(nrow) = -lp.equality_matrix.col(j);
      b.head(nrow) -= m.offset * lp.equality_matrix.col(j);
    }
    cost(m.col) = sign * lp.objective(j);
    if (m.kind == VarMap::split) cost(m.col2) = -lp.objective(j);
  }
  if (nrow > 0) b.head(nrow) += lp.equality_rhs;
  for (Eigen::Index s = 0; s < nslack; ++s) {
    const Eigen::Index j = bounded[static_cast<std::size_t>(s)];
    const auto& m = map[static_cast<std::size_t>(j)];
    a(nrow + s, m.col) = 1.0;
    a(nrow + s, ncols + s) = 1.0;
    b(nrow + s) = upper(j) - lower(j);
  }
  Eigen::MatrixXd a_full;
  Eigen::VectorXd b_full;
  for (Eigen::Index r = 0; r < rows; ++r) {
    if (b(r) < 0) {
      a.row(r) *= -1.0;
      b(r) = -b(r);
    }
  }

  // Keep a maximal independent set of rows (rank-revealing QR on A^T) so
  // every basis is square and nonsingular. Consistency of the dropped rows
  // is checked on the final point.
  {
    const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a.transpose());
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < qr.rank(); ++i) keep.push_back(qr.colsPermutation().indices()(i));
    std::sort(keep.begin(), keep.end());
    Eigen::MatrixXd ak(static_cast<Eigen::Index>(keep.size()), structural);
    Eigen::VectorXd bk(static_cast<Eigen::Index>(keep.size()));
    for (std::size_t i = 0; i < keep.size(); ++i) {
      ak.row(static_cast<Eigen::Index>(i)) = a.row(keep[i]);
      bk(static_cast<Eigen::Index>(i)) = b(keep[i]);
    }
    a_full = std::move(a);
    b_full = std::move(b);
    a = std::move(ak);
    b = std::move(bk);
  }
  const Eigen::Index kept = a.rows();

  // Reuse unit columns as the starting basis; cover remaining rows with
  // artificial columns.
  std::vector<Eigen::Index> basis(static_cast<std::size_t>(kept), -1);
  for (Eigen::Index j = 0; j < structural; ++j) {
    Eigen::Index hit = -1;
    int nonzeros = 0;
    for (Eigen::Index r = 0; r < kept && nonzeros < 2; ++r) {
      if (a(r, j) != 0.0) {
        ++nonzeros;
        hit = r;
      }
    }
    if (nonzeros == 1 && a(hit, j) == 1.0 && basis[static_cast<std::size_t>(hit)] < 0)
      basis[static_cast<std::size_t>(hit)] = j;
  }
  Eigen::Index nart = 0;
  for (auto bi : basis)
    if (bi < 0) ++nart;

  const Eigen::Index total = structural + nart;
  Tableau t = Tableau::Zero(kept, total + 1);
  t.leftCols(structural) = a;
  t.col(total) = b;
  {
    Eigen::Index next = structural;
    for (Eigen::Index r = 0; r < kept; ++r) {
      if (basis[static_cast<std::size_t>(r)] < 0) {
        t(r, next) = 1.0;
        basis[static_cast<std::size_t>(r)] = next++;
      }
    }
  }

  Solver solver(std::move(t), std::move(basis), structural, opt);
  LpSolution out;
  if (nart > 0) {
    Eigen::RowVectorXd phase1 = Eigen::RowVectorXd::Zero(total);
    phase1.tail(nart).setConstant(-1.0);
    solver.optimize(phase1, total);
    const Eigen::VectorXd y = solver.basic_solution(total);
    if (y.tail(nart).sum() > opt.feasibility_tol * std::max(1.0, b.cwiseAbs().maxCoeff())) {
      out.status = LpStatus::infeasible;
      out.pivots = solver.pivots();
      return out;
    }
    solver.purge_artificials();
  }

  Eigen::RowVectorXd phase2 = Eigen::RowVectorXd::Zero(total);
  phase2.head(structural) = cost;
  if (!solver.optimize(phase2, structural)) {
    out.status = LpStatus::unbounded;
    out.pivots = solver.pivots();
    return out;
  }

  const Eigen::VectorXd y = solver.basic_solution(total);
  out.pivots = solver.pivots();
  const Eigen::VectorXd ys = y.head(structural);
  const double scale = std::max(1.0, b_full.cwiseAbs().maxCoeff());
  if ((a * ys - b).cwiseAbs().maxCoeff() > opt.feasibility_tol * scale || ys.minCoeff() < -opt.feasibility_tol)
    throw std::runtime_error("simplex: numerical breakdown, final point violates the kept constraints");
  if ((a_full * ys - b_full).cwiseAbs().maxCoeff() > opt.feasibility_tol * scale) {
    out.status = LpStatus::infeasible;  // a dropped row is inconsistent
    return out;
  }
  out.x.resize(nvar);
  for (Eigen::Index j = 0; j < nvar; ++j) {
    const auto& m = map[static_cast<std::size_t>(j)];
    switch (m.kind) {
      case VarMap::shift: out.x(j) = m.offset + y(m.col); break;
      case VarMap::negate: out.x(j) = m.offset - y(m.col); break;
      case VarMap::split: out.x(j) = y(m.col) - y(m.col2); break;
    }
  }
  out.value = lp.objective.dot(out.x);
  out.status = LpStatus::optimal;
  out.pivots = solver.pivots();
  return out;
}

}  // namespace gmrelax
