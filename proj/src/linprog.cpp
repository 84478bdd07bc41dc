#include "visicut/linprog.hpp"

#include <algorithm>
#include <cmath>

#include "visicut/error.hpp"

namespace visicut::lp {

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kCostTol = 1e-10;
constexpr double kFeasTol = 1e-9;

// How an original variable is expressed through nonnegative columns.
struct VarMap {
  enum class Kind { Shift, Mirror, Split } kind = Kind::Shift;
  double offset = 0.0;
  int col = -1;
  int col_neg = -1;
};

struct StdRow {
  std::vector<double> a;  // over structural columns
  bool greater = false;   // a y >= b, else a y <= b
  double b = 0.0;
};

class Tableau {
 public:
  Tableau(const std::vector<StdRow>& rows, int structural) : m_(static_cast<int>(rows.size())), structural_(structural) {
    int slacks = 0;
    int artificials = 0;
    for (const auto& r : rows) {
      ++slacks;
      if (r.greater) ++artificials;
    }
    first_art_ = structural_ + slacks;
    cols_ = first_art_ + artificials;
    t_.assign(static_cast<std::size_t>(m_) * (cols_ + 1), 0.0);
    basis_.assign(static_cast<std::size_t>(m_), -1);
    int art = first_art_;
    for (int i = 0; i < m_; ++i) {
      const auto& r = rows[static_cast<std::size_t>(i)];
      for (int j = 0; j < structural_; ++j) at(i, j) = r.a[static_cast<std::size_t>(j)];
      rhs(i) = r.b;
      if (r.greater) {
        at(i, structural_ + i) = -1.0;
        at(i, art) = 1.0;
        basis_[static_cast<std::size_t>(i)] = art++;
      } else {
        at(i, structural_ + i) = 1.0;
        basis_[static_cast<std::size_t>(i)] = structural_ + i;
      }
    }
    active_.assign(static_cast<std::size_t>(m_), true);
  }

  double& at(int i, int j) { return t_[static_cast<std::size_t>(i) * (cols_ + 1) + j]; }
  double at(int i, int j) const { return t_[static_cast<std::size_t>(i) * (cols_ + 1) + j]; }
  double& rhs(int i) { return at(i, cols_); }
  double rhs(int i) const { return at(i, cols_); }

  bool has_artificials() const { return first_art_ < cols_; }

  // Minimizes cost^T z over columns [0, limit). Returns Optimal, Unbounded or NumericalFailure.
  Status optimize(const std::vector<double>& cost, int limit, int& pivots) {
    const int max_iter = 50 * (m_ + cols_) + 100;
    int stall = 0;
    bool bland = false;
    double last = objective(cost);
    for (int iter = 0; iter < max_iter; ++iter) {
      // Reduced costs d_j = c_j - c_B^T column_j.
      int enter = -1;
      double best = -kCostTol;
      for (int j = 0; j < limit; ++j) {
        if (is_basic(j)) continue;
        double d = cost[static_cast<std::size_t>(j)];
        for (int i = 0; i < m_; ++i)
          if (active_[static_cast<std::size_t>(i)]) d -= cost[static_cast<std::size_t>(basis_[static_cast<std::size_t>(i)])] * at(i, j);
        if (bland) {
          if (d < -kCostTol) {
            enter = j;
            break;
          }
        } else if (d < best) {
          best = d;
          enter = j;
        }
      }
      if (enter < 0) return Status::Optimal;

      int leave = -1;
      double ratio = kInf;
      for (int i = 0; i < m_; ++i) {
        if (!active_[static_cast<std::size_t>(i)]) continue;
        const double a = at(i, enter);
        if (a <= kPivotTol) continue;
        const double r = rhs(i) / a;
        if (r < ratio - 1e-12 ||
            (std::abs(r - ratio) <= 1e-12 && basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leave)])) {
          ratio = r;
          leave = i;
        }
      }
      if (leave < 0) return Status::Unbounded;
      pivot(leave, enter);
      ++pivots;

      const double now = objective(cost);
      if (!std::isfinite(now)) return Status::NumericalFailure;
      if (now < last - 1e-12 * (1.0 + std::abs(last))) {
        stall = 0;
        last = now;
      } else if (++stall >= std::max(cols_, 1)) {
        bland = true;
      }
    }
    return Status::NumericalFailure;
  }

  double objective(const std::vector<double>& cost) const {
    double s = 0.0;
    for (int i = 0; i < m_; ++i)
      if (active_[static_cast<std::size_t>(i)]) s += cost[static_cast<std::size_t>(basis_[static_cast<std::size_t>(i)])] * rhs(i);
    return s;
  }

  // After phase 1: pivot zero-level artificials out of the basis, dropping
  // rows that turn out to be redundant.
  void expel_artificials() {
    for (int i = 0; i < m_; ++i) {
      if (!active_[static_cast<std::size_t>(i)] || basis_[static_cast<std::size_t>(i)] < first_art_) continue;
      int col = -1;
      double big = kPivotTol;
      for (int j = 0; j < first_art_; ++j)
        if (!is_basic(j) && std::abs(at(i, j)) > big) {
          big = std::abs(at(i, j));
          col = j;
        }
      if (col >= 0)
        pivot(i, col);
      else
        active_[static_cast<std::size_t>(i)] = false;
    }
  }

  std::vector<double> primal(int ncols) const {
    std::vector<double> z(static_cast<std::size_t>(ncols), 0.0);
    for (int i = 0; i < m_; ++i) {
      const int b = basis_[static_cast<std::size_t>(i)];
      if (active_[static_cast<std::size_t>(i)] && b < ncols) z[static_cast<std::size_t>(b)] = rhs(i);
    }
    return z;
  }

  int cols() const { return cols_; }
  int first_artificial() const { return first_art_; }

 private:
  bool is_basic(int j) const {
    for (int i = 0; i < m_; ++i)
      if (active_[static_cast<std::size_t>(i)] && basis_[static_cast<std::size_t>(i)] == j) return true;
    return false;
  }

  void pivot(int r, int c) {
    const double p = at(r, c);
    for (int j = 0; j <= cols_; ++j) at(r, j) /= p;
    at(r, c) = 1.0;
    for (int i = 0; i < m_; ++i) {
      if (i == r) continue;
      const double f = at(i, c);
      if (f == 0.0) continue;
      for (int j = 0; j <= cols_; ++j) at(i, j) -= f * at(r, j);
      at(i, c) = 0.0;
    }
    for (int i = 0; i < m_; ++i)
      if (std::abs(rhs(i)) < 1e-13) rhs(i) = std::max(rhs(i), 0.0);
    basis_[static_cast<std::size_t>(r)] = c;
  }

  int m_;
  int structural_;
  int first_art_ = 0;
  int cols_ = 0;
  std::vector<double> t_;
  std::vector<int> basis_;
  std::vector<bool> active_;
};

}  // namespace

std::string to_string(Status s) {
  switch (s) {
    case Status::Optimal: return "optimal";
    case Status::Infeasible: return "infeasible";
    case Status::Unbounded: return "unbounded";
    case Status::NumericalFailure: return "numerical_failure";
  }
  return "unknown";
}

double LinearProgram::max_violation(const std::vector<double>& x) const {
  double worst = 0.0;
  for (const auto& r : rows) {
    double s = 0.0;
    for (std::size_t j = 0; j < r.a.size(); ++j) s += r.a[j] * x[j];
    const double d = s - r.rhs;
    if (r.sense == RowSense::LessEqual) worst = std::max(worst, d);
    else if (r.sense == RowSense::GreaterEqual) worst = std::max(worst, -d);
    else worst = std::max(worst, std::abs(d));
  }
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double lo = lower.empty() ? 0.0 : lower[j];
    const double hi = upper.empty() ? kInf : upper[j];
    worst = std::max({worst, lo - x[j], x[j] - hi});
  }
  return worst;
}

Result solve(const LinearProgram& lp) {
  const std::size_t n = lp.num_vars();
  if (!lp.lower.empty() && lp.lower.size() != n) throw InputError("lp: lower bound vector has wrong length");
  if (!lp.upper.empty() && lp.upper.size() != n) throw InputError("lp: upper bound vector has wrong length");
  for (const auto& r : lp.rows) {
    if (r.a.size() != n) throw InputError("lp: row has wrong length");
    for (double v : r.a)
      if (!std::isfinite(v)) throw InputError("lp: non-finite coefficient");
    if (!std::isfinite(r.rhs)) throw InputError("lp: non-finite right-hand side");
  }

  // Map every variable onto nonnegative columns.
  std::vector<VarMap> maps(n);
  std::vector<StdRow> rows;
  int ncols = 0;
  for (std::size_t j = 0; j < n; ++j) {
    const double lo = lp.lower.empty() ? 0.0 : lp.lower[j];
    const double hi = lp.upper.empty() ? kInf : lp.upper[j];
    if (lo > hi) return {Status::Infeasible, {}, 0.0, 0};
    auto& m = maps[j];
    if (std::isfinite(lo)) {
      m = {VarMap::Kind::Shift, lo, ncols++, -1};
    } else if (std::isfinite(hi)) {
      m = {VarMap::Kind::Mirror, hi, ncols++, -1};
    } else {
      m = {VarMap::Kind::Split, 0.0, ncols, ncols + 1};
      ncols += 2;
    }
  }
  // Row in column space: coefficients plus the constant shift from offsets.
  auto to_columns = [&](const std::vector<double>& a, double& constant) {
    std::vector<double> c(static_cast<std::size_t>(ncols), 0.0);
    constant = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const auto& m = maps[j];
      switch (m.kind) {
        case VarMap::Kind::Shift:
          c[static_cast<std::size_t>(m.col)] += a[j];
          constant += a[j] * m.offset;
          break;
        case VarMap::Kind::Mirror:
          c[static_cast<std::size_t>(m.col)] -= a[j];
          constant += a[j] * m.offset;
          break;
        case VarMap::Kind::Split:
          c[static_cast<std::size_t>(m.col)] += a[j];
          c[static_cast<std::size_t>(m.col_neg)] -= a[j];
          break;
      }
    }
    return c;
  };
  auto add_row = [&](std::vector<double> a, bool greater, double b) {
    if (b < 0.0) {
      for (double& v : a) v = -v;
      b = -b;
      greater = !greater;
    }
    rows.push_back({std::move(a), greater, b});
  };
  for (const auto& r : lp.rows) {
    double constant = 0.0;
    auto a = to_columns(r.a, constant);
    const double b = r.rhs - constant;
    if (r.sense != RowSense::GreaterEqual) add_row(a, false, b);
    if (r.sense != RowSense::LessEqual) add_row(a, true, b);
  }
  for (std::size_t j = 0; j < n; ++j) {
    const double lo = lp.lower.empty() ? 0.0 : lp.lower[j];
    const double hi = lp.upper.empty() ? kInf : lp.upper[j];
    if (std::isfinite(lo) && std::isfinite(hi)) {
      std::vector<double> a(static_cast<std::size_t>(ncols), 0.0);
      a[static_cast<std::size_t>(maps[j].col)] = 1.0;
      add_row(std::move(a), false, hi - lo);
    }
  }

  double obj_constant = 0.0;
  const auto cost_cols = to_columns(lp.objective, obj_constant);

  Tableau tab(rows, ncols);
  Result res;
  if (tab.has_artificials()) {
    std::vector<double> phase1(static_cast<std::size_t>(tab.cols()), 0.0);
    for (int j = tab.first_artificial(); j < tab.cols(); ++j) phase1[static_cast<std::size_t>(j)] = 1.0;
    const Status s = tab.optimize(phase1, tab.cols(), res.pivots);
    if (s == Status::NumericalFailure) return res;
    double scale = 1.0;
    for (const auto& r : rows) scale = std::max(scale, std::abs(r.b));
    if (tab.objective(phase1) > kFeasTol * scale) {
      res.status = Status::Infeasible;
      return res;
    }
    tab.expel_artificials();
  }

  std::vector<double> phase2(static_cast<std::size_t>(tab.cols()), 0.0);
  std::copy(cost_cols.begin(), cost_cols.end(), phase2.begin());
  const Status s = tab.optimize(phase2, tab.first_artificial(), res.pivots);
  if (s != Status::Optimal) {
    res.status = s;
    return res;
  }

  const auto z = tab.primal(ncols);
  res.x.assign(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    const auto& m = maps[j];
    switch (m.kind) {
      case VarMap::Kind::Shift: res.x[j] = m.offset + z[static_cast<std::size_t>(m.col)]; break;
      case VarMap::Kind::Mirror: res.x[j] = m.offset - z[static_cast<std::size_t>(m.col)]; break;
      case VarMap::Kind::Split:
        res.x[j] = z[static_cast<std::size_t>(m.col)] - z[static_cast<std::size_t>(m.col_neg)];
        break;
    }
  }
  res.objective = 0.0;
  for (std::size_t j = 0; j < n; ++j) res.objective += lp.objective[j] * res.x[j];

  double scale = 1.0;
  for (const auto& r : lp.rows) scale = std::max(scale, std::abs(r.rhs));
  res.status = lp.max_violation(res.x) > 1e-8 * scale ? Status::NumericalFailure : Status::Optimal;
  return res;
}

}  // namespace visicut::lp
