#pragma once

#include <limits>
#include <string>
#include <vector>

namespace visicut::lp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class RowSense { LessEqual, Equal, GreaterEqual };

struct Row {
  std::vector<double> a;
  RowSense sense = RowSense::LessEqual;
  double rhs = 0.0;
};

/// minimize objective^T x  s.t. rows, lower <= x <= upper (entries may be +-kInf).
/// Empty `lower`/`upper` default to x >= 0 and no upper bound.
struct LinearProgram {
  std::vector<double> objective;
  std::vector<Row> rows;
  std::vector<double> lower;
  std::vector<double> upper;

  [[nodiscard]] std::size_t num_vars() const { return objective.size(); }
  /// Largest violation of rows and bounds at x.
  [[nodiscard]] double max_violation(const std::vector<double>& x) const;
};

enum class Status { Optimal, Infeasible, Unbounded, NumericalFailure };

std::string to_string(Status s);

struct Result {
  Status status = Status::NumericalFailure;
  std::vector<double> x;
  double objective = 0.0;
  int pivots = 0;
};

/// Dense two-phase primal simplex. Dantzig pricing, switching to Bland's rule
/// after a run of non-improving pivots.
Result solve(const LinearProgram& lp);

}  // namespace visicut::lp
