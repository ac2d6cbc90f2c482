#pragma once

#include <cstddef>
#include <vector>

#include <gmpxx.h>

namespace locolour::lp {

using Rational = mpq_class;

/// minimise objective·x  subject to  rows·x = rhs,  lower <= x <= upper.
///
/// All bounds are finite; lower == upper pins a variable. An empty objective
/// means a pure feasibility problem.
struct Problem {
  std::size_t num_variables = 0;
  std::vector<std::vector<Rational>> rows;
  std::vector<Rational> rhs;
  std::vector<Rational> lower;
  std::vector<Rational> upper;
  std::vector<Rational> objective;
};

enum class Status { Optimal, Infeasible };

struct Result {
  Status status = Status::Infeasible;
  std::vector<Rational> x;
  Rational objective;
  std::size_t pivots = 0;
};

/// Exact two-phase bounded-variable primal simplex with Bland's rule.
/// Phase 1 minimises the sum of one artificial per row. Throws
/// std::invalid_argument on malformed input.
Result solve(const Problem& problem);

}  // namespace locolour::lp
