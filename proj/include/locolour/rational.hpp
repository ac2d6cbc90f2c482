#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include <gmpxx.h>

#include "locolour/hypergraph.hpp"
#include "locolour/random.hpp"

namespace locolour {

/// Exact rational in canonical form.
using BigRational = mpq_class;
using RationalVector = std::vector<BigRational>;

/// No vector with the requested pinned coordinate exists; the input has no
/// LO 2-colouring.
class Infeasible : public std::runtime_error {
 public:
  Infeasible(Vertex vertex, const std::string& what)
      : std::runtime_error(what), vertex_(vertex) {}
  Vertex vertex() const { return vertex_; }

 private:
  Vertex vertex_;
};

class ZeroCoordinate : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class RetriesExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultMaxRetries = 64;
inline constexpr std::size_t kMinRationalVertices = 8;

/// Incidence matrix of a hypergraph reduced over Q: each stored row has a
/// unit entry in its pivot column and zeros in every other pivot column.
class RationalSystem {
 public:
  explicit RationalSystem(const Hypergraph& h);

  const Hypergraph& hypergraph() const { return *h_; }
  std::size_t num_variables() const { return h_->num_vertices(); }
  std::size_t rank() const { return rows_.size(); }
  const std::vector<RationalVector>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  /// Non-pivot columns in ascending order.
  std::vector<std::size_t> free_columns() const;

  /// A·v over the original incidence matrix.
  RationalVector apply(const RationalVector& v) const;

 private:
  const Hypergraph* h_;
  std::vector<RationalVector> rows_;
  std::vector<std::size_t> pivots_;
};

/// Basis of {z : A·z = 0}, one vector per free column.
std::vector<RationalVector> nullspace_q(const RationalSystem& system);

/// v with A·v = 0, v_i = 1/2 and |v_x| <= 1, found by exact linear
/// programming and re-verified. Throws Infeasible if none exists.
RationalVector find_vi(const RationalSystem& system, Vertex i);

/// find_vi for every vertex, computed on up to `threads` worker threads
/// (0 = hardware concurrency). Results are independent of the thread count.
std::vector<RationalVector> find_all_vi(const RationalSystem& system, unsigned threads = 0);

/// sum_i y_i * basis[i] with y_i = k_i / 2^31, k_i uniform in [-2^31, 2^31].
RationalVector sample_u(const std::vector<RationalVector>& basis, Rng& rng);

/// Same combination for explicit grid numerators k_i.
RationalVector combine(const std::vector<RationalVector>& basis,
                       const std::vector<std::int64_t>& numerators);

/// Rational R >= 4 n ln n, within 2^-40 of it.
BigRational max_threshold_squared(std::size_t n);

/// Smallest k with 2^k >= q, for q > 0.
long ceil_log2(const BigRational& q);

enum class SampleVerdict { Accepted, ZeroCoordinate, MinTooSmall, MaxTooLarge };

/// Accept iff min |u_x| > 1/(4n) and u_x^2 < max_threshold_squared(n) for
/// every x, with n = u.size().
SampleVerdict judge_sample(const RationalVector& u, const BigRational& threshold_squared);

struct UnbalancedColouring {
  Colouring colouring;
  /// Unique-minimum colours before reversal.
  Colouring provisional;
  BigRational max_over_min;
};

/// Dyadic buckets on u / max|u|: positive values in (2^-(2l+1), 2^-(2l-1)]
/// get 2l, negative values in [-2^-2l, -2^-(2l+2)) get 2l+1. The final
/// colouring reverses the order. Throws ZeroCoordinate on a zero entry.
UnbalancedColouring unbalanced_colouring(const RationalVector& u);

/// 1 where u is positive, 0 where negative. Throws ZeroCoordinate.
Colouring sign_two_colouring(const RationalVector& u);

struct RationalSolveReport {
  Colouring colouring;
  std::size_t colours_used = 0;
  std::size_t retries = 0;
  BigRational max_over_min;
  std::chrono::duration<double> elapsed{};
};

/// Random LO colouring from an unbalanced rational solution. Requires
/// n >= kMinRationalVertices (std::invalid_argument otherwise). Throws
/// Infeasible or RetriesExhausted.
RationalSolveReport solve_rational(const Hypergraph& h, std::uint64_t seed,
                                   std::size_t max_retries = kDefaultMaxRetries,
                                   unsigned threads = 0);

}  // namespace locolour
