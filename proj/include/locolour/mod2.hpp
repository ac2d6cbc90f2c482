#pragma once

#include <array>
#include <chrono>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "locolour/gf2.hpp"
#include "locolour/hypergraph.hpp"

namespace locolour {

/// The input violates the LO 2-colourability promise.
class NotLO2Colourable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultBruteThreshold = 20;

/// Largest brute-force threshold accepted for an instance with n vertices:
/// max(20, 2*ceil(log2 n)).
std::size_t max_brute_threshold(std::size_t n);

struct PreprocessResult {
  enum class Status { Ok, NotLO2Colourable };

  Status status = Status::Ok;
  std::vector<Vertex> fixed0;  // sorted input ids
  std::vector<Vertex> fixed1;  // sorted input ids
  /// {2,3}-uniform hypergraph on the unfixed vertices, renumbered 0..k-1.
  Hypergraph residual;
  /// residual id -> input id.
  std::vector<Vertex> residual_vertices;

  bool ok() const { return status == Status::Ok; }
};

/// Repeatedly fixes every variable the mod-2 system determines, propagates
/// the fixed values through the edges, and shrinks edges by their fixed-0
/// vertices until the residual system determines nothing.
PreprocessResult preprocess(const Hypergraph& h);

/// Zero set of a derandomised solution of A·v = 1 on a {2,3}-uniform
/// hypergraph whose system fixes no variable. |T| >= n/2, T meets each
/// 3-edge in 0 or 2 vertices and each 2-edge in exactly 1.
/// Throws std::logic_error if the system is inconsistent or fixes a variable.
std::vector<Vertex> inner_step(const Hypergraph& h);

/// Zero set T of a solution of A·v = 1 with coefficients chosen to minimise
/// the number of 3-edges whose vertices all evaluate to 1 (the edges T
/// misses). At most floor(#3-edges / 4) such edges remain. Unlike inner_step,
/// |T| >= n/2 is not guaranteed.
std::vector<Vertex> inner_step_edges(const Hypergraph& h);

/// Conditional probability that an edge evaluates to all ones when the first
/// `step` coefficients are fixed and the rest are uniform.
///
/// For each non-empty subset S of an edge, the XOR of the coefficient columns
/// of S is precomputed; S is a dependency once all its set positions are
/// fixed. The remaining 3-equation system is consistent iff every dependency
/// has even right-hand side, and then has probability (#dependencies + 1) / 8.
class AllOnesEstimator {
 public:
  AllOnesEstimator(const Hypergraph& h, const gf2::AffineSpace2& space);

  /// Probability numerator over 8. `partial` is v0 XOR the chosen prefix.
  unsigned weight(std::size_t edge, std::size_t step, const gf2::BitVector& partial) const;

 private:
  struct EdgeMasks {
    // span_end[mask]: 1 + highest coefficient index in the XOR of the
    // subset's columns, 0 if that XOR is zero.
    std::array<std::size_t, 8> span_end{};
  };

  const Hypergraph* h_;
  std::vector<EdgeMasks> masks_;
};

/// 0/1 colouring with exactly one 1 in every edge, or nullopt.
std::optional<Colouring> brute_force_lo2(const Hypergraph& h);

struct SolveReport {
  Colouring colouring;
  std::size_t colours_used = 0;
  std::size_t iterations = 0;
  std::size_t brute_forced_vertices = 0;
  /// Active vertices (solve_mod2) or fully-uncoloured edges
  /// (solve_mod2_edges) at the start of each iteration.
  std::vector<std::size_t> active_per_iteration;
  std::chrono::duration<double> elapsed{};
};

/// LO colouring with at most log2(n) colours (n >= 4) for LO 2-colourable
/// 3-uniform input. Throws NotLO2Colourable when the promise fails and
/// std::invalid_argument for a threshold outside [1, max_brute_threshold(n)].
SolveReport solve_mod2(const Hypergraph& h, std::size_t brute_threshold = kDefaultBruteThreshold);

/// LO colouring with at most 2 + log2(m)/2 colours.
SolveReport solve_mod2_edges(const Hypergraph& h);

}  // namespace locolour
