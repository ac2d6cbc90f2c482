#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "locolour/hypergraph.hpp"

namespace locolour {

/// A hypergraph built around a hidden LO 2-colouring.
struct PlantedInstance {
  Hypergraph hypergraph;
  /// Every edge has exactly one vertex coloured 1.
  Colouring planted;
};

/// n vertices, round(ones_fraction * n) of them (clamped to [1, n-2])
/// planted with colour 1, and m distinct edges of one 1-vertex and two
/// 0-vertices. Deterministic per seed. Throws std::invalid_argument when n < 3,
/// ones_fraction is outside (0, 1), or m exceeds the number of distinct
/// admissible edges.
PlantedInstance gen_planted(std::size_t n, std::size_t m, double ones_fraction,
                            std::uint64_t seed);

/// Number of distinct admissible edges gen_planted can draw from.
std::size_t planted_capacity(std::size_t n, double ones_fraction);

/// Vertices v_1..v_k then one w_ij per pair i < j (in lexicographic order);
/// edges (v_i, v_j, w_ij). Throws std::invalid_argument for k < 2.
Hypergraph gen_clique_gadget(std::size_t k);

inline constexpr std::size_t kMaxOracleVertices = 10;

/// Fewest colours of any LO colouring, searching palettes of size 1..budget.
/// nullopt if none fits the budget. Throws std::invalid_argument when the
/// hypergraph has more than kMaxOracleVertices vertices.
std::optional<std::size_t> brute_force_min_lo(const Hypergraph& h, std::size_t budget);

}  // namespace locolour
