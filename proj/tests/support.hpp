#pragma once

// Test-side oracles. Everything here is written independently of the
// library's solvers so that it can be used to check them.

#include <cstdint>
#include <optional>
#include <vector>

#include "locolour/hypergraph.hpp"
#include "locolour/random.hpp"

namespace support {

using locolour::Colouring;
using locolour::Edge;
using locolour::Hypergraph;
using locolour::Rng;
using locolour::Vertex;

// Unique-maximum check straight from the definition.
inline bool is_lo(const Hypergraph& h, const std::vector<unsigned>& c) {
  for (const Edge& e : h.edges()) {
    unsigned top = 0;
    for (Vertex x : e) top = std::max(top, c[x]);
    int hits = 0;
    for (Vertex x : e) hits += c[x] == top;
    if (hits != 1) return false;
  }
  return true;
}

// Every 0/1 vector (bit x of the mask is vertex x) with exactly one 1 per edge.
inline std::vector<std::uint32_t> all_lo2(const Hypergraph& h) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t mask = 0; mask < (1u << h.num_vertices()); ++mask) {
    bool ok = true;
    for (const Edge& e : h.edges()) {
      int ones = 0;
      for (Vertex x : e) ones += (mask >> x) & 1u;
      if (ones != 1) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(mask);
  }
  return out;
}

// Every 0/1 vector with odd parity on each edge (solutions of A v = 1).
inline std::vector<std::uint32_t> all_odd(const Hypergraph& h) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t mask = 0; mask < (1u << h.num_vertices()); ++mask) {
    bool ok = true;
    for (const Edge& e : h.edges()) {
      unsigned parity = 0;
      for (Vertex x : e) parity ^= (mask >> x) & 1u;
      if (!parity) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(mask);
  }
  return out;
}

// Fewest colours of an LO colouring, by plain enumeration of palettes.
inline std::optional<unsigned> min_lo_colours(const Hypergraph& h, unsigned budget) {
  const std::size_t n = h.num_vertices();
  for (unsigned k = 1; k <= budget; ++k) {
    std::vector<unsigned> c(n, 0);
    while (true) {
      if (is_lo(h, c)) return k;
      std::size_t i = 0;
      while (i < n && ++c[i] == k) c[i++] = 0;
      if (i == n) break;
    }
  }
  return std::nullopt;
}

// Distinct triples on n vertices, uniformly drawn (may repeat edges when
// allow_repeats is set).
inline Hypergraph random_3graph(std::size_t n, std::size_t m, Rng& rng) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < m; ++i) {
    Vertex a, b, c;
    do {
      a = static_cast<Vertex>(rng.below(n));
      b = static_cast<Vertex>(rng.below(n));
      c = static_cast<Vertex>(rng.below(n));
    } while (a == b || b == c || a == c);
    edges.emplace_back(a, b, c);
  }
  return Hypergraph(n, std::move(edges));
}

// Mixed 2- and 3-edges.
inline Hypergraph random_23graph(std::size_t n, std::size_t m, Rng& rng) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < m; ++i) {
    Vertex a, b, c;
    if (n >= 3 && rng.below(2)) {
      do {
        a = static_cast<Vertex>(rng.below(n));
        b = static_cast<Vertex>(rng.below(n));
        c = static_cast<Vertex>(rng.below(n));
      } while (a == b || b == c || a == c);
      edges.emplace_back(a, b, c);
    } else {
      do {
        a = static_cast<Vertex>(rng.below(n));
        b = static_cast<Vertex>(rng.below(n));
      } while (a == b);
      edges.emplace_back(a, b);
    }
  }
  return Hypergraph(n, std::move(edges));
}

inline Colouring from_vector(const std::vector<unsigned>& c) {
  Colouring out(c.size());
  for (std::size_t x = 0; x < c.size(); ++x) out.set(static_cast<Vertex>(x), c[x]);
  return out;
}

inline Hypergraph h3() {
  return Hypergraph(4, {Edge(0, 1, 2), Edge(0, 1, 3), Edge(0, 2, 3)});
}

}  // namespace support
