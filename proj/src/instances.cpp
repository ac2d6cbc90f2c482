#include "locolour/instances.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

#include "locolour/random.hpp"

namespace locolour {

namespace {

using Triple = std::array<Vertex, 3>;

Triple sorted(Vertex a, Vertex b, Vertex c) {
  Triple t{a, b, c};
  std::sort(t.begin(), t.end());
  return t;
}

template <typename T>
void shuffle(std::vector<T>& items, Rng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::swap(items[i - 1], items[rng.below(i)]);
  }
}

std::size_t planted_ones(std::size_t n, double ones_fraction) {
  const auto wanted = static_cast<std::size_t>(std::llround(ones_fraction * static_cast<double>(n)));
  return std::clamp<std::size_t>(wanted, 1, n - 2);
}

}  // namespace

std::size_t planted_capacity(std::size_t n, double ones_fraction) {
  if (n < 3) return 0;
  const std::size_t ones = planted_ones(n, ones_fraction);
  const std::size_t zeros = n - ones;
  return ones * (zeros * (zeros - 1) / 2);
}

PlantedInstance gen_planted(std::size_t n, std::size_t m, double ones_fraction,
                            std::uint64_t seed) {
  if (n < 3) throw std::invalid_argument("gen_planted: need at least 3 vertices");
  if (!(ones_fraction > 0.0 && ones_fraction < 1.0)) {
    throw std::invalid_argument("gen_planted: ones fraction must lie in (0, 1)");
  }
  Rng rng(seed);
  const std::size_t ones = planted_ones(n, ones_fraction);

  std::vector<Vertex> perm(n);
  std::iota(perm.begin(), perm.end(), Vertex{0});
  shuffle(perm, rng);
  std::vector<Vertex> one_vertices(perm.begin(), perm.begin() + static_cast<long>(ones));
  std::vector<Vertex> zero_vertices(perm.begin() + static_cast<long>(ones), perm.end());
  std::sort(one_vertices.begin(), one_vertices.end());
  std::sort(zero_vertices.begin(), zero_vertices.end());

  const long double zeros = static_cast<long double>(zero_vertices.size());
  const long double capacity = static_cast<long double>(ones) * zeros * (zeros - 1) / 2;
  if (static_cast<long double>(m) > capacity) {
    throw std::invalid_argument("gen_planted: cannot form " + std::to_string(m) +
                                " distinct edges with this split");
  }

  std::vector<Triple> triples;
  triples.reserve(m);
  if (2 * static_cast<long double>(m) <= capacity) {
    std::set<Triple> seen;
    while (triples.size() < m) {
      const Vertex one = one_vertices[rng.below(one_vertices.size())];
      const Vertex a = zero_vertices[rng.below(zero_vertices.size())];
      const Vertex b = zero_vertices[rng.below(zero_vertices.size())];
      if (a == b) continue;
      const Triple t = sorted(one, a, b);
      if (seen.insert(t).second) triples.push_back(t);
    }
  } else {
    // Dense request: enumerate every admissible edge and keep a random m.
    std::vector<Triple> all;
    for (Vertex one : one_vertices) {
      for (std::size_t i = 0; i < zero_vertices.size(); ++i) {
        for (std::size_t j = i + 1; j < zero_vertices.size(); ++j) {
          all.push_back(sorted(one, zero_vertices[i], zero_vertices[j]));
        }
      }
    }
    shuffle(all, rng);
    triples.assign(all.begin(), all.begin() + static_cast<long>(m));
  }

  std::vector<Edge> edges;
  edges.reserve(m);
  for (const Triple& t : triples) edges.emplace_back(t[0], t[1], t[2]);
  Colouring planted(n);
  for (Vertex x : zero_vertices) planted.set(x, 0);
  for (Vertex x : one_vertices) planted.set(x, 1);
  return {Hypergraph(n, std::move(edges)), std::move(planted)};
}

Hypergraph gen_clique_gadget(std::size_t k) {
  if (k < 2) throw std::invalid_argument("gen_clique_gadget: k must be at least 2");
  std::vector<Edge> edges;
  Vertex w = static_cast<Vertex>(k);
  for (Vertex i = 0; i < k; ++i) {
    for (Vertex j = i + 1; j < k; ++j) edges.emplace_back(i, j, w++);
  }
  return Hypergraph(w, std::move(edges));
}

std::optional<std::size_t> brute_force_min_lo(const Hypergraph& h, std::size_t budget) {
  const std::size_t n = h.num_vertices();
  if (n > kMaxOracleVertices) {
    throw std::invalid_argument("brute_force_min_lo: at most " +
                                std::to_string(kMaxOracleVertices) + " vertices");
  }
  if (n == 0) return 0;

  // Edges checked once their highest-numbered vertex is assigned.
  std::vector<std::vector<std::size_t>> closing(n);
  for (std::size_t i = 0; i < h.num_edges(); ++i) {
    const Edge& e = h.edge(i);
    closing[*std::max_element(e.begin(), e.end())].push_back(i);
  }

  std::vector<Colour> colour(n, 0);
  auto closes_ok = [&](std::size_t x) {
    for (std::size_t i : closing[x]) {
      const Edge& e = h.edge(i);
      Colour top = 0;
      std::size_t count = 0;
      for (Vertex y : e) {
        if (count == 0 || colour[y] > top) {
          top = colour[y];
          count = 1;
        } else if (colour[y] == top) {
          ++count;
        }
      }
      if (count != 1) return false;
    }
    return true;
  };

  for (std::size_t palette = 1; palette <= budget; ++palette) {
    // Odometer over colour vectors with pruning on closed edges.
    std::vector<Colour> next(n, 0);
    std::size_t depth = 0;
    bool found = false;
    while (true) {
      if (depth == n) {
        found = true;
        break;
      }
      if (next[depth] == palette) {
        next[depth] = 0;
        if (depth == 0) break;
        --depth;
        continue;
      }
      colour[depth] = next[depth]++;
      if (closes_ok(depth)) ++depth;
    }
    if (found) return palette;
  }
  return std::nullopt;
}

}  // namespace locolour
