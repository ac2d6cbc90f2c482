#include "locolour/mod2.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <limits>
#include <numeric>

#include "locolour/verify.hpp"

namespace locolour {

namespace {

using gf2::BitVector;
using gf2::Word;
using Clock = std::chrono::steady_clock;

constexpr Vertex kNone = std::numeric_limits<Vertex>::max();

std::size_t ceil_log2(std::size_t n) {
  std::size_t k = 0;
  while ((std::size_t{1} << k) < n) ++k;
  return k;
}

// Calls fn(index) for each set bit of v.
template <typename Fn>
void for_each_set_bit(const BitVector& v, Fn&& fn) {
  auto words = v.words();
  for (std::size_t w = 0; w < words.size(); ++w) {
    Word bits = words[w];
    while (bits) {
      fn(w * gf2::kWordBits + static_cast<std::size_t>(std::countr_zero(bits)));
      bits &= bits - 1;
    }
  }
}

std::vector<Vertex> zero_set(const BitVector& v) {
  std::vector<Vertex> out;
  for (std::size_t x = 0; x < v.size(); ++x) {
    if (!v.test(x)) out.push_back(static_cast<Vertex>(x));
  }
  return out;
}

gf2::AffineSpace2 unfixed_space(const Hypergraph& h) {
  auto sys = gf2::incidence_system(h);
  auto space = gf2::solve_affine(sys.matrix, sys.rhs);
  if (!space) throw std::logic_error("inner step: the system is inconsistent");
  if (!gf2::fixed_coordinates(*space).empty()) {
    throw std::logic_error("inner step: the system fixes a variable; preprocess first");
  }
  return std::move(*space);
}

// Hypergraph induced on `vertices` (original ids) by `edges` (original ids).
struct SubProblem {
  Hypergraph graph;
  std::vector<Vertex> to_original;
};

SubProblem induce(const std::vector<Vertex>& vertices, const std::vector<Edge>& edges,
                  std::vector<Vertex>& local) {
  for (std::size_t i = 0; i < vertices.size(); ++i) local[vertices[i]] = static_cast<Vertex>(i);
  std::vector<Edge> mapped;
  mapped.reserve(edges.size());
  std::array<Vertex, 3> buf{};
  for (const Edge& e : edges) {
    for (std::size_t k = 0; k < e.size(); ++k) buf[k] = local[e[k]];
    mapped.push_back(Edge::from({buf.data(), e.size()}));
  }
  for (Vertex x : vertices) local[x] = kNone;
  return {Hypergraph(vertices.size(), std::move(mapped)), vertices};
}

void check_in_debug([[maybe_unused]] const Hypergraph& h,
                    [[maybe_unused]] const Colouring& c) {
#ifndef NDEBUG
  if (!verify_lo_colouring(h, c).valid) {
    throw std::logic_error("solver produced an invalid colouring");
  }
#endif
}

}  // namespace

std::size_t max_brute_threshold(std::size_t n) {
  return std::max<std::size_t>(kDefaultBruteThreshold, 2 * ceil_log2(n));
}

PreprocessResult preprocess(const Hypergraph& h) {
  enum Value : std::uint8_t { kFree, kZero, kOne };
  const std::size_t n = h.num_vertices();
  const std::size_t m = h.num_edges();
  const auto inc = h.incidence();
  std::vector<std::uint8_t> value(n, kFree);

  std::vector<std::size_t> queue(m);
  std::iota(queue.begin(), queue.end(), std::size_t{0});
  std::vector<bool> queued(m, true);

  auto assign = [&](Vertex x, Value v) {
    if (value[x] != kFree) return;
    value[x] = v;
    for (std::size_t e : inc[x]) {
      if (!queued[e]) {
        queued[e] = true;
        queue.push_back(e);
      }
    }
  };

  // A fixed 1 forces its edge-partners to 0; an edge whose only unfixed
  // vertex sits beside fixed 0s forces that vertex to 1.
  auto propagate = [&]() {
    while (!queue.empty()) {
      std::size_t e = queue.back();
      queue.pop_back();
      queued[e] = false;
      std::size_t ones = 0;
      std::array<Vertex, 3> open{};
      std::size_t open_count = 0;
      for (Vertex x : h.edge(e)) {
        if (value[x] == kOne) ++ones;
        if (value[x] == kFree) open[open_count++] = x;
      }
      if (ones > 1) return false;
      if (ones == 1) {
        for (std::size_t k = 0; k < open_count; ++k) assign(open[k], kZero);
      } else if (open_count == 0) {
        return false;
      } else if (open_count == 1) {
        assign(open[0], kOne);
      }
    }
    return true;
  };

  PreprocessResult out;
  while (true) {
    if (!propagate()) {
      out.status = PreprocessResult::Status::NotLO2Colourable;
      return out;
    }

    std::vector<Vertex> local(n, kNone);
    std::vector<Vertex> residual_vertices;
    for (Vertex x = 0; x < n; ++x) {
      if (value[x] == kFree) {
        local[x] = static_cast<Vertex>(residual_vertices.size());
        residual_vertices.push_back(x);
      }
    }
    std::vector<Edge> residual_edges;
    for (const Edge& e : h.edges()) {
      std::array<Vertex, 3> open{};
      std::size_t open_count = 0;
      bool has_one = false;
      for (Vertex x : e) {
        if (value[x] == kOne) has_one = true;
        if (value[x] == kFree) open[open_count++] = local[x];
      }
      if (!has_one && open_count >= 2) {
        residual_edges.push_back(Edge::from({open.data(), open_count}));
      }
    }
    Hypergraph residual(residual_vertices.size(), std::move(residual_edges));

    auto sys = gf2::incidence_system(residual);
    auto space = gf2::solve_affine(sys.matrix, sys.rhs);
    if (!space) {
      out.status = PreprocessResult::Status::NotLO2Colourable;
      return out;
    }
    auto fixed = gf2::fixed_coordinates(*space);
    if (fixed.empty()) {
      out.residual = std::move(residual);
      out.residual_vertices = std::move(residual_vertices);
      break;
    }
    for (const auto& f : fixed) {
      assign(residual_vertices[f.index], f.value ? kOne : kZero);
    }
  }

  for (Vertex x = 0; x < n; ++x) {
    if (value[x] == kZero) out.fixed0.push_back(x);
    if (value[x] == kOne) out.fixed1.push_back(x);
  }
  return out;
}

std::vector<Vertex> inner_step(const Hypergraph& h) {
  const auto space = unfixed_space(h);
  const std::size_t n = h.num_vertices();
  const std::size_t r = space.dimension();

  // decided[i]: coordinates on which basis i is the last non-zero vector, so
  // fixing coefficient i determines them.
  std::vector<BitVector> decided(r);
  BitVector later(n);
  for (std::size_t i = r; i-- > 0;) {
    decided[i] = space.basis[i] & ~later;
    later |= space.basis[i];
  }

  BitVector current = space.v0;
  for (std::size_t i = 0; i < r; ++i) {
    auto d = decided[i].words();
    auto c = current.words();
    std::size_t ones = 0;
    std::size_t total = 0;
    for (std::size_t w = 0; w < d.size(); ++w) {
      ones += static_cast<std::size_t>(std::popcount(d[w] & c[w]));
      total += static_cast<std::size_t>(std::popcount(d[w]));
    }
    // Setting the coefficient to 1 flips every decided coordinate. Ties keep 0.
    if (ones > total - ones) current ^= space.basis[i];
  }
  return zero_set(current);
}

AllOnesEstimator::AllOnesEstimator(const Hypergraph& h, const gf2::AffineSpace2& space)
    : h_(&h), masks_(h.num_edges()) {
  const std::size_t r = space.dimension();
  std::vector<BitVector> columns(h.num_vertices(), BitVector(r));
  for (std::size_t i = 0; i < r; ++i) {
    for_each_set_bit(space.basis[i], [&](std::size_t x) { columns[x].set(i); });
  }
  for (std::size_t e = 0; e < h.num_edges(); ++e) {
    const Edge& edge = h.edge(e);
    const unsigned subsets = 1u << edge.size();
    for (unsigned mask = 1; mask < subsets; ++mask) {
      BitVector acc(r);
      for (std::size_t k = 0; k < edge.size(); ++k) {
        if (mask & (1u << k)) acc ^= columns[edge[k]];
      }
      auto hi = acc.highest();
      masks_[e].span_end[mask] = hi ? *hi + 1 : 0;
    }
  }
}

unsigned AllOnesEstimator::weight(std::size_t edge, std::size_t step,
                                  const BitVector& partial) const {
  const Edge& e = h_->edge(edge);
  const unsigned subsets = 1u << e.size();
  unsigned dependencies = 1;
  for (unsigned mask = 1; mask < subsets; ++mask) {
    if (masks_[edge].span_end[mask] > step) continue;
    // XOR over S of (1 + partial_x) must vanish for the system to be solvable.
    unsigned parity = static_cast<unsigned>(std::popcount(mask)) & 1u;
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (mask & (1u << k)) parity ^= partial.test(e[k]) ? 1u : 0u;
    }
    if (parity) return 0;
    ++dependencies;
  }
  return dependencies << (3 - e.size());
}

std::vector<Vertex> inner_step_edges(const Hypergraph& h) {
  const auto space = unfixed_space(h);
  const std::size_t r = space.dimension();
  const AllOnesEstimator estimator(h, space);
  const auto inc = h.incidence();

  constexpr std::size_t kUnseen = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> stamp(h.num_edges(), kUnseen);
  BitVector current = space.v0;
  for (std::size_t i = 0; i < r; ++i) {
    const BitVector flipped = current ^ space.basis[i];
    // Only edges meeting the support of basis i depend on coefficient i.
    long long keep_minus_flip = 0;
    for_each_set_bit(space.basis[i], [&](std::size_t x) {
      for (std::size_t e : inc[x]) {
        if (stamp[e] == i) continue;
        stamp[e] = i;
        keep_minus_flip += static_cast<long long>(estimator.weight(e, i + 1, current)) -
                           static_cast<long long>(estimator.weight(e, i + 1, flipped));
      }
    });
    if (keep_minus_flip > 0) current = flipped;
  }
  return zero_set(current);
}

std::optional<Colouring> brute_force_lo2(const Hypergraph& h) {
  const std::size_t n = h.num_vertices();
  const auto inc = h.incidence();
  std::vector<unsigned> ones(h.num_edges(), 0);
  std::vector<unsigned> assigned(h.num_edges(), 0);
  std::vector<std::uint8_t> value(n, 0);

  auto consistent = [&](Vertex x) {
    for (std::size_t e : inc[x]) {
      if (ones[e] > 1) return false;
      if (assigned[e] == h.edge(e).size() && ones[e] != 1) return false;
    }
    return true;
  };
  auto apply = [&](Vertex x, int sign) {
    for (std::size_t e : inc[x]) {
      assigned[e] += static_cast<unsigned>(sign);
      if (value[x]) ones[e] += static_cast<unsigned>(sign);
    }
  };

  // next[x] is the value to try next at depth x: 0, 1, or 2 (exhausted).
  std::vector<std::uint8_t> next(n + 1, 0);
  std::size_t depth = 0;
  while (true) {
    if (depth == n) break;
    const Vertex x = static_cast<Vertex>(depth);
    if (next[depth] == 2) {
      next[depth] = 0;
      if (depth == 0) return std::nullopt;
      --depth;
      apply(static_cast<Vertex>(depth), -1);
      continue;
    }
    value[x] = next[depth]++;
    apply(x, +1);
    if (consistent(x)) {
      ++depth;
    } else {
      apply(x, -1);
    }
  }

  Colouring c(n);
  for (Vertex x = 0; x < n; ++x) c.set(x, value[x]);
  return c;
}

SolveReport solve_mod2(const Hypergraph& h, std::size_t brute_threshold) {
  const auto start = Clock::now();
  if (!h.is_three_uniform()) throw std::invalid_argument("input must be 3-uniform");
  const std::size_t n = h.num_vertices();
  if (brute_threshold < 1 || brute_threshold > max_brute_threshold(n)) {
    throw std::invalid_argument("brute-force threshold must lie in [1, " +
                                std::to_string(max_brute_threshold(n)) + "]");
  }

  SolveReport report;
  report.colouring = Colouring(n);
  std::vector<Vertex> active(n);
  std::iota(active.begin(), active.end(), Vertex{0});
  std::vector<Edge> edges = h.edges();
  std::vector<Vertex> deferred_ones;
  std::vector<Vertex> local(n, kNone);
  std::vector<bool> in_t(n, false);
  Colour colour = 0;

  while (true) {
    report.active_per_iteration.push_back(active.size());
    const SubProblem sub = induce(active, edges, local);
    const PreprocessResult pre = preprocess(sub.graph);
    if (!pre.ok()) throw NotLO2Colourable("the mod-2 system shows no LO 2-colouring exists");
    for (Vertex x : pre.fixed0) report.colouring.set(sub.to_original[x], colour);
    for (Vertex x : pre.fixed1) deferred_ones.push_back(sub.to_original[x]);

    const Hypergraph& residual = pre.residual;
    auto original = [&](Vertex r) { return sub.to_original[pre.residual_vertices[r]]; };

    if (residual.num_vertices() <= brute_threshold) {
      auto base = brute_force_lo2(residual);
      if (!base) throw NotLO2Colourable("the brute-force base case found no LO 2-colouring");
      for (Vertex r = 0; r < residual.num_vertices(); ++r) {
        report.colouring.set(original(r), colour + (*base)[r]);
      }
      report.brute_forced_vertices = residual.num_vertices();
      break;
    }

    const auto t = inner_step(residual);
    for (Vertex r : t) {
      in_t[r] = true;
      report.colouring.set(original(r), colour);
    }
    active.clear();
    for (Vertex r = 0; r < residual.num_vertices(); ++r) {
      if (!in_t[r]) active.push_back(original(r));
    }
    edges.clear();
    for (const Edge& e : residual.edges()) {
      if (std::none_of(e.begin(), e.end(), [&](Vertex r) { return in_t[r]; })) {
        std::array<Vertex, 3> buf{};
        for (std::size_t k = 0; k < e.size(); ++k) buf[k] = original(e[k]);
        edges.push_back(Edge::from({buf.data(), e.size()}));
      }
    }
    for (Vertex r : t) in_t[r] = false;
    ++colour;
    ++report.iterations;
  }

  // Every edge through a fixed 1 has its other vertices fixed to 0 at lower
  // colours, so all fixed 1s can share the top colour.
  for (Vertex x : deferred_ones) report.colouring.set(x, colour + 1);
  report.colours_used = report.colouring.colours_used();
  report.elapsed = Clock::now() - start;
  check_in_debug(h, report.colouring);
  return report;
}

SolveReport solve_mod2_edges(const Hypergraph& h) {
  const auto start = Clock::now();
  if (!h.is_three_uniform()) throw std::invalid_argument("input must be 3-uniform");
  const std::size_t n = h.num_vertices();

  SolveReport report;
  report.colouring = Colouring(n);
  std::vector<bool> done(n, false);  // coloured, or fixed to 1 and deferred
  std::vector<Vertex> deferred_ones;
  std::vector<Vertex> local(n, kNone);
  Colour colour = 0;

  while (true) {
    std::vector<Edge> untouched;
    std::vector<bool> seen(n, false);
    for (const Edge& e : h.edges()) {
      if (std::none_of(e.begin(), e.end(), [&](Vertex x) { return done[x]; })) {
        untouched.push_back(e);
        for (Vertex x : e) seen[x] = true;
      }
    }
    if (untouched.empty()) break;
    report.active_per_iteration.push_back(untouched.size());

    std::vector<Vertex> vertices;
    for (Vertex x = 0; x < n; ++x) {
      if (seen[x]) vertices.push_back(x);
    }
    const SubProblem sub = induce(vertices, untouched, local);
    const PreprocessResult pre = preprocess(sub.graph);
    if (!pre.ok()) throw NotLO2Colourable("the mod-2 system shows no LO 2-colouring exists");
    for (Vertex x : pre.fixed0) {
      report.colouring.set(sub.to_original[x], colour);
      done[sub.to_original[x]] = true;
    }
    for (Vertex x : pre.fixed1) {
      deferred_ones.push_back(sub.to_original[x]);
      done[sub.to_original[x]] = true;
    }
    if (pre.residual.num_edges() > 0) {
      for (Vertex r : inner_step_edges(pre.residual)) {
        const Vertex x = sub.to_original[pre.residual_vertices[r]];
        report.colouring.set(x, colour);
        done[x] = true;
      }
    }
    ++colour;
    ++report.iterations;
  }

  // Each leftover vertex is the last uncoloured vertex of its edges, and each
  // fixed 1 sits beside fixed 0s; one colour above everything serves both.
  for (Vertex x = 0; x < n; ++x) {
    if (!done[x]) report.colouring.set(x, colour);
  }
  for (Vertex x : deferred_ones) report.colouring.set(x, colour);
  report.colours_used = report.colouring.colours_used();
  report.elapsed = Clock::now() - start;
  check_in_debug(h, report.colouring);
  return report;
}

}  // namespace locolour
