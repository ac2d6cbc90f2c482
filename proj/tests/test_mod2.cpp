#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "locolour/gf2.hpp"
#include "locolour/instances.hpp"
#include "locolour/mod2.hpp"
#include "locolour/verify.hpp"
#include "support.hpp"

using namespace locolour;

namespace {

std::size_t intersection(const Edge& e, const std::set<Vertex>& t) {
  return static_cast<std::size_t>(std::count_if(e.begin(), e.end(), [&](Vertex x) { return t.count(x) > 0; }));
}

void check_t_contract(const Hypergraph& h, const std::vector<Vertex>& t_list,
                      bool half = true) {
  const std::set<Vertex> t(t_list.begin(), t_list.end());
  if (half) CHECK(2 * t.size() >= h.num_vertices());
  for (const Edge& e : h.edges()) {
    const std::size_t k = intersection(e, t);
    if (e.size() == 3) {
      CHECK((k == 0 || k == 2));
    } else {
      CHECK(k == 1);
    }
  }
}

// Residuals of planted instances that still have work to do.
std::vector<Hypergraph> nontrivial_residuals(std::size_t count, std::uint64_t seed) {
  std::vector<Hypergraph> out;
  Rng rng(seed);
  while (out.size() < count) {
    const std::size_t n = 8 + rng.below(120);
    const std::size_t m = n / 2 + rng.below(n);
    const auto inst = gen_planted(n, std::min(m, planted_capacity(n, 0.25)), 0.25, rng.next());
    auto pre = preprocess(inst.hypergraph);
    REQUIRE(pre.ok());
    if (pre.residual.num_edges() > 0) out.push_back(std::move(pre.residual));
  }
  return out;
}

}  // namespace

TEST_CASE("preprocess: single edge fixes nothing") {
  const Hypergraph h(3, {Edge(0, 1, 2)});
  const auto pre = preprocess(h);
  REQUIRE(pre.ok());
  CHECK(pre.fixed0.empty());
  CHECK(pre.fixed1.empty());
  CHECK(pre.residual == h);
  CHECK(pre.residual_vertices == std::vector<Vertex>{0, 1, 2});
}

TEST_CASE("preprocess: H3 is fully determined") {
  const auto pre = preprocess(support::h3());
  REQUIRE(pre.ok());
  CHECK(pre.fixed1 == std::vector<Vertex>{0});
  CHECK(pre.fixed0 == std::vector<Vertex>{1, 2, 3});
  CHECK(pre.residual.num_vertices() == 0);
  CHECK(pre.residual.num_edges() == 0);
}

TEST_CASE("preprocess: a repeated edge behaves like one edge") {
  const auto pre = preprocess(Hypergraph(3, {Edge(0, 1, 2), Edge(0, 1, 2)}));
  REQUIRE(pre.ok());
  CHECK(pre.fixed0.empty());
  CHECK(pre.fixed1.empty());
  CHECK(pre.residual.num_vertices() == 3);
}

TEST_CASE("preprocess: complete 3-graph on four vertices has no LO 2-colouring") {
  const Hypergraph k4(4, {Edge(0, 1, 2), Edge(0, 1, 3), Edge(0, 2, 3), Edge(1, 2, 3)});
  CHECK_FALSE(preprocess(k4).ok());
  CHECK_THROWS_AS(solve_mod2(k4), NotLO2Colourable);
  CHECK_THROWS_AS(solve_mod2_edges(k4), NotLO2Colourable);
}

TEST_CASE("preprocess agrees with enumeration on random small hypergraphs") {
  Rng rng(101);
  for (int t = 0; t < 2000; ++t) {
    const std::size_t n = 3 + rng.below(4);
    const Hypergraph h = support::random_3graph(n, 1 + rng.below(2 * n), rng);
    const auto sols = support::all_lo2(h);
    const auto pre = preprocess(h);
    if (!pre.ok()) {
      CHECK(sols.empty());
      continue;
    }
    for (Vertex x : pre.fixed0) {
      for (auto s : sols) CHECK(((s >> x) & 1u) == 0);
    }
    for (Vertex x : pre.fixed1) {
      for (auto s : sols) CHECK(((s >> x) & 1u) == 1);
    }
    // Residual edges keep only unfixed vertices.
    CHECK(pre.residual.num_vertices() == n - pre.fixed0.size() - pre.fixed1.size());
  }
}

TEST_CASE("residual systems fix no variable") {
  for (const Hypergraph& r : nontrivial_residuals(50, 4)) {
    const auto sys = gf2::incidence_system(r);
    const auto space = gf2::solve_affine(sys.matrix, sys.rhs);
    REQUIRE(space);
    CHECK(gf2::fixed_coordinates(*space).empty());
  }
}

TEST_CASE("inner_step examples") {
  const auto t1 = inner_step(Hypergraph(3, {Edge(0, 1, 2)}));
  CHECK(t1.size() == 2);

  const Hypergraph pairs(4, {Edge(0, 1), Edge(2, 3)});
  const auto t2 = inner_step(pairs);
  CHECK(t2.size() == 2);
  check_t_contract(pairs, t2);

  CHECK_THROWS_AS(inner_step(support::h3()), std::logic_error);
}

TEST_CASE("inner_step contract on residuals") {
  for (const Hypergraph& r : nontrivial_residuals(150, 8)) {
    check_t_contract(r, inner_step(r));
    check_t_contract(r, inner_step_edges(r), false);
  }
}

TEST_CASE("inner_step_edges leaves at most a quarter of the 3-edges all-ones") {
  for (const Hypergraph& r : nontrivial_residuals(150, 12)) {
    const auto t_list = inner_step_edges(r);
    const std::set<Vertex> t(t_list.begin(), t_list.end());
    std::size_t threes = 0;
    std::size_t missed = 0;
    for (const Edge& e : r.edges()) {
      if (e.size() != 3) continue;
      ++threes;
      missed += intersection(e, t) == 0;
    }
    CHECK(4 * missed <= threes);
  }
}

TEST_CASE("all-ones estimator matches exhaustive completion") {
  Rng rng(55);
  int checked = 0;
  for (int t = 0; t < 400; ++t) {
    const std::size_t n = 3 + rng.below(8);
    const Hypergraph h = support::random_23graph(n, 1 + rng.below(n), rng);
    const auto sys = gf2::incidence_system(h);
    const auto space = gf2::solve_affine(sys.matrix, sys.rhs);
    if (!space) continue;
    const std::size_t r = space->dimension();
    const AllOnesEstimator est(h, *space);
    for (std::size_t step = 0; step <= r; ++step) {
      // A random prefix of coefficients.
      gf2::BitVector prefix(r);
      for (std::size_t i = 0; i < step; ++i) prefix.set(i, rng.below(2));
      const gf2::BitVector partial = gf2::evaluate(*space, prefix);
      for (std::size_t e = 0; e < h.num_edges(); ++e) {
        // Count completions that make the whole edge evaluate to 1.
        std::size_t hits = 0;
        const std::size_t rest = r - step;
        for (std::uint32_t tail = 0; tail < (1u << rest); ++tail) {
          gf2::BitVector coeff = prefix;
          for (std::size_t i = 0; i < rest; ++i) coeff.set(step + i, (tail >> i) & 1u);
          const gf2::BitVector v = gf2::evaluate(*space, coeff);
          const Edge& edge = h.edge(e);
          hits += std::all_of(edge.begin(), edge.end(), [&](Vertex x) { return v.test(x); });
        }
        // weight / 8 == hits / 2^rest
        CHECK(est.weight(e, step, partial) * (std::size_t{1} << rest) == 8 * hits);
        ++checked;
      }
    }
  }
  CHECK(checked > 1000);
}

TEST_CASE("brute_force_lo2 examples") {
  const auto single = brute_force_lo2(Hypergraph(3, {Edge(0, 1, 2)}));
  REQUIRE(single);
  CHECK(single->colours_used() == 2);
  CHECK((*single)[0] + (*single)[1] + (*single)[2] == 1);

  CHECK_FALSE(brute_force_lo2(Hypergraph(3, {Edge(0, 1), Edge(0, 2), Edge(1, 2)})));

  const auto empty = brute_force_lo2(Hypergraph(4, {}));
  REQUIRE(empty);
  CHECK(*empty == Colouring(std::vector<Colour>(4, 0)));
}

TEST_CASE("brute_force_lo2 agrees with enumeration") {
  Rng rng(66);
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = 2 + rng.below(8);
    const Hypergraph h = support::random_23graph(n, rng.below(2 * n), rng);
    const auto sols = support::all_lo2(h);
    const auto found = brute_force_lo2(h);
    REQUIRE(found.has_value() == !sols.empty());
    if (!found) continue;
    std::uint32_t mask = 0;
    for (Vertex x = 0; x < n; ++x) mask |= std::uint32_t{(*found)[x]} << x;
    CHECK(std::find(sols.begin(), sols.end(), mask) != sols.end());
  }
}

TEST_CASE("solve_mod2 examples") {
  const Hypergraph single(3, {Edge(0, 1, 2)});
  const auto r1 = solve_mod2(single);
  CHECK(verify_lo_colouring(single, r1.colouring).valid);
  CHECK(r1.colours_used == 2);

  const auto r2 = solve_mod2(support::h3());
  CHECK(verify_lo_colouring(support::h3(), r2.colouring).valid);
  CHECK(r2.colours_used == 2);
  CHECK(r2.colouring[0] > r2.colouring[1]);
  CHECK(r2.colouring[1] == 0);
  CHECK(r2.colouring[2] == 0);
  CHECK(r2.colouring[3] == 0);

  const auto r3 = solve_mod2_edges(single);
  CHECK(verify_lo_colouring(single, r3.colouring).valid);
  CHECK(r3.colours_used <= 2);
}

TEST_CASE("solve_mod2 rejects bad thresholds and non-uniform input") {
  const Hypergraph single(3, {Edge(0, 1, 2)});
  CHECK_THROWS_AS(solve_mod2(single, 0), std::invalid_argument);
  CHECK_THROWS_AS(solve_mod2(single, 21), std::invalid_argument);
  CHECK(max_brute_threshold(1u << 12) == 24);
  CHECK_NOTHROW(solve_mod2(single, 1));
  CHECK_THROWS_AS(solve_mod2(Hypergraph(3, {Edge(0, 1)})), std::invalid_argument);
}

TEST_CASE("planted instances: validity, bounds, halving and quartering") {
  Rng rng(2718);
  for (int t = 0; t < 120; ++t) {
    const std::size_t n = 4 + rng.below(400);
    const std::size_t m = std::min(n + rng.below(3 * n + 1), planted_capacity(n, 0.25));
    const double frac = 0.1 + 0.3 * static_cast<double>(rng.below(100)) / 100;
    const auto inst = gen_planted(n, std::max<std::size_t>(m, 1), frac, rng.next());
    const Hypergraph& h = inst.hypergraph;
    CAPTURE(n);
    CAPTURE(m);

    for (std::size_t threshold : {std::size_t{1}, std::size_t{4}, kDefaultBruteThreshold}) {
      const auto r = solve_mod2(h, threshold);
      CHECK(verify_lo_colouring(h, r.colouring).valid);
      CHECK(std::pow(2.0, static_cast<double>(r.colours_used)) <= static_cast<double>(n));
      const auto& act = r.active_per_iteration;
      for (std::size_t i = 1; i < act.size(); ++i) CHECK(2 * act[i] <= act[i - 1]);
      const double limit = std::ceil(std::log2(static_cast<double>(n) / static_cast<double>(threshold)));
      CHECK(static_cast<double>(r.iterations) <= std::max(0.0, limit));
    }

    const auto e = solve_mod2_edges(h);
    CHECK(verify_lo_colouring(h, e.colouring).valid);
    CHECK(e.colours_used <= 2 + 0.5 * std::log2(static_cast<double>(h.num_edges())));
    const auto& act = e.active_per_iteration;
    for (std::size_t i = 1; i < act.size(); ++i) CHECK(4 * act[i] <= act[i - 1]);
  }
}

TEST_CASE("solvers are deterministic") {
  const auto inst = gen_planted(300, 700, 0.2, 99);
  CHECK(solve_mod2(inst.hypergraph).colouring == solve_mod2(inst.hypergraph).colouring);
  CHECK(solve_mod2_edges(inst.hypergraph).colouring ==
        solve_mod2_edges(inst.hypergraph).colouring);
}

TEST_CASE("solvers never beat the oracle and succeed exactly when it finds a 2-colouring") {
  Rng rng(404);
  for (int t = 0; t < 400; ++t) {
    const std::size_t n = 3 + rng.below(4);
    const Hypergraph h = support::random_3graph(n, 1 + rng.below(n + 2), rng);
    const bool colourable = !support::all_lo2(h).empty();
    const auto best = support::min_lo_colours(h, static_cast<unsigned>(n));
    for (int algo = 0; algo < 2; ++algo) {
      try {
        const auto r = algo == 0 ? solve_mod2(h) : solve_mod2_edges(h);
        CHECK(colourable);
        CHECK(verify_lo_colouring(h, r.colouring).valid);
        REQUIRE(best);
        CHECK(r.colours_used >= *best);
      } catch (const NotLO2Colourable&) {
        CHECK_FALSE(colourable);
      }
    }
  }
}
