#include <doctest.h>

#include "locolour/hypergraph.hpp"
#include "support.hpp"

using namespace locolour;

namespace {

ParseError::Kind parse_kind(std::string_view text) {
  try {
    parse_hypergraph(text);
  } catch (const ParseError& e) {
    return e.kind();
  }
  FAIL("expected a parse error");
  return ParseError::Kind::MalformedLine;
}

ParseError::Kind colouring_kind(std::string_view text) {
  try {
    parse_colouring(text);
  } catch (const ParseError& e) {
    return e.kind();
  }
  FAIL("expected a parse error");
  return ParseError::Kind::MalformedLine;
}

}  // namespace

TEST_CASE("parse single edge") {
  const Hypergraph h = parse_hypergraph("p lo3 3 1\ne 1 2 3\n");
  CHECK(h.num_vertices() == 3);
  REQUIRE(h.num_edges() == 1);
  CHECK(h.edge(0)[0] == 0);
  CHECK(h.edge(0)[1] == 1);
  CHECK(h.edge(0)[2] == 2);
}

TEST_CASE("parse two overlapping edges") {
  const Hypergraph h = parse_hypergraph("p lo3 4 2\ne 1 2 3\ne 2 3 4\n");
  CHECK(h.num_vertices() == 4);
  CHECK(h.num_edges() == 2);
  CHECK(h.edge(1).contains(3));
  CHECK_FALSE(h.edge(1).contains(0));
}

TEST_CASE("comments, blank lines and CRLF are accepted") {
  const Hypergraph h = parse_hypergraph("c generated\r\n\np lo3 3 1\r\nc mid\ne 3 1 2\r\n");
  CHECK(h.num_edges() == 1);
  CHECK(h.edge(0)[0] == 2);
}

TEST_CASE("parse errors") {
  using K = ParseError::Kind;
  CHECK(parse_kind("p lo3 3 1\ne 1 1 2\n") == K::RepeatedVertex);
  CHECK(parse_kind("e 1 2 3\n") == K::MissingHeader);
  CHECK(parse_kind("") == K::MissingHeader);
  CHECK(parse_kind("p lo2 3 1\ne 1 2 3\n") == K::MalformedHeader);
  CHECK(parse_kind("p lo3 x 1\n") == K::MalformedHeader);
  CHECK(parse_kind("p lo3 3 0\np lo3 3 0\n") == K::MalformedHeader);
  CHECK(parse_kind("p lo3 3 1\ne 1 2 4\n") == K::VertexOutOfRange);
  CHECK(parse_kind("p lo3 3 1\ne 0 1 2\n") == K::VertexOutOfRange);
  CHECK(parse_kind("p lo3 3 1\ne 1 2\n") == K::WrongArity);
  CHECK(parse_kind("p lo3 4 1\ne 1 2 3 4\n") == K::WrongArity);
  CHECK(parse_kind("p lo3 3 2\ne 1 2 3\n") == K::EdgeCountMismatch);
  CHECK(parse_kind("p lo3 3 1\ne 1 2 x\n") == K::MalformedLine);
  CHECK(parse_kind("p lo3 3 1\nq\n") == K::MalformedLine);
}

TEST_CASE("parse error carries the line number") {
  try {
    parse_hypergraph("p lo3 3 2\ne 1 2 3\ne 1 2 2\n");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("serialise colouring") {
  CHECK(serialize_colouring(support::from_vector({0, 1})) == "1 0\n2 1\n");
  CHECK_THROWS_AS(serialize_colouring(Colouring(2)), std::invalid_argument);
}

TEST_CASE("colouring errors") {
  using K = ParseError::Kind;
  CHECK(colouring_kind("1 0\n1 1\n") == K::DuplicateVertex);
  CHECK(colouring_kind("1 -1\n") == K::NegativeColour);
  CHECK(colouring_kind("1\n") == K::MalformedLine);
  CHECK(colouring_kind("0 1\n") == K::MalformedLine);
}

TEST_CASE("colouring gaps stay uncoloured") {
  const Colouring c = parse_colouring("3 2\n1 0\n");
  CHECK(c.size() == 3);
  CHECK_FALSE(c.complete());
  CHECK_FALSE(c.get(1).has_value());
  CHECK(c.get(2) == 2u);
}

TEST_CASE("edge and hypergraph validation") {
  CHECK_THROWS_AS(Hypergraph(3, {Edge(1, 1)}), std::invalid_argument);
  CHECK_THROWS_AS(Hypergraph(3, {Edge(1, 2, 1)}), std::invalid_argument);
  const Vertex four[] = {0, 1, 2, 3};
  CHECK_THROWS_AS(Edge::from(four), std::invalid_argument);
  CHECK_THROWS_AS(Hypergraph(2, {Edge(0, 1, 2)}), std::invalid_argument);
  const Hypergraph mixed(3, {Edge(0, 1), Edge(0, 1, 2)});
  CHECK_FALSE(mixed.is_three_uniform());
  CHECK_THROWS_AS(serialize_hypergraph(mixed), std::invalid_argument);
}

TEST_CASE("incidence lists") {
  const Hypergraph h = parse_hypergraph("p lo3 4 2\ne 1 2 3\ne 2 3 4\n");
  const auto inc = h.incidence();
  CHECK(inc[0] == std::vector<std::size_t>{0});
  CHECK(inc[1] == std::vector<std::size_t>{0, 1});
  CHECK(inc[3] == std::vector<std::size_t>{1});
}

TEST_CASE("colours_used counts distinct colours") {
  CHECK(support::from_vector({0, 5, 5, 9}).colours_used() == 3);
  CHECK(Colouring(0).colours_used() == 0);
}

TEST_CASE("round trip on random hypergraphs and colourings") {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 3 + rng.below(40);
    const Hypergraph h = support::random_3graph(n, rng.below(80), rng);
    const std::string text = serialize_hypergraph(h);
    CHECK(parse_hypergraph(text) == h);
    CHECK(serialize_hypergraph(parse_hypergraph(text)) == text);

    std::vector<unsigned> raw(n);
    for (auto& v : raw) v = static_cast<unsigned>(rng.below(1000));
    const Colouring c = support::from_vector(raw);
    CHECK(parse_colouring(serialize_colouring(c)) == c);
  }
}
