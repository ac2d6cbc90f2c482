#include "locolour/hypergraph.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <sstream>
#include <unordered_set>

namespace locolour {

Edge::Edge(Vertex a, Vertex b) : v_{a, b, 0}, size_(2) {}

Edge::Edge(Vertex a, Vertex b, Vertex c) : v_{a, b, c}, size_(3) {}

Edge Edge::from(std::span<const Vertex> vertices) {
  if (vertices.size() == 2) return Edge(vertices[0], vertices[1]);
  if (vertices.size() == 3) return Edge(vertices[0], vertices[1], vertices[2]);
  throw std::invalid_argument("edge must have 2 or 3 vertices, got " +
                              std::to_string(vertices.size()));
}

bool Edge::contains(Vertex x) const {
  return std::find(begin(), end(), x) != end();
}

Hypergraph::Hypergraph(std::size_t n, std::vector<Edge> edges)
    : n_(n), edges_(std::move(edges)) {
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    for (std::size_t a = 0; a < e.size(); ++a) {
      if (e[a] >= n_) {
        throw std::invalid_argument("edge " + std::to_string(i) +
                                    " refers to vertex outside the hypergraph");
      }
      for (std::size_t b = a + 1; b < e.size(); ++b) {
        if (e[a] == e[b]) {
          throw std::invalid_argument("edge " + std::to_string(i) + " repeats a vertex");
        }
      }
    }
  }
}

bool Hypergraph::is_three_uniform() const {
  return std::all_of(edges_.begin(), edges_.end(),
                     [](const Edge& e) { return e.size() == 3; });
}

std::vector<std::vector<std::size_t>> Hypergraph::incidence() const {
  std::vector<std::vector<std::size_t>> inc(n_);
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    for (Vertex x : edges_[i]) inc[x].push_back(i);
  }
  return inc;
}

std::optional<Colour> Colouring::get(Vertex x) const {
  if (!is_coloured(x)) return std::nullopt;
  return colours_[x];
}

bool Colouring::complete() const {
  return std::none_of(colours_.begin(), colours_.end(),
                      [](Colour c) { return c == kUncoloured; });
}

std::size_t Colouring::colours_used() const {
  std::vector<Colour> seen;
  seen.reserve(colours_.size());
  for (Colour c : colours_) {
    if (c != kUncoloured) seen.push_back(c);
  }
  std::sort(seen.begin(), seen.end());
  return static_cast<std::size_t>(std::unique(seen.begin(), seen.end()) - seen.begin());
}

ParseError::ParseError(Kind kind, std::size_t line, const std::string& what)
    : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
      kind_(kind),
      line_(line) {}

namespace {

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) tokens.push_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

std::optional<std::uint64_t> to_uint(std::string_view token) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) return std::nullopt;
  return value;
}

// Calls fn(line_number, line) for every line with the trailing CR removed.
template <typename Fn>
void for_each_line(std::istream& in, Fn&& fn) {
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    fn(number, std::string_view(line));
  }
}

}  // namespace

Hypergraph parse_hypergraph(std::istream& in) {
  using K = ParseError::Kind;
  std::optional<std::size_t> n;
  std::size_t declared_m = 0;
  std::vector<Edge> edges;

  for_each_line(in, [&](std::size_t lineno, std::string_view line) {
    auto tokens = split(line);
    if (tokens.empty() || tokens[0] == "c") return;
    if (tokens[0] == "p") {
      if (n) throw ParseError(K::MalformedHeader, lineno, "duplicate header");
      if (tokens.size() != 4 || tokens[1] != "lo3") {
        throw ParseError(K::MalformedHeader, lineno, "expected 'p lo3 <n> <m>'");
      }
      auto nv = to_uint(tokens[2]);
      auto mv = to_uint(tokens[3]);
      if (!nv || !mv || *nv > std::numeric_limits<Vertex>::max()) {
        throw ParseError(K::MalformedHeader, lineno, "bad vertex or edge count");
      }
      n = *nv;
      declared_m = *mv;
      edges.reserve(std::min<std::size_t>(declared_m, 1u << 24));
      return;
    }
    if (tokens[0] == "e") {
      if (!n) throw ParseError(K::MissingHeader, lineno, "edge before header");
      if (tokens.size() != 4) {
        throw ParseError(K::WrongArity, lineno,
                         "edge must list exactly 3 vertices, got " +
                             std::to_string(tokens.size() - 1));
      }
      std::array<Vertex, 3> v{};
      for (std::size_t k = 0; k < 3; ++k) {
        auto id = to_uint(tokens[k + 1]);
        if (!id) throw ParseError(K::MalformedLine, lineno, "bad vertex id");
        if (*id == 0 || *id > *n) {
          throw ParseError(K::VertexOutOfRange, lineno,
                           "vertex " + std::string(tokens[k + 1]) + " outside 1.." +
                               std::to_string(*n));
        }
        v[k] = static_cast<Vertex>(*id - 1);
      }
      if (v[0] == v[1] || v[0] == v[2] || v[1] == v[2]) {
        throw ParseError(K::RepeatedVertex, lineno, "edge repeats a vertex");
      }
      edges.emplace_back(v[0], v[1], v[2]);
      return;
    }
    throw ParseError(K::MalformedLine, lineno, "unrecognised line");
  });

  if (!n) throw ParseError(K::MissingHeader, 0, "missing 'p lo3' header");
  if (edges.size() != declared_m) {
    throw ParseError(K::EdgeCountMismatch, 0,
                     "header declares " + std::to_string(declared_m) + " edges, found " +
                         std::to_string(edges.size()));
  }
  return Hypergraph(*n, std::move(edges));
}

Hypergraph parse_hypergraph(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_hypergraph(in);
}

std::string serialize_hypergraph(const Hypergraph& h) {
  if (!h.is_three_uniform()) {
    throw std::invalid_argument("only 3-uniform hypergraphs can be written");
  }
  std::string out = "p lo3 " + std::to_string(h.num_vertices()) + " " +
                    std::to_string(h.num_edges()) + "\n";
  for (const Edge& e : h.edges()) {
    out += "e " + std::to_string(e[0] + 1) + " " + std::to_string(e[1] + 1) + " " +
           std::to_string(e[2] + 1) + "\n";
  }
  return out;
}

Colouring parse_colouring(std::istream& in) {
  using K = ParseError::Kind;
  std::vector<Colour> colours;

  for_each_line(in, [&](std::size_t lineno, std::string_view line) {
    auto tokens = split(line);
    if (tokens.empty()) return;
    if (tokens.size() != 2) {
      throw ParseError(K::MalformedLine, lineno, "expected '<vertex> <colour>'");
    }
    if (!tokens[1].empty() && tokens[1][0] == '-') {
      throw ParseError(K::NegativeColour, lineno, "negative colour");
    }
    auto vertex = to_uint(tokens[0]);
    auto colour = to_uint(tokens[1]);
    if (!vertex || *vertex == 0 || *vertex > std::numeric_limits<Vertex>::max() ||
        !colour || *colour >= Colouring::kUncoloured) {
      throw ParseError(K::MalformedLine, lineno, "bad vertex or colour");
    }
    std::size_t x = *vertex - 1;
    if (x >= colours.size()) colours.resize(x + 1, Colouring::kUncoloured);
    if (colours[x] != Colouring::kUncoloured) {
      throw ParseError(K::DuplicateVertex, lineno,
                       "vertex " + std::string(tokens[0]) + " coloured twice");
    }
    colours[x] = static_cast<Colour>(*colour);
  });
  return Colouring(std::move(colours));
}

Colouring parse_colouring(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_colouring(in);
}

std::string serialize_colouring(const Colouring& c) {
  if (!c.complete()) throw std::invalid_argument("cannot serialise a partial colouring");
  std::string out;
  for (std::size_t x = 0; x < c.size(); ++x) {
    out += std::to_string(x + 1);
    out += ' ';
    out += std::to_string(c[static_cast<Vertex>(x)]);
    out += '\n';
  }
  return out;
}

}  // namespace locolour
