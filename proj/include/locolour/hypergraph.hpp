#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace locolour {

// Vertices are 0-based in memory. Text formats use 1-based ids.
using Vertex = std::uint32_t;
using Colour = std::uint32_t;

/// An edge of two or three distinct vertices.
class Edge {
 public:
  Edge(Vertex a, Vertex b);
  Edge(Vertex a, Vertex b, Vertex c);
  static Edge from(std::span<const Vertex> vertices);

  std::size_t size() const { return size_; }
  std::span<const Vertex> vertices() const { return {v_.data(), size_}; }
  Vertex operator[](std::size_t i) const { return v_[i]; }
  const Vertex* begin() const { return v_.data(); }
  const Vertex* end() const { return v_.data() + size_; }
  bool contains(Vertex x) const;

  friend bool operator==(const Edge& a, const Edge& b) {
    return a.size_ == b.size_ && a.v_ == b.v_;
  }

 private:
  std::array<Vertex, 3> v_{};
  std::uint8_t size_ = 0;
};

/// Vertex count plus an ordered edge list. Validated on construction.
class Hypergraph {
 public:
  Hypergraph() = default;
  /// Throws std::invalid_argument if an edge refers to a vertex >= n or
  /// repeats a vertex.
  Hypergraph(std::size_t n, std::vector<Edge> edges);

  std::size_t num_vertices() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(std::size_t i) const { return edges_[i]; }
  bool is_three_uniform() const;

  /// For each vertex, the indices of the edges containing it.
  std::vector<std::vector<std::size_t>> incidence() const;

  friend bool operator==(const Hypergraph&, const Hypergraph&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
};

/// Total or partial vertex colouring.
class Colouring {
 public:
  static constexpr Colour kUncoloured = std::numeric_limits<Colour>::max();

  Colouring() = default;
  explicit Colouring(std::size_t n) : colours_(n, kUncoloured) {}
  explicit Colouring(std::vector<Colour> colours) : colours_(std::move(colours)) {}

  std::size_t size() const { return colours_.size(); }
  bool is_coloured(Vertex x) const {
    return x < colours_.size() && colours_[x] != kUncoloured;
  }
  std::optional<Colour> get(Vertex x) const;
  /// Unchecked access; kUncoloured for uncoloured vertices.
  Colour operator[](Vertex x) const { return colours_[x]; }
  void set(Vertex x, Colour c) { colours_[x] = c; }
  void clear(Vertex x) { colours_[x] = kUncoloured; }

  bool complete() const;
  std::size_t colours_used() const;
  std::span<const Colour> raw() const { return colours_; }

  friend bool operator==(const Colouring&, const Colouring&) = default;

 private:
  std::vector<Colour> colours_;
};

class ParseError : public std::runtime_error {
 public:
  enum class Kind {
    MissingHeader,
    MalformedHeader,
    MalformedLine,
    VertexOutOfRange,
    RepeatedVertex,
    WrongArity,
    EdgeCountMismatch,
    DuplicateVertex,
    NegativeColour,
  };

  ParseError(Kind kind, std::size_t line, const std::string& what);

  Kind kind() const { return kind_; }
  /// 1-based line number, 0 when the error concerns the whole input.
  std::size_t line() const { return line_; }

 private:
  Kind kind_;
  std::size_t line_;
};

// Hypergraph text format:
//   c <comment>
//   p lo3 <n> <m>
//   e <v1> <v2> <v3>      (m times, 1-based ids)
Hypergraph parse_hypergraph(std::istream& in);
Hypergraph parse_hypergraph(std::string_view text);
/// Requires a 3-uniform hypergraph.
std::string serialize_hypergraph(const Hypergraph& h);

// Colouring text format: "<vertex> <colour>\n" per vertex, ascending, 1-based.
// Vertices missing from a parsed file are left uncoloured.
Colouring parse_colouring(std::istream& in);
Colouring parse_colouring(std::string_view text);
/// Throws std::invalid_argument if the colouring is not complete.
std::string serialize_colouring(const Colouring& c);

}  // namespace locolour
