#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "locolour/hypergraph.hpp"

namespace locolour::gf2 {

using Word = std::uint64_t;
inline constexpr std::size_t kWordBits = 64;

inline std::size_t words_for(std::size_t bits) { return (bits + kWordBits - 1) / kWordBits; }

/// Packed GF(2) vector. Bits past size() are kept zero.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t size) : size_(size), words_(words_for(size), 0) {}

  std::size_t size() const { return size_; }
  bool test(std::size_t i) const { return (words_[i / kWordBits] >> (i % kWordBits)) & 1u; }
  void set(std::size_t i, bool value = true) {
    Word mask = Word{1} << (i % kWordBits);
    if (value) {
      words_[i / kWordBits] |= mask;
    } else {
      words_[i / kWordBits] &= ~mask;
    }
  }
  void flip(std::size_t i) { words_[i / kWordBits] ^= Word{1} << (i % kWordBits); }

  BitVector& operator^=(const BitVector& other);
  BitVector& operator|=(const BitVector& other);
  BitVector& operator&=(const BitVector& other);
  BitVector operator~() const;

  std::size_t count() const;
  bool none() const;
  /// Index of the highest set bit, or nullopt when zero.
  std::optional<std::size_t> highest() const;

  std::span<const Word> words() const { return words_; }
  std::span<Word> words() { return words_; }

  friend bool operator==(const BitVector&, const BitVector&) = default;

 private:
  std::size_t size_ = 0;
  std::vector<Word> words_;
};

inline BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }
inline BitVector operator&(BitVector a, const BitVector& b) { return a &= b; }

/// Row-major packed GF(2) matrix, each row padded to whole words.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), stride_(words_for(cols)), data_(rows * stride_, 0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t stride() const { return stride_; }

  bool test(std::size_t r, std::size_t c) const {
    return (data_[r * stride_ + c / kWordBits] >> (c % kWordBits)) & 1u;
  }
  void set(std::size_t r, std::size_t c, bool value = true) {
    Word& w = data_[r * stride_ + c / kWordBits];
    Word mask = Word{1} << (c % kWordBits);
    w = value ? (w | mask) : (w & ~mask);
  }

  std::span<Word> row(std::size_t r) { return {data_.data() + r * stride_, stride_}; }
  std::span<const Word> row(std::size_t r) const {
    return {data_.data() + r * stride_, stride_};
  }

  /// row(dst) ^= row(src), on words [from_word, stride).
  void xor_rows(std::size_t dst, std::size_t src, std::size_t from_word = 0);
  void swap_rows(std::size_t a, std::size_t b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t stride_ = 0;
  std::vector<Word> data_;
};

/// XOR of src into dst over whole words.
void xor_words(std::span<Word> dst, std::span<const Word> src);

/// Matrix-vector product A·v over GF(2).
BitVector multiply(const BitMatrix& a, const BitVector& v);

/// Incidence matrix of a hypergraph and the all-ones right-hand side.
struct IncidenceSystem {
  BitMatrix matrix;
  BitVector rhs;
};

IncidenceSystem incidence_system(const Hypergraph& h);

/// Solution set v0 + span(basis) of a consistent system A·v = b.
///
/// One basis vector per free column of the reduced row echelon form:
/// basis[i] has a 1 at free_columns[i] and 0 at every other free column.
struct AffineSpace2 {
  BitVector v0;
  std::vector<BitVector> basis;
  std::vector<std::size_t> free_columns;
  std::size_t rank = 0;

  std::size_t num_variables() const { return v0.size(); }
  std::size_t dimension() const { return basis.size(); }
};

/// Gauss-Jordan elimination pivoting on the lowest available column.
/// Returns nullopt when the system is inconsistent.
std::optional<AffineSpace2> solve_affine(const BitMatrix& a, const BitVector& b);

/// Rank of A over GF(2).
std::size_t rank(const BitMatrix& a);

struct FixedCoordinate {
  std::size_t index;
  bool value;

  friend bool operator==(const FixedCoordinate&, const FixedCoordinate&) = default;
};

/// Coordinates constant over the whole solution set, in ascending order.
std::vector<FixedCoordinate> fixed_coordinates(const AffineSpace2& space);

/// v0 XOR the basis vectors selected by `coefficients` (length dimension()).
BitVector evaluate(const AffineSpace2& space, const BitVector& coefficients);

}  // namespace locolour::gf2
