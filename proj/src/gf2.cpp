#include "locolour/gf2.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace locolour::gf2 {

BitVector& BitVector::operator^=(const BitVector& other) {
  assert(size_ == other.size_);
  xor_words(words_, other.words_);
  return *this;
}

BitVector& BitVector::operator|=(const BitVector& other) {
  assert(size_ == other.size_);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

BitVector& BitVector::operator&=(const BitVector& other) {
  assert(size_ == other.size_);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

BitVector BitVector::operator~() const {
  BitVector out(size_);
  for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] = ~words_[i];
  if (size_ % kWordBits) out.words_.back() &= (Word{1} << (size_ % kWordBits)) - 1;
  return out;
}

std::size_t BitVector::count() const {
  std::size_t total = 0;
  for (Word w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

bool BitVector::none() const {
  return std::all_of(words_.begin(), words_.end(), [](Word w) { return w == 0; });
}

std::optional<std::size_t> BitVector::highest() const {
  for (std::size_t i = words_.size(); i-- > 0;) {
    if (words_[i]) {
      return i * kWordBits + (kWordBits - 1 - static_cast<std::size_t>(std::countl_zero(words_[i])));
    }
  }
  return std::nullopt;
}

void xor_words(std::span<Word> dst, std::span<const Word> src) {
  assert(dst.size() == src.size());
  Word* d = dst.data();
  const Word* s = src.data();
  const std::size_t n = dst.size();
  for (std::size_t i = 0; i < n; ++i) d[i] ^= s[i];
}

void BitMatrix::xor_rows(std::size_t dst, std::size_t src, std::size_t from_word) {
  xor_words(row(dst).subspan(from_word), row(src).subspan(from_word));
}

void BitMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  std::swap_ranges(row(a).begin(), row(a).end(), row(b).begin());
}

BitVector multiply(const BitMatrix& a, const BitVector& v) {
  if (v.size() != a.cols()) throw std::invalid_argument("dimension mismatch in multiply");
  BitVector out(a.rows());
  auto vw = v.words();
  for (std::size_t r = 0; r < a.rows(); ++r) {
    auto rw = a.row(r);
    Word acc = 0;
    for (std::size_t i = 0; i < rw.size(); ++i) acc ^= rw[i] & vw[i];
    if (std::popcount(acc) & 1) out.set(r);
  }
  return out;
}

IncidenceSystem incidence_system(const Hypergraph& h) {
  IncidenceSystem sys{BitMatrix(h.num_edges(), h.num_vertices()), BitVector(h.num_edges())};
  for (std::size_t j = 0; j < h.num_edges(); ++j) {
    for (Vertex x : h.edge(j)) sys.matrix.set(j, x);
    sys.rhs.set(j);
  }
  return sys;
}

namespace {

struct Reduced {
  BitMatrix m;                       // augmented [A | b], reduced in place
  std::vector<std::size_t> pivots;   // pivot column of row i, for i < rank
};

// Gauss-Jordan on [A | b]. Only the first `cols` columns are pivot candidates.
Reduced reduce(BitMatrix m, std::size_t cols) {
  Reduced out{std::move(m), {}};
  BitMatrix& a = out.m;
  std::size_t next = 0;
  for (std::size_t c = 0; c < cols && next < a.rows(); ++c) {
    std::size_t pick = a.rows();
    for (std::size_t r = next; r < a.rows(); ++r) {
      if (a.test(r, c)) {
        pick = r;
        break;
      }
    }
    if (pick == a.rows()) continue;
    a.swap_rows(pick, next);
    // Every unprocessed row is zero left of column c, so is the pivot row.
    const std::size_t from = c / kWordBits;
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r != next && a.test(r, c)) a.xor_rows(r, next, from);
    }
    out.pivots.push_back(c);
    ++next;
  }
  return out;
}

}  // namespace

std::optional<AffineSpace2> solve_affine(const BitMatrix& a, const BitVector& b) {
  if (b.size() != a.rows()) throw std::invalid_argument("dimension mismatch in solve_affine");
  const std::size_t n = a.cols();
  BitMatrix aug(a.rows(), n + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    auto src = a.row(r);
    std::copy(src.begin(), src.end(), aug.row(r).begin());
    if (b.test(r)) aug.set(r, n);
  }
  Reduced red = reduce(std::move(aug), n);
  const std::size_t rank = red.pivots.size();
  for (std::size_t r = rank; r < red.m.rows(); ++r) {
    if (red.m.test(r, n)) return std::nullopt;
  }

  AffineSpace2 space;
  space.rank = rank;
  space.v0 = BitVector(n);
  std::vector<bool> is_pivot(n, false);
  for (std::size_t r = 0; r < rank; ++r) {
    is_pivot[red.pivots[r]] = true;
    if (red.m.test(r, n)) space.v0.set(red.pivots[r]);
  }
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    BitVector v(n);
    v.set(f);
    for (std::size_t r = 0; r < rank; ++r) {
      if (red.m.test(r, f)) v.set(red.pivots[r]);
    }
    space.basis.push_back(std::move(v));
    space.free_columns.push_back(f);
  }
  return space;
}

std::size_t rank(const BitMatrix& a) { return reduce(a, a.cols()).pivots.size(); }

std::vector<FixedCoordinate> fixed_coordinates(const AffineSpace2& space) {
  BitVector moving(space.num_variables());
  for (const BitVector& v : space.basis) moving |= v;
  std::vector<FixedCoordinate> out;
  for (std::size_t x = 0; x < space.num_variables(); ++x) {
    if (!moving.test(x)) out.push_back({x, space.v0.test(x)});
  }
  return out;
}

BitVector evaluate(const AffineSpace2& space, const BitVector& coefficients) {
  if (coefficients.size() != space.dimension()) {
    throw std::invalid_argument("coefficient vector length must equal the dimension");
  }
  BitVector v = space.v0;
  for (std::size_t i = 0; i < space.dimension(); ++i) {
    if (coefficients.test(i)) v ^= space.basis[i];
  }
  return v;
}

}  // namespace locolour::gf2
