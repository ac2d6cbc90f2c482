#include "locolour/rational.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <exception>
#include <thread>

#include "locolour/simplex.hpp"
#include "locolour/verify.hpp"

namespace locolour {

namespace {

using Clock = std::chrono::steady_clock;

// Sign of q - 2^k, for q > 0.
int compare_pow2(const BigRational& q, long k) {
  mpz_class lhs = q.get_num();
  mpz_class rhs = q.get_den();
  if (k >= 0) {
    mpz_mul_2exp(rhs.get_mpz_t(), rhs.get_mpz_t(), static_cast<mp_bitcnt_t>(k));
  } else {
    mpz_mul_2exp(lhs.get_mpz_t(), lhs.get_mpz_t(), static_cast<mp_bitcnt_t>(-k));
  }
  return cmp(lhs, rhs);
}

// k with 2^k <= q < 2^(k+1), for q > 0.
long floor_log2(const BigRational& q) {
  long k = static_cast<long>(mpz_sizeinbase(q.get_num_mpz_t(), 2)) -
           static_cast<long>(mpz_sizeinbase(q.get_den_mpz_t(), 2));
  while (compare_pow2(q, k) < 0) --k;
  while (compare_pow2(q, k + 1) >= 0) ++k;
  return k;
}

// Upper bound on atanh-series value 2*sum z^(2j+1)/(2j+1) = ln((1+z)/(1-z)),
// for 0 <= z <= 1/3: partial sum plus a geometric bound on the tail.
BigRational ln_series_upper(const BigRational& z, int terms) {
  BigRational sum = 0;
  BigRational power = z;
  const BigRational z2 = z * z;
  for (int j = 0; j < terms; ++j) {
    sum += power / (2 * j + 1);
    power *= z2;
  }
  const BigRational tail = power / ((2 * terms + 1) * (1 - z2));
  return 2 * (sum + tail);
}

}  // namespace

RationalSystem::RationalSystem(const Hypergraph& h) : h_(&h) {
  const std::size_t n = h.num_vertices();
  std::vector<long> pivot_row(n, -1);
  std::vector<std::size_t> nz;
  mpq_class tmp;

  for (const Edge& e : h.edges()) {
    RationalVector row(n);
    for (Vertex x : e) row[x] = 1;
    // Stored rows vanish on every other pivot column, so one pass clears all
    // pivot entries and fill-in lands on free columns only.
    for (Vertex x : e) {
      if (pivot_row[x] < 0 || sgn(row[x]) == 0) continue;
      const BigRational f = row[x];
      const RationalVector& p = rows_[static_cast<std::size_t>(pivot_row[x])];
      for (std::size_t k = 0; k < n; ++k) {
        if (sgn(p[k]) == 0) continue;
        mpq_mul(tmp.get_mpq_t(), f.get_mpq_t(), p[k].get_mpq_t());
        mpq_sub(row[k].get_mpq_t(), row[k].get_mpq_t(), tmp.get_mpq_t());
      }
    }
    nz.clear();
    for (std::size_t k = 0; k < n; ++k) {
      if (sgn(row[k]) != 0) nz.push_back(k);
    }
    if (nz.empty()) continue;

    const std::size_t c = nz.front();
    const BigRational inv = 1 / row[c];
    for (std::size_t k : nz) row[k] *= inv;
    for (RationalVector& other : rows_) {
      if (sgn(other[c]) == 0) continue;
      const BigRational f = other[c];
      for (std::size_t k : nz) {
        mpq_mul(tmp.get_mpq_t(), f.get_mpq_t(), row[k].get_mpq_t());
        mpq_sub(other[k].get_mpq_t(), other[k].get_mpq_t(), tmp.get_mpq_t());
      }
    }
    pivot_row[c] = static_cast<long>(rows_.size());
    rows_.push_back(std::move(row));
    pivots_.push_back(c);
  }
}

std::vector<std::size_t> RationalSystem::free_columns() const {
  std::vector<bool> is_pivot(num_variables(), false);
  for (std::size_t c : pivots_) is_pivot[c] = true;
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < num_variables(); ++c) {
    if (!is_pivot[c]) out.push_back(c);
  }
  return out;
}

RationalVector RationalSystem::apply(const RationalVector& v) const {
  if (v.size() != num_variables()) throw std::invalid_argument("vector length mismatch");
  RationalVector out(h_->num_edges());
  for (std::size_t j = 0; j < h_->num_edges(); ++j) {
    for (Vertex x : h_->edge(j)) out[j] += v[x];
  }
  return out;
}

std::vector<RationalVector> nullspace_q(const RationalSystem& system) {
  std::vector<RationalVector> basis;
  for (std::size_t f : system.free_columns()) {
    RationalVector z(system.num_variables());
    z[f] = 1;
    for (std::size_t k = 0; k < system.rank(); ++k) {
      z[system.pivots()[k]] = -system.rows()[k][f];
    }
    basis.push_back(std::move(z));
  }
  return basis;
}

RationalVector find_vi(const RationalSystem& system, Vertex i) {
  const std::size_t n = system.num_variables();
  if (i >= n) throw std::invalid_argument("find_vi: vertex out of range");
  const BigRational half(1, 2);

  lp::Problem problem;
  problem.num_variables = n;
  problem.rows = system.rows();
  problem.rhs.assign(system.rank(), 0);
  problem.lower.assign(n, -1);
  problem.upper.assign(n, 1);
  problem.lower[i] = half;
  problem.upper[i] = half;

  lp::Result result = lp::solve(problem);
  if (result.status != lp::Status::Optimal) {
    throw Infeasible(i, "no v with A v = 0, v_" + std::to_string(i + 1) +
                            " = 1/2 and |v| <= 1: the input has no LO 2-colouring");
  }

  RationalVector v = std::move(result.x);
  const auto image = system.apply(v);
  const bool in_kernel =
      std::all_of(image.begin(), image.end(), [](const BigRational& q) { return sgn(q) == 0; });
  const bool boxed = std::all_of(v.begin(), v.end(),
                                 [](const BigRational& q) { return abs(q) <= 1; });
  if (!in_kernel || v[i] != half || !boxed) {
    throw std::logic_error("find_vi: linear program returned a point violating its constraints");
  }
  return v;
}

std::vector<RationalVector> find_all_vi(const RationalSystem& system, unsigned threads) {
  const std::size_t n = system.num_variables();
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));

  std::vector<RationalVector> out(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        out[i] = find_vi(system, static_cast<Vertex>(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

RationalVector combine(const std::vector<RationalVector>& basis,
                       const std::vector<std::int64_t>& numerators) {
  if (basis.size() != numerators.size()) throw std::invalid_argument("combine: size mismatch");
  if (basis.empty()) return {};
  const std::size_t n = basis.front().size();
  RationalVector u(n);
  mpq_class term;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (numerators[i] == 0) continue;
    const mpq_class k(mpz_class(static_cast<long>(numerators[i])));
    for (std::size_t x = 0; x < n; ++x) {
      if (sgn(basis[i][x]) == 0) continue;
      mpq_mul(term.get_mpq_t(), k.get_mpq_t(), basis[i][x].get_mpq_t());
      mpq_add(u[x].get_mpq_t(), u[x].get_mpq_t(), term.get_mpq_t());
    }
  }
  for (auto& q : u) mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), 31);
  return u;
}

RationalVector sample_u(const std::vector<RationalVector>& basis, Rng& rng) {
  constexpr std::int64_t kGrid = std::int64_t{1} << 31;
  std::vector<std::int64_t> numerators(basis.size());
  for (auto& k : numerators) k = rng.between(-kGrid, kGrid);
  return combine(basis, numerators);
}

BigRational max_threshold_squared(std::size_t n) {
  if (n < 2) return 0;
  constexpr int kTerms = 40;
  const long k = static_cast<long>(std::bit_width(n)) - 1;
  const BigRational t(mpz_class(static_cast<unsigned long>(n)),
                      mpz_class(static_cast<unsigned long>(std::size_t{1} << k)));
  // ln 2 = series(1/3); ln t = series((t-1)/(t+1)) with t in [1, 2).
  BigRational ln_upper = k * ln_series_upper(BigRational(1, 3), kTerms);
  if (t != 1) ln_upper += ln_series_upper((t - 1) / (t + 1), kTerms);
  BigRational bound = 4 * BigRational(mpz_class(static_cast<unsigned long>(n))) * ln_upper;
  // Round up onto the 2^-40 grid to keep the comparisons cheap.
  mpq_mul_2exp(bound.get_mpq_t(), bound.get_mpq_t(), 40);
  mpz_class ceil_num;
  mpz_cdiv_q(ceil_num.get_mpz_t(), bound.get_num_mpz_t(), bound.get_den_mpz_t());
  BigRational rounded(ceil_num);
  mpq_div_2exp(rounded.get_mpq_t(), rounded.get_mpq_t(), 40);
  return rounded;
}

long ceil_log2(const BigRational& q) {
  if (sgn(q) <= 0) throw std::invalid_argument("ceil_log2: argument must be positive");
  const long k = floor_log2(q);
  return compare_pow2(q, k) == 0 ? k : k + 1;
}

SampleVerdict judge_sample(const RationalVector& u, const BigRational& threshold_squared) {
  if (std::any_of(u.begin(), u.end(), [](const BigRational& q) { return sgn(q) == 0; })) {
    return SampleVerdict::ZeroCoordinate;
  }
  const BigRational min_bound(1, 4 * static_cast<unsigned long>(u.size()));
  if (std::any_of(u.begin(), u.end(), [&](const BigRational& q) { return abs(q) <= min_bound; })) {
    return SampleVerdict::MinTooSmall;
  }
  if (std::any_of(u.begin(), u.end(),
                  [&](const BigRational& q) { return q * q >= threshold_squared; })) {
    return SampleVerdict::MaxTooLarge;
  }
  return SampleVerdict::Accepted;
}

UnbalancedColouring unbalanced_colouring(const RationalVector& u) {
  if (u.empty()) return {};
  BigRational top = 0;
  BigRational bottom = abs(u.front());
  for (const auto& q : u) {
    if (sgn(q) == 0) throw ZeroCoordinate("unbalanced_colouring: zero coordinate");
    const BigRational a = abs(q);
    if (a > top) top = a;
    if (a < bottom) bottom = a;
  }

  std::vector<Colour> provisional(u.size());
  for (std::size_t x = 0; x < u.size(); ++x) {
    const BigRational a = abs(u[x]) / top;  // in (0, 1]
    const long e = floor_log2(a);           // e <= 0
    if (sgn(u[x]) > 0) {
      // Smallest l with a > 2^-(2l+1).
      long l = std::max(0L, (-e - 1) / 2);
      while (compare_pow2(a, -(2 * l + 1)) <= 0) ++l;
      provisional[x] = static_cast<Colour>(2 * l);
    } else {
      // Smallest l with a > 2^-(2l+2).
      long l = std::max(0L, (-e - 2) / 2);
      while (compare_pow2(a, -(2 * l + 2)) <= 0) ++l;
      provisional[x] = static_cast<Colour>(2 * l + 1);
    }
  }

  const Colour highest = *std::max_element(provisional.begin(), provisional.end());
  std::vector<Colour> reversed(u.size());
  for (std::size_t x = 0; x < u.size(); ++x) reversed[x] = highest - provisional[x];
  return {Colouring(std::move(reversed)), Colouring(std::move(provisional)), top / bottom};
}

Colouring sign_two_colouring(const RationalVector& u) {
  Colouring c(u.size());
  for (std::size_t x = 0; x < u.size(); ++x) {
    if (sgn(u[x]) == 0) throw ZeroCoordinate("sign_two_colouring: zero coordinate");
    c.set(static_cast<Vertex>(x), sgn(u[x]) > 0 ? 1 : 0);
  }
  return c;
}

RationalSolveReport solve_rational(const Hypergraph& h, std::uint64_t seed,
                                   std::size_t max_retries, unsigned threads) {
  const auto start = Clock::now();
  if (!h.is_three_uniform()) throw std::invalid_argument("input must be 3-uniform");
  if (h.num_vertices() < kMinRationalVertices) {
    throw std::invalid_argument("the rational solver needs at least 8 vertices");
  }

  const RationalSystem system(h);
  const auto vi = find_all_vi(system, threads);
  const BigRational threshold = max_threshold_squared(h.num_vertices());
  Rng rng(seed);

  RationalSolveReport report;
  while (true) {
    const RationalVector u = sample_u(vi, rng);
    if (judge_sample(u, threshold) != SampleVerdict::Accepted) {
      if (report.retries == max_retries) {
        throw RetriesExhausted("no acceptable sample after " +
                               std::to_string(max_retries + 1) + " draws");
      }
      ++report.retries;
      continue;
    }
    auto unbalanced = unbalanced_colouring(u);
    if (!verify_lo_colouring(h, unbalanced.colouring).valid) {
      throw std::logic_error("unbalanced colouring failed verification");
    }
    report.colouring = std::move(unbalanced.colouring);
    report.max_over_min = unbalanced.max_over_min;
    break;
  }
  report.colours_used = report.colouring.colours_used();
  report.elapsed = Clock::now() - start;
  return report;
}

}  // namespace locolour
