#include "locolour/simplex.hpp"

#include <optional>
#include <stdexcept>

namespace locolour::lp {

namespace {

class Tableau {
 public:
  explicit Tableau(const Problem& p);

  // Runs primal simplex on `cost` until no eligible variable improves it.
  void optimise(const std::vector<Rational>& cost);
  Rational value(const std::vector<Rational>& cost) const;
  void pin_artificials();
  std::vector<Rational> structural_values() const;
  std::size_t pivots() const { return pivots_; }

 private:
  Rational current(std::size_t j) const {
    return row_of_[j] >= 0 ? beta_[static_cast<std::size_t>(row_of_[j])]
                           : (at_upper_[j] ? upper_[j] : lower_[j]);
  }
  void pivot(std::size_t r, std::size_t j);

  std::size_t m_;
  std::size_t structural_;
  std::size_t total_;
  std::vector<std::vector<Rational>> t_;
  std::vector<Rational> beta_;
  std::vector<std::size_t> basis_;
  std::vector<long> row_of_;
  std::vector<Rational> lower_;
  std::vector<Rational> upper_;
  std::vector<bool> has_upper_;
  std::vector<bool> at_upper_;
  std::vector<bool> eligible_;
  std::vector<Rational> reduced_;
  std::size_t pivots_ = 0;
};

Tableau::Tableau(const Problem& p)
    : m_(p.rows.size()),
      structural_(p.num_variables),
      total_(p.num_variables + p.rows.size()),
      t_(m_, std::vector<Rational>(total_)),
      beta_(m_),
      basis_(m_),
      row_of_(total_, -1),
      lower_(total_),
      upper_(total_),
      has_upper_(total_, true),
      at_upper_(total_, false),
      eligible_(total_, true),
      reduced_(total_) {
  for (std::size_t j = 0; j < structural_; ++j) {
    lower_[j] = p.lower[j];
    upper_[j] = p.upper[j];
  }
  for (std::size_t r = 0; r < m_; ++r) {
    // Structurals start at their lower bounds; the artificial absorbs the
    // residual with a sign that makes it non-negative.
    Rational residual = p.rhs[r];
    for (std::size_t j = 0; j < structural_; ++j) {
      if (sgn(p.rows[r][j]) != 0) residual -= p.rows[r][j] * lower_[j];
    }
    const bool negate = sgn(residual) < 0;
    for (std::size_t j = 0; j < structural_; ++j) {
      t_[r][j] = negate ? Rational(-p.rows[r][j]) : p.rows[r][j];
    }
    const std::size_t a = structural_ + r;
    t_[r][a] = 1;
    beta_[r] = abs(residual);
    basis_[r] = a;
    row_of_[a] = static_cast<long>(r);
    lower_[a] = 0;
    has_upper_[a] = false;
  }
}

Rational Tableau::value(const std::vector<Rational>& cost) const {
  Rational v = 0;
  for (std::size_t j = 0; j < total_; ++j) {
    if (sgn(cost[j]) != 0) v += cost[j] * current(j);
  }
  return v;
}

void Tableau::pin_artificials() {
  for (std::size_t a = structural_; a < total_; ++a) {
    upper_[a] = 0;
    has_upper_[a] = true;
    eligible_[a] = false;
  }
}

std::vector<Rational> Tableau::structural_values() const {
  std::vector<Rational> x(structural_);
  for (std::size_t j = 0; j < structural_; ++j) x[j] = current(j);
  return x;
}

void Tableau::pivot(std::size_t r, std::size_t j) {
  std::vector<Rational>& prow = t_[r];
  const Rational inv = 1 / prow[j];
  std::vector<std::size_t> nz;
  for (std::size_t k = 0; k < total_; ++k) {
    if (sgn(prow[k]) != 0) {
      prow[k] *= inv;
      nz.push_back(k);
    }
  }
  mpq_class tmp;
  auto eliminate = [&](std::vector<Rational>& row) {
    const Rational f = row[j];
    for (std::size_t k : nz) {
      mpq_mul(tmp.get_mpq_t(), f.get_mpq_t(), prow[k].get_mpq_t());
      mpq_sub(row[k].get_mpq_t(), row[k].get_mpq_t(), tmp.get_mpq_t());
    }
  };
  for (std::size_t r2 = 0; r2 < m_; ++r2) {
    if (r2 != r && sgn(t_[r2][j]) != 0) eliminate(t_[r2]);
  }
  if (sgn(reduced_[j]) != 0) eliminate(reduced_);
  row_of_[basis_[r]] = -1;
  basis_[r] = j;
  row_of_[j] = static_cast<long>(r);
  ++pivots_;
}

void Tableau::optimise(const std::vector<Rational>& cost) {
  for (std::size_t j = 0; j < total_; ++j) {
    reduced_[j] = cost[j];
    for (std::size_t r = 0; r < m_; ++r) {
      if (sgn(cost[basis_[r]]) != 0 && sgn(t_[r][j]) != 0) {
        reduced_[j] -= cost[basis_[r]] * t_[r][j];
      }
    }
  }

  while (true) {
    // Bland: lowest-index improving variable enters.
    std::optional<std::size_t> entering;
    for (std::size_t j = 0; j < total_; ++j) {
      if (row_of_[j] >= 0 || !eligible_[j]) continue;
      if (has_upper_[j] && lower_[j] == upper_[j]) continue;
      const int d = sgn(reduced_[j]);
      if ((!at_upper_[j] && d < 0) || (at_upper_[j] && d > 0)) {
        entering = j;
        break;
      }
    }
    if (!entering) return;
    const std::size_t j = *entering;
    const int dir = at_upper_[j] ? -1 : 1;

    // Ratio test; ties go to the lowest variable index (the entering
    // variable itself stands for a bound flip).
    std::optional<Rational> step;
    std::size_t leaving_var = j;
    std::optional<std::size_t> leaving_row;
    bool leaves_at_upper = false;
    if (has_upper_[j]) step = upper_[j] - lower_[j];
    for (std::size_t r = 0; r < m_; ++r) {
      const int a = sgn(t_[r][j]);
      if (a == 0) continue;
      const std::size_t b = basis_[r];
      // Basic variable moves at rate -dir * t[r][j] per unit step.
      const bool decreasing = dir * a > 0;
      Rational limit;
      if (decreasing) {
        limit = (beta_[r] - lower_[b]) / abs(t_[r][j]);
      } else {
        if (!has_upper_[b]) continue;
        limit = (upper_[b] - beta_[r]) / abs(t_[r][j]);
      }
      if (!step || limit < *step || (limit == *step && b < leaving_var)) {
        step = limit;
        leaving_var = b;
        leaving_row = r;
        leaves_at_upper = !decreasing;
      }
    }
    if (!step) throw std::logic_error("simplex: unbounded direction with finite bounds");

    if (sgn(*step) != 0) {
      const Rational delta = dir * *step;
      for (std::size_t r = 0; r < m_; ++r) {
        if (sgn(t_[r][j]) != 0) beta_[r] -= delta * t_[r][j];
      }
    }
    if (!leaving_row) {
      at_upper_[j] = !at_upper_[j];
      continue;
    }
    const Rational entering_value = (at_upper_[j] ? upper_[j] : lower_[j]) + dir * *step;
    const std::size_t r = *leaving_row;
    at_upper_[leaving_var] = leaves_at_upper;
    pivot(r, j);
    beta_[r] = entering_value;
  }
}

}  // namespace

Result solve(const Problem& p) {
  const std::size_t n = p.num_variables;
  if (p.rhs.size() != p.rows.size() || p.lower.size() != n || p.upper.size() != n ||
      (!p.objective.empty() && p.objective.size() != n)) {
    throw std::invalid_argument("lp::solve: inconsistent problem dimensions");
  }
  for (const auto& row : p.rows) {
    if (row.size() != n) throw std::invalid_argument("lp::solve: row length mismatch");
  }
  Result result;
  for (std::size_t j = 0; j < n; ++j) {
    if (p.lower[j] > p.upper[j]) return result;
  }

  Tableau tab(p);
  const std::size_t total = n + p.rows.size();
  std::vector<Rational> phase1(total);
  for (std::size_t a = n; a < total; ++a) phase1[a] = 1;
  tab.optimise(phase1);
  if (sgn(tab.value(phase1)) != 0) {
    result.pivots = tab.pivots();
    return result;
  }

  tab.pin_artificials();
  std::vector<Rational> phase2(total);
  if (!p.objective.empty()) {
    for (std::size_t j = 0; j < n; ++j) phase2[j] = p.objective[j];
    tab.optimise(phase2);
  }
  result.status = Status::Optimal;
  result.x = tab.structural_values();
  result.objective = tab.value(phase2);
  result.pivots = tab.pivots();
  return result;
}

}  // namespace locolour::lp
