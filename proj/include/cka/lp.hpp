#pragma once

#include <cstddef>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "cka/errors.hpp"

namespace cka {

/// Exact rational scalar used for all feasibility work.
using Rat = boost::multiprecision::cpp_rational;

/// A feasibility system over nonnegative variables:
///   eq_lhs · x = eq_rhs,  le_lhs · x <= le_rhs,  x >= 0.
struct LinearSystem {
  std::size_t vars = 0;
  std::vector<std::vector<Rat>> eq_lhs;
  std::vector<Rat> eq_rhs;
  std::vector<std::vector<Rat>> le_lhs;
  std::vector<Rat> le_rhs;
};

/// Infeasibility witness: multipliers y (free) for the equalities and z >= 0
/// for the inequalities such that y·A + z·C >= 0 componentwise while
/// y·b + z·d < 0 — impossible against any x >= 0.
struct FarkasCertificate {
  std::vector<Rat> y_eq;
  std::vector<Rat> y_le;
};

struct LpResult {
  bool feasible = false;
  std::vector<Rat> point;          // when feasible
  FarkasCertificate certificate;   // when infeasible
};

/// Independent certificate check (no solver state involved).
inline bool validate_farkas(const LinearSystem& s, const FarkasCertificate& c) {
  if (c.y_eq.size() != s.eq_lhs.size() || c.y_le.size() != s.le_lhs.size())
    return false;
  for (const Rat& z : c.y_le)
    if (z < 0) return false;
  std::vector<Rat> combo(s.vars, Rat(0));
  Rat value(0);
  for (std::size_t i = 0; i < s.eq_lhs.size(); ++i) {
    for (std::size_t j = 0; j < s.vars; ++j)
      combo[j] += c.y_eq[i] * s.eq_lhs[i][j];
    value += c.y_eq[i] * s.eq_rhs[i];
  }
  for (std::size_t i = 0; i < s.le_lhs.size(); ++i) {
    for (std::size_t j = 0; j < s.vars; ++j)
      combo[j] += c.y_le[i] * s.le_lhs[i][j];
    value += c.y_le[i] * s.le_rhs[i];
  }
  for (const Rat& q : combo)
    if (q < 0) return false;
  return value < 0;
}

/// Substitution check for a candidate point.
inline bool validate_point(const LinearSystem& s, const std::vector<Rat>& x) {
  if (x.size() != s.vars) return false;
  for (const Rat& q : x)
    if (q < 0) return false;
  for (std::size_t i = 0; i < s.eq_lhs.size(); ++i) {
    Rat lhs(0);
    for (std::size_t j = 0; j < s.vars; ++j) lhs += s.eq_lhs[i][j] * x[j];
    if (lhs != s.eq_rhs[i]) return false;
  }
  for (std::size_t i = 0; i < s.le_lhs.size(); ++i) {
    Rat lhs(0);
    for (std::size_t j = 0; j < s.vars; ++j) lhs += s.le_lhs[i][j] * x[j];
    if (lhs > s.le_rhs[i]) return false;
  }
  return true;
}

/// Phase-I simplex with Bland's rule in exact rational arithmetic.  Returns
/// either a feasible point or a Farkas certificate; both are re-validated
/// before being returned.
inline LpResult solve_feasibility(const LinearSystem& s) {
  const std::size_t n = s.vars;
  const std::size_t m_eq = s.eq_lhs.size();
  const std::size_t m_le = s.le_lhs.size();
  const std::size_t m = m_eq + m_le;
  const std::size_t n_slacked = n + m_le;        // structural + slack columns
  const std::size_t n_total = n_slacked + m;     // + artificial columns
  for (const auto& row : s.eq_lhs)
    internal_check(row.size() == n, "lp: equality row width mismatch");
  for (const auto& row : s.le_lhs)
    internal_check(row.size() == n, "lp: inequality row width mismatch");

  // Tableau rows: [structural | slack | artificial | rhs], all equalities,
  // rows sign-flipped to make the rhs nonnegative.
  std::vector<std::vector<Rat>> t(m, std::vector<Rat>(n_total + 1, Rat(0)));
  std::vector<int> sign(m, 1);
  for (std::size_t i = 0; i < m; ++i) {
    const bool is_eq = i < m_eq;
    const std::vector<Rat>& lhs = is_eq ? s.eq_lhs[i] : s.le_lhs[i - m_eq];
    const Rat& rhs = is_eq ? s.eq_rhs[i] : s.le_rhs[i - m_eq];
    for (std::size_t j = 0; j < n; ++j) t[i][j] = lhs[j];
    if (!is_eq) t[i][n + (i - m_eq)] = 1;  // slack
    t[i][n_total] = rhs;
    if (rhs < 0) {
      sign[i] = -1;
      for (std::size_t j = 0; j <= n_total; ++j) t[i][j] = -t[i][j];
    }
    t[i][n_slacked + i] = 1;  // artificial (after any flip)
  }
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = n_slacked + i;

  // Reduced-cost row for minimizing the sum of artificials.
  std::vector<Rat> red(n_total, Rat(0));
  for (std::size_t j = 0; j < n_total; ++j) {
    Rat colsum(0);
    for (std::size_t i = 0; i < m; ++i) colsum += t[i][j];
    red[j] = (j >= n_slacked ? Rat(1) : Rat(0)) - colsum;
  }

  for (;;) {
    // Bland: entering column = lowest index with negative reduced cost.
    std::size_t enter = n_total;
    for (std::size_t j = 0; j < n_total; ++j)
      if (red[j] < 0) {
        enter = j;
        break;
      }
    if (enter == n_total) break;  // optimal
    // Ratio test; ties broken by lowest basis index (Bland).
    std::size_t leave = m;
    Rat best;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter] <= 0) continue;
      Rat ratio = t[i][n_total] / t[i][enter];
      if (leave == m || ratio < best ||
          (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    internal_check(leave != m, "lp: phase-I objective unbounded below");
    // Pivot on (leave, enter).
    Rat piv = t[leave][enter];
    for (std::size_t j = 0; j <= n_total; ++j) t[leave][j] /= piv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      Rat f = t[i][enter];
      for (std::size_t j = 0; j <= n_total; ++j)
        t[i][j] -= f * t[leave][j];
    }
    Rat fr = red[enter];
    for (std::size_t j = 0; j < n_total; ++j) red[j] -= fr * t[leave][j];
    basis[leave] = enter;
  }

  // Optimal phase-I value: the artificial mass still in the basis.
  Rat objective(0);
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] >= n_slacked) objective += t[i][n_total];

  LpResult out;
  if (objective == 0) {
    out.feasible = true;
    out.point.assign(n, Rat(0));
    for (std::size_t i = 0; i < m; ++i)
      if (basis[i] < n) out.point[basis[i]] = t[i][n_total];
    internal_check(validate_point(s, out.point),
                   "lp: feasible point fails substitution");
  } else {
    // Duals from the artificial columns (the initial identity block):
    // y_k = sum_i cost(basis[i]) * t[i][n_slacked + k]; the certificate for
    // the original rows is sign[k] * (-y_k), with the inequality
    // multipliers nonnegative by slack-column optimality.
    out.feasible = false;
    out.certificate.y_eq.assign(m_eq, Rat(0));
    out.certificate.y_le.assign(m_le, Rat(0));
    for (std::size_t k = 0; k < m; ++k) {
      Rat y(0);
      for (std::size_t i = 0; i < m; ++i)
        if (basis[i] >= n_slacked) y += t[i][n_slacked + k];
      Rat cert = Rat(sign[k]) * -y;
      if (k < m_eq)
        out.certificate.y_eq[k] = cert;
      else
        out.certificate.y_le[k - m_eq] = cert;
    }
    internal_check(validate_farkas(s, out.certificate),
                   "lp: infeasibility certificate fails validation");
  }
  return out;
}

}  // namespace cka
