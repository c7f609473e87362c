#pragma once

// Slow reference implementations used only by the tests. None of them goes
// through UnitGroupPresentation, the bucketed Gauss-sum evaluator or the
// library's Hilbert-symbol formula.

#include <vector>

#include <anticyc/characters.hpp>
#include <anticyc/cyclotomic.hpp>
#include <anticyc/local_field.hpp>

namespace anticyc::oracle {

/// A self-dual conductor-1 character of an inert E, written directly on
/// F_{ell^2}^x: chi*(ell) = -1 and chi*(y) = zeta_{ell^2-1}^(k * log_g(y mod ell)).
struct InertCharacter {
  u64 ell = 0;
  i64 theta_square = 0;
  i64 k = 0;
  i64 generator = 0;         // residue code a + ell * b
  std::vector<i64> log;      // code -> log_g, -1 for zero
};

InertCharacter make_inert_character(u64 ell, i64 theta_square, i64 k);

/// chi*(a + b theta) for a unit residue, as an exponent in Q/Z.
QmodZ exponent(const InertCharacter& chi, i64 a, i64 b);

/// The k for which `chi` agrees with make_inert_character(..., k) on the
/// generator; -1 when chi is not inert of conductor <= 1.
i64 matching_k(const MultChar& chi);

/// A_beta(chi* |.|^{1/2}) summed naively over a window one step wider than necessary.
Cyclotomic slow_gauss_sum(const InertCharacter& chi, const mpq_class& beta, PsiSign sign = PsiSign::standard);

/// Exhaustive homomorphism scan: number of chi* of (O_E / p^c)^x x varpi^Z with
/// chi*|_{F^x} = tau_{E/F} and conductor <= c. Only for small groups.
u64 brute_self_dual_count(const LocalQuadExt& E, unsigned c);

/// Hilbert symbol (a, b)_ell from the definition: is b a norm from Q_ell(sqrt a)?
int brute_hilbert_symbol(i64 a, i64 b, u64 ell);

/// sum_{x mod ell} (x | ell) zeta_ell^x.
Cyclotomic quadratic_gauss_sum(u64 ell);

/// ell-adic fractional part of t, as an exponent in Q/Z.
QmodZ frac_ell(const mpq_class& t, u64 ell);

}  // namespace anticyc::oracle
