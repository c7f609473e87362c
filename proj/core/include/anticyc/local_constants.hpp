#pragma once

#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "anticyc/characters.hpp"
#include "anticyc/cyclotomic.hpp"
#include "anticyc/local_field.hpp"
#include "anticyc/padic.hpp"

namespace anticyc {

/// tau_{E/F}(beta) in {+1, -1}.
int tau_EF(const LocalQuadExt& E, const mpq_class& beta);

enum class GaussMethod { brute, closed_form };
std::string to_string(GaussMethod m);

struct GaussOptions {
  /// Window exponent M (x ranges over ell^-M Z_ell); default is the smallest
  /// exact window. Values below it are rejected.
  std::optional<long> truncation;
  PsiSign sign = PsiSign::standard;
  /// Maximum number of summands.
  u64 budget = 100'000'000;
  /// When set, the valuation of the value is attached.
  const PrimeAbovePChoice* choice = nullptr;
};

struct GaussSumResult {
  ScaledCyclotomic value;
  std::optional<PadicVal> valuation;
  GaussMethod method = GaussMethod::brute;
  long truncation = 0;  // window exponent M
  long resolution = 0;  // x is summed modulo ell^R
  mpq_class beta;
};

/// Smallest window exponent M for which the truncated sum equals A_beta(chi).
long gauss_window(const ArithChar& chi, const mpq_class& beta);

/// A_beta(chi) = int_F chi^-1(x + theta) psi(-beta x) dx, evaluated as the
/// exact finite sum ell^-R sum_{j < ell^(M+R)} chi^-1(j ell^-M + theta) psi(-beta j ell^-M).
GaussSumResult gauss_sum_A(const ArithChar& chi, const mpq_class& beta, const GaussOptions& opts = {});

/// Case-split closed form for inert E, conductor 1, self-dual chi*, s0 = 1/2.
GaussSumResult gauss_sum_A_closed(const ArithChar& chi, const mpq_class& beta, const GaussOptions& opts = {});

/// Tate's epsilon(s, mu, psi_L) for L = E (psi_E = psi o Tr) with the self-dual
/// measure; 2s must be an integer.
ScaledCyclotomic epsilon_factor(const MultChar& mu, const mpq_class& s, PsiSign sign = PsiSign::standard);
/// Same for L = F = Q_ell (d_F = 1).
ScaledCyclotomic epsilon_factor(const FChar& mu, const mpq_class& s, PsiSign sign = PsiSign::standard);

inline ScaledCyclotomic root_number(const MultChar& mu, PsiSign sign = PsiSign::standard) {
  return epsilon_factor(mu, mpq_class(1, 2), sign);
}
inline ScaledCyclotomic root_number(const FChar& mu, PsiSign sign = PsiSign::standard) {
  return epsilon_factor(mu, mpq_class(1, 2), sign);
}

struct DichotomyVerdict {
  mpq_class beta;
  ScaledCyclotomic A;
  bool A_zero = false;
  ScaledCyclotomic root_number;
  int tau = 1;
  ScaledCyclotomic lhs;  // W(chi*) tau(beta)
  ScaledCyclotomic rhs;  // chi*(2 theta)
  bool pass = false;
};

/// Checks W(chi*) tau(beta) = chi*(2 theta) whenever A_beta(chi) != 0, for
/// chi = chi* |.|_E^{1/2}.
DichotomyVerdict dichotomy_check(const MultChar& chi_star, const mpq_class& beta, PsiSign sign = PsiSign::standard);

struct ResidueCoeff {
  i64 gamma = 0;
  ScaledCyclotomic value;
  PadicVal valuation;
};

/// c_gamma = |varpi| sum_{x in k_F} chi^-1(x + theta) psi(-gamma x / ell) for
/// gamma in k_F (inert, conductor 1).
std::vector<ResidueCoeff> residue_fourier_coeffs(const ArithChar& chi, const PrimeAbovePChoice& choice,
                                                 PsiSign sign = PsiSign::standard);

struct BMin {
  mpq_class b;
  PadicVal valuation;
  GaussSumResult A;
};

/// A b with v_p(A_b(chi)) = mu_p(chi) that also satisfies the dichotomy
/// identity. Searches v(b) = -1 first, then v(b) in [-a-1, a+1] with unit
/// parts modulo ell^(a+1). Throws NotFound when the window has no witness.
BMin find_b_min(const ArithChar& chi, const PrimeAbovePChoice& choice, PsiSign sign = PsiSign::standard);

}  // namespace anticyc
