#include "anticyc/whittaker.hpp"

#include "anticyc/errors.hpp"
#include "anticyc/local_constants.hpp"

namespace anticyc {

namespace {

ScaledCyclotomic root(const QmodZ& e) { return ScaledCyclotomic(Cyclotomic::root_of_unity(static_cast<u64>(e.den), e.num)); }

// base^(x/2) for a positive integer base and integer x.
ScaledCyclotomic half_power(u64 base, const mpq_class& twice_exponent) {
  if (twice_exponent.get_den() != 1) throw PreconditionViolated("exponent must be a half-integer");
  const long k = mpz_class(twice_exponent.get_num()).get_si();
  mpz_class z;
  mpz_ui_pow_ui(z.get_mpz_t(), base, static_cast<unsigned long>(std::labs(k)));
  return ScaledCyclotomic::sqrt_of(k >= 0 ? mpq_class(z) : mpq_class(mpz_class(1), z));
}

ScaledCyclotomic euler_inverse(const ScaledCyclotomic& x) {
  const ScaledCyclotomic d = ScaledCyclotomic(1L) - x;
  if (d.is_zero()) throw PoleError("local L-factor has a pole");
  return d.inverse();
}

}  // namespace

ScaledCyclotomic lambda_plus_at_uniformizer(const UnramifiedRow& row) {
  return root(row.lambda_exponent) * half_power(row.ell, mpq_class(-2 * row.lambda_norm));
}

ScaledCyclotomic whittaker_unramified(const UnramifiedRow& row, const mpq_class& beta) {
  if (beta == 0) throw PreconditionViolated("whittaker: beta must be nonzero");
  const long n = valuation(beta, row.ell) + row.c_valuation;
  if (n < 0) return ScaledCyclotomic(0L);
  const ScaledCyclotomic lam = lambda_plus_at_uniformizer(row);
  const ScaledCyclotomic step = lam * ScaledCyclotomic(static_cast<long>(row.ell));  // lambda_+ |.|^-1 at ell
  ScaledCyclotomic term(1L);
  for (long c = 0; c < row.c_valuation; ++c) term *= lam;
  for (long c = 0; c > row.c_valuation; --c) term /= lam;
  ScaledCyclotomic sum;
  for (long i = 0; i <= n; ++i) {
    sum += term;
    term *= step;
  }
  return sum;
}

ScaledCyclotomic whittaker_split(const FChar& lambda_w, const mpq_class& beta) {
  if (beta == 0) throw PreconditionViolated("whittaker: beta must be nonzero");
  if (valuation(beta, lambda_w.ell()) != 0) return ScaledCyclotomic(0L);
  return ScaledCyclotomic(lambda_w(beta));
}

ScaledCyclotomic whittaker_nonsplit(const ArithChar& chi, const mpq_class& beta, PsiSign sign) {
  GaussOptions opts;
  opts.sign = sign;
  const ScaledCyclotomic A = gauss_sum_A(chi, beta, opts).value;
  // psi(-t/2 d_F^-1) = 1 since t = 0.
  return local_L_factor(chi, 0) * A;
}

ScaledCyclotomic whittaker_p_torsion(const FChar& lambda_w, i64 u, const mpq_class& beta) {
  if (beta == 0) throw PreconditionViolated("whittaker: beta must be nonzero");
  const u64 p = lambda_w.ell();
  if (valuation(beta, p) != 0) return ScaledCyclotomic(0L);
  if (residue_mod(beta, p, 1) != mod(u, static_cast<i64>(p))) return ScaledCyclotomic(0L);
  return ScaledCyclotomic(lambda_w(beta));
}

std::string to_string(PlaceTag tag) {
  switch (tag) {
    case PlaceTag::unramified_good: return "unramified_good";
    case PlaceTag::split_conductor: return "split_conductor";
    case PlaceTag::nonsplit: return "nonsplit";
    case PlaceTag::p_adic_torsion: return "p_adic_torsion";
  }
  return "?";
}

ScaledCyclotomic local_whittaker(const PlaceRole& role, const mpq_class& beta, PsiSign sign) {
  switch (role.tag) {
    case PlaceTag::unramified_good:
      if (!role.unramified) throw PreconditionViolated("unramified row needs lambda_+ data");
      return whittaker_unramified(*role.unramified, beta);
    case PlaceTag::split_conductor:
      if (!role.lambda) throw PreconditionViolated("split row needs lambda_w");
      return whittaker_split(*role.lambda, beta);
    case PlaceTag::nonsplit:
      if (!role.chi) throw PreconditionViolated("nonsplit row needs chi_v");
      return whittaker_nonsplit(*role.chi, beta, sign);
    case PlaceTag::p_adic_torsion:
      if (!role.lambda) throw PreconditionViolated("p row needs lambda_w");
      return whittaker_p_torsion(*role.lambda, role.u, beta);
  }
  throw PreconditionViolated("unknown place tag");
}

ScaledCyclotomic local_L_factor(const ArithChar& lambda, const mpq_class& s) {
  if (lambda.conductor() > 0) return ScaledCyclotomic(1L);
  const ScaledCyclotomic at_pi = lambda(lambda.ext().uniformizer());
  return euler_inverse(at_pi * half_power(lambda.ext().q(), mpq_class(-2 * s)));
}

ScaledCyclotomic local_L_factor(const FChar& lambda, const mpq_class& s) {
  if (lambda.conductor() > 0) return ScaledCyclotomic(1L);
  return euler_inverse(ScaledCyclotomic(lambda(mpq_class(static_cast<long>(lambda.ell())))) *
                       half_power(lambda.ell(), mpq_class(-2 * s)));
}

ScaledCyclotomic modified_euler(const FChar& lambda_w, const mpq_class& two_vartheta, PsiSign sign) {
  if (two_vartheta == 0) throw PreconditionViolated("modified_euler: 2 vartheta must be nonzero");
  const ScaledCyclotomic num = ScaledCyclotomic(lambda_w(two_vartheta)) * local_L_factor(lambda_w, 0);
  const ScaledCyclotomic den = epsilon_factor(lambda_w, 0, sign) * local_L_factor(lambda_w.inverse(), 1);
  return num / den;
}

}  // namespace anticyc
