#include "anticyc/local_constants.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>

#include "anticyc/errors.hpp"

namespace anticyc {

namespace {

long ceil_div(long a, long b) { return a >= 0 ? (a + b - 1) / b : -((-a) / b); }

mpq_class ell_power(u64 ell, long k) {
  mpz_class z;
  mpz_ui_pow_ui(z.get_mpz_t(), ell, static_cast<unsigned long>(std::labs(k)));
  return k >= 0 ? mpq_class(z) : mpq_class(mpz_class(1), z);
}

// Exponent numerators (over unit_order) of chi on every residue code; -1 on non-units.
std::vector<i64> unit_exponent_table(const MultChar& chi) {
  const auto& pres = chi.presentation();
  const i64 n = pres.shape().size();
  const i64 uo = chi.unit_order();
  std::vector<i64> weight;
  for (const QmodZ& e : chi.generator_exponents()) weight.push_back(e.num * (uo / e.den));
  std::vector<i64> out(static_cast<std::size_t>(n), -1);
  for (i64 code = 0; code < n; ++code) {
    if (!pres.is_unit_code(code)) continue;
    const auto lg = pres.dlog(code);
    i64 acc = 0;
    for (std::size_t i = 0; i < lg.size(); ++i) acc = mod(acc + mul_mod(lg[i], weight[i], uo), uo);
    out[static_cast<std::size_t>(code)] = acc;
  }
  return out;
}

// Sum of roots of unity given as Q/Z exponents.
Cyclotomic sum_of_roots(const std::vector<QmodZ>& exps) {
  u64 n = 1;
  for (const auto& e : exps) n = lcm_u(n, static_cast<u64>(e.den));
  std::vector<i64> counts(n, 0);
  for (const auto& e : exps) counts[static_cast<std::size_t>(e.num * (static_cast<i64>(n) / e.den))] += 1;
  return Cyclotomic::from_exponent_counts(n, counts);
}

void attach_valuation(GaussSumResult& r, const GaussOptions& opts) {
  if (opts.choice) r.valuation = opts.choice->valuation(r.value);
}

}  // namespace

int tau_EF(const LocalQuadExt& E, const mpq_class& beta) {
  if (beta == 0) throw PreconditionViolated("tau_EF: beta must be nonzero");
  return tau_exponent(E, beta).is_zero() ? 1 : -1;
}

std::string to_string(GaussMethod m) { return m == GaussMethod::brute ? "brute" : "closed_form"; }

long gauss_window(const ArithChar& chi, const mpq_class& beta) {
  if (beta == 0) throw PreconditionViolated("gauss_sum_A: beta must be nonzero");
  const LocalQuadExt& E = chi.ext();
  const long a = chi.conductor();
  const long h = E.v_theta();
  const long e = E.e();
  const long k_far = ceil_div(a - h, e);
  const long cF = restrict_to_F(chi.finite_part()).conductor();
  const long vb = valuation(beta, E.ell());
  return std::max({k_far - 1, vb + std::max(cF, 1L), 0L});
}

GaussSumResult gauss_sum_A(const ArithChar& chi, const mpq_class& beta, const GaussOptions& opts) {
  const LocalQuadExt& E = chi.ext();
  const u64 ell = E.ell();
  const i64 l = static_cast<i64>(ell);
  const long M_min = gauss_window(chi, beta);
  const long M = opts.truncation.value_or(M_min);
  if (M < M_min)
    throw PreconditionViolated("gauss_sum_A: truncation " + std::to_string(M) + " below the exact window " +
                               std::to_string(M_min));
  const long a_eff = std::max<long>(chi.conductor(), 1);
  const long r = ceil_div(a_eff + E.v_theta(), E.e());
  const long vb = valuation(beta, ell);
  const long R = std::max(r, -vb);
  const double approx = std::pow(static_cast<double>(ell), static_cast<double>(M + R));
  if (approx > static_cast<double>(opts.budget))
    throw BudgetExceeded("gauss_sum_A: " + std::to_string(ell) + "^" + std::to_string(M + R) + " summands exceed budget");
  const i64 total = static_cast<i64>(ipow(ell, static_cast<unsigned>(M + R)));

  const MultChar& fin = chi.finite_part();
  const auto& pres = fin.presentation();
  const i64 mx = pres.shape().mod_x, my = pres.shape().mod_y;
  const std::vector<i64> tbl = unit_exponent_table(fin);
  const i64 Nu = fin.unit_order();
  const i64 N = fin.order();
  const i64 w_num = fin.uniformizer_exponent().num * (N / fin.uniformizer_exponent().den);

  // psi(-beta x0) with x0 = j ell^-M: exp(sg 2 pi i bres j / ell^m).
  const long m = M - vb;
  const i64 lm = m > 0 ? static_cast<i64>(ipow(ell, static_cast<unsigned>(m))) : 1;
  const i64 bres = m > 0 ? residue_mod(beta / ell_power(ell, vb), ell, static_cast<unsigned>(m)) : 0;
  const i64 sg = opts.sign == PsiSign::standard ? 1 : -1;
  const i64 L = static_cast<i64>(lcm_u(static_cast<u64>(N), static_cast<u64>(lm)));

  const bool inert = E.kind() == ExtKind::inert;
  const i64 u_ell = inert ? 0 : E.theta_square() / l;  // theta^2 = u ell (ramified)
  const i64 uinv_y = (!inert && my > 1) ? inv_mod(mod(u_ell, my), my) : 0;

  std::vector<i64> pow_l(static_cast<std::size_t>(M + R + 2), 1);
  for (std::size_t i = 1; i < pow_l.size(); ++i) pow_l[i] = pow_l[i - 1] * l;

  std::map<long, std::vector<i64>> counts;
  auto bucket = [&](long v) -> std::vector<i64>& {
    auto it = counts.find(v);
    if (it == counts.end()) it = counts.emplace(v, std::vector<i64>(static_cast<std::size_t>(L), 0)).first;
    return it->second;
  };

  for (i64 j = 0; j < total; ++j) {
    long k = 0;
    i64 jp = j;
    if (j == 0) {
      k = M + R;  // x0 = 0 behaves like a deep integral point
    } else {
      long vj = 0;
      while (jp % l == 0) {
        jp /= l;
        ++vj;
      }
      k = vj - M;
    }
    long vE = 0;
    i64 ux = 0, uy = 0;
    if (inert) {
      if (k >= 0) {
        vE = 0;
        ux = j == 0 ? 0 : mul_mod(mod(jp, mx), mod(pow_l[static_cast<std::size_t>(std::min<long>(k, M + R))], mx), mx);
        uy = 1 % my;
      } else {
        vE = k;
        ux = mod(jp, mx);
        uy = mod(pow_l[static_cast<std::size_t>(-k)], my);
      }
    } else {
      if (k >= 1) {
        vE = 1;
        ux = 1 % mx;
        if (my > 1) {
          const i64 x_over_l = j == 0 ? 0 : mul_mod(mod(jp, my), mod(pow_l[static_cast<std::size_t>(std::min<long>(k - 1, M + R))], my), my);
          uy = mul_mod(x_over_l, uinv_y, my);
        }
      } else {
        vE = 2 * k;
        const i64 upow_x = pow_mod(mod(u_ell, mx), static_cast<u64>(-k), mx);
        ux = mul_mod(mod(jp, mx), upow_x, mx);
        if (my > 1) uy = mul_mod(pow_mod(mod(u_ell, my), static_cast<u64>(-k), my), mod(pow_l[static_cast<std::size_t>(-k)], my), my);
      }
    }
    const i64 code = ux + mx * uy;
    const i64 te = tbl[static_cast<std::size_t>(code)];
    if (te < 0) throw Error("gauss_sum_A: internal error, non-unit residue");
    const i64 chi_idx = mod(te * (N / Nu) + mod(static_cast<i64>(vE), N) * w_num, N);
    const i64 psi_idx = m > 0 ? mod(sg * mul_mod(bres, mod(j, lm), lm), lm) : 0;
    const i64 idx = mod(-chi_idx * (L / N) + psi_idx * (L / lm), L);
    bucket(vE)[static_cast<std::size_t>(idx)] += 1;
  }

  ScaledCyclotomic value;
  for (const auto& [vE, cts] : counts) {
    Cyclotomic part = Cyclotomic::from_exponent_counts(static_cast<u64>(L), cts);
    if (part.is_zero()) continue;
    value += ScaledCyclotomic(std::move(part)) * chi.abs_power(-vE);
  }
  value *= ScaledCyclotomic(ell_power(ell, -R));

  GaussSumResult out;
  out.value = std::move(value);
  out.method = GaussMethod::brute;
  out.truncation = M;
  out.resolution = R;
  out.beta = beta;
  attach_valuation(out, opts);
  return out;
}

GaussSumResult gauss_sum_A_closed(const ArithChar& chi, const mpq_class& beta, const GaussOptions& opts) {
  const LocalQuadExt& E = chi.ext();
  if (E.kind() != ExtKind::inert || chi.conductor() != 1 || !is_self_dual(chi.finite_part()) ||
      chi.norm_exponent() != mpq_class(1, 2))
    throw PreconditionViolated("gauss_sum_A_closed: needs inert E, conductor 1, self-dual chi*, s0 = 1/2");
  if (beta == 0) throw PreconditionViolated("gauss_sum_A_closed: beta must be nonzero");
  const u64 ell = E.ell();
  const long vb = valuation(beta, ell);
  GaussSumResult out;
  out.method = GaussMethod::closed_form;
  out.beta = beta;
  if (vb >= 0 && (vb & 1)) {
    // psi(t beta / 2) = 1 as t = 0.
    out.value = ScaledCyclotomic(-(1 + mpq_class(1, static_cast<long>(ell))));
  } else if (vb == -1) {
    const auto& pres = chi.finite_part().presentation();
    std::vector<QmodZ> exps;
    for (u64 x = 0; x < ell; ++x) {
      const EElement u(mpq_class(static_cast<long>(x)), 1);
      const QmodZ ce = chi.finite_part().exponent_on_code(pres.encode(u));
      exps.push_back(-ce + psi_exponent(-beta * static_cast<long>(x), ell, opts.sign));
    }
    out.value = ScaledCyclotomic(sum_of_roots(exps)) * ScaledCyclotomic(mpq_class(1, static_cast<long>(ell)));
  } else {
    out.value = ScaledCyclotomic(0L);
  }
  attach_valuation(out, opts);
  return out;
}

ScaledCyclotomic epsilon_factor(const MultChar& mu, const mpq_class& s, PsiSign sign) {
  const mpq_class twice = 2 * s;
  if (twice.get_den() != 1) throw PreconditionViolated("epsilon_factor: 2s must be an integer");
  const LocalQuadExt& E = mu.ext();
  const u64 ell = E.ell();
  const long a = mu.conductor();
  const EElement dE = E.kind() == ExtKind::inert ? EElement(1) : E.delta();
  const long vd = E.kind() == ExtKind::inert ? 0 : 1;
  const mpq_class q(static_cast<unsigned long>(E.q()));
  auto q_pow = [&](const mpq_class& half_exponent2) {
    // q^(x/2) for x = half_exponent2 (an integer)
    const long k = mpz_class(half_exponent2.get_num()).get_si();
    mpz_class z;
    mpz_ui_pow_ui(z.get_mpz_t(), E.q(), static_cast<unsigned long>(std::labs(k)));
    return ScaledCyclotomic::sqrt_of(k >= 0 ? mpq_class(z) : mpq_class(mpz_class(1), z));
  };
  if (a == 0) return ScaledCyclotomic(mu(dE)) * q_pow(-2 * s * vd);

  const EElement c = E.mul(dE, E.pow(E.uniformizer(), a));
  const EElement cinv = E.inverse(c);
  // |c|^{s-1} vol(O_E) q^-a with |c| = q^-(vd + a), vol(O_E) = q^(-vd/2)
  const ScaledCyclotomic scalar = q_pow(-2 * (s - 1) * (vd + a) - vd - 2 * a);
  const QuotientShape sh = quotient_shape(E, static_cast<unsigned>(a));
  const auto& pres = mu.presentation();
  std::vector<QmodZ> exps;
  const i64 l = static_cast<i64>(ell);
  for (i64 y = 0; y < sh.mod_y; ++y)
    for (i64 x = 0; x < sh.mod_x; ++x) {
      const bool unit = E.kind() == ExtKind::inert ? (x % l != 0 || y % l != 0) : (x % l != 0);
      if (!unit) continue;
      const EElement u(mpq_class(static_cast<long>(x)), mpq_class(static_cast<long>(y)));
      const QmodZ me = mu.exponent_on_code(pres.encode(u));
      exps.push_back(-me + psi_exponent(E.trace(E.mul(cinv, u)), ell, sign));
    }
  return scalar * ScaledCyclotomic(mu(c)) * ScaledCyclotomic(sum_of_roots(exps));
}

ScaledCyclotomic epsilon_factor(const FChar& mu, const mpq_class& s, PsiSign sign) {
  const mpq_class twice = 2 * s;
  if (twice.get_den() != 1) throw PreconditionViolated("epsilon_factor: 2s must be an integer");
  const long a = mu.conductor();
  if (a == 0) return ScaledCyclotomic(1L);
  const u64 ell = mu.ell();
  const long k = mpz_class(mpq_class(-2 * s * a).get_num()).get_si();
  const ScaledCyclotomic scalar = ScaledCyclotomic::sqrt_of(ell_power(ell, k));
  const i64 la = static_cast<i64>(ipow(ell, static_cast<unsigned>(a)));
  std::vector<QmodZ> exps;
  for (i64 u = 1; u < la; ++u) {
    if (u % static_cast<i64>(ell) == 0) continue;
    const mpq_class x = mpq_class(static_cast<long>(u)) * ell_power(ell, -a);
    exps.push_back(-mu.exponent(x) + psi_exponent(x, ell, sign));
  }
  return scalar * ScaledCyclotomic(sum_of_roots(exps));
}

DichotomyVerdict dichotomy_check(const MultChar& chi_star, const mpq_class& beta, PsiSign sign) {
  if (!is_self_dual(chi_star)) throw PreconditionViolated("dichotomy_check: chi* must be self-dual");
  const LocalQuadExt& E = chi_star.ext();
  DichotomyVerdict v;
  v.beta = beta;
  GaussOptions opts;
  opts.sign = sign;
  v.A = gauss_sum_A(ArithChar(chi_star, mpq_class(1, 2)), beta, opts).value;
  v.A_zero = v.A.is_zero();
  v.root_number = root_number(chi_star, sign);
  v.tau = tau_EF(E, beta);
  v.lhs = v.root_number * ScaledCyclotomic(static_cast<long>(v.tau));
  v.rhs = ScaledCyclotomic(chi_star(E.delta()));
  v.pass = v.A_zero || v.lhs == v.rhs;
  return v;
}

std::vector<ResidueCoeff> residue_fourier_coeffs(const ArithChar& chi, const PrimeAbovePChoice& choice,
                                                 PsiSign sign) {
  const LocalQuadExt& E = chi.ext();
  if (E.kind() != ExtKind::inert || chi.conductor() != 1)
    throw PreconditionViolated("residue_fourier_coeffs: needs inert E and conductor 1");
  const u64 ell = E.ell();
  const auto& pres = chi.finite_part().presentation();
  std::vector<QmodZ> chi_inv;
  for (u64 x = 0; x < ell; ++x)
    chi_inv.push_back(-chi.finite_part().exponent_on_code(pres.encode(EElement(mpq_class(static_cast<long>(x)), 1))));
  std::vector<ResidueCoeff> out;
  for (u64 g = 0; g < ell; ++g) {
    std::vector<QmodZ> exps;
    for (u64 x = 0; x < ell; ++x)
      exps.push_back(chi_inv[x] + psi_exponent(mpq_class(-static_cast<long>(g * x), static_cast<long>(ell)), ell, sign));
    ResidueCoeff c;
    c.gamma = static_cast<i64>(g);
    c.value = ScaledCyclotomic(sum_of_roots(exps)) * ScaledCyclotomic(mpq_class(1, static_cast<long>(ell)));
    c.valuation = choice.valuation(c.value);
    out.push_back(std::move(c));
  }
  return out;
}

BMin find_b_min(const ArithChar& chi, const PrimeAbovePChoice& choice, PsiSign sign) {
  const MultChar& fin = chi.finite_part();
  if (!is_self_dual(fin)) throw PreconditionViolated("find_b_min: chi* must be self-dual");
  if (chi.conductor() == 0) throw PreconditionViolated("find_b_min: chi must be ramified");
  const LocalQuadExt& E = chi.ext();
  const u64 ell = E.ell();
  const PadicVal mu = mu_p_local(chi, choice).value;
  const ScaledCyclotomic W = root_number(fin, sign);
  const ScaledCyclotomic rhs(fin(E.delta()));
  GaussOptions opts;
  opts.sign = sign;
  opts.choice = &choice;

  std::vector<mpq_class> candidates;
  for (u64 g = 1; g < ell; ++g) candidates.emplace_back(static_cast<long>(g), static_cast<long>(ell));
  const long a = chi.conductor();
  const i64 units_mod = static_cast<i64>(ipow(ell, static_cast<unsigned>(a + 1)));
  for (long k = -a - 1; k <= a + 1; ++k)
    for (i64 u = 1; u < units_mod; ++u) {
      if (u % static_cast<i64>(ell) == 0) continue;
      if (k == -1 && u < static_cast<i64>(ell)) continue;
      candidates.push_back(mpq_class(static_cast<long>(u)) * ell_power(ell, k));
    }
  for (const auto& b : candidates) {
    GaussSumResult A = gauss_sum_A(chi, b, opts);
    if (A.value.is_zero() || *A.valuation != mu) continue;
    if (!(W * ScaledCyclotomic(static_cast<long>(tau_EF(E, b))) == rhs)) continue;
    BMin out;
    out.b = b;
    out.valuation = *A.valuation;
    out.A = std::move(A);
    return out;
  }
  throw NotFound("find_b_min: no witness in the valuation window [" + std::to_string(-a - 1) + ", " +
                 std::to_string(a + 1) + "]");
}

}  // namespace anticyc
