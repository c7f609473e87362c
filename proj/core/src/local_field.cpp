#include "anticyc/local_field.hpp"

#include <cmath>

#include "anticyc/errors.hpp"

namespace anticyc {

std::string to_string(ExtKind kind) { return kind == ExtKind::inert ? "inert" : "ramified"; }

ExtKind parse_ext_kind(const std::string& text) {
  if (text == "inert") return ExtKind::inert;
  if (text == "ramified") return ExtKind::ramified;
  throw ConfigError("unknown extension kind '" + text + "'");
}

std::string to_string(PsiSign sign) { return sign == PsiSign::standard ? "minus" : "plus"; }

PsiSign parse_psi_sign(const std::string& text) {
  if (text == "minus") return PsiSign::standard;
  if (text == "plus") return PsiSign::opposite;
  throw ConfigError("psi sign must be 'plus' or 'minus', got '" + text + "'");
}

LocalQuadExt::LocalQuadExt(u64 ell, ExtKind kind, std::optional<i64> theta_square) : ell_(ell), kind_(kind) {
  if (ell < 3 || !is_prime(ell)) throw PreconditionViolated("LocalQuadExt: ell must be an odd prime");
  if (kind == ExtKind::inert) {
    theta_square_ = theta_square.value_or(static_cast<i64>(least_nonresidue(ell)));
    if (legendre(theta_square_, ell) != -1)
      throw PreconditionViolated("LocalQuadExt: inert theta^2 must be a unit non-square");
  } else {
    theta_square_ = theta_square.value_or(static_cast<i64>(ell));
    const i64 l = static_cast<i64>(ell);
    if (theta_square_ == 0 || theta_square_ % l != 0 || (theta_square_ / l) % l == 0)
      throw PreconditionViolated("LocalQuadExt: ramified theta^2 must have ell-valuation 1");
  }
}

EElement LocalQuadExt::uniformizer() const {
  return kind_ == ExtKind::inert ? EElement(static_cast<long>(ell_)) : theta();
}

EElement LocalQuadExt::mul(const EElement& a, const EElement& b) const {
  const mpq_class d(static_cast<long>(theta_square_));
  return {a.x * b.x + a.y * b.y * d, a.x * b.y + a.y * b.x};
}

mpq_class LocalQuadExt::norm(const EElement& a) const {
  return a.x * a.x - a.y * a.y * mpq_class(static_cast<long>(theta_square_));
}

EElement LocalQuadExt::inverse(const EElement& a) const {
  if (a.is_zero()) throw DivisionByZero();
  const mpq_class n = norm(a);
  return {a.x / n, -a.y / n};
}

EElement LocalQuadExt::pow(const EElement& a, i64 k) const {
  EElement base = k < 0 ? inverse(a) : a;
  u64 m = k < 0 ? static_cast<u64>(-(k + 1)) + 1 : static_cast<u64>(k);
  EElement r(1);
  while (m > 0) {
    if (m & 1) r = mul(r, base);
    m >>= 1;
    if (m) base = mul(base, base);
  }
  return r;
}

std::optional<long> LocalQuadExt::val(const EElement& a) const {
  if (a.is_zero()) return std::nullopt;
  std::optional<long> best;
  if (a.x != 0) best = static_cast<long>(e()) * valuation(a.x, ell_);
  if (a.y != 0) {
    const long vy = static_cast<long>(e()) * valuation(a.y, ell_) + v_theta();
    if (!best || vy < *best) best = vy;
  }
  return best;
}

long LocalQuadExt::split_unit(const EElement& a, EElement& unit) const {
  const auto v = val(a);
  if (!v) throw PreconditionViolated("split_unit: zero element");
  unit = mul(a, pow(uniformizer(), -*v));
  return *v;
}

QmodZ psi_exponent(const mpq_class& x, u64 ell, PsiSign sign) {
  mpz_class den = x.get_den();
  const unsigned m = static_cast<unsigned>(mpz_remove(den.get_mpz_t(), den.get_mpz_t(), mpz_class(ell).get_mpz_t()));
  if (m == 0) return {};
  mpz_class lm;
  mpz_ui_pow_ui(lm.get_mpz_t(), ell, m);
  if (!lm.fits_slong_p()) throw PreconditionViolated("psi: denominator too large");
  // x = a / (ell^m s) with s prime to ell; fractional part b / ell^m with b = a s^-1.
  mpz_class s_inv = den;
  mpz_invert(s_inv.get_mpz_t(), s_inv.get_mpz_t(), lm.get_mpz_t());
  mpz_class b = x.get_num() * s_inv;
  mpz_fdiv_r(b.get_mpz_t(), b.get_mpz_t(), lm.get_mpz_t());
  const i64 bb = b.get_si();
  const i64 l = lm.get_si();
  return sign == PsiSign::standard ? QmodZ(-bb, l) : QmodZ(bb, l);
}

Cyclotomic psi(const mpq_class& x, u64 ell, PsiSign sign) {
  const QmodZ r = psi_exponent(x, ell, sign);
  return Cyclotomic::root_of_unity(static_cast<u64>(r.den), r.num);
}

Cyclotomic psi_circ(const mpq_class& x, u64 ell, PsiSign sign) { return psi(-x, ell, sign); }

QuotientShape quotient_shape(const LocalQuadExt& E, unsigned n) {
  QuotientShape s;
  if (E.kind() == ExtKind::inert) {
    s.nx = s.ny = n;
  } else {
    s.nx = (n + 1) / 2;
    s.ny = n / 2;
  }
  s.mod_x = static_cast<i64>(ipow(E.ell(), s.nx));
  s.mod_y = static_cast<i64>(ipow(E.ell(), s.ny));
  return s;
}

QuotientReps enumerate_quotient(const LocalQuadExt& E, unsigned n, u64 budget) {
  const double approx = std::pow(static_cast<double>(E.q()), static_cast<double>(n));
  if (approx > static_cast<double>(budget))
    throw BudgetExceeded("quotient O_E/p^" + std::to_string(n) + " exceeds budget " + std::to_string(budget));
  const QuotientShape s = quotient_shape(E, n);
  QuotientReps out;
  out.all.reserve(static_cast<std::size_t>(s.size()));
  const i64 l = static_cast<i64>(E.ell());
  for (i64 y = 0; y < s.mod_y; ++y) {
    for (i64 x = 0; x < s.mod_x; ++x) {
      EElement el(mpq_class(static_cast<long>(x)), mpq_class(static_cast<long>(y)));
      out.all.push_back(el);
      if (n == 0) {
        out.units.push_back(el);
        continue;
      }
      const bool unit = E.kind() == ExtKind::inert ? (x % l != 0 || y % l != 0) : (x % l != 0);
      if (unit) out.units.push_back(el);
    }
  }
  return out;
}

}  // namespace anticyc
