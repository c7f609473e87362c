#include "anticyc/arith.hpp"

#include <numeric>

#include "anticyc/errors.hpp"

namespace anticyc {

i64 mod(i64 a, i64 m) {
  i64 r = a % m;
  return r < 0 ? r + m : r;
}

i64 mul_mod(i64 a, i64 b, i64 m) {
  return static_cast<i64>(static_cast<__int128>(mod(a, m)) * mod(b, m) % m);
}

i64 pow_mod(i64 base, u64 exp, i64 m) {
  if (m == 1) return 0;
  i64 result = 1;
  i64 b = mod(base, m);
  while (exp > 0) {
    if (exp & 1U) result = mul_mod(result, b, m);
    b = mul_mod(b, b, m);
    exp >>= 1U;
  }
  return result;
}

i64 inv_mod(i64 a, i64 m) {
  i64 old_r = mod(a, m), r = m;
  i64 old_s = 1, s = 0;
  while (r != 0) {
    i64 q = old_r / r;
    std::tie(old_r, r) = std::pair{r, old_r - q * r};
    std::tie(old_s, s) = std::pair{s, old_s - q * s};
  }
  if (old_r != 1) {
    throw PreconditionViolated("inv_mod: " + std::to_string(a) + " is not invertible modulo " +
                               std::to_string(m));
  }
  return mod(old_s, m);
}

u64 gcd_u(u64 a, u64 b) { return std::gcd(a, b); }

u64 lcm_u(u64 a, u64 b) {
  if (a == 0 || b == 0) return 0;
  return a / std::gcd(a, b) * b;
}

u64 ipow(u64 base, unsigned exp) {
  u64 r = 1;
  for (unsigned i = 0; i < exp; ++i) r *= base;
  return r;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::pair<u64, unsigned>> factorize(u64 n) {
  std::vector<std::pair<u64, unsigned>> out;
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    unsigned e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    out.emplace_back(d, e);
  }
  if (n > 1) out.emplace_back(n, 1U);
  return out;
}

u64 euler_phi(u64 n) {
  u64 r = n;
  for (auto [q, e] : factorize(n)) r = r / q * (q - 1);
  return r;
}

u64 prime_to_part(u64 n, u64 p) {
  while (n % p == 0) n /= p;
  return n;
}

unsigned valuation_u(u64 n, u64 p) {
  unsigned e = 0;
  while (n != 0 && n % p == 0) {
    n /= p;
    ++e;
  }
  return e;
}

int legendre(i64 a, u64 ell) {
  i64 r = pow_mod(a, (ell - 1) / 2, static_cast<i64>(ell));
  if (r == 0) return 0;
  return r == 1 ? 1 : -1;
}

u64 least_nonresidue(u64 ell) {
  for (u64 a = 2; a < ell; ++a) {
    if (legendre(static_cast<i64>(a), ell) == -1) return a;
  }
  throw PreconditionViolated("least_nonresidue: no non-residue modulo " + std::to_string(ell));
}

u64 multiplicative_order(i64 a, u64 m) {
  if (m == 1) return 1;
  u64 phi = euler_phi(m);
  u64 order = phi;
  for (auto [q, e] : factorize(phi)) {
    for (unsigned i = 0; i < e; ++i) {
      if (pow_mod(a, order / q, static_cast<i64>(m)) == 1) {
        order /= q;
      } else {
        break;
      }
    }
  }
  return order;
}

u64 primitive_root_mod_square(u64 ell) {
  u64 m = ell * ell;
  u64 phi = ell * (ell - 1);
  for (u64 g = 2; g < m; ++g) {
    if (g % ell == 0) continue;
    if (multiplicative_order(static_cast<i64>(g), m) == phi) return g;
  }
  throw PreconditionViolated("no primitive root modulo " + std::to_string(m));
}

mpq_class parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw ConfigError("empty rational");
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw ConfigError("malformed rational '" + s + "'");
  if (q.get_den() == 0) throw ConfigError("zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

std::string format_rational(const mpq_class& q) {
  mpq_class c = q;
  c.canonicalize();
  return c.get_str();
}

int valuation(const mpz_class& z, u64 ell) {
  if (z == 0) throw PreconditionViolated("valuation of zero");
  mpz_class t = z;
  int v = 0;
  while (mpz_divisible_ui_p(t.get_mpz_t(), ell) != 0) {
    mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), ell);
    ++v;
  }
  return v;
}

int valuation(const mpq_class& q, u64 ell) {
  if (q == 0) throw PreconditionViolated("valuation of zero");
  return valuation(mpz_class(q.get_num()), ell) - valuation(mpz_class(q.get_den()), ell);
}

i64 residue_mod(const mpq_class& q, u64 ell, unsigned k) {
  mpz_class m;
  mpz_ui_pow_ui(m.get_mpz_t(), ell, k);
  mpz_class den = q.get_den();
  mpz_class inv;
  if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t()) == 0) {
    if (m == 1) return 0;
    throw PreconditionViolated("residue_mod: rational " + q.get_str() + " is not " +
                               std::to_string(ell) + "-integral");
  }
  mpz_class r = q.get_num() * inv;
  mpz_mod(r.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t());
  return r.get_si();
}

QmodZ::QmodZ(i64 n, i64 d) {
  if (d <= 0) throw PreconditionViolated("QmodZ: denominator must be positive");
  n = mod(n, d);
  i64 g = std::gcd(n, d);
  if (g == 0) g = d;
  num = n / g;
  den = d / g;
}

QmodZ QmodZ::from_rational(const mpq_class& q) {
  mpz_class den = q.get_den();
  mpz_class num = q.get_num();
  mpz_mod(num.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  if (!den.fits_slong_p()) throw PreconditionViolated("QmodZ: denominator too large");
  return {num.get_si(), den.get_si()};
}

QmodZ QmodZ::operator+(const QmodZ& o) const {
  i64 d = static_cast<i64>(lcm_u(static_cast<u64>(den), static_cast<u64>(o.den)));
  return {mod(num * (d / den) + o.num * (d / o.den), d), d};
}

QmodZ QmodZ::operator-(const QmodZ& o) const { return *this + (-o); }

QmodZ QmodZ::operator-() const { return {den - num, den}; }

QmodZ QmodZ::times(i64 k) const { return {mul_mod(num, k, den), den}; }

}  // namespace anticyc
