#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace anticyc {

using i64 = std::int64_t;
using u64 = std::uint64_t;

// Small-integer number theory. All moduli here fit comfortably in 63 bits.

i64 mod(i64 a, i64 m);
i64 mul_mod(i64 a, i64 b, i64 m);
i64 pow_mod(i64 base, u64 exp, i64 m);
/// Inverse of a modulo m; throws PreconditionViolated when gcd(a, m) != 1.
i64 inv_mod(i64 a, i64 m);
u64 gcd_u(u64 a, u64 b);
u64 lcm_u(u64 a, u64 b);
u64 ipow(u64 base, unsigned exp);
bool is_prime(u64 n);
/// Prime factorisation by trial division, primes ascending.
std::vector<std::pair<u64, unsigned>> factorize(u64 n);
u64 euler_phi(u64 n);
/// Largest divisor of n coprime to p.
u64 prime_to_part(u64 n, u64 p);
unsigned valuation_u(u64 n, u64 p);
/// Legendre symbol (a | ell) for an odd prime ell, in {-1, 0, 1}.
int legendre(i64 a, u64 ell);
/// Smallest positive quadratic non-residue modulo the odd prime ell.
u64 least_nonresidue(u64 ell);
/// Smallest generator of (Z/ell^2)^x, hence of (Z/ell^k)^x for all k.
u64 primitive_root_mod_square(u64 ell);
/// Multiplicative order of a modulo m (gcd(a, m) = 1).
u64 multiplicative_order(i64 a, u64 m);

// Rationals.

/// Parses "a", "-a", "a/b" into a canonical rational; throws ConfigError.
mpq_class parse_rational(std::string_view text);
/// Canonical "a/b" (or "a" for integers).
std::string format_rational(const mpq_class& q);
/// v_ell of a nonzero rational; throws PreconditionViolated on zero.
int valuation(const mpq_class& q, u64 ell);
int valuation(const mpz_class& z, u64 ell);
/// Residue of a rational that is integral at ell, modulo ell^k.
i64 residue_mod(const mpq_class& q, u64 ell, unsigned k);

/// An element of Q/Z, kept reduced with 0 <= num < den.
struct QmodZ {
  i64 num = 0;
  i64 den = 1;

  QmodZ() = default;
  QmodZ(i64 n, i64 d);

  static QmodZ from_rational(const mpq_class& q);
  mpq_class to_rational() const { return mpq_class(num, den); }
  bool is_zero() const { return num == 0; }

  QmodZ operator+(const QmodZ& o) const;
  QmodZ operator-(const QmodZ& o) const;
  QmodZ operator-() const;
  QmodZ times(i64 k) const;
  bool operator==(const QmodZ& o) const = default;
};

}  // namespace anticyc
