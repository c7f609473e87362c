#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "anticyc/arith.hpp"

namespace anticyc::fp {

// Dense polynomials over F_p, low degree first, no trailing zeros (zero = empty).
using Poly = std::vector<u64>;

void trim(Poly& f);
int degree(const Poly& f);
Poly add(const Poly& a, const Poly& b, u64 p);
Poly sub(const Poly& a, const Poly& b, u64 p);
Poly mul(const Poly& a, const Poly& b, u64 p);
void divmod(const Poly& a, const Poly& b, u64 p, Poly& q, Poly& r);
Poly rem(const Poly& a, const Poly& b, u64 p);
Poly monic(const Poly& f, u64 p);
Poly gcd(Poly a, Poly b, u64 p);
Poly powmod(const Poly& base, const mpz_class& e, const Poly& modulus, u64 p);
/// Inverse of a modulo f; returns false when gcd(a, f) != 1.
bool inverse_mod(const Poly& a, const Poly& f, u64 p, Poly& out);
/// Reduction of an integer polynomial modulo p.
Poly from_integer(const std::vector<i64>& f, u64 p);

/// Splits a squarefree monic f whose irreducible factors all have degree d
/// (odd p). Factors are monic and returned sorted.
std::vector<Poly> equal_degree_factor(const Poly& f, int d, u64 p, std::uint64_t seed = 0x5eed);

}  // namespace anticyc::fp
