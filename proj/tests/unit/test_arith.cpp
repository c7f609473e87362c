#include <doctest.h>

#include <random>

#include <anticyc/arith.hpp>
#include <anticyc/errors.hpp>

using namespace anticyc;

TEST_CASE("modular helpers") {
  CHECK(mod(-7, 5) == 3);
  CHECK(pow_mod(3, 4, 7) == 4);
  CHECK(mul_mod(1'000'000'007, 1'000'000'009, 998'244'353) == (1'000'000'007LL % 998'244'353) * (1'000'000'009LL % 998'244'353) % 998'244'353);
  CHECK(inv_mod(3, 7) == 5);
  CHECK_THROWS_AS(inv_mod(6, 9), PreconditionViolated);
  CHECK(gcd_u(12, 18) == 6);
  CHECK(lcm_u(4, 6) == 12);
  CHECK(ipow(5, 3) == 125);
}

TEST_CASE("primes and factorisation") {
  CHECK(is_prime(2));
  CHECK(is_prime(13));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(91));
  const auto f = factorize(360);
  REQUIRE(f.size() == 3);
  CHECK(f[0] == std::make_pair<u64, unsigned>(2, 3));
  CHECK(f[1] == std::make_pair<u64, unsigned>(3, 2));
  CHECK(f[2] == std::make_pair<u64, unsigned>(5, 1));
  CHECK(euler_phi(36) == 12);
  CHECK(prime_to_part(72, 3) == 8);
  CHECK(valuation_u(72, 2) == 3);
  CHECK(multiplicative_order(3, 13) == 3);
}

TEST_CASE("residue symbols and primitive roots") {
  CHECK(legendre(2, 5) == -1);
  CHECK(legendre(4, 5) == 1);
  CHECK(legendre(10, 5) == 0);
  CHECK(least_nonresidue(7) == 3);
  for (u64 ell : {3u, 5u, 7u, 11u, 13u}) {
    const u64 g = primitive_root_mod_square(ell);
    CHECK(multiplicative_order(static_cast<i64>(g), ell * ell) == ell * (ell - 1));
  }
}

TEST_CASE("rationals") {
  CHECK(parse_rational("-6/4") == mpq_class(-3, 2));
  CHECK(parse_rational("7") == 7);
  CHECK_THROWS_AS(parse_rational("1/0"), ConfigError);
  CHECK_THROWS_AS(parse_rational("x"), ConfigError);
  CHECK(format_rational(mpq_class(6, 4)) == "3/2");
  CHECK(format_rational(mpq_class(-5)) == "-5");
  CHECK(valuation(mpq_class(50, 3), 5) == 2);
  CHECK(valuation(mpq_class(2, 25), 5) == -2);
  CHECK_THROWS_AS(valuation(mpq_class(0), 5), PreconditionViolated);
  CHECK(residue_mod(mpq_class(1, 2), 5, 1) == 3);
  CHECK(residue_mod(mpq_class(7, 3), 5, 2) == mod(7 * inv_mod(3, 25), 25));
}

TEST_CASE("Q/Z arithmetic") {
  const QmodZ a(3, 4), b(1, 2);
  CHECK(a + b == QmodZ(1, 4));
  CHECK(a - b == QmodZ(1, 4));
  CHECK(-a == QmodZ(1, 4));
  CHECK(a.times(2) == QmodZ(1, 2));
  CHECK(QmodZ(-1, 3) == QmodZ(2, 3));
  CHECK(QmodZ::from_rational(mpq_class(7, 3)) == QmodZ(1, 3));
}

TEST_CASE("parse/format round trip on random rationals") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    const long n = static_cast<long>(rng() % 2001) - 1000;
    const long d = static_cast<long>(rng() % 999) + 1;
    const mpq_class q(n, d);
    mpq_class c = q;
    c.canonicalize();
    CHECK(parse_rational(format_rational(c)) == c);
  }
}
