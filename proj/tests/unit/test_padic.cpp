#include <doctest.h>

#include <random>

#include <anticyc/errors.hpp>
#include <anticyc/padic.hpp>

using namespace anticyc;

namespace {

Cyclotomic z(u64 n, i64 k) { return Cyclotomic::root_of_unity(n, k); }

}  // namespace

TEST_CASE("PadicVal arithmetic and parsing") {
  CHECK(PadicVal::parse("1/2") == PadicVal(mpq_class(1, 2)));
  CHECK(PadicVal::parse("inf").is_infinite());
  CHECK(PadicVal::infinity().to_string() == "inf");
  CHECK(PadicVal(mpq_class(3, 6)).to_string() == "1/2");
  CHECK(PadicVal(1) + PadicVal::infinity() == PadicVal::infinity());
  CHECK(PadicVal(1) < PadicVal::infinity());
  CHECK(min(PadicVal(2), PadicVal(mpq_class(1, 3))) == PadicVal(mpq_class(1, 3)));
  CHECK_THROWS_AS((void)PadicVal::infinity().value(), PreconditionViolated);
  CHECK_THROWS_AS(PadicVal::parse("one"), ConfigError);
}

TEST_CASE("valuation examples") {
  const PrimeAbovePChoice c3(3);
  CHECK(c3.valuation(Cyclotomic(3)) == PadicVal(1));
  CHECK(c3.valuation(z(3, 1) - Cyclotomic(1)) == PadicVal(mpq_class(1, 2)));
  CHECK(c3.valuation(Cyclotomic(0)).is_infinite());
  CHECK(c3.valuation(Cyclotomic(mpq_class(6, 5))) == PadicVal(1));
  CHECK(c3.valuation(z(9, 1) - Cyclotomic(1)) == PadicVal(mpq_class(1, 6)));
  CHECK(c3.valuation(z(5, 2)) == PadicVal(0));
  CHECK(c3.valuation(ScaledCyclotomic::sqrt_of(3)) == PadicVal(mpq_class(1, 2)));
  const PrimeAbovePChoice c5(5);
  CHECK(c5.valuation(z(5, 1) - Cyclotomic(1)) == PadicVal(mpq_class(1, 4)));
  CHECK(c5.valuation(Cyclotomic(mpq_class(2, 25))) == PadicVal(-2));
}

TEST_CASE("prime choice data") {
  const PrimeAbovePChoice c(3, 13);
  CHECK(c.prime() == 3);
  CHECK(c.universe() == 13);
  CHECK(c.factor_count() == 4);  // ord_13(3) = 3, phi(13) = 12
  const auto f0 = c.residue_factor(13);
  CHECK(f0.size() == 4);  // monic cubic
  CHECK_THROWS(PrimeAbovePChoice(3, 13, 4));
  CHECK_THROWS(PrimeAbovePChoice(2));
}

TEST_CASE("valuations depend on the chosen prime only where they should") {
  // 1 + zeta_13 + zeta_13^3 + zeta_13^9 is a Gaussian period; its valuation can differ between primes above 3.
  std::vector<PadicVal> seen;
  for (std::size_t i = 0; i < 4; ++i) {
    const PrimeAbovePChoice c(3, 13, i);
    CHECK(c.valuation(Cyclotomic(12)) == PadicVal(1));
    CHECK(c.valuation(z(13, 5)) == PadicVal(0));
    CHECK(c.valuation(z(39, 13) - Cyclotomic(1)) == PadicVal(mpq_class(1, 2)));
    seen.push_back(c.valuation(Cyclotomic(1) + z(13, 1) + z(13, 3) + z(13, 9)));
  }
  // The norm of the period is fixed, so the sum over conjugate primes is too.
  PadicVal total = 0;
  for (const auto& v : seen) total = total + v;
  CHECK_FALSE(total.is_infinite());
}

TEST_CASE("multiplicativity on random elements") {
  std::mt19937_64 rng(5);
  const PrimeAbovePChoice c(3, 13);
  for (int i = 0; i < 40; ++i) {
    std::vector<mpq_class> a, b;
    for (int k = 0; k < 39; ++k) {
      a.emplace_back(static_cast<long>(rng() % 9) - 4);
      b.emplace_back(static_cast<long>(rng() % 9) - 4);
    }
    const Cyclotomic x = Cyclotomic::from_coefficients(39, a), y = Cyclotomic::from_coefficients(39, b);
    CHECK(c.valuation(x * y) == c.valuation(x) + c.valuation(y));
    if (!x.is_zero()) CHECK(c.valuation(x.inverse()) == PadicVal(0) - c.valuation(x));
  }
}

TEST_CASE("precision ceiling is reported") {
  const PrimeAbovePChoice tight(3, 1, 0, 2, 2);
  // Needs more than two digits to see a nonzero residue.
  const Cyclotomic x = Cyclotomic(27) * (z(13, 1) + Cyclotomic(1));
  CHECK_THROWS_AS(tight.valuation(x), PrecisionCeiling);
  const PrimeAbovePChoice loose(3);
  CHECK(loose.valuation(x) == PadicVal(3) + loose.valuation(z(13, 1) + Cyclotomic(1)));
}
