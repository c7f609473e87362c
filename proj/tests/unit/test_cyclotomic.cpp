#include <doctest.h>

#include <random>

#include <anticyc/cyclotomic.hpp>
#include <anticyc/errors.hpp>

using namespace anticyc;

namespace {

Cyclotomic random_element(std::mt19937_64& rng, u64 n) {
  std::vector<mpq_class> c;
  for (u64 i = 0; i < n; ++i) c.emplace_back(static_cast<long>(rng() % 7) - 3, static_cast<long>(rng() % 3) + 1);
  return Cyclotomic::from_coefficients(n, c);
}

Cyclotomic z(u64 n, i64 k) { return Cyclotomic::root_of_unity(n, k); }

}  // namespace

TEST_CASE("cyclotomic polynomials") {
  CHECK(cyclotomic_polynomial(1) == std::vector<i64>{-1, 1});
  CHECK(cyclotomic_polynomial(4) == std::vector<i64>{1, 0, 1});
  CHECK(cyclotomic_polynomial(6) == std::vector<i64>{1, -1, 1});
  CHECK(cyclotomic_polynomial(9) == std::vector<i64>{1, 0, 0, 1, 0, 0, 1});
  // Phi_105 is the first with a coefficient -2.
  const auto& p = cyclotomic_polynomial(105);
  CHECK(std::find(p.begin(), p.end(), -2) != p.end());
}

TEST_CASE("field operations on small examples") {
  CHECK(z(3, 1) + z(3, 2) == Cyclotomic(-1));
  CHECK(z(4, 1) * z(4, 1) == Cyclotomic(-1));
  Cyclotomic prod(1);
  for (int k = 1; k < 5; ++k) prod *= Cyclotomic(1) - z(5, k);
  CHECK(prod == Cyclotomic(5));
  CHECK(prod.is_rational());
  CHECK(z(12, 3) == z(4, 1));
  CHECK(z(6, 2) == z(3, 1));
  CHECK(z(7, 7) == Cyclotomic(1));
  CHECK(z(7, -1) == z(7, 6));
  CHECK_THROWS_AS(Cyclotomic(0).inverse(), DivisionByZero);
}

TEST_CASE("field axioms on random elements") {
  std::mt19937_64 rng(11);
  for (u64 n : {5u, 8u, 12u, 15u, 21u}) {
    for (int i = 0; i < 20; ++i) {
      const Cyclotomic a = random_element(rng, n), b = random_element(rng, n), c = random_element(rng, 3);
      CHECK(a * (b + c) == a * b + a * c);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a - a == Cyclotomic(0));
      if (!a.is_zero()) CHECK(a * a.inverse() == Cyclotomic(1));
      CHECK(a.conj().conj() == a);
      CHECK((a * b).conj() == a.conj() * b.conj());
      CHECK(a.embed(2 * a.conductor()) == a);
    }
  }
}

TEST_CASE("complex conjugation") {
  CHECK(complex_conjugate(z(8, 1)) == z(8, 7));
  CHECK(complex_conjugate(Cyclotomic(mpq_class(3, 2))) == Cyclotomic(mpq_class(3, 2)));
  const ScaledCyclotomic x(z(3, 1) + Cyclotomic(2), 5);
  const ScaledCyclotomic y(z(3, 2) + Cyclotomic(2), 5);
  CHECK(complex_conjugate(x) == y);
}

TEST_CASE("square roots") {
  for (u64 r : {1u, 2u, 3u, 5u, 6u, 7u, 10u, 11u, 13u, 15u}) {
    const Cyclotomic s = sqrt_embedding(r);
    CHECK(s * s == Cyclotomic(static_cast<long>(r)));
    CHECK(s.conj() == s);
  }
  const ScaledCyclotomic a = ScaledCyclotomic::sqrt_of(mpq_class(12));
  CHECK(a.sqrt_scale() == 3);
  CHECK(a * a == ScaledCyclotomic(12L));
  CHECK(ScaledCyclotomic::sqrt_of(mpq_class(1, 5)) * ScaledCyclotomic::sqrt_of(mpq_class(5)) == ScaledCyclotomic(1L));
}

TEST_CASE("mixed radicands stay exact") {
  const ScaledCyclotomic s2 = ScaledCyclotomic::sqrt_of(2), s3 = ScaledCyclotomic::sqrt_of(3);
  const ScaledCyclotomic sum = s2 + s3;
  CHECK(sum * sum == ScaledCyclotomic(5L) + ScaledCyclotomic::sqrt_of(24) * ScaledCyclotomic(1L));
  CHECK(sum - s3 == s2);
  CHECK((s2 * s3) == ScaledCyclotomic::sqrt_of(6));
  CHECK(ScaledCyclotomic(Cyclotomic(0), 7).is_zero());
  CHECK((s2 / s2) == ScaledCyclotomic(1L));
}

TEST_CASE("printing") {
  CHECK(Cyclotomic(mpq_class(-6, 5)).to_string() == "-6/5");
  CHECK(Cyclotomic(0).to_string() == "0");
}
