#include <doctest.h>

#include <oracles/oracles.hpp>

#include <anticyc/characters.hpp>
#include <anticyc/errors.hpp>
#include <anticyc/local_constants.hpp>
#include <anticyc/local_field.hpp>

using namespace anticyc;

TEST_CASE("extension data") {
  const LocalQuadExt inert(5, ExtKind::inert);
  CHECK(inert.theta_square() == 2);
  CHECK(inert.q() == 25);
  CHECK(inert.e() == 1);
  CHECK(inert.f() == 2);
  const LocalQuadExt ram(5, ExtKind::ramified);
  CHECK(ram.theta_square() == 5);
  CHECK(ram.q() == 5);
  CHECK(ram.uniformizer() == ram.theta());
  CHECK(inert.uniformizer() == EElement(5));
  CHECK(parse_ext_kind("ramified") == ExtKind::ramified);
  CHECK(to_string(ExtKind::inert) == "inert");
  CHECK(to_string(PsiSign::standard) == "minus");
  CHECK(parse_psi_sign("plus") == PsiSign::opposite);
  CHECK_THROWS_AS(parse_ext_kind("split"), ConfigError);
  CHECK_THROWS(LocalQuadExt(5, ExtKind::inert, 4));
  CHECK_THROWS(LocalQuadExt(5, ExtKind::ramified, 3));
}

TEST_CASE("arithmetic in E") {
  const LocalQuadExt E(7, ExtKind::inert);  // theta^2 = 3
  const EElement a(mpq_class(2), mpq_class(1)), b(mpq_class(1, 7), mpq_class(-3));
  CHECK(E.conj(a) == EElement(2, -1));
  CHECK(E.norm(a) == 4 - 3);
  CHECK(E.trace(a) == 4);
  CHECK(E.mul(a, E.inverse(a)) == EElement(1));
  CHECK(E.norm(E.mul(a, b)) == E.norm(a) * E.norm(b));
  CHECK(E.pow(a, 3) == E.mul(a, E.mul(a, a)));
  CHECK(E.val(E.delta()) == 0);
  CHECK(E.val(b) == -1);
  CHECK_FALSE(E.val(EElement()).has_value());
  const LocalQuadExt R(7, ExtKind::ramified);
  CHECK(R.val(R.delta()) == 1);
  CHECK(R.val(EElement(7)) == 2);
  CHECK(R.val(EElement(mpq_class(1, 7), mpq_class(1))) == -2);
  EElement u;
  CHECK(R.split_unit(EElement(0, 14), u) == 3);
  CHECK(R.val(u) == 0);
  CHECK_THROWS_AS(E.inverse(EElement()), DivisionByZero);
}

TEST_CASE("additive character") {
  CHECK(psi_exponent(mpq_class(1, 5), 5) == QmodZ(4, 5));
  CHECK(psi_exponent(mpq_class(1, 5), 5, PsiSign::opposite) == QmodZ(1, 5));
  CHECK(psi(mpq_class(3), 5) == Cyclotomic(1));
  CHECK(psi(mpq_class(1, 25), 5) == Cyclotomic::root_of_unity(25, -1));
  // Denominators prime to ell are ell-adic integers.
  CHECK(psi(mpq_class(1, 3), 5) == Cyclotomic(1));
  CHECK(psi(mpq_class(1, 15), 5) == psi(mpq_class(2, 5), 5));
  CHECK(psi_circ(mpq_class(1, 5), 5) == psi(mpq_class(-1, 5), 5));
  for (int a = -10; a <= 10; ++a)
    for (int b = -10; b <= 10; ++b)
      CHECK(psi_exponent(mpq_class(a, 25) + mpq_class(b, 35), 5) ==
            psi_exponent(mpq_class(a, 25), 5) + psi_exponent(mpq_class(b, 35), 5));
}

TEST_CASE("quotient enumeration sizes") {
  const LocalQuadExt I3(3, ExtKind::inert), R5(5, ExtKind::ramified), I5(5, ExtKind::inert);
  auto q = enumerate_quotient(I3, 1);
  CHECK(q.all.size() == 9);
  CHECK(q.units.size() == 8);
  q = enumerate_quotient(I5, 1);
  CHECK(q.all.size() == 25);
  CHECK(q.units.size() == 24);
  q = enumerate_quotient(I5, 2);
  CHECK(q.all.size() == 625);
  CHECK(q.units.size() == 600);
  q = enumerate_quotient(R5, 2);
  CHECK(q.all.size() == 25);
  CHECK(q.units.size() == 20);
  CHECK(enumerate_quotient(R5, 0).all.size() == 1);
  CHECK_THROWS_AS(enumerate_quotient(I5, 3, 100), BudgetExceeded);
}

TEST_CASE("Hilbert symbol agrees with the norm-group definition") {
  CHECK(hilbert_symbol(2, 5, 5) == -1);
  CHECK(hilbert_symbol(5, 5, 5) == hilbert_symbol(5, -1, 5));
  for (u64 ell : {3u, 5u, 7u}) {
    for (i64 a : {1, 2, 3, 5, 6, 7, 10, 14, 15, 21, -1, -3}) {
      for (i64 b : {1, 2, 3, 5, 7, 11, 15, 25, -5, -7}) {
        CAPTURE(ell);
        CAPTURE(a);
        CAPTURE(b);
        CHECK(hilbert_symbol(a, b, ell) == oracle::brute_hilbert_symbol(a, b, ell));
      }
    }
  }
}

TEST_CASE("quadratic character of E/F") {
  const LocalQuadExt I5(5, ExtKind::inert), R5(5, ExtKind::ramified);
  CHECK(tau_EF(I5, 5) == -1);
  CHECK(tau_EF(I5, 2) == 1);
  CHECK(tau_EF(R5, 2) == -1);
  CHECK(tau_EF(R5, 4) == 1);
  CHECK(tau_EF(R5, -5) == 1);  // -5 = N(theta)
  for (const LocalQuadExt& E : {I5, R5, LocalQuadExt(7, ExtKind::ramified), LocalQuadExt(3, ExtKind::inert)}) {
    for (long x = 1; x < 60; ++x) {
      // Norms are in the kernel.
      const EElement z(mpq_class(x), mpq_class(x % 4 + 1));
      CHECK(tau_EF(E, E.norm(z)) == 1);
      CHECK(tau_EF(E, mpq_class(x) * (x + 1)) == tau_EF(E, x) * tau_EF(E, x + 1));
    }
  }
}
