#include <doctest.h>

#include <oracles/oracles.hpp>

#include <anticyc/characters.hpp>
#include <anticyc/errors.hpp>
#include <anticyc/local_constants.hpp>

using namespace anticyc;

namespace {

MultChar by_id(const LocalQuadExt& E, unsigned c, const std::string& id) {
  for (const auto& chi : enumerate_self_dual(E, c))
    if (chi.id() == id) return chi;
  throw NotFound(id);
}

MultChar anchor() { return by_id(LocalQuadExt(5, ExtKind::inert), 1, "u[1/3]w1/2"); }

}  // namespace

TEST_CASE("Gauss sum examples") {
  const ArithChar chi(anchor());
  const auto r0 = gauss_sum_A(chi, 1);
  CHECK(r0.value == gauss_sum_A_closed(chi, 1).value);
  const ArithChar triv(by_id(LocalQuadExt(5, ExtKind::inert), 1, "u[0]w1/2"));
  CHECK(gauss_sum_A(triv, 1).value == ScaledCyclotomic(mpq_class(6, 5)));
  CHECK(gauss_sum_A(triv, mpq_class(1, 25)).value.is_zero());
  CHECK(gauss_sum_A(chi, mpq_class(1, 125)).value.is_zero());
}

TEST_CASE("closed form agrees with the slow oracle") {
  for (u64 ell : {3u, 5u, 7u}) {
    const LocalQuadExt E(ell, ExtKind::inert);
    for (const auto& chi_star : enumerate_self_dual(E, 1)) {
      const i64 k = oracle::matching_k(chi_star);
      REQUIRE(k >= 0);
      const auto ref = oracle::make_inert_character(ell, E.theta_square(), k);
      const ArithChar chi(chi_star);
      for (long v = -2; v <= 2; ++v) {
        for (i64 u = 1; u < static_cast<i64>(ell); ++u) {
          const mpq_class beta = mpq_class(u) * (v >= 0 ? mpq_class(ipow(ell, v)) : mpq_class(1, ipow(ell, -v)));
          CAPTURE(ell);
          CAPTURE(chi_star.id());
          CAPTURE(beta);
          const Cyclotomic slow = oracle::slow_gauss_sum(ref, beta);
          CHECK(gauss_sum_A(chi, beta).value.to_cyclotomic() == slow);
          if (chi_star.conductor() == 1) CHECK(gauss_sum_A_closed(chi, beta).value.to_cyclotomic() == slow);
          CHECK(gauss_sum_A(chi, beta, {.sign = PsiSign::opposite}).value.to_cyclotomic() ==
                oracle::slow_gauss_sum(ref, beta, PsiSign::opposite));
        }
      }
    }
  }
}

TEST_CASE("window: widening does not change the value and narrowing is rejected") {
  for (const auto& E : {LocalQuadExt(5, ExtKind::inert), LocalQuadExt(5, ExtKind::ramified),
                        LocalQuadExt(3, ExtKind::ramified)}) {
    for (const auto& chi_star : enumerate_self_dual(E, 2)) {
      const ArithChar chi(chi_star);
      for (long v = -3; v <= 2; ++v) {
        const mpq_class beta = mpq_class(2) * (v >= 0 ? mpq_class(ipow(E.ell(), v)) : mpq_class(1, ipow(E.ell(), -v)));
        const long M = gauss_window(chi, beta);
        const auto a = gauss_sum_A(chi, beta);
        CHECK(a.truncation == M);
        CHECK(gauss_sum_A(chi, beta, {.truncation = M + 1}).value == a.value);
        if (M > 0) CHECK_THROWS_AS(gauss_sum_A(chi, beta, {.truncation = M - 1}), PreconditionViolated);
      }
    }
  }
  CHECK_THROWS_AS(gauss_sum_A(ArithChar(anchor()), mpq_class(1, 5), {.budget = 3}), BudgetExceeded);
  CHECK_THROWS_AS(gauss_sum_A_closed(ArithChar(anchor(), 1), 1), PreconditionViolated);
}

TEST_CASE("epsilon factors") {
  // Unramified characters of E have epsilon = 1 (d_E = 1).
  const auto chars3 = enumerate_self_dual(LocalQuadExt(3, ExtKind::inert), 1);
  CHECK(epsilon_factor(chars3[0], mpq_class(1, 2)) == ScaledCyclotomic(1L));
  CHECK(epsilon_factor(chars3[0], 0) == ScaledCyclotomic(1L));
  // Quadratic characters of Q_ell: epsilon(1/2) = g / sqrt(ell), times (-1|ell) for psi_standard.
  for (u64 ell : {3u, 5u, 7u, 11u}) {
    const FChar quad(ell, 1, QmodZ(1, 2), QmodZ());
    const ScaledCyclotomic g = ScaledCyclotomic(oracle::quadratic_gauss_sum(ell)) / ScaledCyclotomic::sqrt_of(ell);
    CHECK(root_number(quad, PsiSign::opposite) == g);
    CHECK(root_number(quad) == ScaledCyclotomic(static_cast<long>(legendre(-1, ell))) * g);
    const ScaledCyclotomic w = root_number(quad);
    CHECK(w * w * w * w == ScaledCyclotomic(1L));
  }
  // |W| = 1 for unitary characters.
  for (const auto& E : {LocalQuadExt(5, ExtKind::inert), LocalQuadExt(5, ExtKind::ramified), LocalQuadExt(7, ExtKind::ramified)}) {
    for (const auto& chi : enumerate_self_dual(E, 2)) {
      const ScaledCyclotomic w = root_number(chi);
      CHECK(w * complex_conjugate(w) == ScaledCyclotomic(1L));
      // Self-dual: W^2 = chi*(-1) = tau(-1).
      CHECK(w * w == ScaledCyclotomic(static_cast<long>(tau_EF(E, -1))));
    }
  }
}

TEST_CASE("dichotomy holds on a small grid under both signs") {
  for (PsiSign sign : {PsiSign::standard, PsiSign::opposite}) {
    for (const auto& E : {LocalQuadExt(3, ExtKind::inert), LocalQuadExt(5, ExtKind::ramified)}) {
      for (const auto& chi : enumerate_self_dual(E, 2)) {
        if (chi.conductor() == 0) continue;
        for (long v = -3; v <= 1; ++v) {
          for (i64 u = 1; u < static_cast<i64>(E.ell()); ++u) {
            const mpq_class beta = mpq_class(u) * (v >= 0 ? mpq_class(ipow(E.ell(), v)) : mpq_class(1, ipow(E.ell(), -v)));
            const DichotomyVerdict d = dichotomy_check(chi, beta, sign);
            CHECK(d.pass);
            CHECK(d.tau == tau_EF(E, beta));
            if (!d.A_zero) CHECK(d.lhs == d.rhs);
          }
        }
      }
    }
  }
}

TEST_CASE("residue Fourier coefficients and b_min") {
  const PrimeAbovePChoice c3(3);
  const ArithChar chi(anchor());
  const auto coeffs = residue_fourier_coeffs(chi, c3);
  REQUIRE(coeffs.size() == 5);
  PadicVal least = PadicVal::infinity();
  for (const auto& c : coeffs) {
    if (c.gamma == 0) continue;
    CHECK(c.value == gauss_sum_A(chi, mpq_class(c.gamma, 5)).value);
    least = min(least, c.valuation);
  }
  CHECK(least == PadicVal(mpq_class(1, 2)));

  const BMin b = find_b_min(chi, c3);
  CHECK(valuation(b.b, 5) == -1);
  CHECK(b.valuation == PadicVal(mpq_class(1, 2)));
  CHECK(dichotomy_check(anchor(), b.b).pass);

  const auto ram = enumerate_self_dual(LocalQuadExt(5, ExtKind::ramified), 1);
  REQUIRE_FALSE(ram.empty());
  const BMin r = find_b_min(ArithChar(ram[0]), c3);
  CHECK(r.valuation == mu_p_local(ArithChar(ram[0]), c3).value);
}
