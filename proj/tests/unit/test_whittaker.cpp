#include <doctest.h>

#include <random>

#include <anticyc/characters.hpp>
#include <anticyc/errors.hpp>
#include <anticyc/local_constants.hpp>
#include <anticyc/whittaker.hpp>

using namespace anticyc;

namespace {

ScaledCyclotomic S(long v) { return ScaledCyclotomic(v); }
ScaledCyclotomic S(const mpq_class& v) { return ScaledCyclotomic(v); }

}  // namespace

TEST_CASE("unramified row") {
  const UnramifiedRow triv{5, QmodZ(), 0, 0};
  CHECK(lambda_plus_at_uniformizer(triv) == S(1));
  CHECK(whittaker_unramified(triv, 1) == S(1));
  CHECK(whittaker_unramified(triv, 5) == S(6));
  CHECK(whittaker_unramified(triv, 50) == S(31));
  CHECK(whittaker_unramified(triv, 25) == S(31));
  CHECK(whittaker_unramified(triv, mpq_class(1, 5)).is_zero());
  const UnramifiedRow half{5, QmodZ(1, 2), mpq_class(1, 2), 0};  // lambda_+(5) = -5^-1/2
  CHECK(lambda_plus_at_uniformizer(half) == -ScaledCyclotomic::sqrt_of(mpq_class(1, 5)));
  CHECK(whittaker_unramified(half, 5) == S(1) - ScaledCyclotomic::sqrt_of(5));
  const UnramifiedRow shifted{7, QmodZ(1, 3), 0, 1};
  const ScaledCyclotomic lam(Cyclotomic::root_of_unity(3, 1));
  CHECK(whittaker_unramified(shifted, mpq_class(1, 7)) == lam);
  CHECK(whittaker_unramified(shifted, 1) == lam + lam * lam * S(7));
  CHECK_THROWS_AS(whittaker_unramified(triv, 0), PreconditionViolated);
}

TEST_CASE("unramified recursion W(beta ell) = lambda^c + lambda ell W(beta)") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 100; ++t) {
    const u64 ell = std::vector<u64>{3, 5, 7, 11}[rng() % 4];
    const i64 den = std::vector<i64>{1, 2, 3, 4, 6}[rng() % 5];
    UnramifiedRow row{ell, QmodZ(static_cast<i64>(rng() % den), den), mpq_class(static_cast<long>(rng() % 3), 2),
                      static_cast<long>(rng() % 3) - 1};
    const mpq_class beta(static_cast<long>(rng() % 50) + 1, static_cast<long>(rng() % 4) + 1);
    const ScaledCyclotomic lam = lambda_plus_at_uniformizer(row);
    ScaledCyclotomic lam_c(1L);
    for (long c = 0; c < row.c_valuation; ++c) lam_c *= lam;
    for (long c = 0; c > row.c_valuation; --c) lam_c /= lam;
    const ScaledCyclotomic lhs = whittaker_unramified(row, beta * ell);
    const ScaledCyclotomic w = whittaker_unramified(row, beta);
    if (valuation(beta, ell) + row.c_valuation + 1 < 0) {
      CHECK(lhs.is_zero());
    } else {
      CHECK(lhs == lam_c + lam * S(static_cast<long>(ell)) * w);
    }
  }
}

TEST_CASE("split and p rows") {
  const FChar lam(7, 1, QmodZ(1, 6), QmodZ(1, 3));
  CHECK(whittaker_split(lam, 7).is_zero());
  CHECK(whittaker_split(lam, 8) == S(1));
  CHECK(whittaker_split(lam, static_cast<long>(lam.primitive_root())) == ScaledCyclotomic(Cyclotomic::root_of_unity(6, 1)));
  const FChar lp(3, 1, QmodZ(), QmodZ());
  CHECK(whittaker_p_torsion(lp, 1, 4) == S(1));
  CHECK(whittaker_p_torsion(lp, 1, 5).is_zero());
  CHECK(whittaker_p_torsion(lp, 2, 5) == S(1));
  CHECK(whittaker_p_torsion(lp, 1, 3).is_zero());
  PlaceRole role;
  role.tag = PlaceTag::split_conductor;
  role.lambda = lam;
  CHECK(local_whittaker(role, 8) == S(1));
  role.tag = PlaceTag::nonsplit;
  CHECK_THROWS_AS(local_whittaker(role, 8), PreconditionViolated);
  CHECK(to_string(PlaceTag::p_adic_torsion) == "p_adic_torsion");
}

TEST_CASE("nonsplit row is L(0) times the Gauss sum") {
  const LocalQuadExt E(5, ExtKind::ramified);
  for (const auto& chi_star : enumerate_self_dual(E, 2)) {
    const ArithChar chi(chi_star);
    CHECK(local_L_factor(chi, 0) == S(1));
    for (const mpq_class& beta : {mpq_class(1), mpq_class(2, 5), mpq_class(3, 25)})
      CHECK(whittaker_nonsplit(chi, beta) == gauss_sum_A(chi, beta).value);
  }
}

TEST_CASE("L-factors and modified Euler factors") {
  for (u64 ell : {3u, 5u, 7u}) {
    const auto l = static_cast<long>(ell);
    const FChar minus(ell, 1, QmodZ(), QmodZ(1, 2));  // unramified, lambda(ell) = -1
    CHECK(local_L_factor(minus, 0) == S(mpq_class(1, 2)));
    CHECK(local_L_factor(minus, 1) == S(mpq_class(l, l + 1)));
    CHECK(modified_euler(minus) == S(mpq_class(l + 1, 2 * l)));
    const FChar triv(ell, 1, QmodZ(), QmodZ());
    CHECK_THROWS_AS(local_L_factor(triv, 0), PoleError);
    CHECK_THROWS_AS(modified_euler(triv), PoleError);
    const FChar quad(ell, 1, QmodZ(1, 2), QmodZ());
    CHECK(local_L_factor(quad, 0) == S(1));
    CHECK(modified_euler(quad) == S(static_cast<long>(legendre(-1, ell))) / epsilon_factor(quad, 0));
  }
  CHECK_THROWS_AS(modified_euler(FChar(5, 1, QmodZ(), QmodZ(1, 2)), 0), PreconditionViolated);
  const auto inert = enumerate_self_dual(LocalQuadExt(3, ExtKind::inert), 1);
  // chi(varpi) = -1/3 at s = 0 for the unramified self-dual character.
  CHECK(local_L_factor(ArithChar(inert[0]), 0) == S(mpq_class(3, 4)));
  CHECK(local_L_factor(ArithChar(inert[0], 0), 0) == S(mpq_class(1, 2)));
}
