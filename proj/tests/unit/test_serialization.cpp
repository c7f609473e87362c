#include <doctest.h>

#include <anticyc/characters.hpp>
#include <anticyc/errors.hpp>
#include <anticyc/serialization.hpp>

using namespace anticyc;

namespace {

MultChar anchor() {
  for (const auto& chi : enumerate_self_dual(LocalQuadExt(5, ExtKind::inert), 1))
    if (chi.id() == "u[1/3]w1/2") return chi;
  throw NotFound("anchor");
}

}  // namespace

TEST_CASE("scalar round trips") {
  const ScaledCyclotomic x(Cyclotomic::root_of_unity(12, 5) + Cyclotomic(mpq_class(-3, 7)), 3);
  CHECK(scaled_from_json(to_json(x)) == x);
  CHECK(scaled_from_json(to_json(ScaledCyclotomic(0L))).is_zero());
  CHECK(to_json(PadicVal::infinity()) == "inf");
  CHECK(padic_from_json(json("inf")).is_infinite());
  CHECK(padic_from_json(to_json(PadicVal(mpq_class(-5, 4)))) == PadicVal(mpq_class(-5, 4)));
  CHECK(qmodz_from_json(to_json(QmodZ(2, 3))) == QmodZ(2, 3));
  CHECK_THROWS_AS(padic_from_json(json(1.5)), ConfigError);
}

TEST_CASE("character round trips") {
  const ArithChar chi(anchor());
  const json j = to_json(chi);
  CHECK(j.at("id") == "u[1/3]w1/2");
  CHECK(j.at("prime") == 5);
  const ArithChar back = arith_char_from_json(j);
  CHECK(back.finite_part() == chi.finite_part());
  CHECK(back.norm_exponent() == chi.norm_exponent());

  json bad = j;
  bad["colour"] = "blue";
  CHECK_THROWS_AS(arith_char_from_json(bad), ConfigError);
  bad = j;
  bad["id"] = "u[0]w1/2";
  CHECK_THROWS_AS(arith_char_from_json(bad), ConfigError);

  const FChar lam(7, 2, QmodZ(1, 6), QmodZ(1, 3));
  CHECK(fchar_from_json(to_json(lam)) == lam);
  const UnramifiedRow row{11, QmodZ(1, 4), mpq_class(1, 2), -1};
  const UnramifiedRow rb = unramified_row_from_json(to_json(row));
  CHECK(rb.ell == 11);
  CHECK(rb.lambda_exponent == row.lambda_exponent);
  CHECK(rb.lambda_norm == row.lambda_norm);
  CHECK(rb.c_valuation == -1);
}

TEST_CASE("setup round trip and strict keys") {
  GlobalSetup s;
  s.p = 3;
  s.u = 2;
  s.nonsplit.push_back({anchor(), std::make_pair(-1L, 1L), 2u});
  s.split.push_back({FChar(7, 1, QmodZ(1, 6), QmodZ())});
  s.unramified.push_back({11, QmodZ(), 0, 0});
  s.reciprocity_sign = -1;
  s.sign = PsiSign::opposite;
  const json j = to_json(s);
  const GlobalSetup b = global_setup_from_json(j);
  CHECK(to_json(b) == j);
  CHECK(b.nonsplit[0].valuation_range == std::make_pair(-1L, 1L));
  CHECK(b.reciprocity_sign == -1);

  json extra = j;
  extra["weigth"] = 2;
  CHECK_THROWS_AS(global_setup_from_json(extra), ConfigError);
  CHECK_THROWS_AS(global_setup_from_json(json::array()), ConfigError);
  CHECK_NOTHROW(global_setup_from_json(json{{"p", 3}}));
  CHECK_THROWS_AS(require_keys(json{{"a", 1}}, {"b"}, "test"), ConfigError);
}

TEST_CASE("report dumps are deterministic") {
  GlobalSetup s;
  s.nonsplit.push_back({anchor(), std::make_pair(-1L, 0L), std::nullopt});
  const MuReport r = mu_sweep(s);
  const json j = to_json(r);
  CHECK(j.at("sum_mu_p") == "1/2");
  CHECK(j.contains("root_number_note"));
  CHECK(j.dump() == to_json(mu_sweep(s, {.jobs = 3})).dump());
}
