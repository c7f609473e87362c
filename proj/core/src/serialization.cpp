#include "anticyc/serialization.hpp"

#include <algorithm>

#include "anticyc/errors.hpp"

namespace anticyc {

namespace {

std::string rat(const mpq_class& q) { return format_rational(q); }

mpq_class rat_from(const json& j, const std::string& where) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return mpq_class(j.get<long>());
  throw ConfigError(where + ": expected an exact rational string or integer");
}

template <class T>
T get_int(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw ConfigError(where + ": missing '" + key + "'");
  const json& v = j.at(key);
  if (!v.is_number_integer()) throw ConfigError(where + ": '" + std::string(key) + "' must be an integer");
  return v.get<T>();
}

template <class T>
T get_int_or(const json& j, const char* key, T fallback, const std::string& where) {
  return j.contains(key) ? get_int<T>(j, key, where) : fallback;
}

}  // namespace

void require_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& [key, value] : j.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }))
      throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

json to_json(const Cyclotomic& x) {
  json coeffs = json::array();
  for (const auto& c : x.coefficients()) coeffs.push_back(rat(c));
  return {{"conductor", x.conductor()}, {"coefficients", coeffs}, {"sqrt_scale", 1}};
}

json to_json(const ScaledCyclotomic& x) {
  json j = to_json(x.base());
  j["sqrt_scale"] = x.sqrt_scale();
  return j;
}

ScaledCyclotomic scaled_from_json(const json& j) {
  require_keys(j, {"conductor", "coefficients", "sqrt_scale"}, "value");
  const u64 n = get_int<u64>(j, "conductor", "value");
  if (n == 0) throw ConfigError("value: conductor must be positive");
  if (!j.contains("coefficients") || !j.at("coefficients").is_array())
    throw ConfigError("value: 'coefficients' must be an array");
  std::vector<mpq_class> coeffs;
  for (const auto& c : j.at("coefficients")) coeffs.push_back(rat_from(c, "value"));
  if (coeffs.size() != euler_phi(n)) throw ConfigError("value: expected phi(conductor) coefficients");
  const u64 scale = get_int_or<u64>(j, "sqrt_scale", 1, "value");
  if (scale == 0) throw ConfigError("value: sqrt_scale must be positive");
  for (const auto& [q, e] : factorize(scale))
    if (e > 1) throw ConfigError("value: sqrt_scale must be squarefree");
  return ScaledCyclotomic(Cyclotomic::from_coefficients(n, coeffs), mpq_class(static_cast<long>(scale)));
}

json to_json(const PadicVal& v) { return v.to_string(); }

PadicVal padic_from_json(const json& j) {
  if (j.is_string()) return PadicVal::parse(j.get<std::string>());
  if (j.is_number_integer()) return PadicVal(j.get<long>());
  throw ConfigError("valuation: expected \"a/b\" or \"inf\"");
}

json to_json(const QmodZ& e) { return rat(e.to_rational()); }
QmodZ qmodz_from_json(const json& j) { return QmodZ::from_rational(rat_from(j, "exponent")); }

json to_json(const MultChar& chi, const mpq_class& norm_exponent) {
  const LocalQuadExt& E = chi.ext();
  json gens = json::array();
  for (const auto& g : chi.generator_exponents()) gens.push_back(to_json(g));
  json codes = json::array();
  for (const auto& g : chi.presentation().generators()) codes.push_back({rat(g.x), rat(g.y)});
  return {{"prime", E.ell()},
          {"kind", to_string(E.kind())},
          {"theta_square", E.theta_square()},
          {"level", chi.level()},
          {"generator_exponents", gens},
          {"uniformizer_exponent", to_json(chi.uniformizer_exponent())},
          {"norm_exponent", rat(norm_exponent)},
          {"id", chi.id()},
          {"generators", codes}};
}

json to_json(const ArithChar& chi) { return to_json(chi.finite_part(), chi.norm_exponent()); }

ArithChar arith_char_from_json(const json& j, u64 budget) {
  const std::string where = "character";
  require_keys(j,
               {"prime", "kind", "theta_square", "level", "generator_exponents", "uniformizer_exponent",
                "norm_exponent", "id", "generators"},
               where);
  const u64 ell = get_int<u64>(j, "prime", where);
  if (!j.contains("kind") || !j.at("kind").is_string()) throw ConfigError(where + ": missing 'kind'");
  std::optional<i64> theta_square;
  if (j.contains("theta_square")) theta_square = get_int<i64>(j, "theta_square", where);
  const LocalQuadExt E(ell, parse_ext_kind(j.at("kind").get<std::string>()), theta_square);
  const unsigned level = get_int<unsigned>(j, "level", where);
  auto pres = UnitGroupPresentation::get(E, level, budget);
  if (!j.contains("generator_exponents") || !j.at("generator_exponents").is_array())
    throw ConfigError(where + ": 'generator_exponents' must be an array");
  std::vector<QmodZ> gens;
  for (const auto& g : j.at("generator_exponents")) gens.push_back(qmodz_from_json(g));
  if (gens.size() != pres->rank())
    throw ConfigError(where + ": expected " + std::to_string(pres->rank()) + " generator exponents");
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if ((static_cast<i64>(pres->orders()[i]) * gens[i].num) % gens[i].den != 0)
      throw ConfigError(where + ": generator exponent incompatible with the generator order");
  }
  const QmodZ unif = j.contains("uniformizer_exponent") ? qmodz_from_json(j.at("uniformizer_exponent")) : QmodZ();
  const mpq_class s0 = j.contains("norm_exponent") ? rat_from(j.at("norm_exponent"), where) : mpq_class(1, 2);
  if (mpq_class(2 * s0).get_den() != 1) throw ConfigError(where + ": norm_exponent must be a half-integer");
  MultChar chi(pres, gens, unif);
  if (j.contains("generators")) {
    const json expected = to_json(chi, s0).at("generators");
    if (j.at("generators") != expected) throw ConfigError(where + ": generators do not match this presentation");
  }
  if (j.contains("id") && j.at("id") != chi.id()) throw ConfigError(where + ": id does not match the exponents");
  return ArithChar(chi, s0);
}

json to_json(const FChar& l) {
  return {{"prime", l.ell()},
          {"level", l.level()},
          {"unit_exponent", to_json(l.unit_exponent())},
          {"ell_exponent", to_json(l.ell_exponent())}};
}

FChar fchar_from_json(const json& j) {
  const std::string where = "F-character";
  require_keys(j, {"prime", "level", "unit_exponent", "ell_exponent"}, where);
  const u64 ell = get_int<u64>(j, "prime", where);
  if (ell < 3 || !is_prime(ell)) throw ConfigError(where + ": prime must be an odd prime");
  const unsigned level = get_int_or<unsigned>(j, "level", 1, where);
  const QmodZ unit = j.contains("unit_exponent") ? qmodz_from_json(j.at("unit_exponent")) : QmodZ();
  const QmodZ ellx = j.contains("ell_exponent") ? qmodz_from_json(j.at("ell_exponent")) : QmodZ();
  try {
    return FChar(ell, level, unit, ellx);
  } catch (const PreconditionViolated& e) {
    throw ConfigError(where + ": " + e.what());
  }
}

json to_json(const UnramifiedRow& r) {
  return {{"prime", r.ell},
          {"lambda_exponent", to_json(r.lambda_exponent)},
          {"lambda_norm", rat(r.lambda_norm)},
          {"c_valuation", r.c_valuation}};
}

UnramifiedRow unramified_row_from_json(const json& j) {
  const std::string where = "unramified place";
  require_keys(j, {"prime", "lambda_exponent", "lambda_norm", "c_valuation"}, where);
  UnramifiedRow r;
  r.ell = get_int<u64>(j, "prime", where);
  if (j.contains("lambda_exponent")) r.lambda_exponent = qmodz_from_json(j.at("lambda_exponent"));
  if (j.contains("lambda_norm")) r.lambda_norm = rat_from(j.at("lambda_norm"), where);
  r.c_valuation = get_int_or<long>(j, "c_valuation", 0, where);
  return r;
}

json to_json(const GlobalSetup& s) {
  json ns = json::array();
  for (const auto& v : s.nonsplit) {
    json e = {{"character", to_json(v.chi_star)}};
    if (v.valuation_range) e["valuation_range"] = {v.valuation_range->first, v.valuation_range->second};
    if (v.unit_modulus_exponent) e["unit_modulus_exponent"] = *v.unit_modulus_exponent;
    ns.push_back(e);
  }
  json sp = json::array();
  for (const auto& w : s.split) sp.push_back({{"lambda", to_json(w.lambda)}});
  json ur = json::array();
  for (const auto& r : s.unramified) ur.push_back(to_json(r));
  json j = {{"p", s.p}, {"weight", s.weight}, {"u", s.u}, {"nonsplit", ns}, {"split", sp},
            {"unramified", ur}, {"universe", s.universe}, {"psi_sign", to_string(s.sign)}};
  if (s.lambda_p) j["lambda_p"] = to_json(*s.lambda_p);
  if (s.reciprocity_sign) j["reciprocity_sign"] = *s.reciprocity_sign;
  return j;
}

GlobalSetup global_setup_from_json(const json& j, u64 budget) {
  const std::string where = "setup";
  require_keys(j,
               {"p", "weight", "u", "nonsplit", "split", "unramified", "lambda_p", "reciprocity_sign", "universe",
                "psi_sign"},
               where);
  GlobalSetup s;
  s.p = get_int<u64>(j, "p", where);
  s.weight = get_int_or<int>(j, "weight", 1, where);
  s.u = get_int_or<i64>(j, "u", 1, where);
  s.universe = get_int_or<u64>(j, "universe", 0, where);
  if (j.contains("psi_sign")) s.sign = parse_psi_sign(j.at("psi_sign").get<std::string>());
  if (j.contains("reciprocity_sign")) s.reciprocity_sign = get_int<int>(j, "reciprocity_sign", where);
  if (j.contains("lambda_p")) s.lambda_p = fchar_from_json(j.at("lambda_p"));
  auto array_at = [&](const char* key) {
    if (!j.contains(key)) return json::array();
    if (!j.at(key).is_array()) throw ConfigError(where + ": '" + key + "' must be an array");
    return j.at(key);
  };
  for (const auto& e : array_at("nonsplit")) {
    require_keys(e, {"character", "valuation_range", "unit_modulus_exponent"}, "nonsplit place");
    if (!e.contains("character")) throw ConfigError("nonsplit place: missing 'character'");
    const ArithChar chi = arith_char_from_json(e.at("character"), budget);
    if (chi.norm_exponent() != mpq_class(1, 2)) throw ConfigError("nonsplit place: norm_exponent must be 1/2");
    NonsplitPlace v{chi.finite_part(), std::nullopt, std::nullopt};
    if (e.contains("valuation_range")) {
      const json& r = e.at("valuation_range");
      if (!r.is_array() || r.size() != 2 || !r[0].is_number_integer() || !r[1].is_number_integer())
        throw ConfigError("nonsplit place: valuation_range must be [lo, hi]");
      v.valuation_range = std::make_pair(r[0].get<long>(), r[1].get<long>());
    }
    if (e.contains("unit_modulus_exponent"))
      v.unit_modulus_exponent = get_int<unsigned>(e, "unit_modulus_exponent", "nonsplit place");
    s.nonsplit.push_back(std::move(v));
  }
  for (const auto& e : array_at("split")) {
    require_keys(e, {"lambda"}, "split place");
    if (!e.contains("lambda")) throw ConfigError("split place: missing 'lambda'");
    s.split.push_back({fchar_from_json(e.at("lambda"))});
  }
  for (const auto& e : array_at("unramified")) s.unramified.push_back(unramified_row_from_json(e));
  validate(s);
  return s;
}

json to_json(const MuReport& r) {
  json places = json::array();
  for (const auto& pr : r.places) {
    json pj = {{"prime", pr.ell},
               {"kind", to_string(pr.kind)},
               {"theta_square", pr.theta_square},
               {"chi_id", pr.chi_id},
               {"conductor", pr.conductor},
               {"mu_p", to_json(pr.mu)},
               {"mu_trivial", pr.mu_trivial},
               {"root_number", to_json(pr.root_number)},
               {"chi_delta", to_json(pr.chi_delta)},
               {"required_tau", pr.required_tau},
               {"valuation_range", {pr.vmin, pr.vmax}},
               {"unit_modulus_exponent", pr.unit_modulus_exponent},
               {"classes", pr.classes},
               {"dichotomy_pass", pr.dichotomy_pass},
               {"min_valuation_tau_plus", to_json(pr.min_plus)},
               {"min_valuation_tau_minus", to_json(pr.min_minus)},
               {"attains_mu", pr.attains_mu}};
    pj["witness"] = pr.witness ? json(rat(*pr.witness)) : json(nullptr);
    places.push_back(pj);
  }
  json warnings = r.warnings;
  json j = {{"p", r.p},
            {"universe", r.universe},
            {"places", places},
            {"sum_mu_p", to_json(r.sum_mu)},
            {"other_rows_valuation", to_json(r.other_rows_valuation)},
            {"sweep_min", to_json(r.sweep_min)},
            {"witness_valuation", to_json(r.witness_valuation)},
            {"witness_verified", r.witness_verified},
            {"sign_satisfiable", r.sign_satisfiable},
            {"lower_bound_holds", r.lower_bound_holds},
            {"window_sufficient", r.window_sufficient},
            {"dichotomy_pass", r.dichotomy_pass},
            {"dichotomy_total", r.dichotomy_total},
            {"verdict", to_string(r.verdict)},
            {"warnings", warnings},
            {"root_number_note", kRootNumberNote}};
  j["witness_beta"] = r.witness_beta ? json(rat(*r.witness_beta)) : json(nullptr);
  j["reciprocity_sign"] = r.reciprocity_sign ? json(*r.reciprocity_sign) : json(nullptr);
  return j;
}

json to_json(const DichotomyVerdict& v) {
  return {{"beta", rat(v.beta)},      {"A", to_json(v.A)},     {"A_zero", v.A_zero},
          {"root_number", to_json(v.root_number)}, {"tau", v.tau}, {"lhs", to_json(v.lhs)},
          {"rhs", to_json(v.rhs)},    {"pass", v.pass}};
}

}  // namespace anticyc
