#include "grid.hpp"

#include <anticyc/errors.hpp>

namespace anticyc::cli {

namespace {

long int_at(const json& j, const char* key, long fallback, const std::string& where) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number_integer()) throw ConfigError(where + ": '" + key + "' must be an integer");
  return j.at(key).get<long>();
}

}  // namespace

Grid grid_from_json(const json& j, u64 budget) {
  require_keys(j, {"families", "characters", "v_range", "unit_modulus_exponent", "p", "filter"}, "grid");
  Grid g;
  if (j.contains("families")) {
    if (!j.at("families").is_array()) throw ConfigError("grid: 'families' must be an array");
    for (const auto& f : j.at("families")) {
      require_keys(f, {"prime", "kind", "theta_square", "min_conductor", "max_conductor"}, "family");
      const long ell = int_at(f, "prime", 0, "family");
      if (ell < 3) throw ConfigError("family: prime must be an odd prime");
      if (!f.contains("kind") || !f.at("kind").is_string()) throw ConfigError("family: missing 'kind'");
      std::optional<i64> ts;
      if (f.contains("theta_square")) ts = int_at(f, "theta_square", 0, "family");
      const LocalQuadExt E(static_cast<u64>(ell), parse_ext_kind(f.at("kind").get<std::string>()), ts);
      const long hi = int_at(f, "max_conductor", 1, "family");
      const long lo = int_at(f, "min_conductor", 0, "family");
      if (hi < 0 || lo < 0) throw ConfigError("family: conductors must be nonnegative");
      for (auto& chi : enumerate_self_dual(E, static_cast<unsigned>(hi), budget))
        if (static_cast<long>(chi.conductor()) >= lo) g.characters.push_back(std::move(chi));
    }
  }
  if (j.contains("characters")) {
    if (!j.at("characters").is_array()) throw ConfigError("grid: 'characters' must be an array");
    for (const auto& c : j.at("characters")) g.characters.push_back(arith_char_from_json(c, budget).finite_part());
  }
  long vlo = -3, vhi = 3;
  if (j.contains("v_range")) {
    const json& r = j.at("v_range");
    if (!r.is_array() || r.size() != 2 || !r[0].is_number_integer() || !r[1].is_number_integer())
      throw ConfigError("grid: v_range must be [lo, hi]");
    vlo = r[0].get<long>();
    vhi = r[1].get<long>();
  }
  const long k = int_at(j, "unit_modulus_exponent", 1, "grid");
  if (k < 1) throw ConfigError("grid: unit_modulus_exponent must be >= 1");
  if (j.contains("p")) {
    const long p = int_at(j, "p", 0, "grid");
    if (p < 3 || !is_prime(static_cast<u64>(p))) throw ConfigError("grid: p must be an odd prime");
    g.p = static_cast<u64>(p);
  }
  if (j.contains("filter")) {
    g.filter = j.at("filter").is_string() ? j.at("filter").get<std::string>() : "";
    if (g.filter != "all" && g.filter != "zero" && g.filter != "nonzero")
      throw ConfigError("grid: filter must be all, zero or nonzero");
  }
  u64 total = 0;
  for (std::size_t c = 0; c < g.characters.size(); ++c) {
    const u64 ell = g.characters[c].ext().ell();
    const i64 mod_k = static_cast<i64>(ipow(ell, static_cast<unsigned>(k)));
    for (long vb = vlo; vb <= vhi; ++vb) {
      mpz_class z;
      mpz_ui_pow_ui(z.get_mpz_t(), ell, static_cast<unsigned long>(std::labs(vb)));
      const mpq_class shift = vb >= 0 ? mpq_class(z) : mpq_class(mpz_class(1), z);
      for (i64 u = 1; u < mod_k; ++u) {
        if (u % static_cast<i64>(ell) == 0) continue;
        if (++total > budget) throw BudgetExceeded("grid exceeds the point budget");
        g.points.push_back({c, vb, u, mpq_class(u) * shift});
      }
    }
  }
  return g;
}

}  // namespace anticyc::cli
