#include "commands.hpp"

#include <algorithm>
#include <iostream>
#include <mutex>

#include <anticyc/errors.hpp>
#include <anticyc/local_constants.hpp>
#include <anticyc/mu_engine.hpp>
#include <anticyc/parallel.hpp>
#include <anticyc/serialization.hpp>

#include "grid.hpp"
#include "output.hpp"

namespace anticyc::cli {

namespace {

json load_config(const Options& o) {
  if (!o.config) throw ConfigError("--config is required for this command");
  return read_json_file(*o.config);
}

struct Family {
  LocalQuadExt E;
  unsigned max_conductor;
};

Family family_from(const Options& o) {
  u64 ell = o.prime.value_or(0);
  std::string kind = o.kind.value_or("");
  std::optional<i64> ts = o.theta_square;
  unsigned maxc = o.max_conductor.value_or(1);
  if (o.config) {
    const json j = read_json_file(*o.config);
    require_keys(j, {"prime", "kind", "theta_square", "max_conductor"}, "family");
    if (j.contains("prime")) ell = j.at("prime").get<u64>();
    if (j.contains("kind")) kind = j.at("kind").get<std::string>();
    if (j.contains("theta_square")) ts = j.at("theta_square").get<i64>();
    if (j.contains("max_conductor")) maxc = j.at("max_conductor").get<unsigned>();
  }
  if (ell < 3 || !is_prime(ell)) throw ConfigError("an odd prime is required (--prime or config 'prime')");
  if (kind.empty()) throw ConfigError("an extension kind is required (--kind or config 'kind')");
  return {LocalQuadExt(ell, parse_ext_kind(kind), ts), maxc};
}

u64 value_universe(const std::vector<MultChar>& chars, u64 p) {
  u64 U = 1;
  for (const auto& c : chars) {
    U = lcm_u(U, prime_to_part(static_cast<u64>(c.order()), p));
    if (c.ext().kind() == ExtKind::ramified)
      U = lcm_u(U, prime_to_part(sqrt_embedding(c.ext().ell()).conductor(), p));
  }
  return U;
}

bool closed_form_applies(const MultChar& chi) {
  return chi.ext().kind() == ExtKind::inert && chi.conductor() == 1 && is_self_dual(chi);
}

}  // namespace

int cmd_char_list(const Options& o) {
  const Family f = family_from(o);
  const auto chars = enumerate_self_dual(f.E, f.max_conductor, o.budget);
  std::string csv = csv_line({"chi_id", "conductor", "order", "root_number", "chi_delta"});
  for (const auto& c : chars) {
    const std::string W = c.conductor() > 0 ? root_number(c, o.sign()).to_string() : "";
    csv += csv_line({c.id(), std::to_string(c.conductor()), std::to_string(c.order()), W,
                     c(f.E.delta()).to_string()});
  }
  emit(o.out, "characters.csv", csv);
  return ok;
}

int cmd_char_enumerate(const Options& o) {
  const Family f = family_from(o);
  json arr = json::array();
  for (const auto& c : enumerate_self_dual(f.E, f.max_conductor, o.budget)) arr.push_back(to_json(c));
  emit(o.out, "characters.json", dump(arr));
  return ok;
}

int cmd_char_make(const Options& o) {
  const ArithChar chi = arith_char_from_json(load_config(o), o.budget);
  const MultChar& c = chi.finite_part();
  json derived = {{"conductor", c.conductor()},
                  {"order", c.order()},
                  {"unit_order", c.unit_order()},
                  {"self_dual", is_self_dual(c)}};
  if (c.conductor() > 0) derived["root_number"] = to_json(root_number(c, o.sign()));
  emit(o.out, "character.json", dump({{"character", to_json(chi)}, {"derived", derived}}));
  return ok;
}

int cmd_gauss(const Options& o) {
  const Grid g = grid_from_json(load_config(o), o.budget);
  std::optional<PrimeAbovePChoice> choice;
  if (g.p) choice.emplace(*g.p, value_universe(g.characters, *g.p), 0, std::min(32u, o.precision), o.precision);

  struct Row {
    std::vector<std::string> fields;
    bool zero = false;
    bool agree = true;
  };
  std::vector<Row> rows(g.points.size());
  parallel_for(g.points.size(), o.jobs, [&](std::size_t i) {
    const GridPoint& pt = g.points[i];
    const MultChar& c = g.characters[pt.chi_index];
    const ArithChar chi(c, mpq_class(1, 2));
    GaussOptions go;
    go.sign = o.sign();
    go.budget = o.budget;
    if (choice) go.choice = &*choice;
    const GaussSumResult A = gauss_sum_A(chi, pt.beta, go);
    Row& r = rows[i];
    r.zero = A.value.is_zero();
    std::string closed = "n/a";
    if (closed_form_applies(c)) {
      const GaussSumResult C = gauss_sum_A_closed(chi, pt.beta, go);
      closed = C.value.to_string();
      r.agree = C.value == A.value;
    }
    std::string tau, W, pass;
    if (is_self_dual(c)) {
      const LocalQuadExt& E = c.ext();
      const int t = tau_EF(E, pt.beta);
      const ScaledCyclotomic w = root_number(c, o.sign());
      tau = std::to_string(t);
      W = w.to_string();
      pass = (r.zero || w * ScaledCyclotomic(static_cast<long>(t)) == ScaledCyclotomic(c(E.delta()))) ? "true" : "false";
    }
    r.fields = {std::to_string(c.ext().ell()),
                to_string(c.ext().kind()),
                std::to_string(c.conductor()),
                c.id(),
                std::to_string(pt.v_beta),
                std::to_string(pt.beta_unit),
                A.value.to_string(),
                closed,
                r.agree ? "true" : "false",
                A.valuation ? A.valuation->to_string() : "",
                tau,
                W,
                pass};
  });
  std::string csv = csv_line({"ell", "kind", "conductor", "chi_id", "v_beta", "beta_unit", "A_value_repr",
                              "closed_form_repr", "methods_agree", "A_valuation", "tau", "W_repr", "dichotomy_pass"});
  bool all_agree = true;
  for (const auto& r : rows) {
    if ((g.filter == "zero" && !r.zero) || (g.filter == "nonzero" && r.zero)) continue;
    all_agree = all_agree && r.agree;
    csv += csv_line(r.fields);
  }
  emit(o.out, "gauss.csv", csv);
  if (!all_agree) std::cerr << "gauss: closed form and brute-force sum disagree\n";
  return all_agree ? ok : property_violation;
}

int cmd_dichotomy(const Options& o) {
  const Grid g = grid_from_json(load_config(o), o.budget);
  for (const auto& c : g.characters)
    if (!is_self_dual(c)) throw ConfigError("dichotomy: every character must be self-dual (" + c.id() + ")");
  std::vector<DichotomyVerdict> verdicts(g.points.size());
  parallel_for(g.points.size(), o.jobs, [&](std::size_t i) {
    const GridPoint& pt = g.points[i];
    DichotomyVerdict v = dichotomy_check(g.characters[pt.chi_index], pt.beta, o.sign());
    if (o.inject_sign_flip) {
      v.tau = -v.tau;
      v.lhs = -v.lhs;
      v.pass = v.A_zero || v.lhs == v.rhs;
    }
    verdicts[i] = std::move(v);
  });
  json rows = json::array();
  u64 total = 0, passed = 0, nonzero = 0;
  for (std::size_t i = 0; i < verdicts.size(); ++i) {
    const auto& v = verdicts[i];
    if ((g.filter == "zero" && !v.A_zero) || (g.filter == "nonzero" && v.A_zero)) continue;
    const MultChar& c = g.characters[g.points[i].chi_index];
    json row = to_json(v);
    row["prime"] = c.ext().ell();
    row["kind"] = to_string(c.ext().kind());
    row["chi_id"] = c.id();
    row["conductor"] = c.conductor();
    rows.push_back(row);
    ++total;
    if (v.pass) ++passed;
    if (!v.A_zero) ++nonzero;
  }
  const json summary = {{"total", total},
                        {"passed", passed},
                        {"nonzero_A", nonzero},
                        {"pass_rate", total ? format_rational(mpq_class(passed, total)) : "1"},
                        {"psi_sign", o.psi_sign}};
  emit(o.out, "dichotomy.json", dump({{"summary", summary}, {"rows", rows}}));
  std::cerr << "dichotomy: " << passed << "/" << total << " pass\n";
  return passed == total ? ok : property_violation;
}

int cmd_mu(const Options& o) {
  GlobalSetup s = global_setup_from_json(load_config(o), o.budget);
  s.sign = o.sign();
  SweepOptions so;
  so.jobs = o.jobs;
  so.start_precision = std::min(32u, o.precision);
  so.max_precision = o.precision;
  so.budget = o.budget;
  const MuReport r = mu_sweep(s, so);
  std::string csv = csv_line({"place", "ell", "v_beta", "beta_unit", "A_value_repr", "A_valuation", "tau",
                              "dichotomy_pass"});
  for (const auto& row : r.rows) {
    csv += csv_line({std::to_string(row.place), std::to_string(r.places[row.place].ell), std::to_string(row.v_beta),
                     std::to_string(row.beta_unit), row.A.to_string(), row.valuation.to_string(),
                     std::to_string(row.tau), row.dichotomy_pass ? "true" : "false"});
  }
  json report = to_json(r);
  report["setup"] = to_json(s);
  if (o.out) {
    write_atomic(*o.out / "mu_report.json", dump(report));
    write_atomic(*o.out / "mu_sweep.csv", csv);
  } else {
    std::cout << dump(report);
  }
  for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
  const bool violated = !r.lower_bound_holds || r.dichotomy_pass != r.dichotomy_total ||
                        (r.witness_beta && !r.witness_verified);
  return violated ? property_violation : ok;
}

}  // namespace anticyc::cli
