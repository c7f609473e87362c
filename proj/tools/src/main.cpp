#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include <anticyc/errors.hpp>

#include "commands.hpp"

using namespace anticyc;
using namespace anticyc::cli;

int main(int argc, char** argv) {
  CLI::App app{"anticyc: local constants, Gauss sums and mu-invariants of self-dual characters"};
  app.require_subcommand(1);
  app.fallthrough();

  Options o;
  std::string config, out;
  app.add_option("--config", config, "JSON config file");
  app.add_option("--out", out, "Output directory (default: stdout)");
  app.add_option("--precision", o.precision, "Ceiling on p-adic digits")->check(CLI::PositiveNumber);
  app.add_option("--budget", o.budget, "Size budget for enumerations and sums");
  app.add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--psi-sign", o.psi_sign, "Additive character sign")->check(CLI::IsMember({"plus", "minus"}));

  auto* chr = app.add_subcommand("char", "Build or enumerate self-dual characters");
  chr->require_subcommand(1);
  chr->fallthrough();
  auto add_family = [&](CLI::App* c) {
    c->add_option("--prime", o.prime, "Residue characteristic ell");
    c->add_option("--kind", o.kind, "inert or ramified")->check(CLI::IsMember({"inert", "ramified"}));
    c->add_option("--theta-square", o.theta_square, "theta^2 for E = Q_ell(theta)");
    c->add_option("--max-conductor", o.max_conductor, "Largest conductor exponent");
  };
  auto* list = chr->add_subcommand("list", "Table of self-dual characters (CSV)");
  auto* enumerate = chr->add_subcommand("enumerate", "Self-dual characters as JSON");
  auto* make = chr->add_subcommand("make", "Validate a character JSON and report derived data");
  add_family(list);
  add_family(enumerate);

  auto* gauss = app.add_subcommand("gauss", "A_beta tables, brute force and closed form side by side (CSV)");
  auto* dich = app.add_subcommand("dichotomy", "Root-number dichotomy verdicts; exit 0 iff all pass");
  dich->add_flag("--inject-sign-flip", o.inject_sign_flip, "Test mode: flip tau in every verdict");
  auto* mu = app.add_subcommand("mu", "mu-invariant sweep and report for a global setup");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? ok : config_error;
  }
  if (!config.empty()) o.config = config;
  if (!out.empty()) o.out = out;

  try {
    if (*list) return cmd_char_list(o);
    if (*enumerate) return cmd_char_enumerate(o);
    if (*make) return cmd_char_make(o);
    if (*gauss) return cmd_gauss(o);
    if (*dich) return cmd_dichotomy(o);
    if (*mu) return cmd_mu(o);
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return budget_or_precision;
  } catch (const PrecisionCeiling& e) {
    std::cerr << "precision ceiling: " << e.what() << "\n";
    return budget_or_precision;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return config_error;
  } catch (const PreconditionViolated& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return config_error;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return config_error;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return property_violation;
  }
  return config_error;
}
