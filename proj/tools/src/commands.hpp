#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <anticyc/local_field.hpp>

namespace anticyc::cli {

enum Exit : int { ok = 0, property_violation = 1, config_error = 2, budget_or_precision = 3 };

struct Options {
  std::optional<std::filesystem::path> config;
  std::optional<std::filesystem::path> out;
  unsigned precision = 4096;  // ceiling on p-adic digits
  u64 budget = 10'000'000;
  unsigned jobs = 1;
  std::string psi_sign = "minus";
  bool inject_sign_flip = false;  // test mode for dichotomy

  // char list/enumerate without a config file
  std::optional<u64> prime;
  std::optional<std::string> kind;
  std::optional<i64> theta_square;
  std::optional<unsigned> max_conductor;

  PsiSign sign() const { return parse_psi_sign(psi_sign); }
};

int cmd_char_list(const Options& o);
int cmd_char_enumerate(const Options& o);
int cmd_char_make(const Options& o);
int cmd_gauss(const Options& o);
int cmd_dichotomy(const Options& o);
int cmd_mu(const Options& o);

}  // namespace anticyc::cli
