#pragma once

#include <optional>
#include <vector>

#include <anticyc/characters.hpp>
#include <anticyc/serialization.hpp>

namespace anticyc::cli {

struct GridPoint {
  std::size_t chi_index = 0;
  long v_beta = 0;
  i64 beta_unit = 1;
  mpq_class beta;
};

/// Characters and beta values described by a gauss/dichotomy config:
/// {"families": [{prime, kind, theta_square?, min_conductor?, max_conductor}],
///  "characters": [character JSON], "v_range": [lo, hi],
///  "unit_modulus_exponent": k, "p": prime?, "filter": "all" | "zero" | "nonzero"}.
struct Grid {
  std::vector<MultChar> characters;
  std::vector<GridPoint> points;
  std::optional<u64> p;
  std::string filter = "all";
};

Grid grid_from_json(const json& j, u64 budget);

}  // namespace anticyc::cli
