#pragma once

#include <string>

#include <json.hpp>

#include "anticyc/characters.hpp"
#include "anticyc/cyclotomic.hpp"
#include "anticyc/local_constants.hpp"
#include "anticyc/mu_engine.hpp"
#include "anticyc/padic.hpp"
#include "anticyc/whittaker.hpp"

namespace anticyc {

// nlohmann::json keeps object keys sorted, so dumps are stable for diffing.
// Every reader rejects unknown keys with ConfigError.

using json = nlohmann::json;

json to_json(const Cyclotomic& x);
json to_json(const ScaledCyclotomic& x);
ScaledCyclotomic scaled_from_json(const json& j);

json to_json(const PadicVal& v);
PadicVal padic_from_json(const json& j);

json to_json(const QmodZ& e);
QmodZ qmodz_from_json(const json& j);

/// {prime, kind, theta_square, level, generator_exponents, uniformizer_exponent,
/// norm_exponent}, plus read-only "id" and "generators".
json to_json(const ArithChar& chi);
json to_json(const MultChar& chi, const mpq_class& norm_exponent = mpq_class(1, 2));
ArithChar arith_char_from_json(const json& j, u64 budget = 10'000'000);

json to_json(const FChar& lambda);
FChar fchar_from_json(const json& j);

json to_json(const UnramifiedRow& row);
UnramifiedRow unramified_row_from_json(const json& j);

json to_json(const GlobalSetup& setup);
GlobalSetup global_setup_from_json(const json& j, u64 budget = 10'000'000);

json to_json(const MuReport& report);
json to_json(const DichotomyVerdict& v);

/// Throws ConfigError when j is not an object or has a key outside `allowed`.
void require_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where);

}  // namespace anticyc
