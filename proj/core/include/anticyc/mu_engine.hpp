#pragma once

#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "anticyc/characters.hpp"
#include "anticyc/cyclotomic.hpp"
#include "anticyc/local_field.hpp"
#include "anticyc/padic.hpp"
#include "anticyc/whittaker.hpp"

namespace anticyc {

/// A place v | C^-: chi_v = chi*_v |.|_E^{1/2} with chi*_v self-dual and ramified.
struct NonsplitPlace {
  MultChar chi_star;
  /// Sweep range for v(beta); defaults to [-(a+2), a+2].
  std::optional<std::pair<long, long>> valuation_range;
  /// Unit classes are swept modulo ell^k; defaults to k = a + 1.
  std::optional<unsigned> unit_modulus_exponent;

  ArithChar chi() const { return ArithChar(chi_star, mpq_class(1, 2)); }
};

struct SplitPlace {
  FChar lambda;
};

struct GlobalSetup {
  u64 p = 3;
  int weight = 1;
  i64 u = 1;  // unit class at p
  std::vector<NonsplitPlace> nonsplit;
  std::vector<SplitPlace> split;
  std::vector<UnramifiedRow> unramified;
  /// lambda at p for the p-row; trivial when absent.
  std::optional<FChar> lambda_p;
  /// When set, only beta with prod_v tau_v(beta) = sign over the nonsplit
  /// places are admissible. This stands in for the contribution of places
  /// outside the model; the adelic root number itself is never computed.
  std::optional<int> reciprocity_sign;
  /// Universe conductor for the prime above p; 0 derives it from the setup.
  u64 universe = 0;
  PsiSign sign = PsiSign::standard;
};

/// Throws ConfigError when the setup violates its invariants.
void validate(const GlobalSetup& setup);
/// Prime-to-p part of the lcm of character orders and sqrt(ell) conductors.
u64 default_universe(const GlobalSetup& setup);

struct CoefficientValue {
  ScaledCyclotomic value;
  /// Sum of the valuations of the factors, all taken at primes extending the
  /// chosen prime of Q(zeta_U).
  PadicVal valuation;
  std::vector<ScaledCyclotomic> factors;
};

CoefficientValue global_coefficient(const GlobalSetup& setup, const mpq_class& beta, const PrimeAbovePChoice& choice);

/// Positive beta agreeing with each b_v closely enough that A_beta(chi_v) = A_{b_v}(chi_v),
/// a unit at split and unramified places, and congruent to u mod p.
mpq_class find_beta_global(const GlobalSetup& setup, const std::vector<mpq_class>& local_witnesses);

/// Minimum of a nonempty list; +inf iff every entry is +inf.
PadicVal measure_mu(const std::vector<PadicVal>& values);

enum class Verdict { matches_theorem_A, lower_bound_only, obstructed_root_number };
std::string to_string(Verdict v);

struct SweepRow {
  std::size_t place = 0;
  long v_beta = 0;
  i64 beta_unit = 1;
  ScaledCyclotomic A;
  PadicVal valuation;
  int tau = 1;
  bool dichotomy_pass = true;
};

struct PlaceReport {
  u64 ell = 0;
  ExtKind kind = ExtKind::inert;
  i64 theta_square = 0;
  std::string chi_id;
  unsigned conductor = 0;
  PadicVal mu;
  bool mu_trivial = false;
  ScaledCyclotomic root_number;
  ScaledCyclotomic chi_delta;
  int required_tau = 0;  // chi*(delta) / W when that is +-1, else 0
  long vmin = 0, vmax = 0;
  unsigned unit_modulus_exponent = 1;
  u64 classes = 0;
  u64 dichotomy_pass = 0;
  /// Least valuation over classes with tau = +1 and tau = -1.
  PadicVal min_plus = PadicVal::infinity();
  PadicVal min_minus = PadicVal::infinity();
  std::optional<mpq_class> witness;
  bool attains_mu = false;
};

struct MuReport {
  u64 p = 0;
  u64 universe = 1;
  std::optional<int> reciprocity_sign;
  std::vector<PlaceReport> places;
  PadicVal sum_mu;
  PadicVal other_rows_valuation;  // split, unramified and p rows at the witness
  PadicVal sweep_min;
  std::optional<mpq_class> witness_beta;
  PadicVal witness_valuation = PadicVal::infinity();
  bool witness_verified = false;
  bool sign_satisfiable = true;
  bool lower_bound_holds = true;
  bool window_sufficient = true;
  u64 dichotomy_pass = 0;
  u64 dichotomy_total = 0;
  Verdict verdict = Verdict::matches_theorem_A;
  std::vector<std::string> warnings;
  std::vector<SweepRow> rows;
};

struct SweepOptions {
  unsigned jobs = 1;
  unsigned start_precision = 32;
  unsigned max_precision = 4096;
  std::size_t factor_index = 0;
  u64 budget = 100'000'000;
};

MuReport mu_sweep(const GlobalSetup& setup, const SweepOptions& opts = {});

/// Standing note attached to every report.
extern const char* const kRootNumberNote;

}  // namespace anticyc
