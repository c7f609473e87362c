#include "anticyc/mu_engine.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>

#include "anticyc/errors.hpp"
#include "anticyc/local_constants.hpp"
#include "anticyc/parallel.hpp"

namespace anticyc {

const char* const kRootNumberNote =
    "Root-number bookkeeping covers only the declared nonsplit places: the product of local root numbers "
    "W(chi*_v) is compared with prod chi*_v(delta_v). The adelic root number is not computed; archimedean "
    "and unrepresented places contribute constants outside the model.";

namespace {

mpq_class ell_power(u64 ell, long k) {
  mpz_class z;
  mpz_ui_pow_ui(z.get_mpz_t(), ell, static_cast<unsigned long>(std::labs(k)));
  return k >= 0 ? mpq_class(z) : mpq_class(mpz_class(1), z);
}

i64 ell_power_i(u64 ell, unsigned k) { return static_cast<i64>(ipow(ell, k)); }

// Accumulates x = r mod m into (X mod M).
void crt_add(mpz_class& X, mpz_class& M, i64 r, i64 m) {
  const mpz_class mm(static_cast<long>(m));
  mpz_class inv;
  const mpz_class Mm = M % mm;
  if (mpz_invert(inv.get_mpz_t(), Mm.get_mpz_t(), mm.get_mpz_t()) == 0)
    throw PreconditionViolated("find_beta_global: moduli not coprime");
  mpz_class t = ((mpz_class(static_cast<long>(r)) - X) % mm) * inv % mm;
  if (t < 0) t += mm;
  X += M * t;
  M *= mm;
}

// The window exponent m with A_beta depending only on the unit part of beta mod ell^m.
unsigned unit_precision(const ArithChar& chi, long vb) {
  const mpq_class b = ell_power(chi.ext().ell(), vb);
  const long M = gauss_window(chi, b);
  return static_cast<unsigned>(std::max<long>(M - vb, 1));
}

int sign_of(const ScaledCyclotomic& q) {
  if (q == ScaledCyclotomic(1L)) return 1;
  if (q == ScaledCyclotomic(-1L)) return -1;
  return 0;
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::matches_theorem_A: return "matches_theorem_A";
    case Verdict::lower_bound_only: return "lower_bound_only";
    case Verdict::obstructed_root_number: return "obstructed_root_number";
  }
  return "?";
}

void validate(const GlobalSetup& s) {
  if (s.p < 3 || !is_prime(s.p)) throw ConfigError("p must be an odd prime");
  if (s.weight < 1) throw ConfigError("weight must be >= 1");
  if (mod(s.u, static_cast<i64>(s.p)) == 0) throw ConfigError("u must be a unit mod p");
  std::set<u64> seen{s.p};
  auto claim = [&](u64 ell) {
    if (!seen.insert(ell).second) throw ConfigError("places must be distinct primes different from p");
  };
  for (const auto& v : s.nonsplit) {
    claim(v.chi_star.ext().ell());
    if (v.chi_star.conductor() == 0) throw ConfigError("nonsplit characters must be ramified");
    if (!is_self_dual(v.chi_star)) throw ConfigError("nonsplit characters must be self-dual");
    if (v.valuation_range && v.valuation_range->first > v.valuation_range->second)
      throw ConfigError("empty valuation range");
    if (v.unit_modulus_exponent && *v.unit_modulus_exponent == 0) throw ConfigError("unit modulus exponent must be >= 1");
  }
  for (const auto& w : s.split) claim(w.lambda.ell());
  for (const auto& r : s.unramified) {
    claim(r.ell);
    if (!is_prime(r.ell) || r.ell == 2) throw ConfigError("unramified places must be odd primes");
    if (mpq_class(2 * r.lambda_norm).get_den() != 1) throw ConfigError("lambda_norm must be a half-integer");
  }
  if (s.lambda_p && s.lambda_p->ell() != s.p) throw ConfigError("lambda_p must be a character of Q_p^x");
  if (s.reciprocity_sign && *s.reciprocity_sign != 1 && *s.reciprocity_sign != -1)
    throw ConfigError("reciprocity_sign must be +1 or -1");
}

u64 default_universe(const GlobalSetup& s) {
  u64 U = 1;
  auto add = [&](u64 n) { U = lcm_u(U, prime_to_part(n, s.p)); };
  for (const auto& v : s.nonsplit) {
    add(static_cast<u64>(v.chi_star.order()));
    if (v.chi_star.ext().kind() == ExtKind::ramified) add(sqrt_embedding(v.chi_star.ext().ell()).conductor());
  }
  for (const auto& w : s.split) add(static_cast<u64>(w.lambda.order()));
  for (const auto& r : s.unramified) {
    add(static_cast<u64>(r.lambda_exponent.den));
    if (r.lambda_norm.get_den() != 1) add(sqrt_embedding(r.ell).conductor());
  }
  if (s.lambda_p) add(static_cast<u64>(s.lambda_p->order()));
  return U;
}

CoefficientValue global_coefficient(const GlobalSetup& s, const mpq_class& beta, const PrimeAbovePChoice& choice) {
  validate(s);
  if (beta <= 0) throw PreconditionViolated("global_coefficient: beta must be positive");
  CoefficientValue out;
  mpq_class bk = 1;
  for (int i = 1; i < s.weight; ++i) bk *= beta;
  out.factors.emplace_back(bk);
  out.factors.push_back(whittaker_p_torsion(s.lambda_p.value_or(FChar(s.p, 1, {}, {})), s.u, beta));
  for (const auto& w : s.split) out.factors.push_back(whittaker_split(w.lambda, beta));
  for (const auto& r : s.unramified) out.factors.push_back(whittaker_unramified(r, beta));
  for (const auto& v : s.nonsplit) out.factors.push_back(whittaker_nonsplit(v.chi(), beta, s.sign));
  out.value = ScaledCyclotomic(1L);
  out.valuation = 0;
  for (const auto& f : out.factors) {
    out.value *= f;
    out.valuation = out.valuation + choice.valuation(f);
  }
  return out;
}

mpq_class find_beta_global(const GlobalSetup& s, const std::vector<mpq_class>& witnesses) {
  validate(s);
  if (witnesses.size() != s.nonsplit.size())
    throw PreconditionViolated("find_beta_global: one witness per nonsplit place");
  mpq_class P = 1;
  for (std::size_t i = 0; i < witnesses.size(); ++i) {
    if (witnesses[i] == 0) throw PreconditionViolated("find_beta_global: witnesses must be nonzero");
    P *= ell_power(s.nonsplit[i].chi_star.ext().ell(), valuation(witnesses[i], s.nonsplit[i].chi_star.ext().ell()));
  }
  mpz_class X = 0, M = 1;
  for (std::size_t i = 0; i < witnesses.size(); ++i) {
    const ArithChar chi = s.nonsplit[i].chi();
    const u64 ell = chi.ext().ell();
    const long vb = valuation(witnesses[i], ell);
    const unsigned m = std::max<unsigned>(unit_precision(chi, vb),
                                          static_cast<unsigned>(chi.conductor() + std::labs(vb) + 1));
    const i64 mod_m = ell_power_i(ell, m);
    const mpq_class shift = ell_power(ell, -vb);
    const i64 target = residue_mod(witnesses[i] * shift, ell, m);
    const i64 rest = residue_mod(P * shift, ell, m);
    crt_add(X, M, mul_mod(target, inv_mod(rest, mod_m), mod_m), mod_m);
  }
  const i64 p = static_cast<i64>(s.p);
  crt_add(X, M, mul_mod(mod(s.u, p), inv_mod(residue_mod(P, s.p, 1), p), p), p);
  auto unit_at = [&](u64 ell) {
    const i64 l = static_cast<i64>(ell);
    crt_add(X, M, inv_mod(residue_mod(P, ell, 1), l), l);
  };
  for (const auto& w : s.split) unit_at(w.lambda.ell());
  for (const auto& r : s.unramified) unit_at(r.ell);
  if (X == 0) X = M;
  return mpq_class(X) * P;
}

PadicVal measure_mu(const std::vector<PadicVal>& values) {
  if (values.empty()) throw PreconditionViolated("measure_mu: empty coefficient list");
  PadicVal m = values.front();
  for (const auto& v : values) m = min(m, v);
  return m;
}

MuReport mu_sweep(const GlobalSetup& s, const SweepOptions& opts) {
  validate(s);
  MuReport rep;
  rep.p = s.p;
  rep.universe = s.universe != 0 ? s.universe : default_universe(s);
  rep.reciprocity_sign = s.reciprocity_sign;
  const PrimeAbovePChoice choice(s.p, rep.universe, opts.factor_index, opts.start_precision, opts.max_precision);
  rep.sum_mu = 0;

  struct Task {
    std::size_t place;
    long vb;
    i64 unit;
    ScaledCyclotomic A;
    PadicVal val;
    int tau = 1;
    bool pass = true;
  };
  std::vector<Task> tasks;
  std::vector<std::pair<std::size_t, std::size_t>> row_task;  // (place, task index) per row, in row order
  std::vector<std::pair<long, i64>> row_class;

  for (std::size_t i = 0; i < s.nonsplit.size(); ++i) {
    const auto& place = s.nonsplit[i];
    const ArithChar chi = place.chi();
    const LocalQuadExt& E = chi.ext();
    PlaceReport pr;
    pr.ell = E.ell();
    pr.kind = E.kind();
    pr.theta_square = E.theta_square();
    pr.chi_id = place.chi_star.id();
    pr.conductor = chi.conductor();
    const MuLocal mu = mu_p_local(chi, choice);
    pr.mu = mu.value;
    pr.mu_trivial = mu.trivial;
    pr.root_number = root_number(place.chi_star, s.sign);
    pr.chi_delta = ScaledCyclotomic(place.chi_star(E.delta()));
    pr.required_tau = sign_of(pr.chi_delta / pr.root_number);
    const long a = pr.conductor;
    std::tie(pr.vmin, pr.vmax) = place.valuation_range.value_or(std::make_pair(-(a + 2), a + 2));
    pr.unit_modulus_exponent = place.unit_modulus_exponent.value_or(static_cast<unsigned>(a + 1));
    rep.sum_mu = rep.sum_mu + pr.mu;

    const i64 mod_k = ell_power_i(pr.ell, pr.unit_modulus_exponent);
    for (long vb = pr.vmin; vb <= pr.vmax; ++vb) {
      const i64 mod_m = ell_power_i(pr.ell, unit_precision(chi, vb));
      std::map<i64, std::size_t> by_key;
      for (i64 unit = 1; unit < mod_k; ++unit) {
        if (unit % static_cast<i64>(pr.ell) == 0) continue;
        const i64 key = unit % mod_m;
        auto [it, fresh] = by_key.try_emplace(key, tasks.size());
        if (fresh) tasks.push_back({i, vb, unit, {}, {}, 1, true});
        row_task.emplace_back(i, it->second);
        row_class.emplace_back(vb, unit);
        ++pr.classes;
      }
    }
    rep.places.push_back(std::move(pr));
  }

  parallel_for(tasks.size(), opts.jobs, [&](std::size_t t) {
    Task& task = tasks[t];
    const auto& place = s.nonsplit[task.place];
    const PlaceReport& pr = rep.places[task.place];
    const mpq_class beta = mpq_class(task.unit) * ell_power(pr.ell, task.vb);
    GaussOptions go;
    go.sign = s.sign;
    go.budget = opts.budget;
    go.choice = &choice;
    const GaussSumResult g = gauss_sum_A(place.chi(), beta, go);
    task.A = g.value;
    task.val = *g.valuation;
    task.tau = tau_EF(place.chi_star.ext(), beta);
    task.pass = g.value.is_zero() || pr.root_number * ScaledCyclotomic(static_cast<long>(task.tau)) == pr.chi_delta;
  });

  for (std::size_t r = 0; r < row_task.size(); ++r) {
    const auto [i, t] = row_task[r];
    const Task& task = tasks[t];
    PlaceReport& pr = rep.places[i];
    const auto [vb, unit] = row_class[r];
    rep.rows.push_back({i, vb, unit, task.A, task.val, task.tau, task.pass});
    ++rep.dichotomy_total;
    if (task.pass) {
      ++pr.dichotomy_pass;
      ++rep.dichotomy_pass;
    }
    if (task.pass && task.val == pr.mu) pr.attains_mu = true;
    PadicVal& best = task.tau == 1 ? pr.min_plus : pr.min_minus;
    if (task.val < best) best = task.val;
  }

  for (std::size_t i = 0; i < rep.places.size(); ++i) {
    const auto& pr = rep.places[i];
    if (!pr.attains_mu) {
      rep.window_sufficient = false;
      rep.warnings.push_back("sweep window insufficient at ell=" + std::to_string(pr.ell) +
                             ": no swept class attains mu_p(chi_v) = " + pr.mu.to_string());
    }
    if (pr.dichotomy_pass != pr.classes)
      rep.warnings.push_back("dichotomy failures at ell=" + std::to_string(pr.ell));
  }

  // Rows other than the nonsplit ones are constant on admissible beta.
  rep.other_rows_valuation = 0;
  for (const auto& r : s.unramified)
    rep.other_rows_valuation = rep.other_rows_valuation + choice.valuation(whittaker_unramified(r, 1));

  // Best sign pattern over the nonsplit places.
  const std::size_t n = s.nonsplit.size();
  PadicVal best = PadicVal::infinity();
  std::optional<std::vector<int>> best_taus;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<int> taus(n);
    int prod = 1;
    PadicVal total = rep.other_rows_valuation;
    for (std::size_t i = 0; i < n; ++i) {
      taus[i] = (mask >> i) & 1 ? -1 : 1;
      prod *= taus[i];
      total = total + (taus[i] == 1 ? rep.places[i].min_plus : rep.places[i].min_minus);
    }
    if (s.reciprocity_sign && prod != *s.reciprocity_sign) continue;
    if (!best_taus || total < best) {
      best = total;
      best_taus = taus;
    }
  }
  rep.sweep_min = best;

  if (!best.is_infinite() && best_taus) {
    std::vector<mpq_class> witnesses;
    std::vector<const Task*> chosen;
    for (std::size_t i = 0; i < n; ++i) {
      const PadicVal target = (*best_taus)[i] == 1 ? rep.places[i].min_plus : rep.places[i].min_minus;
      const Task* pick = nullptr;
      for (std::size_t r = 0; r < rep.rows.size() && !pick; ++r) {
        const SweepRow& row = rep.rows[r];
        if (row.place == i && row.tau == (*best_taus)[i] && row.valuation == target) pick = &tasks[row_task[r].second];
      }
      chosen.push_back(pick);
      witnesses.push_back(mpq_class(pick->unit) * ell_power(rep.places[i].ell, pick->vb));
      rep.places[i].witness = witnesses.back();
    }
    const mpq_class beta = find_beta_global(s, witnesses);
    const CoefficientValue cv = global_coefficient(s, beta, choice);
    rep.witness_beta = beta;
    rep.witness_valuation = cv.valuation;
    bool same = cv.valuation == best;
    const std::size_t first_nonsplit = cv.factors.size() - n;
    for (std::size_t i = 0; i < n; ++i) same = same && cv.factors[first_nonsplit + i] == chosen[i]->A;
    rep.witness_verified = same;
    if (!same) rep.warnings.push_back("global witness does not reproduce the local Gauss sums");
  } else if (n == 0) {
    const mpq_class beta = find_beta_global(s, {});
    const CoefficientValue cv = global_coefficient(s, beta, choice);
    rep.witness_beta = beta;
    rep.witness_valuation = cv.valuation;
    rep.witness_verified = cv.valuation == best;
  }

  rep.sign_satisfiable = true;
  int required = 1;
  for (const auto& pr : rep.places) {
    if (pr.required_tau == 0) rep.sign_satisfiable = false;
    required *= pr.required_tau;
  }
  if (s.reciprocity_sign && required != *s.reciprocity_sign) rep.sign_satisfiable = false;

  rep.lower_bound_holds = rep.sweep_min >= rep.sum_mu;
  if (!rep.lower_bound_holds) rep.warnings.push_back("sweep minimum below sum of mu_p: lower bound violated");
  if (rep.sweep_min == rep.sum_mu)
    rep.verdict = Verdict::matches_theorem_A;
  else if (!rep.sign_satisfiable)
    rep.verdict = Verdict::obstructed_root_number;
  else
    rep.verdict = Verdict::lower_bound_only;
  return rep;
}

}  // namespace anticyc
