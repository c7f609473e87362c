#include "anticyc/characters.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <mutex>
#include <numeric>
#include <tuple>

#include "anticyc/errors.hpp"

namespace anticyc {

namespace {

using Matrix = std::vector<std::vector<i64>>;

Matrix identity(std::size_t n) {
  Matrix m(n, std::vector<i64>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

// Smith normal form of A (rows x cols). On return A is diagonal with
// A[t][t] | A[t+1][t+1], and A_in * V = U^-1 * A_out; Vinv = V^-1.
void smith_normal_form(Matrix& A, Matrix& V, Matrix& Vinv) {
  const std::size_t rows = A.size();
  const std::size_t cols = rows ? A[0].size() : 0;
  V = identity(cols);
  Vinv = identity(cols);
  auto swap_cols = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    for (auto& row : A) std::swap(row[a], row[b]);
    for (auto& row : V) std::swap(row[a], row[b]);
    std::swap(Vinv[a], Vinv[b]);
  };
  // col_j -= q col_t
  auto col_op = [&](std::size_t j, std::size_t t, i64 q) {
    if (q == 0) return;
    for (auto& row : A) row[j] -= q * row[t];
    for (auto& row : V) row[j] -= q * row[t];
    for (std::size_t k = 0; k < cols; ++k) Vinv[t][k] += q * Vinv[j][k];
  };
  const std::size_t steps = std::min(rows, cols);
  for (std::size_t t = 0; t < steps; ++t) {
    for (;;) {
      std::size_t pi = rows, pj = cols;
      i64 best = 0;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (A[i][j] != 0 && (best == 0 || std::llabs(A[i][j]) < best)) {
            best = std::llabs(A[i][j]);
            pi = i;
            pj = j;
          }
      if (best == 0) return;
      std::swap(A[t], A[pi]);
      swap_cols(t, pj);
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        const i64 q = A[i][t] / A[t][t];
        if (q != 0)
          for (std::size_t j = t; j < cols; ++j) A[i][j] -= q * A[t][j];
        if (A[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        col_op(j, t, A[t][j] / A[t][t]);
        if (A[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (A[i][j] % A[t][t] != 0) {
            for (std::size_t k = t; k < cols; ++k) A[t][k] += A[i][k];
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (A[t][t] < 0)
      for (std::size_t k = t; k < cols; ++k) A[t][k] = -A[t][k];
  }
}

unsigned big_omega(i64 n) {
  unsigned total = 0;
  for (const auto& [p, e] : factorize(static_cast<u64>(n))) total += e;
  return total;
}

// Closes the subgroup `members` under a new element c; returns r = order of c modulo the subgroup.
template <class OnNew>
i64 adjoin(const UnitGroupPresentation& G, i64 c, std::vector<char>& member, std::vector<i64>& elements,
           OnNew&& on_new) {
  i64 r = 1;
  i64 power = c;
  while (!member[static_cast<std::size_t>(power)]) {
    power = G.mul_codes(power, c);
    ++r;
  }
  const std::size_t old_size = elements.size();
  i64 cur = 1 % G.shape().size();
  for (i64 k = 1; k < r; ++k) {
    cur = G.mul_codes(cur, c);
    for (std::size_t idx = 0; idx < old_size; ++idx) {
      const i64 h = elements[idx];
      const i64 code = G.mul_codes(cur, h);
      member[static_cast<std::size_t>(code)] = 1;
      elements.push_back(code);
      on_new(code, h, k);
    }
  }
  return r;
}

i64 one_code(const QuotientShape& s) { return 1 % s.mod_x; }

}  // namespace

UnitGroupPresentation::UnitGroupPresentation(const LocalQuadExt& E, unsigned level, u64 budget)
    : E_(E), level_(level), shape_(quotient_shape(E, level)) {
  const double approx = std::pow(static_cast<double>(E.q()), static_cast<double>(level));
  if (approx > static_cast<double>(budget))
    throw BudgetExceeded("unit group mod p^" + std::to_string(level) + " exceeds budget " + std::to_string(budget));
  const i64 N = shape_.size();
  if (level == 0) {
    table_.assign(1, 0);
    filtration_.resize(1);
    return;
  }
  group_order_ = static_cast<i64>(ipow(E.q(), level - 1) * (E.q() - 1));

  // Greedy generation: each new generator c has a relation r c = (coords of c^r).
  const std::size_t K = std::max(1u, big_omega(group_order_));
  std::vector<char> member(static_cast<std::size_t>(N), 0);
  std::vector<std::int32_t> coords(static_cast<std::size_t>(N) * K, 0);
  std::vector<i64> elements{one_code(shape_)};
  member[static_cast<std::size_t>(elements[0])] = 1;
  std::vector<i64> greedy;
  Matrix relations;
  for (i64 c = 0; c < N && static_cast<i64>(elements.size()) < group_order_; ++c) {
    if (!is_unit_code(c) || member[static_cast<std::size_t>(c)]) continue;
    const std::size_t j = greedy.size();
    if (j >= K) throw Error("unit group presentation: generator bound exceeded");
    i64 power = c;
    while (!member[static_cast<std::size_t>(power)]) power = mul_codes(power, c);
    std::vector<i64> row(K, 0);
    for (std::size_t i = 0; i < j; ++i) row[i] = -coords[static_cast<std::size_t>(power) * K + i];
    const i64 r = adjoin(*this, c, member, elements, [&](i64 code, i64 h, i64 k) {
      for (std::size_t i = 0; i < K; ++i)
        coords[static_cast<std::size_t>(code) * K + i] = coords[static_cast<std::size_t>(h) * K + i];
      coords[static_cast<std::size_t>(code) * K + j] = static_cast<std::int32_t>(k);
    });
    row[j] = r;
    greedy.push_back(c);
    relations.push_back(std::move(row));
  }
  const std::size_t g = greedy.size();
  for (auto& row : relations) row.resize(g);

  Matrix V, Vinv;
  smith_normal_form(relations, V, Vinv);
  std::vector<std::size_t> keep;
  for (std::size_t t = 0; t < g; ++t)
    if (relations[t][t] > 1) keep.push_back(t);
  const std::size_t rank = keep.size();
  for (std::size_t t : keep) {
    orders_.push_back(relations[t][t]);
    i64 h = one_code(shape_);
    for (std::size_t j = 0; j < g; ++j) {
      i64 e = mod(Vinv[t][j], group_order_);
      i64 base = greedy[j];
      while (e > 0) {
        if (e & 1) h = mul_codes(h, base);
        base = mul_codes(base, base);
        e >>= 1;
      }
    }
    gen_codes_.push_back(h);
  }

  table_.assign(static_cast<std::size_t>(N) * std::max<std::size_t>(rank, 1), -1);
  for (i64 code : elements) {
    for (std::size_t s = 0; s < rank; ++s) {
      const std::size_t t = keep[s];
      i64 acc = 0;
      for (std::size_t j = 0; j < g; ++j)
        acc = mod(acc + mul_mod(coords[static_cast<std::size_t>(code) * K + j], mod(V[j][t], orders_[s]), orders_[s]),
                  orders_[s]);
      table_[static_cast<std::size_t>(code) * std::max<std::size_t>(rank, 1) + s] = static_cast<std::int32_t>(acc);
    }
    if (rank == 0) table_[static_cast<std::size_t>(code)] = 0;
  }
  for (std::size_t s = 0; s < rank; ++s) {
    const auto lg = dlog(gen_codes_[s]);
    for (std::size_t i = 0; i < rank; ++i)
      if (lg[i] != (i == s ? 1 : 0)) throw Error("unit group presentation: inconsistent generator logs");
  }

  // Filtration subgroups U_c, 1 <= c <= level.
  filtration_.resize(level + 1);
  const i64 l = static_cast<i64>(E.ell());
  for (unsigned c = 1; c <= level; ++c) {
    const unsigned cx = E.kind() == ExtKind::inert ? c : (c + 1) / 2;
    const unsigned cy = E.kind() == ExtKind::inert ? c : c / 2;
    const i64 mx = static_cast<i64>(ipow(static_cast<u64>(l), cx));
    const i64 my = static_cast<i64>(ipow(static_cast<u64>(l), cy));
    std::vector<char> in_h(static_cast<std::size_t>(N), 0);
    std::vector<i64> sub{one_code(shape_)};
    in_h[static_cast<std::size_t>(sub[0])] = 1;
    for (i64 code = 0; code < N; ++code) {
      const i64 x = code % shape_.mod_x;
      const i64 y = code / shape_.mod_x;
      if (mod(x - 1, mx) != 0 || y % my != 0 || in_h[static_cast<std::size_t>(code)]) continue;
      adjoin(*this, code, in_h, sub, [](i64, i64, i64) {});
      filtration_[c].push_back(dlog(code));
    }
  }
}

std::shared_ptr<const UnitGroupPresentation> UnitGroupPresentation::get(const LocalQuadExt& E, unsigned level,
                                                                        u64 budget) {
  using Key = std::tuple<u64, int, i64, unsigned>;
  static std::mutex mu;
  static std::map<Key, std::shared_ptr<const UnitGroupPresentation>> cache;
  const Key key{E.ell(), static_cast<int>(E.kind()), E.theta_square(), level};
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto pres = std::make_shared<const UnitGroupPresentation>(E, level, budget);
  std::lock_guard lock(mu);
  return cache.emplace(key, std::move(pres)).first->second;
}

std::vector<EElement> UnitGroupPresentation::generators() const {
  std::vector<EElement> out;
  for (i64 c : gen_codes_) out.push_back(decode(c));
  return out;
}

bool UnitGroupPresentation::is_unit_code(i64 code) const {
  if (code < 0 || code >= shape_.size()) return false;
  if (level_ == 0) return true;
  const i64 l = static_cast<i64>(E_.ell());
  const i64 x = code % shape_.mod_x;
  const i64 y = code / shape_.mod_x;
  return E_.kind() == ExtKind::inert ? (x % l != 0 || y % l != 0) : (x % l != 0);
}

i64 UnitGroupPresentation::mul_codes(i64 a, i64 b) const {
  const i64 mx = shape_.mod_x, my = shape_.mod_y;
  const i64 x1 = a % mx, y1 = a / mx, x2 = b % mx, y2 = b / mx;
  const i64 d = mod(E_.theta_square(), mx);
  const i64 x = mod(mul_mod(x1, x2, mx) + mul_mod(mul_mod(y1, y2, mx), d, mx), mx);
  const i64 y = mod(mul_mod(x1, y2, my) + mul_mod(x2, y1, my), my);
  return x + mx * y;
}

i64 UnitGroupPresentation::encode(const EElement& a) const {
  if (level_ == 0) return 0;
  const i64 x = residue_mod(a.x, E_.ell(), shape_.nx);
  const i64 y = shape_.ny == 0 ? 0 : residue_mod(a.y, E_.ell(), shape_.ny);
  return x + shape_.mod_x * y;
}

EElement UnitGroupPresentation::decode(i64 code) const {
  return {mpq_class(static_cast<long>(code % shape_.mod_x)), mpq_class(static_cast<long>(code / shape_.mod_x))};
}

std::vector<i64> UnitGroupPresentation::dlog(i64 code) const {
  if (!is_unit_code(code)) throw PreconditionViolated("dlog: not a unit modulo p^" + std::to_string(level_));
  const std::size_t r = rank();
  std::vector<i64> out(r);
  for (std::size_t i = 0; i < r; ++i) out[i] = table_[static_cast<std::size_t>(code) * r + i];
  return out;
}

const std::vector<std::vector<i64>>& UnitGroupPresentation::filtration_generators(unsigned c) const {
  if (c == 0 || c > level_) throw PreconditionViolated("filtration index out of range");
  return filtration_[c];
}

// ---------------------------------------------------------------------------

MultChar::MultChar(std::shared_ptr<const UnitGroupPresentation> pres, std::vector<QmodZ> generator_exponents,
                   QmodZ uniformizer_exponent)
    : pres_(std::move(pres)), gens_(std::move(generator_exponents)), unif_(uniformizer_exponent) {
  if (!pres_) throw PreconditionViolated("MultChar: null presentation");
  if (gens_.size() != pres_->rank())
    throw PreconditionViolated("MultChar: expected " + std::to_string(pres_->rank()) + " generator exponents");
  u64 uo = 1;
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if ((gens_[i].num * pres_->orders()[i]) % gens_[i].den != 0)
      throw PreconditionViolated("MultChar: exponent " + format_rational(gens_[i].to_rational()) +
                                 " incompatible with generator order " + std::to_string(pres_->orders()[i]));
    uo = lcm_u(uo, static_cast<u64>(gens_[i].den));
  }
  unit_order_ = static_cast<i64>(uo);
  order_ = static_cast<i64>(lcm_u(uo, static_cast<u64>(unif_.den)));
  conductor_ = pres_->level();
  if (std::all_of(gens_.begin(), gens_.end(), [](const QmodZ& e) { return e.is_zero(); })) {
    conductor_ = 0;
  } else {
    for (unsigned c = 1; c < pres_->level(); ++c) {
      const auto& sub = pres_->filtration_generators(c);
      if (std::all_of(sub.begin(), sub.end(), [&](const auto& lg) { return exponent_on_dlog(lg).is_zero(); })) {
        conductor_ = c;
        break;
      }
    }
  }
}

MultChar MultChar::trivial(std::shared_ptr<const UnitGroupPresentation> pres) {
  std::vector<QmodZ> zeros(pres->rank());
  return {std::move(pres), std::move(zeros), QmodZ()};
}

QmodZ MultChar::exponent_on_dlog(const std::vector<i64>& logs) const {
  QmodZ r;
  for (std::size_t i = 0; i < gens_.size(); ++i) r = r + gens_[i].times(logs[i]);
  return r;
}

QmodZ MultChar::exponent_on_code(i64 unit_code) const { return exponent_on_dlog(pres_->dlog(unit_code)); }

QmodZ MultChar::exponent(const EElement& a) const {
  EElement unit;
  const long v = ext().split_unit(a, unit);
  return exponent_on_code(pres_->encode(unit)) + unif_.times(v);
}

Cyclotomic MultChar::operator()(const EElement& a) const {
  const QmodZ r = exponent(a);
  return Cyclotomic::root_of_unity(static_cast<u64>(r.den), r.num);
}

MultChar MultChar::inverse() const {
  std::vector<QmodZ> g;
  for (const auto& e : gens_) g.push_back(-e);
  return {pres_, std::move(g), -unif_};
}

MultChar operator*(const MultChar& a, const MultChar& b) {
  if (a.pres_ != b.pres_ && !(a.ext() == b.ext() && a.level() == b.level()))
    throw PreconditionViolated("MultChar product: different presentations");
  std::vector<QmodZ> g;
  for (std::size_t i = 0; i < a.gens_.size(); ++i) g.push_back(a.gens_[i] + b.gens_[i]);
  return {a.pres_, std::move(g), a.unif_ + b.unif_};
}

bool operator==(const MultChar& a, const MultChar& b) {
  return a.ext() == b.ext() && a.level() == b.level() && a.gens_ == b.gens_ && a.unif_ == b.unif_;
}

std::string MultChar::id() const {
  std::string s = "u[";
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (i) s += ",";
    s += format_rational(gens_[i].to_rational());
  }
  return s + "]w" + format_rational(unif_.to_rational());
}

// ---------------------------------------------------------------------------

ArithChar::ArithChar(MultChar finite, const mpq_class& norm_exponent) : finite_(std::move(finite)), s0_(norm_exponent) {
  s0_.canonicalize();
  const mpq_class twice = 2 * s0_;
  if (twice.get_den() != 1) throw PreconditionViolated("ArithChar: 2 s0 must be an integer");
}

ScaledCyclotomic ArithChar::abs_power(long v) const {
  // |x|_E^{s0} = q^{-s0 v} = sqrt(q^{-2 s0 v})
  const mpq_class k2 = -2 * s0_ * v;
  const long k = mpz_class(k2.get_num()).get_si();
  mpz_class qk;
  mpz_ui_pow_ui(qk.get_mpz_t(), static_cast<unsigned long>(ext().q()), static_cast<unsigned long>(std::labs(k)));
  return ScaledCyclotomic::sqrt_of(k >= 0 ? mpq_class(qk) : mpq_class(mpz_class(1), qk));
}

ScaledCyclotomic ArithChar::operator()(const EElement& a) const {
  EElement unit;
  const long v = ext().split_unit(a, unit);
  return ScaledCyclotomic(finite_(a)) * abs_power(v);
}

// ---------------------------------------------------------------------------

namespace {

std::shared_ptr<const std::vector<i64>> dlog_table(u64 ell, unsigned k) {
  static std::mutex mu;
  static std::map<std::pair<u64, unsigned>, std::shared_ptr<const std::vector<i64>>> cache;
  std::lock_guard lock(mu);
  auto key = std::make_pair(ell, k);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  const u64 m = ipow(ell, k);
  if (m > 10'000'000) throw BudgetExceeded("discrete log table modulo " + std::to_string(m));
  auto table = std::make_shared<std::vector<i64>>(m, -1);
  const u64 g = primitive_root_mod_square(ell);
  i64 x = static_cast<i64>(1 % m);
  const i64 order = static_cast<i64>(euler_phi(m));
  for (i64 e = 0; e < order; ++e) {
    (*table)[static_cast<std::size_t>(x)] = e;
    x = mul_mod(x, static_cast<i64>(g), static_cast<i64>(m));
  }
  return cache.emplace(key, std::move(table)).first->second;
}

}  // namespace

i64 dlog_mod_prime_power(i64 unit, u64 ell, unsigned k) {
  if (k == 0) return 0;
  const auto table = dlog_table(ell, k);
  const i64 r = (*table)[static_cast<std::size_t>(mod(unit, static_cast<i64>(table->size())))];
  if (r < 0) throw PreconditionViolated("dlog_mod_prime_power: not a unit");
  return r;
}

FChar::FChar(u64 ell, unsigned level, QmodZ unit_exponent, QmodZ ell_exponent)
    : ell_(ell), level_(level), g_(primitive_root_mod_square(ell)), unit_(unit_exponent), ellexp_(ell_exponent) {
  const i64 phi = level == 0 ? 1 : static_cast<i64>(euler_phi(ipow(ell, level)));
  if ((unit_.num * phi) % unit_.den != 0)
    throw PreconditionViolated("FChar: unit exponent not defined modulo 1 + ell^" + std::to_string(level));
  for (unsigned c = 0; c <= level; ++c) {
    const i64 ph = c == 0 ? 1 : static_cast<i64>(euler_phi(ipow(ell, c)));
    if ((unit_.num * ph) % unit_.den == 0) {
      conductor_ = c;
      break;
    }
  }
}

i64 FChar::order() const { return static_cast<i64>(lcm_u(static_cast<u64>(unit_.den), static_cast<u64>(ellexp_.den))); }

QmodZ FChar::exponent(const mpq_class& x) const {
  if (x == 0) throw PreconditionViolated("FChar: zero argument");
  const int v = valuation(x, ell_);
  mpq_class u = x;
  if (v > 0) u /= mpq_class(mpz_class(ipow(ell_, static_cast<unsigned>(v))));
  if (v < 0) u *= mpq_class(mpz_class(ipow(ell_, static_cast<unsigned>(-v))));
  const i64 k = level_ == 0 ? 0 : dlog_mod_prime_power(residue_mod(u, ell_, level_), ell_, level_);
  return unit_.times(k) + ellexp_.times(v);
}

Cyclotomic FChar::operator()(const mpq_class& x) const {
  const QmodZ r = exponent(x);
  return Cyclotomic::root_of_unity(static_cast<u64>(r.den), r.num);
}

// ---------------------------------------------------------------------------

int hilbert_symbol(const mpq_class& a, const mpq_class& b, u64 ell) {
  if (a == 0 || b == 0) throw PreconditionViolated("hilbert_symbol: zero argument");
  const int alpha = valuation(a, ell);
  const int beta = valuation(b, ell);
  auto unit_residue = [&](const mpq_class& x, int v) {
    mpq_class u = x;
    const mpq_class lv(mpz_class(ipow(ell, static_cast<unsigned>(std::abs(v)))));
    if (v > 0) u /= lv;
    if (v < 0) u *= lv;
    return residue_mod(u, ell, 1);
  };
  int sign = 1;
  if ((alpha & 1) && (beta & 1) && ((ell - 1) / 2) % 2 == 1) sign = -sign;
  if (beta & 1) sign *= legendre(unit_residue(a, alpha), ell);
  if (alpha & 1) sign *= legendre(unit_residue(b, beta), ell);
  return sign;
}

QmodZ tau_exponent(const LocalQuadExt& E, const mpq_class& x) {
  if (E.kind() == ExtKind::inert) return (valuation(x, E.ell()) & 1) ? QmodZ(1, 2) : QmodZ();
  return hilbert_symbol(x, mpq_class(static_cast<long>(E.theta_square())), E.ell()) == 1 ? QmodZ() : QmodZ(1, 2);
}

FChar restrict_to_F(const MultChar& chi) {
  const LocalQuadExt& E = chi.ext();
  const unsigned flevel = E.kind() == ExtKind::inert ? chi.level() : (chi.level() + 1) / 2;
  const u64 g = primitive_root_mod_square(E.ell());
  return {E.ell(), flevel, chi.exponent(EElement(static_cast<long>(g))),
          chi.exponent(EElement(static_cast<long>(E.ell())))};
}

bool is_self_dual(const MultChar& chi) {
  const LocalQuadExt& E = chi.ext();
  const long g = static_cast<long>(primitive_root_mod_square(E.ell()));
  const long l = static_cast<long>(E.ell());
  return chi.exponent(EElement(g)) == tau_exponent(E, g) && chi.exponent(EElement(l)) == tau_exponent(E, l);
}

namespace {

// (g, s, t) with g = s a + t b.
std::tuple<i64, i64, i64> xgcd(i64 a, i64 b) {
  i64 s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (b != 0) {
    const i64 q = a / b;
    std::tie(a, b) = std::make_pair(b, a - q * b);
    std::tie(s0, s1) = std::make_pair(s1, s0 - q * s1);
    std::tie(t0, t1) = std::make_pair(t1, t0 - q * t1);
  }
  if (a < 0) return {-a, -s0, -t0};
  return {a, s0, t0};
}

}  // namespace

std::vector<MultChar> enumerate_self_dual(const LocalQuadExt& E, unsigned max_conductor, u64 budget) {
  const unsigned level = std::max(max_conductor, 1u);
  const auto pres = UnitGroupPresentation::get(E, level, budget);
  const std::size_t r = pres->rank();
  const auto& d = pres->orders();
  const long gF = static_cast<long>(primitive_root_mod_square(E.ell()));
  const std::vector<i64> c = pres->dlog(EElement(gF));
  const QmodZ target = tau_exponent(E, gF);

  // Particular solution: sum_i k_i c_i / d_i = target (mod 1).
  const i64 D = d.empty() ? 1 : d.back();
  std::vector<i64> k(r, 0);
  if ((target.num * D) % target.den != 0) return {};
  const i64 T = mod(target.num * D / target.den, D);
  i64 gcur = D;
  for (std::size_t i = 0; i < r; ++i) {
    const i64 a = mod(c[i] * (D / d[i]), D);
    const auto [g2, s, t] = xgcd(gcur, a);
    for (std::size_t j = 0; j < i; ++j) k[j] = mod(mul_mod(k[j], mod(s, d[j]), d[j]), d[j]);
    k[i] = mod(t, d[i]);
    gcur = g2;
  }
  if (T % gcur != 0) return {};
  for (std::size_t i = 0; i < r; ++i) k[i] = mod(mul_mod(k[i], mod(T / gcur, d[i]), d[i]), d[i]);

  // Characters of A / <c>: rows diag(d) and c.
  Matrix M(r + 1, std::vector<i64>(r, 0));
  for (std::size_t i = 0; i < r; ++i) {
    M[i][i] = d[i];
    M[r][i] = c[i];
  }
  Matrix V, Vinv;
  smith_normal_form(M, V, Vinv);
  std::vector<i64> dq(r);
  for (std::size_t j = 0; j < r; ++j) dq[j] = M[j][j];

  std::vector<QmodZ> base(r);
  for (std::size_t i = 0; i < r; ++i) base[i] = QmodZ(k[i], d[i]);

  std::vector<MultChar> out;
  std::vector<i64> f(r, 0);
  const mpq_class theta_sq(static_cast<long>(E.theta_square()));
  for (;;) {
    std::vector<QmodZ> e = base;
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j)
        if (f[j]) e[i] = e[i] + QmodZ(mod(mul_mod(mod(V[i][j], dq[j]), f[j], dq[j]), dq[j]), dq[j]);
    std::vector<QmodZ> ws;
    if (E.kind() == ExtKind::inert) {
      ws.push_back(QmodZ(1, 2));
    } else {
      const mpq_class u = theta_sq / mpq_class(static_cast<long>(E.ell()));
      MultChar probe(pres, e, QmodZ());
      const QmodZ s = tau_exponent(E, mpq_class(static_cast<long>(E.ell()))) + probe.exponent(EElement(u));
      ws.push_back(QmodZ(s.num, 2 * s.den));
      ws.push_back(QmodZ(s.num + s.den, 2 * s.den));
    }
    for (const QmodZ& w : ws) {
      MultChar chi(pres, e, w);
      if (chi.conductor() > max_conductor) continue;
      if (!is_self_dual(chi)) throw Error("enumerate_self_dual: produced a character that is not self-dual");
      out.push_back(std::move(chi));
    }
    std::size_t pos = 0;
    while (pos < r && ++f[pos] == dq[pos]) f[pos++] = 0;
    if (pos == r) break;
  }
  return out;
}

MuLocal mu_p_local(const ArithChar& chi, const PrimeAbovePChoice& choice) {
  if (chi.ext().ell() == choice.prime()) throw PreconditionViolated("mu_p_local: p must differ from ell");
  const MultChar& fin = chi.finite_part();
  std::vector<ScaledCyclotomic> values;
  for (const QmodZ& e : fin.generator_exponents())
    values.emplace_back(Cyclotomic::root_of_unity(static_cast<u64>(e.den), e.num));
  values.push_back(chi(chi.ext().uniformizer()));
  MuLocal out;
  bool any = false;
  for (const auto& x : values) {
    const ScaledCyclotomic diff = x - ScaledCyclotomic(1);
    if (diff.is_zero()) continue;
    const PadicVal v = choice.valuation(diff);
    out.value = any ? min(out.value, v) : v;
    any = true;
  }
  if (!any) {
    out.value = PadicVal::infinity();
    out.trivial = true;
  }
  return out;
}

}  // namespace anticyc
