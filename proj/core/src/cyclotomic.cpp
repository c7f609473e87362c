#include "anticyc/cyclotomic.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

#include "anticyc/errors.hpp"
#include "fp_poly.hpp"

namespace anticyc {
namespace {

struct CycloData {
  std::vector<i64> dense;
  std::size_t degree = 0;
  // Nonzero lower terms (j, a_j) with j < degree; the polynomial is monic.
  std::vector<std::pair<std::size_t, i64>> tail;
};

bool checked_mul(i64 a, i64 b, i64& out) { return !__builtin_mul_overflow(a, b, &out); }
bool checked_sub(i64 a, i64 b, i64& out) { return !__builtin_sub_overflow(a, b, &out); }

// Exact division of a by a monic b over Z.
std::vector<i64> divide_monic(std::vector<i64> a, const std::vector<i64>& b) {
  const std::size_t db = b.size() - 1;
  std::vector<i64> q(a.size() - db, 0);
  for (std::size_t i = a.size(); i-- > db;) {
    const i64 c = a[i];
    q[i - db] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
  }
  return q;
}

std::vector<i64> compose_power(const std::vector<i64>& f, u64 q) {
  std::vector<i64> out((f.size() - 1) * q + 1, 0);
  for (std::size_t i = 0; i < f.size(); ++i) out[i * q] = f[i];
  return out;
}

const CycloData& cyclo_data(u64 n) {
  static std::mutex mu;
  static std::map<u64, std::unique_ptr<CycloData>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return *it->second;

  std::vector<i64> phi{-1, 1};
  u64 rad = 1;
  for (auto [q, e] : factorize(n)) {
    (void)e;
    phi = divide_monic(compose_power(phi, q), phi);
    rad *= q;
  }
  phi = compose_power(phi, n / rad);

  auto data = std::make_unique<CycloData>();
  data->dense = phi;
  data->degree = phi.size() - 1;
  for (std::size_t j = 0; j < data->degree; ++j)
    if (phi[j] != 0) data->tail.emplace_back(j, phi[j]);
  auto& ref = *data;
  cache.emplace(n, std::move(data));
  return ref;
}

// Reduces v modulo Phi_n in place; returns false on int64 overflow.
bool reduce_i64(std::vector<i64>& v, const CycloData& c) {
  const std::size_t d = c.degree;
  for (std::size_t i = v.size(); i-- > d;) {
    const i64 x = v[i];
    if (x == 0) continue;
    for (auto [j, a] : c.tail) {
      i64 t;
      if (!checked_mul(x, a, t)) return false;
      if (!checked_sub(v[i - d + j], t, v[i - d + j])) return false;
    }
    v[i] = 0;
  }
  if (v.size() > d) v.resize(d);
  if (v.size() < d) v.resize(d, 0);
  return true;
}

void reduce_mpz(std::vector<mpz_class>& v, const CycloData& c) {
  const std::size_t d = c.degree;
  for (std::size_t i = v.size(); i-- > d;) {
    if (v[i] == 0) continue;
    const mpz_class x = v[i];
    for (auto [j, a] : c.tail) v[i - d + j] -= x * a;
    v[i] = 0;
  }
  v.resize(d);
}

bool fits_i64(const mpz_class& z) { return z.fits_slong_p(); }

// Reduces a coefficient vector given as mpz, using the int64 path when safe.
std::vector<mpz_class> reduce_any(std::vector<mpz_class> v, u64 n) {
  const CycloData& c = cyclo_data(n);
  if (v.size() <= c.degree) {
    v.resize(c.degree);
    return v;
  }
  bool small = std::all_of(v.begin(), v.end(), fits_i64);
  if (small) {
    std::vector<i64> w(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) w[i] = v[i].get_si();
    if (reduce_i64(w, c)) {
      std::vector<mpz_class> out(w.size());
      for (std::size_t i = 0; i < w.size(); ++i) out[i] = static_cast<long>(w[i]);
      return out;
    }
  }
  reduce_mpz(v, c);
  return v;
}

// Coefficient vector of x in Q(zeta_m), length phi(m), over x.denominator().
std::vector<mpz_class> lift_to(const Cyclotomic& x, u64 m) {
  const u64 n = x.conductor();
  if (m % n != 0) throw PreconditionViolated("embed: conductor does not divide target");
  const auto& num = x.numerators();
  if (n == m) return num;
  const u64 step = m / n;
  std::vector<mpz_class> v((num.size() - 1) * step + 1);
  for (std::size_t i = 0; i < num.size(); ++i) v[i * step] = num[i];
  return reduce_any(std::move(v), m);
}

std::vector<mpz_class> convolve(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) {
  std::vector<mpz_class> out(a.size() + b.size() - 1);
  const bool small = std::all_of(a.begin(), a.end(), [](const mpz_class& z) { return z.fits_sint_p(); }) &&
                     std::all_of(b.begin(), b.end(), [](const mpz_class& z) { return z.fits_sint_p(); });
  if (small && a.size() + b.size() < (1u << 20)) {
    std::vector<__int128> acc(out.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      const __int128 x = a[i].get_si();
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.size(); ++j) acc[i + j] += x * static_cast<__int128>(b[j].get_si());
    }
    bool ok = true;
    for (std::size_t i = 0; i < out.size() && ok; ++i) {
      if (acc[i] > INT64_MAX || acc[i] < INT64_MIN) ok = false;
      else out[i] = static_cast<long>(acc[i]);
    }
    if (ok) return out;
    for (auto& z : out) z = 0;
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

u64 large_prime(std::size_t idx) {
  static const std::vector<u64> primes = [] {
    std::vector<u64> out;
    mpz_class c = (mpz_class(1) << 62) - 1;
    while (out.size() < 512) {
      if (mpz_probab_prime_p(c.get_mpz_t(), 30)) out.push_back(c.get_ui());
      c -= 2;
    }
    return out;
  }();
  if (idx >= primes.size()) throw Error("inverse: ran out of CRT primes");
  return primes[idx];
}

// Rational reconstruction of every residue with |num|, den <= sqrt(M / 2),
// carrying a running common denominator.
bool reconstruct(const std::vector<mpz_class>& residues, const mpz_class& M, std::vector<mpq_class>& out) {
  mpz_class bound;
  mpz_class half = M / 2;
  mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
  mpz_class common = 1;
  out.assign(residues.size(), 0);
  for (std::size_t i = 0; i < residues.size(); ++i) {
    mpz_class r = residues[i] * common % M;
    if (r < 0) r += M;
    mpz_class r0 = M, r1 = r, t0 = 0, t1 = 1;
    while (r1 > bound) {
      mpz_class q = r0 / r1;
      mpz_class tmp = r0 - q * r1;
      r0 = r1;
      r1 = tmp;
      tmp = t0 - q * t1;
      t0 = t1;
      t1 = tmp;
    }
    if (t1 == 0 || abs(t1) > bound) return false;
    mpq_class v(r1, t1);
    v.canonicalize();
    common *= v.get_den();
    out[i] = mpq_class(v.get_num(), common);
    out[i].canonicalize();
  }
  return true;
}

}  // namespace

const std::vector<i64>& cyclotomic_polynomial(u64 n) {
  if (n == 0) throw PreconditionViolated("cyclotomic_polynomial: n must be positive");
  return cyclo_data(n).dense;
}

Cyclotomic::Cyclotomic() : conductor_(1), num_{0}, den_(1) {}

Cyclotomic::Cyclotomic(const mpq_class& q) : conductor_(1), num_{q.get_num()}, den_(q.get_den()) { normalize(); }

Cyclotomic::Cyclotomic(u64 n, std::vector<mpz_class> num, mpz_class den)
    : conductor_(n), num_(std::move(num)), den_(std::move(den)) {
  normalize();
}

void Cyclotomic::normalize() {
  if (den_ == 0) throw DivisionByZero();
  if (den_ < 0) {
    den_ = -den_;
    for (auto& z : num_) z = -z;
  }
  mpz_class g = den_;
  bool all_zero = true;
  for (const auto& z : num_) {
    if (z != 0) {
      all_zero = false;
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.get_mpz_t());
    }
  }
  if (all_zero) {
    conductor_ = 1;
    num_.assign(1, 0);
    den_ = 1;
    return;
  }
  if (g != 1) {
    for (auto& z : num_) mpz_divexact(z.get_mpz_t(), z.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
  }
  if (conductor_ != 1 && std::all_of(num_.begin() + 1, num_.end(), [](const mpz_class& z) { return z == 0; })) {
    conductor_ = 1;
    num_.resize(1);
  }
}

Cyclotomic Cyclotomic::root_of_unity(u64 n, i64 k) {
  if (n == 0) throw PreconditionViolated("root_of_unity: n must be positive");
  if (n == 1) return Cyclotomic(1);
  std::vector<i64> counts(n, 0);
  counts[mod(k, static_cast<i64>(n))] = 1;
  return from_exponent_counts(n, counts);
}

Cyclotomic Cyclotomic::from_exponent_counts(u64 n, std::span<const i64> counts) {
  if (counts.size() != n) throw PreconditionViolated("from_exponent_counts: size must equal n");
  const CycloData& c = cyclo_data(n);
  std::vector<i64> w(counts.begin(), counts.end());
  if (reduce_i64(w, c)) {
    std::vector<mpz_class> out(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) out[i] = static_cast<long>(w[i]);
    return Cyclotomic(n, std::move(out), 1);
  }
  std::vector<mpz_class> v(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) v[i] = static_cast<long>(counts[i]);
  reduce_mpz(v, c);
  return Cyclotomic(n, std::move(v), 1);
}

Cyclotomic Cyclotomic::from_coefficients(u64 n, const std::vector<mpq_class>& coeffs) {
  if (n == 0) throw PreconditionViolated("from_coefficients: n must be positive");
  mpz_class den = 1;
  for (const auto& q : coeffs) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
  std::vector<mpz_class> v(std::max<std::size_t>(coeffs.size(), 1));
  for (std::size_t i = 0; i < coeffs.size(); ++i) v[i] = coeffs[i].get_num() * (den / coeffs[i].get_den());
  return Cyclotomic(n, reduce_any(std::move(v), n), den);
}

std::vector<mpq_class> Cyclotomic::coefficients() const {
  std::vector<mpq_class> out(num_.size());
  for (std::size_t i = 0; i < num_.size(); ++i) {
    out[i] = mpq_class(num_[i], den_);
    out[i].canonicalize();
  }
  return out;
}

bool Cyclotomic::is_zero() const { return conductor_ == 1 && num_[0] == 0; }

mpq_class Cyclotomic::rational_value() const {
  if (conductor_ != 1) throw PreconditionViolated("rational_value: element is not rational");
  mpq_class q(num_[0], den_);
  q.canonicalize();
  return q;
}

Cyclotomic Cyclotomic::embed(u64 m) const { return Cyclotomic(m, lift_to(*this, m), den_); }

Cyclotomic Cyclotomic::conj() const {
  if (conductor_ <= 2) return *this;
  std::vector<mpz_class> v(conductor_);
  v[0] = num_[0];
  for (std::size_t i = 1; i < num_.size(); ++i) v[conductor_ - i] = num_[i];
  return Cyclotomic(conductor_, reduce_any(std::move(v), conductor_), den_);
}

Cyclotomic Cyclotomic::inverse() const {
  if (is_zero()) throw DivisionByZero();
  if (is_rational()) return Cyclotomic(1 / rational_value());
  // Invert the numerator polynomial modulo Phi_N over several word-size
  // primes, lift by CRT and rational reconstruction, and accept the first
  // candidate that verifies exactly.
  const auto& phi = cyclo_data(conductor_).dense;
  const std::size_t d = num_.size();
  std::vector<mpz_class> residues(d, 0);
  mpz_class modulus = 1;
  std::size_t used = 0, next_check = 2;
  for (std::size_t idx = 0;; ++idx) {
    const u64 q = large_prime(idx);
    fp::Poly a(d);
    for (std::size_t i = 0; i < d; ++i) a[i] = mpz_fdiv_ui(num_[i].get_mpz_t(), q);
    fp::trim(a);
    fp::Poly inv;
    if (!fp::inverse_mod(a, fp::from_integer(phi, q), q, inv)) continue;
    inv.resize(d, 0);
    // CRT: x = residues + modulus * t, t = (inv - residues) / modulus mod q.
    const mpz_class mq = mpz_fdiv_ui(modulus.get_mpz_t(), q);
    const i64 minv = inv_mod(static_cast<i64>(mq.get_ui()), static_cast<i64>(q));
    for (std::size_t i = 0; i < d; ++i) {
      const i64 r = static_cast<i64>(mpz_fdiv_ui(residues[i].get_mpz_t(), q));
      const i64 t = mul_mod(mod(static_cast<i64>(inv[i]) - r, static_cast<i64>(q)), minv, static_cast<i64>(q));
      residues[i] += modulus * static_cast<long>(t);
    }
    modulus *= static_cast<unsigned long>(q);
    if (++used < next_check) continue;
    next_check = used + std::max<std::size_t>(1, used / 2);
    std::vector<mpq_class> cand;
    if (!reconstruct(residues, modulus, cand)) continue;
    Cyclotomic y = from_coefficients(conductor_, cand);
    y *= Cyclotomic(mpq_class(den_));
    if (*this * y == Cyclotomic(1)) return y;
  }
}

Cyclotomic Cyclotomic::pow(i64 e) const {
  Cyclotomic base = e < 0 ? inverse() : *this;
  u64 k = e < 0 ? static_cast<u64>(-(e + 1)) + 1 : static_cast<u64>(e);
  Cyclotomic result(1);
  while (k > 0) {
    if (k & 1) result *= base;
    k >>= 1;
    if (k) base *= base;
  }
  return result;
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  const u64 m = lcm_u(conductor_, o.conductor_);
  std::vector<mpz_class> a = lift_to(*this, m);
  std::vector<mpz_class> b = lift_to(o, m);
  mpz_class d;
  mpz_lcm(d.get_mpz_t(), den_.get_mpz_t(), o.den_.get_mpz_t());
  const mpz_class fa = d / den_, fb = d / o.den_;
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = a[i] * fa + b[i] * fb;
  *this = Cyclotomic(m, std::move(a), d);
  return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o) { return *this += -o; }

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic r = *this;
  for (auto& z : r.num_) z = -z;
  return r;
}

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& o) {
  if (is_zero() || o.is_zero()) return *this = Cyclotomic();
  if (o.is_rational()) {
    for (auto& z : num_) z *= o.num_[0];
    den_ *= o.den_;
    normalize();
    return *this;
  }
  if (is_rational()) {
    Cyclotomic r = o;
    return *this = (r *= *this);
  }
  const u64 m = lcm_u(conductor_, o.conductor_);
  std::vector<mpz_class> prod = convolve(lift_to(*this, m), lift_to(o, m));
  *this = Cyclotomic(m, reduce_any(std::move(prod), m), den_ * o.den_);
  return *this;
}

Cyclotomic& Cyclotomic::operator/=(const Cyclotomic& o) { return *this *= o.inverse(); }

bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.conductor_ == b.conductor_) return a.den_ == b.den_ && a.num_ == b.num_;
  if (a.is_rational() || b.is_rational()) return false;
  const u64 m = lcm_u(a.conductor_, b.conductor_);
  std::vector<mpz_class> x = lift_to(a, m), y = lift_to(b, m);
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] * b.den_ != y[i] * a.den_) return false;
  return true;
}

std::string Cyclotomic::to_string() const {
  if (is_rational()) return format_rational(rational_value());
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < num_.size(); ++i) {
    if (num_[i] == 0) continue;
    if (!first) os << " + ";
    first = false;
    mpq_class c(num_[i], den_);
    c.canonicalize();
    os << format_rational(c);
    if (i > 0) os << "*z" << conductor_ << "^" << i;
  }
  return os.str();
}

Cyclotomic sqrt_embedding(u64 r) {
  if (r == 0) throw PreconditionViolated("sqrt_embedding: radicand must be positive");
  static std::mutex mu;
  static std::map<u64, Cyclotomic> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(r);
    if (it != cache.end()) return it->second;
  }
  Cyclotomic out(1);
  for (auto [q, e] : factorize(r)) {
    if (e != 1) throw PreconditionViolated("sqrt_embedding: radicand must be squarefree");
    if (q == 2) {
      out *= Cyclotomic::root_of_unity(8, 1) + Cyclotomic::root_of_unity(8, -1);
      continue;
    }
    std::vector<i64> counts(q, 0);
    for (u64 a = 1; a < q; ++a) counts[a] = legendre(static_cast<i64>(a), q);
    Cyclotomic g = Cyclotomic::from_exponent_counts(q, counts);
    if (q % 4 == 3) g *= -Cyclotomic::root_of_unity(4, 1);
    out *= g;
  }
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(r, out);
  return out;
}

ScaledCyclotomic::ScaledCyclotomic(Cyclotomic base, const mpq_class& radicand) : base_(std::move(base)) {
  if (radicand <= 0) throw PreconditionViolated("ScaledCyclotomic: radicand must be positive");
  const mpz_class ab = radicand.get_num() * radicand.get_den();
  if (!ab.fits_ulong_p()) throw PreconditionViolated("ScaledCyclotomic: radicand too large");
  u64 square_root = 1, free = 1;
  for (auto [q, e] : factorize(ab.get_ui())) {
    square_root *= ipow(q, e / 2);
    if (e % 2) free *= q;
  }
  base_ *= Cyclotomic(mpq_class(mpz_class(square_root), radicand.get_den()));
  scale_ = base_.is_zero() ? 1 : free;
}

ScaledCyclotomic ScaledCyclotomic::sqrt_of(const mpq_class& r) { return ScaledCyclotomic(Cyclotomic(1), r); }

Cyclotomic ScaledCyclotomic::to_cyclotomic() const {
  if (scale_ == 1) return base_;
  return base_ * sqrt_embedding(scale_);
}

ScaledCyclotomic ScaledCyclotomic::inverse() const {
  return raw(base_.inverse() / Cyclotomic(mpq_class(mpz_class(scale_))), scale_);
}

ScaledCyclotomic& ScaledCyclotomic::operator*=(const ScaledCyclotomic& o) {
  const u64 g = gcd_u(scale_, o.scale_);
  Cyclotomic b = base_ * o.base_;
  if (g != 1) b *= Cyclotomic(mpq_class(mpz_class(g)));
  *this = raw(std::move(b), (scale_ / g) * (o.scale_ / g));
  return *this;
}

ScaledCyclotomic& ScaledCyclotomic::operator/=(const ScaledCyclotomic& o) { return *this *= o.inverse(); }

ScaledCyclotomic& ScaledCyclotomic::operator+=(const ScaledCyclotomic& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (scale_ == o.scale_) {
    *this = raw(base_ + o.base_, scale_);
  } else {
    *this = raw(to_cyclotomic() + o.to_cyclotomic(), 1);
  }
  return *this;
}

ScaledCyclotomic& ScaledCyclotomic::operator-=(const ScaledCyclotomic& o) { return *this += -o; }

bool operator==(const ScaledCyclotomic& a, const ScaledCyclotomic& b) {
  if (a.scale_ == b.scale_) return a.base_ == b.base_;
  return a.to_cyclotomic() == b.to_cyclotomic();
}

std::string ScaledCyclotomic::to_string() const {
  if (scale_ == 1) return base_.to_string();
  return "(" + base_.to_string() + ")*sqrt(" + std::to_string(scale_) + ")";
}

ScaledCyclotomic complex_conjugate(const ScaledCyclotomic& a) {
  return ScaledCyclotomic(a.base().conj(), mpq_class(mpz_class(a.sqrt_scale())));
}

}  // namespace anticyc
