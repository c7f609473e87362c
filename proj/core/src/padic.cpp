#include "anticyc/padic.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "anticyc/errors.hpp"
#include "fp_poly.hpp"

namespace anticyc {

PadicVal PadicVal::infinity() {
  PadicVal v;
  v.infinite_ = true;
  return v;
}

PadicVal PadicVal::parse(const std::string& text) {
  if (text == "inf") return infinity();
  return PadicVal(parse_rational(text));
}

const mpq_class& PadicVal::value() const {
  if (infinite_) throw PreconditionViolated("PadicVal: value of +inf");
  return value_;
}

std::string PadicVal::to_string() const { return infinite_ ? "inf" : format_rational(value_); }

PadicVal operator+(const PadicVal& a, const PadicVal& b) {
  if (a.infinite_ || b.infinite_) return PadicVal::infinity();
  return PadicVal(mpq_class(a.value_ + b.value_));
}

PadicVal operator-(const PadicVal& a, const PadicVal& b) {
  if (b.infinite_) throw PreconditionViolated("PadicVal: subtracting +inf");
  if (a.infinite_) return a;
  return PadicVal(mpq_class(a.value_ - b.value_));
}

bool operator==(const PadicVal& a, const PadicVal& b) {
  if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
  return a.value_ == b.value_;
}

bool operator<(const PadicVal& a, const PadicVal& b) {
  if (a.infinite_) return false;
  if (b.infinite_) return true;
  return a.value_ < b.value_;
}

PadicVal min(const PadicVal& a, const PadicVal& b) { return b < a ? b : a; }

namespace {

using RElem = std::vector<mpz_class>;

// (Z/p^k)[X]/(g) for a monic integer lift g of an irreducible factor mod p.
struct UnramifiedRing {
  std::size_t f = 1;
  std::vector<mpz_class> g;  // length f + 1, monic
  mpz_class modulus;

  void reduce(RElem& a) const {
    for (std::size_t i = a.size(); i-- > f;) {
      if (a[i] == 0) continue;
      const mpz_class c = a[i];
      for (std::size_t j = 0; j < f; ++j) a[i - f + j] -= c * g[j];
    }
    a.resize(f);
    for (auto& c : a) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), modulus.get_mpz_t());
  }

  RElem mul(const RElem& a, const RElem& b) const {
    RElem out(2 * f - 1);
    for (std::size_t i = 0; i < f; ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < f; ++j) out[i + j] += a[i] * b[j];
    }
    reduce(out);
    return out;
  }

  RElem one() const {
    RElem r(f);
    r[0] = 1;
    return r;
  }

  RElem pow(RElem base, u64 e) const {
    RElem r = one();
    while (e > 0) {
      if (e & 1) r = mul(r, base);
      e >>= 1;
      if (e) base = mul(base, base);
    }
    return r;
  }
};

// Images of zeta_m^t, t in [0, m), in the unramified ring at a given precision.
struct Embedding {
  UnramifiedRing ring;
  std::vector<RElem> powers;
};

fp::Poly compose_power(const fp::Poly& f, u64 q) {
  fp::Poly out(f.empty() ? 0 : (f.size() - 1) * q + 1, 0);
  for (std::size_t i = 0; i < f.size(); ++i) out[i * q] = f[i];
  return out;
}

std::vector<fp::Poly> factor_cyclotomic_mod_p(u64 n, u64 p) {
  const fp::Poly phi = fp::from_integer(cyclotomic_polynomial(n), p);
  if (n == 1) return {phi};
  const int d = static_cast<int>(multiplicative_order(static_cast<i64>(p % n), n));
  return fp::equal_degree_factor(phi, d, p);
}

}  // namespace

struct PrimeAbovePChoice::Impl {
  u64 p;
  u64 universe;
  std::size_t factor_index;
  unsigned start_precision;
  unsigned max_precision;
  std::size_t factor_count = 0;
  fp::Poly universe_factor;

  std::mutex mu;
  std::map<u64, std::pair<u64, fp::Poly>> factor_by_m;  // m -> (L, g_L)
  std::map<std::pair<u64, unsigned>, std::shared_ptr<const Embedding>> embeddings;

  std::pair<u64, fp::Poly> factor_for(u64 m) {
    std::lock_guard<std::mutex> lock(mu);
    auto it = factor_by_m.find(m);
    if (it != factor_by_m.end()) return it->second;
    std::pair<u64, fp::Poly> entry;
    if (universe % m == 0) {
      entry = {universe, universe_factor};
    } else {
      const u64 L = lcm_u(universe, m);
      const fp::Poly phi = fp::from_integer(cyclotomic_polynomial(L), p);
      const fp::Poly lifted = compose_power(universe_factor, L / universe);
      const fp::Poly h = fp::gcd(phi, lifted, p);
      const int d = static_cast<int>(multiplicative_order(static_cast<i64>(p % L), L));
      entry = {L, fp::equal_degree_factor(h, d, p).front()};
    }
    factor_by_m.emplace(m, entry);
    return entry;
  }

  std::shared_ptr<const Embedding> embedding(u64 m, unsigned k) {
    {
      std::lock_guard<std::mutex> lock(mu);
      auto it = embeddings.find({m, k});
      if (it != embeddings.end()) return it->second;
    }
    auto [L, g] = factor_for(m);
    auto emb = std::make_shared<Embedding>();
    UnramifiedRing& R = emb->ring;
    R.f = g.size() - 1;
    R.g.assign(g.begin(), g.end());
    mpz_ui_pow_ui(R.modulus.get_mpz_t(), p, k);

    // Teichmuller lift of the class of X: Newton on z^L = 1, using
    // z^(1-L) ~ z so the step is z <- z - z (z^L - 1) / L.
    RElem z(R.f);
    if (R.f == 1) {
      z[0] = -R.g[0];
      mpz_fdiv_r(z[0].get_mpz_t(), z[0].get_mpz_t(), R.modulus.get_mpz_t());
    } else {
      z[1] = 1;
    }
    mpz_class inv_L = L;
    mpz_invert(inv_L.get_mpz_t(), inv_L.get_mpz_t(), R.modulus.get_mpz_t());
    for (int iter = 0;; ++iter) {
      RElem w = R.pow(z, L);
      w[0] -= 1;
      mpz_fdiv_r(w[0].get_mpz_t(), w[0].get_mpz_t(), R.modulus.get_mpz_t());
      if (std::all_of(w.begin(), w.end(), [](const mpz_class& c) { return c == 0; })) break;
      if (iter > 64) throw Error("Teichmuller lift failed to converge");
      RElem step = R.mul(z, w);
      for (std::size_t i = 0; i < R.f; ++i) {
        z[i] -= step[i] * inv_L;
        mpz_fdiv_r(z[i].get_mpz_t(), z[i].get_mpz_t(), R.modulus.get_mpz_t());
      }
    }
    const RElem zeta_m = R.pow(z, L / m);
    emb->powers.reserve(m);
    emb->powers.push_back(R.one());
    for (u64 t = 1; t < m; ++t) emb->powers.push_back(R.mul(emb->powers.back(), zeta_m));

    std::lock_guard<std::mutex> lock(mu);
    auto [it, inserted] = embeddings.emplace(std::make_pair(m, k), emb);
    return it->second;
  }

  // Valuation of the integral element sum num[i] zeta_N^i, or infinity when
  // every digit below p^k vanishes (undecided at this precision).
  PadicVal integral_valuation(const Cyclotomic& x, unsigned k) {
    const u64 N = x.conductor();
    const unsigned a = valuation_u(N, p);
    const u64 pa = ipow(p, a);
    const u64 m = N / pa;
    const auto emb = embedding(m, k);
    const UnramifiedRing& R = emb->ring;
    const u64 A = m == 1 ? 0 : static_cast<u64>(inv_mod(static_cast<i64>(pa % m), static_cast<i64>(m)));
    const u64 B = pa == 1 ? 0 : static_cast<u64>(inv_mod(static_cast<i64>(m % pa), static_cast<i64>(pa)));

    std::vector<RElem> ypoly(pa, RElem(R.f));
    const auto& num = x.numerators();
    mpz_class c;
    for (std::size_t i = 0; i < num.size(); ++i) {
      if (num[i] == 0) continue;
      mpz_fdiv_r(c.get_mpz_t(), num[i].get_mpz_t(), R.modulus.get_mpz_t());
      const RElem& zp = emb->powers[(i * A) % m];
      RElem& slot = ypoly[(i * B) % pa];
      for (std::size_t j = 0; j < R.f; ++j) slot[j] += c * zp[j];
    }

    u64 e = 1;
    if (a >= 1) {
      const u64 step = pa / p;
      e = pa - step;
      for (u64 t = pa; t-- > e;) {
        for (std::size_t j = 0; j < R.f; ++j) {
          if (ypoly[t][j] == 0) continue;
          for (u64 u = 0; u + 1 < p; ++u) ypoly[t - (p - 1 - u) * step][j] -= ypoly[t][j];
          ypoly[t][j] = 0;
        }
      }
      ypoly.resize(e);
      // Substitute Y = 1 + pi: s_k = sum_j binom(j, k) y_j.
      std::vector<RElem> shifted(e, RElem(R.f));
      std::vector<mpz_class> binom(e, 0);
      for (u64 j = 0; j < e; ++j) {
        for (u64 kk = j; kk > 0; --kk) binom[kk] += binom[kk - 1];
        binom[0] = 1;
        for (u64 kk = 0; kk <= j; ++kk)
          for (std::size_t t = 0; t < R.f; ++t) shifted[kk][t] += binom[kk] * ypoly[j][t];
      }
      ypoly = std::move(shifted);
    }

    PadicVal best = PadicVal::infinity();
    for (u64 kk = 0; kk < e; ++kk) {
      int v = -1;
      for (std::size_t t = 0; t < R.f; ++t) {
        mpz_fdiv_r(c.get_mpz_t(), ypoly[kk][t].get_mpz_t(), R.modulus.get_mpz_t());
        if (c == 0) continue;
        const int vt = anticyc::valuation(c, p);
        if (v < 0 || vt < v) v = vt;
      }
      if (v >= 0) best = min(best, PadicVal(mpq_class(v) + mpq_class(static_cast<long>(kk), static_cast<long>(e))));
    }
    return best;
  }
};

PrimeAbovePChoice::PrimeAbovePChoice(u64 p, u64 universe, std::size_t factor_index, unsigned start_precision,
                                     unsigned max_precision)
    : impl_(std::make_shared<Impl>()) {
  if (!is_prime(p) || p == 2) throw PreconditionViolated("PrimeAbovePChoice: p must be an odd prime");
  if (universe == 0) throw PreconditionViolated("PrimeAbovePChoice: universe must be positive");
  if (start_precision == 0 || max_precision < start_precision)
    throw PreconditionViolated("PrimeAbovePChoice: bad precision limits");
  impl_->p = p;
  impl_->universe = prime_to_part(universe, p);
  impl_->start_precision = start_precision;
  impl_->max_precision = max_precision;
  const auto factors = factor_cyclotomic_mod_p(impl_->universe, p);
  impl_->factor_count = factors.size();
  if (factor_index >= factors.size())
    throw PreconditionViolated("PrimeAbovePChoice: factor_index out of range");
  impl_->factor_index = factor_index;
  impl_->universe_factor = factors[impl_->factor_index];
}

u64 PrimeAbovePChoice::prime() const { return impl_->p; }
u64 PrimeAbovePChoice::universe() const { return impl_->universe; }
std::size_t PrimeAbovePChoice::factor_index() const { return impl_->factor_index; }
unsigned PrimeAbovePChoice::start_precision() const { return impl_->start_precision; }
unsigned PrimeAbovePChoice::max_precision() const { return impl_->max_precision; }
std::size_t PrimeAbovePChoice::factor_count() const { return impl_->factor_count; }

std::vector<u64> PrimeAbovePChoice::residue_factor(u64 m) const {
  return impl_->factor_for(prime_to_part(m, impl_->p)).second;
}

PadicVal PrimeAbovePChoice::valuation(const Cyclotomic& x) const {
  if (x.is_zero()) return PadicVal::infinity();
  const u64 p = impl_->p;
  if (x.is_rational()) return PadicVal(static_cast<long>(anticyc::valuation(x.rational_value(), p)));
  const PadicVal shift(static_cast<long>(anticyc::valuation(x.denominator(), p)));
  for (unsigned k = impl_->start_precision;; k = std::min(2 * k, impl_->max_precision)) {
    const PadicVal v = impl_->integral_valuation(x, k);
    if (!v.is_infinite()) return v - shift;
    if (k >= impl_->max_precision)
      throw PrecisionCeiling("p-adic valuation exceeded " + std::to_string(impl_->max_precision) + " digits");
  }
}

PadicVal PrimeAbovePChoice::valuation(const ScaledCyclotomic& x) const {
  const PadicVal base = valuation(x.base());
  if (base.is_infinite()) return base;
  return base + PadicVal(mpq_class(valuation_u(x.sqrt_scale(), impl_->p), 2));
}

PadicVal padic_valuation(const ScaledCyclotomic& x, const PrimeAbovePChoice& choice) { return choice.valuation(x); }

}  // namespace anticyc
