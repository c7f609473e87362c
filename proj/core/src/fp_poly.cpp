#include "fp_poly.hpp"

#include <algorithm>
#include <random>

#include "anticyc/errors.hpp"

namespace anticyc::fp {

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

int degree(const Poly& f) { return static_cast<int>(f.size()) - 1; }

Poly add(const Poly& a, const Poly& b, u64 p) {
  Poly out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = (out[i] + b[i]) % p;
  trim(out);
  return out;
}

Poly sub(const Poly& a, const Poly& b, u64 p) {
  Poly out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = (out[i] + p - b[i]) % p;
  trim(out);
  return out;
}

Poly mul(const Poly& a, const Poly& b, u64 p) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      out[i + j] = static_cast<u64>((out[i + j] + static_cast<unsigned __int128>(a[i]) * b[j]) % p);
  }
  trim(out);
  return out;
}

void divmod(const Poly& a, const Poly& b, u64 p, Poly& q, Poly& r) {
  if (b.empty()) throw DivisionByZero();
  r = a;
  trim(r);
  q.assign(r.size() >= b.size() ? r.size() - b.size() + 1 : 0, 0);
  const u64 inv = static_cast<u64>(inv_mod(static_cast<i64>(b.back()), static_cast<i64>(p)));
  while (r.size() >= b.size()) {
    const std::size_t shift = r.size() - b.size();
    const u64 c = static_cast<u64>(mul_mod(static_cast<i64>(r.back()), static_cast<i64>(inv), static_cast<i64>(p)));
    q[shift] = c;
    for (std::size_t j = 0; j < b.size(); ++j)
      r[shift + j] = (r[shift + j] + p - static_cast<u64>(mul_mod(static_cast<i64>(c), static_cast<i64>(b[j]),
                                                                      static_cast<i64>(p)))) %
                     p;
    trim(r);
  }
}

Poly rem(const Poly& a, const Poly& b, u64 p) {
  Poly q, r;
  divmod(a, b, p, q, r);
  return r;
}

Poly monic(const Poly& f, u64 p) {
  if (f.empty()) return f;
  const i64 inv = inv_mod(static_cast<i64>(f.back()), static_cast<i64>(p));
  Poly out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i)
    out[i] = static_cast<u64>(mul_mod(static_cast<i64>(f[i]), inv, static_cast<i64>(p)));
  return out;
}

Poly gcd(Poly a, Poly b, u64 p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a, p);
}

Poly powmod(const Poly& base, const mpz_class& e, const Poly& modulus, u64 p) {
  Poly result{1};
  result = rem(result, modulus, p);
  Poly b = rem(base, modulus, p);
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = rem(mul(result, result, p), modulus, p);
    if (mpz_tstbit(e.get_mpz_t(), i)) result = rem(mul(result, b, p), modulus, p);
  }
  return result;
}

bool inverse_mod(const Poly& a, const Poly& f, u64 p, Poly& out) {
  Poly r0 = f, r1 = rem(a, f, p);
  Poly s0, s1{1};
  while (!r1.empty()) {
    Poly q, r;
    divmod(r0, r1, p, q, r);
    Poly s = sub(s0, mul(q, s1, p), p);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (degree(r0) != 0) return false;
  const i64 inv = inv_mod(static_cast<i64>(r0[0]), static_cast<i64>(p));
  out = rem(mul(s0, Poly{static_cast<u64>(inv)}, p), f, p);
  return true;
}

Poly from_integer(const std::vector<i64>& f, u64 p) {
  Poly out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = static_cast<u64>(mod(f[i], static_cast<i64>(p)));
  trim(out);
  return out;
}

namespace {

void split(const Poly& f, int d, u64 p, std::mt19937_64& rng, std::vector<Poly>& out) {
  if (degree(f) == d) {
    out.push_back(f);
    return;
  }
  mpz_class e;
  mpz_ui_pow_ui(e.get_mpz_t(), p, static_cast<unsigned long>(d));
  e = (e - 1) / 2;
  std::uniform_int_distribution<u64> dist(0, p - 1);
  for (;;) {
    Poly a(f.size() - 1);
    for (auto& c : a) c = dist(rng);
    trim(a);
    if (degree(a) < 1) continue;
    Poly g = gcd(a, f, p);
    if (degree(g) <= 0 || degree(g) == degree(f)) {
      Poly b = powmod(a, e, f, p);
      g = gcd(sub(b, Poly{1}, p), f, p);
    }
    if (degree(g) > 0 && degree(g) < degree(f)) {
      Poly q, r;
      divmod(f, g, p, q, r);
      split(g, d, p, rng, out);
      split(monic(q, p), d, p, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<Poly> equal_degree_factor(const Poly& f, int d, u64 p, std::uint64_t seed) {
  if (p == 2) throw PreconditionViolated("equal_degree_factor: p must be odd");
  if (d <= 0 || degree(f) % d != 0) throw PreconditionViolated("equal_degree_factor: degree mismatch");
  std::mt19937_64 rng(seed);
  std::vector<Poly> out;
  split(monic(f, p), d, p, rng, out);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace anticyc::fp
