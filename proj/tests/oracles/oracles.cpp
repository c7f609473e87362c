#include "oracles/oracles.hpp"

#include <map>
#include <set>
#include <stdexcept>

namespace anticyc::oracle {

namespace {

i64 code_mul(i64 c1, i64 c2, i64 l, i64 d) {
  const i64 a = c1 % l, b = c1 / l, c = c2 % l, e = c2 / l;
  const i64 x = ((a * c + b * e % l * mod(d, l)) % l + l) % l;
  const i64 y = (a * e + b * c) % l;
  return x + l * y;
}

int v_int(mpz_class z, u64 ell) {
  int v = 0;
  while (z != 0 && z % ell == 0) {
    z /= ell;
    ++v;
  }
  return v;
}

}  // namespace

QmodZ frac_ell(const mpq_class& t, u64 ell) {
  mpz_class den = t.get_den();
  int m = 0;
  while (den % ell == 0) {
    den /= ell;
    ++m;
  }
  mpz_class lm;
  mpz_ui_pow_ui(lm.get_mpz_t(), ell, static_cast<unsigned long>(m));
  mpz_class inv;
  if (m == 0) return {};
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), lm.get_mpz_t());
  mpz_class r = mpz_class(t.get_num() * inv) % lm;
  if (r < 0) r += lm;
  return QmodZ(r.get_si(), lm.get_si());
}

InertCharacter make_inert_character(u64 ell, i64 theta_square, i64 k) {
  InertCharacter chi{ell, theta_square, k, 0, {}};
  const i64 l = static_cast<i64>(ell);
  const i64 n = l * l - 1;
  for (i64 g = 1; g < l * l; ++g) {
    std::vector<i64> log(static_cast<std::size_t>(l * l), -1);
    i64 x = 1;
    bool ok = true;
    for (i64 e = 0; e < n; ++e) {
      if (log[static_cast<std::size_t>(x)] != -1) {
        ok = false;
        break;
      }
      log[static_cast<std::size_t>(x)] = e;
      x = code_mul(x, g, l, theta_square);
    }
    if (ok) {
      chi.generator = g;
      chi.log = std::move(log);
      return chi;
    }
  }
  throw std::logic_error("no generator of F_{ell^2}^x");
}

QmodZ exponent(const InertCharacter& chi, i64 a, i64 b) {
  const i64 l = static_cast<i64>(chi.ell);
  const i64 code = mod(a, l) + l * mod(b, l);
  const i64 lg = chi.log.at(static_cast<std::size_t>(code));
  if (lg < 0) throw std::invalid_argument("not a unit residue");
  return QmodZ(chi.k * lg, l * l - 1);
}

i64 matching_k(const MultChar& chi) {
  const LocalQuadExt& E = chi.ext();
  if (E.kind() != ExtKind::inert || chi.conductor() > 1) return -1;
  const InertCharacter ref = make_inert_character(E.ell(), E.theta_square(), 1);
  const i64 l = static_cast<i64>(E.ell());
  const EElement g(mpq_class(ref.generator % l), mpq_class(ref.generator / l));
  const mpq_class e = chi.exponent(g).to_rational() * (l * l - 1);
  if (e.get_den() != 1) return -1;
  return e.get_num().get_si();
}

Cyclotomic slow_gauss_sum(const InertCharacter& chi, const mpq_class& beta, PsiSign sign) {
  const u64 ell = chi.ell;
  const i64 l = static_cast<i64>(ell);
  int vb = v_int(beta.get_num(), ell) - v_int(beta.get_den(), ell);
  const int M = std::max(0, vb + 1) + 1;
  const int R = std::max(1, -vb) + 1;
  const u64 L = lcm_u(static_cast<u64>(l * l - 1), ipow(ell, static_cast<unsigned>(std::max(M - vb, 0))));
  std::map<int, std::vector<i64>> buckets;  // k -> counts of zeta_L^e with weight (-1)^k ell^-k
  const u64 span = ipow(ell, static_cast<unsigned>(M + R));
  const u64 lM = ipow(ell, static_cast<unsigned>(M));
  for (u64 j = 0; j < span; ++j) {
    mpq_class x(static_cast<long>(j), static_cast<long>(lM));
    x.canonicalize();
    QmodZ e;
    int k = 0;
    if (j % lM != 0) {
      k = M - v_int(mpz_class(static_cast<unsigned long>(j)), ell);
    } else {
      e = -exponent(chi, static_cast<i64>((j / lM) % ell), 1);
    }
    QmodZ ps = frac_ell(beta * x, ell);  // psi(-beta x) = exp(2 pi i frac(beta x)) for the standard sign
    if (sign == PsiSign::opposite) ps = -ps;
    const QmodZ total = e + ps;
    auto& counts = buckets[k];
    if (counts.empty()) counts.assign(L, 0);
    ++counts[static_cast<std::size_t>(total.num * (static_cast<i64>(L) / total.den))];
  }
  Cyclotomic sum;
  for (const auto& [k, counts] : buckets) {
    mpz_class lk;
    mpz_ui_pow_ui(lk.get_mpz_t(), ell, static_cast<unsigned long>(k));
    const mpq_class w(k % 2 ? -1 : 1, lk);
    sum += Cyclotomic(w) * Cyclotomic::from_exponent_counts(L, counts);
  }
  mpz_class lR;
  mpz_ui_pow_ui(lR.get_mpz_t(), ell, static_cast<unsigned long>(R));
  return sum * Cyclotomic(mpq_class(mpz_class(1), lR));
}

u64 brute_self_dual_count(const LocalQuadExt& E, unsigned c) {
  const i64 l = static_cast<i64>(E.ell());
  const bool inert = E.kind() == ExtKind::inert;
  if (c == 0) return inert ? 1 : 0;
  // O_E / p^c as pairs (x mod ell^nx, y mod ell^ny).
  const unsigned nx = inert ? c : (c + 1) / 2;
  const unsigned ny = inert ? c : c / 2;
  const i64 mx = static_cast<i64>(ipow(E.ell(), nx)), my = static_cast<i64>(ipow(E.ell(), ny));
  const i64 d = E.theta_square();
  auto mul = [&](std::pair<i64, i64> a, std::pair<i64, i64> b) {
    // (x1 + y1 theta)(x2 + y2 theta); reduce through rationals to respect the mixed moduli.
    const mpz_class X = mpz_class(static_cast<long>(a.first)) * b.first + mpz_class(static_cast<long>(a.second)) * b.second * d;
    const mpz_class Y = mpz_class(static_cast<long>(a.first)) * b.second + mpz_class(static_cast<long>(a.second)) * b.first;
    mpz_class xr = X % mx, yr = Y % my;
    if (xr < 0) xr += mx;
    if (yr < 0) yr += my;
    return std::make_pair(static_cast<i64>(xr.get_si()), static_cast<i64>(yr.get_si()));
  };
  auto is_unit = [&](std::pair<i64, i64> a) { return inert ? (a.first % l != 0 || a.second % l != 0) : a.first % l != 0; };
  std::vector<std::pair<i64, i64>> G;
  for (i64 x = 0; x < mx; ++x)
    for (i64 y = 0; y < my; ++y)
      if (is_unit({x, y})) G.emplace_back(x, y);
  const i64 n = static_cast<i64>(G.size());
  if (n > 400) throw std::invalid_argument("brute_self_dual_count: group too large");
  // Greedy generating set.
  std::vector<std::pair<i64, i64>> gens;
  std::set<std::pair<i64, i64>> span{{1 % mx, 0}};
  for (const auto& g : G) {
    if (span.count(g)) continue;
    gens.push_back(g);
    std::vector<std::pair<i64, i64>> frontier(span.begin(), span.end());
    while (!frontier.empty()) {
      std::vector<std::pair<i64, i64>> next;
      for (const auto& e : frontier)
        for (const auto& h : gens) {
          const auto p = mul(e, h);
          if (span.insert(p).second) next.push_back(p);
        }
      frontier = std::move(next);
    }
  }
  // tau on units of Z_ell: trivial (inert) or the Legendre symbol (ramified).
  auto tau_unit = [&](i64 x) -> mpq_class { return (!inert && legendre(x, E.ell()) == -1) ? mpq_class(1, 2) : mpq_class(0); };
  // A generator of order o can only take values in (n / o) Z / n.
  std::vector<i64> step(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i) {
    i64 o = 1;
    for (auto p = gens[i]; p != std::make_pair(1 % mx, i64{0}); p = mul(p, gens[i])) ++o;
    step[i] = n / o;
  }
  u64 count = 0;
  std::vector<i64> assign(gens.size(), 0);
  for (;;) {
    std::map<std::pair<i64, i64>, i64> val{{{1 % mx, 0}, 0}};
    std::vector<std::pair<i64, i64>> frontier{{1 % mx, 0}};
    bool ok = true;
    while (ok && !frontier.empty()) {
      std::vector<std::pair<i64, i64>> next;
      for (const auto& e : frontier) {
        for (std::size_t i = 0; i < gens.size() && ok; ++i) {
          const auto p = mul(e, gens[i]);
          const i64 v = mod(val[e] + assign[i], n);
          auto [it, fresh] = val.try_emplace(p, v);
          if (fresh)
            next.push_back(p);
          else if (it->second != v)
            ok = false;
        }
      }
      frontier = std::move(next);
    }
    if (ok) {
      for (i64 x = 1; x < mx && ok; ++x) {
        if (x % l == 0) continue;
        mpq_class chi_x(val.at({x, 0}), n);
        chi_x.canonicalize();
        const mpq_class diff = chi_x - tau_unit(x);
        ok = diff.get_den() == 1;
      }
    }
    // chi(ell) = tau(ell) is forced for inert E; ramified E leaves two square roots for chi(theta).
    if (ok) count += inert ? 1 : 2;
    std::size_t i = 0;
    while (i < assign.size() && (assign[i] += step[i]) >= n) assign[i++] = 0;
    if (i == assign.size()) break;
  }
  return count;
}

int brute_hilbert_symbol(i64 a, i64 b, u64 ell) {
  // (a, b) = 1 iff b is a norm from Q_ell(sqrt a), i.e. b / (x^2 - a y^2) is a
  // square for some x, y. Norms of x + y sqrt(a) with x, y < ell^2 meet every
  // square class of the norm group.
  const i64 l = static_cast<i64>(ell);
  auto split = [&](mpz_class z, int& v) {
    v = 0;
    while (z % l == 0) {
      z /= l;
      ++v;
    }
    return z;
  };
  int vb = 0;
  const mpz_class ub = split(mpz_class(static_cast<long>(b)), vb);
  for (i64 x = 0; x < l * l; ++x)
    for (i64 y = 0; y < l * l; ++y) {
      const mpz_class N = mpz_class(static_cast<long>(x * x)) - mpz_class(static_cast<long>(a)) * (y * y);
      if (N == 0) continue;
      int vn = 0;
      const mpz_class un = split(N, vn);
      if ((vb - vn) % 2 != 0) continue;
      mpz_class r = ub * un % l;  // ub / un has the same residue symbol as ub * un
      if (r < 0) r += l;
      if (legendre(r.get_si(), ell) == 1) return 1;
    }
  return -1;
}

Cyclotomic quadratic_gauss_sum(u64 ell) {
  std::vector<i64> counts(ell, 0);
  for (u64 x = 1; x < ell; ++x) counts[x] = legendre(static_cast<i64>(x), ell);
  return Cyclotomic::from_exponent_counts(ell, counts);
}

}  // namespace anticyc::oracle
