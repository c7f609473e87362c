#pragma once

#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "anticyc/arith.hpp"
#include "anticyc/cyclotomic.hpp"

namespace anticyc {

enum class ExtKind { inert, ramified };

/// Sign convention for the additive character of Q_ell. `standard` is the
/// finite component of the adelic character with psi_inf(x) = exp(2 pi i x),
/// i.e. psi_ell(a / ell^m) = zeta_{ell^m}^{-a}; `opposite` flips it.
enum class PsiSign { standard, opposite };

std::string to_string(ExtKind kind);
ExtKind parse_ext_kind(const std::string& text);
std::string to_string(PsiSign sign);  // "minus" / "plus"
PsiSign parse_psi_sign(const std::string& text);

/// x + y * theta with exact rational x, y.
struct EElement {
  mpq_class x = 0;
  mpq_class y = 0;

  EElement() = default;
  EElement(mpq_class x_, mpq_class y_ = 0) : x(std::move(x_)), y(std::move(y_)) {  // NOLINT
    x.canonicalize();
    y.canonicalize();
  }
  EElement(long v) : x(v) {}  // NOLINT

  bool is_zero() const { return x == 0 && y == 0; }
  friend EElement operator+(const EElement& a, const EElement& b) { return {a.x + b.x, a.y + b.y}; }
  friend EElement operator-(const EElement& a, const EElement& b) { return {a.x - b.x, a.y - b.y}; }
  EElement operator-() const { return {-x, -y}; }
  friend bool operator==(const EElement& a, const EElement& b) { return a.x == b.x && a.y == b.y; }
};

/// A quadratic extension E = Q_ell(theta) of Q_ell with theta^2 = d an
/// integer and conj(theta) = -theta (ell odd), so delta = 2 theta and t = 0.
/// Inert: d is a unit non-square; ramified: v_ell(d) = 1 and theta is a
/// uniformizer of E.
class LocalQuadExt {
 public:
  /// Defaults: least non-residue (inert), ell (ramified).
  LocalQuadExt(u64 ell, ExtKind kind, std::optional<i64> theta_square = std::nullopt);

  u64 ell() const { return ell_; }
  ExtKind kind() const { return kind_; }
  i64 theta_square() const { return theta_square_; }
  /// Ramification index e(E/F).
  unsigned e() const { return kind_ == ExtKind::inert ? 1 : 2; }
  /// Residue degree f(E/F).
  unsigned f() const { return kind_ == ExtKind::inert ? 2 : 1; }
  /// Residue field cardinality q.
  u64 q() const { return kind_ == ExtKind::inert ? ell_ * ell_ : ell_; }
  /// v_E(theta): 0 inert, 1 ramified.
  int v_theta() const { return kind_ == ExtKind::inert ? 0 : 1; }

  EElement theta() const { return {0, 1}; }
  EElement delta() const { return {0, 2}; }
  mpq_class t() const { return 0; }
  /// ell (inert) or theta (ramified).
  EElement uniformizer() const;

  EElement mul(const EElement& a, const EElement& b) const;
  EElement inverse(const EElement& a) const;
  EElement div(const EElement& a, const EElement& b) const { return mul(a, inverse(b)); }
  EElement pow(const EElement& a, i64 k) const;
  EElement conj(const EElement& a) const { return {a.x, -a.y}; }
  mpq_class trace(const EElement& a) const { return 2 * a.x; }
  mpq_class norm(const EElement& a) const;
  /// Normalised valuation of E; nullopt for zero.
  std::optional<long> val(const EElement& a) const;

  /// Writes a nonzero a as uniformizer^v * u with u a unit; returns v.
  long split_unit(const EElement& a, EElement& unit) const;

  friend bool operator==(const LocalQuadExt& a, const LocalQuadExt& b) {
    return a.ell_ == b.ell_ && a.kind_ == b.kind_ && a.theta_square_ == b.theta_square_;
  }

 private:
  u64 ell_;
  ExtKind kind_;
  i64 theta_square_;
};

/// Exponent of psi_ell(x) as an element of Q/Z: psi_ell(x) = exp(2 pi i r).
/// Defined for every rational x through its ell-adic fractional part.
QmodZ psi_exponent(const mpq_class& x, u64 ell, PsiSign sign = PsiSign::standard);
Cyclotomic psi(const mpq_class& x, u64 ell, PsiSign sign = PsiSign::standard);
/// psi_circ(x) = psi(-x) (d_F = 1).
Cyclotomic psi_circ(const mpq_class& x, u64 ell, PsiSign sign = PsiSign::standard);

/// Element of O_E / p_E^n in components: x mod ell^nx, y mod ell^ny.
struct QuotientShape {
  unsigned nx = 0;
  unsigned ny = 0;
  i64 mod_x = 1;
  i64 mod_y = 1;
  /// Number of residues q^n.
  i64 size() const { return mod_x * mod_y; }
};

QuotientShape quotient_shape(const LocalQuadExt& E, unsigned n);

struct QuotientReps {
  std::vector<EElement> all;
  std::vector<EElement> units;
};

/// Canonical representatives of O_E / p^n and of its unit group.
QuotientReps enumerate_quotient(const LocalQuadExt& E, unsigned n, u64 budget = 10'000'000);

}  // namespace anticyc
