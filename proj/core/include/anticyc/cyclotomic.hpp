#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "anticyc/arith.hpp"

namespace anticyc {

/// Dense integer coefficients of the n-th cyclotomic polynomial, low degree first.
/// The table is cached process-wide; the returned reference stays valid.
const std::vector<i64>& cyclotomic_polynomial(u64 n);

/// An exact element of Q(zeta_N), zeta_N = exp(2 pi i / N).
///
/// Stored in the power basis {1, zeta, ..., zeta^(phi(N)-1)} reduced modulo
/// Phi_N, as integer numerators over one positive common denominator with
/// trivial content. Zero and rationals are always stored at conductor 1, so a
/// value computed in a larger field compares and prints as a plain rational.
/// No other conductor trimming happens: an element keeps the conductor it
/// was computed in, and binary operations work in the lcm conductor.
class Cyclotomic {
 public:
  Cyclotomic();
  Cyclotomic(const mpq_class& q);  // NOLINT(google-explicit-constructor)
  Cyclotomic(long q) : Cyclotomic(mpq_class(q)) {}  // NOLINT

  /// zeta_n^k.
  static Cyclotomic root_of_unity(u64 n, i64 k);
  /// sum_i counts[i] * zeta_n^i for i in [0, counts.size()); counts.size() must be n.
  static Cyclotomic from_exponent_counts(u64 n, std::span<const i64> counts);
  /// sum_i coeffs[i] * zeta_n^i for an arbitrary-length coefficient list.
  static Cyclotomic from_coefficients(u64 n, const std::vector<mpq_class>& coeffs);

  u64 conductor() const { return conductor_; }
  std::size_t degree() const { return num_.size(); }
  /// Power-basis coefficients, length phi(conductor).
  std::vector<mpq_class> coefficients() const;
  const std::vector<mpz_class>& numerators() const { return num_; }
  const mpz_class& denominator() const { return den_; }

  bool is_zero() const;
  bool is_rational() const { return conductor_ == 1; }
  /// Value of a rational element; throws PreconditionViolated otherwise.
  mpq_class rational_value() const;

  /// The same element expressed in Q(zeta_m); conductor() must divide m.
  Cyclotomic embed(u64 m) const;
  /// Image under zeta -> zeta^-1.
  Cyclotomic conj() const;
  /// Multiplicative inverse; throws DivisionByZero on zero.
  Cyclotomic inverse() const;
  Cyclotomic pow(i64 e) const;

  Cyclotomic& operator+=(const Cyclotomic& o);
  Cyclotomic& operator-=(const Cyclotomic& o);
  Cyclotomic& operator*=(const Cyclotomic& o);
  Cyclotomic& operator/=(const Cyclotomic& o);
  Cyclotomic operator-() const;

  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
  friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }
  friend Cyclotomic operator/(Cyclotomic a, const Cyclotomic& b) { return a /= b; }
  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);

  /// Human-readable form, e.g. "-6/5" or "1*z15^1 + 2*z15^3".
  std::string to_string() const;

 private:
  Cyclotomic(u64 n, std::vector<mpz_class> num, mpz_class den);
  void normalize();

  u64 conductor_ = 1;
  std::vector<mpz_class> num_;
  mpz_class den_ = 1;
};

/// Positive real square root of a squarefree r >= 1, as an element of
/// Q(zeta_{4r}) (via quadratic Gauss sums and zeta_8 + zeta_8^-1 = sqrt 2).
Cyclotomic sqrt_embedding(u64 squarefree_r);

/// base * sqrt(r) with r a squarefree positive integer.
///
/// Square factors of the radicand are absorbed into the base on construction,
/// so products stay in this form. Sums with different radicands fall back to
/// sqrt_embedding and land at radicand 1; equality is always decided through
/// to_cyclotomic, which makes it exact across the formal boundary.
class ScaledCyclotomic {
 public:
  ScaledCyclotomic() = default;
  ScaledCyclotomic(Cyclotomic base, const mpq_class& radicand = 1);  // NOLINT
  ScaledCyclotomic(const mpq_class& q) : ScaledCyclotomic(Cyclotomic(q)) {}  // NOLINT
  ScaledCyclotomic(long q) : ScaledCyclotomic(Cyclotomic(q)) {}  // NOLINT

  /// sqrt(r) for a positive rational r.
  static ScaledCyclotomic sqrt_of(const mpq_class& r);

  const Cyclotomic& base() const { return base_; }
  u64 sqrt_scale() const { return scale_; }
  bool is_zero() const { return base_.is_zero(); }

  Cyclotomic to_cyclotomic() const;
  ScaledCyclotomic inverse() const;

  ScaledCyclotomic& operator*=(const ScaledCyclotomic& o);
  ScaledCyclotomic& operator/=(const ScaledCyclotomic& o);
  ScaledCyclotomic& operator+=(const ScaledCyclotomic& o);
  ScaledCyclotomic& operator-=(const ScaledCyclotomic& o);
  ScaledCyclotomic operator-() const { return raw(-base_, scale_); }

  friend ScaledCyclotomic operator*(ScaledCyclotomic a, const ScaledCyclotomic& b) { return a *= b; }
  friend ScaledCyclotomic operator/(ScaledCyclotomic a, const ScaledCyclotomic& b) { return a /= b; }
  friend ScaledCyclotomic operator+(ScaledCyclotomic a, const ScaledCyclotomic& b) { return a += b; }
  friend ScaledCyclotomic operator-(ScaledCyclotomic a, const ScaledCyclotomic& b) { return a -= b; }
  friend bool operator==(const ScaledCyclotomic& a, const ScaledCyclotomic& b);

  std::string to_string() const;

 private:
  static ScaledCyclotomic raw(Cyclotomic base, u64 squarefree) {
    ScaledCyclotomic r;
    r.base_ = std::move(base);
    r.scale_ = r.base_.is_zero() ? 1 : squarefree;
    return r;
  }

  Cyclotomic base_;
  u64 scale_ = 1;
};

/// zeta -> zeta^-1 on the base; the (real, positive) radical is fixed.
ScaledCyclotomic complex_conjugate(const ScaledCyclotomic& a);
inline Cyclotomic complex_conjugate(const Cyclotomic& a) { return a.conj(); }

}  // namespace anticyc
