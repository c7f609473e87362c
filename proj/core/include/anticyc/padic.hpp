#pragma once

#include <memory>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "anticyc/arith.hpp"
#include "anticyc/cyclotomic.hpp"

namespace anticyc {

/// A p-adic valuation value: an exact rational or +infinity.
class PadicVal {
 public:
  PadicVal() = default;  // zero
  PadicVal(const mpq_class& v) : value_(v) { value_.canonicalize(); }  // NOLINT(google-explicit-constructor)
  PadicVal(long v) : value_(v) {}  // NOLINT

  static PadicVal infinity();
  /// Parses "a/b", "a" or "inf".
  static PadicVal parse(const std::string& text);

  bool is_infinite() const { return infinite_; }
  /// The finite value; throws PreconditionViolated on +infinity.
  const mpq_class& value() const;
  std::string to_string() const;

  friend PadicVal operator+(const PadicVal& a, const PadicVal& b);
  friend PadicVal operator-(const PadicVal& a, const PadicVal& b);  // b finite
  friend bool operator==(const PadicVal& a, const PadicVal& b);
  friend bool operator<(const PadicVal& a, const PadicVal& b);
  friend bool operator!=(const PadicVal& a, const PadicVal& b) { return !(a == b); }
  friend bool operator>(const PadicVal& a, const PadicVal& b) { return b < a; }
  friend bool operator<=(const PadicVal& a, const PadicVal& b) { return !(b < a); }
  friend bool operator>=(const PadicVal& a, const PadicVal& b) { return !(a < b); }

 private:
  bool infinite_ = false;
  mpq_class value_ = 0;
};

PadicVal min(const PadicVal& a, const PadicVal& b);

/// A prime of a cyclotomic field above p, fixed once as data.
///
/// The choice is anchored at a universe conductor U prime to p: the prime of
/// Q(zeta_U) attached to the factor_index-th irreducible factor (in sorted
/// order) of Phi_U mod p. Elements whose prime-to-p conductor m divides U use
/// the restriction of that prime; for other m the prime of Q(zeta_lcm(U, m))
/// attached to the smallest compatible factor is used. Valuations are exactly
/// additive on elements whose prime-to-p conductors divide U, so callers that
/// combine values should size U to cover them. The p-power part is handled by
/// the totally ramified uniformizer zeta_{p^a} - 1. Requires p odd.
///
/// Copies share one guarded cache of Hensel lifts, so the type can be used
/// from several threads at once.
class PrimeAbovePChoice {
 public:
  explicit PrimeAbovePChoice(u64 p, u64 universe = 1, std::size_t factor_index = 0,
                             unsigned start_precision = 32, unsigned max_precision = 4096);

  u64 prime() const;
  u64 universe() const;
  std::size_t factor_index() const;
  unsigned start_precision() const;
  unsigned max_precision() const;
  /// Number of primes of Q(zeta_U) above p.
  std::size_t factor_count() const;
  /// The monic residue polynomial over F_p selecting the prime used for prime-to-p conductor m.
  std::vector<u64> residue_factor(u64 m) const;

  PadicVal valuation(const Cyclotomic& x) const;
  PadicVal valuation(const ScaledCyclotomic& x) const;

 private:
  struct Impl;
  std::shared_ptr<Impl> impl_;
};

PadicVal padic_valuation(const ScaledCyclotomic& x, const PrimeAbovePChoice& choice);

}  // namespace anticyc
