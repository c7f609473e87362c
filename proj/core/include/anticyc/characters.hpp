#pragma once

#include <memory>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "anticyc/arith.hpp"
#include "anticyc/cyclotomic.hpp"
#include "anticyc/local_field.hpp"
#include "anticyc/padic.hpp"

namespace anticyc {

/// Smith-normal-form presentation of (O_E / p_E^n)^x.
///
/// Residues are encoded as integers `code = x + mod_x * y` for x + y theta
/// with 0 <= x < mod_x, 0 <= y < mod_y (see QuotientShape). Generators are
/// listed with invariant factors d_1 | d_2 | ... (all > 1); discrete logs are
/// read from an exhaustive table.
class UnitGroupPresentation {
 public:
  UnitGroupPresentation(const LocalQuadExt& E, unsigned level, u64 budget = 10'000'000);

  /// Shared, cached presentation.
  static std::shared_ptr<const UnitGroupPresentation> get(const LocalQuadExt& E, unsigned level,
                                                          u64 budget = 10'000'000);

  const LocalQuadExt& ext() const { return E_; }
  unsigned level() const { return level_; }
  const QuotientShape& shape() const { return shape_; }
  std::size_t rank() const { return orders_.size(); }
  const std::vector<i64>& orders() const { return orders_; }
  const std::vector<i64>& generator_codes() const { return gen_codes_; }
  std::vector<EElement> generators() const;
  /// q^(n-1) (q-1), or 1 at level 0.
  i64 group_order() const { return group_order_; }

  bool is_unit_code(i64 code) const;
  i64 mul_codes(i64 a, i64 b) const;
  /// Residue code of an integral element; the caller must pass a unit for dlog.
  i64 encode(const EElement& a) const;
  EElement decode(i64 code) const;

  /// Exponent vector of a unit code (entry i modulo orders()[i]).
  std::vector<i64> dlog(i64 code) const;
  std::vector<i64> dlog(const EElement& unit) const { return dlog(encode(unit)); }

  /// Exponent vectors generating U_c = (1 + p^c) mod p^n, for 1 <= c <= n.
  /// U_0 is the whole group.
  const std::vector<std::vector<i64>>& filtration_generators(unsigned c) const;

 private:
  LocalQuadExt E_;
  unsigned level_;
  QuotientShape shape_;
  i64 group_order_ = 1;
  std::vector<i64> orders_;
  std::vector<i64> gen_codes_;
  std::vector<std::int32_t> table_;  // code * rank + i; -1 marks non-units
  std::vector<std::vector<std::vector<i64>>> filtration_;
};

/// A finite-order character of E^x trivial on 1 + p^n, given by its values
/// exp(2 pi i r) on the presentation generators and on the uniformizer.
class MultChar {
 public:
  MultChar(std::shared_ptr<const UnitGroupPresentation> pres, std::vector<QmodZ> generator_exponents,
           QmodZ uniformizer_exponent);
  static MultChar trivial(std::shared_ptr<const UnitGroupPresentation> pres);

  const UnitGroupPresentation& presentation() const { return *pres_; }
  const std::shared_ptr<const UnitGroupPresentation>& presentation_ptr() const { return pres_; }
  const LocalQuadExt& ext() const { return pres_->ext(); }
  unsigned level() const { return pres_->level(); }
  const std::vector<QmodZ>& generator_exponents() const { return gens_; }
  const QmodZ& uniformizer_exponent() const { return unif_; }

  /// Order of the character (lcm of all exponent denominators).
  i64 order() const { return order_; }
  /// Order of the restriction to O_E^x.
  i64 unit_order() const { return unit_order_; }
  unsigned conductor() const { return conductor_; }
  /// lcm of the denominators: values lie in Q(zeta_N).
  u64 value_conductor() const { return static_cast<u64>(order_); }

  QmodZ exponent_on_code(i64 unit_code) const;
  QmodZ exponent_on_dlog(const std::vector<i64>& logs) const;
  QmodZ exponent(const EElement& a) const;
  Cyclotomic operator()(const EElement& a) const;

  MultChar inverse() const;
  friend MultChar operator*(const MultChar& a, const MultChar& b);
  friend bool operator==(const MultChar& a, const MultChar& b);

  /// Short stable label, e.g. "u[1/4]w1/2".
  std::string id() const;

 private:
  std::shared_ptr<const UnitGroupPresentation> pres_;
  std::vector<QmodZ> gens_;
  QmodZ unif_;
  i64 order_ = 1;
  i64 unit_order_ = 1;
  unsigned conductor_ = 0;
  std::shared_ptr<const std::vector<std::int32_t>> table_;  // exponent numerators over unit_order_
};

/// chi(x) = finite(x) * |x|_E^{s0}, with 2 s0 integral.
class ArithChar {
 public:
  explicit ArithChar(MultChar finite, const mpq_class& norm_exponent = mpq_class(1, 2));

  const MultChar& finite_part() const { return finite_; }
  const mpq_class& norm_exponent() const { return s0_; }
  const LocalQuadExt& ext() const { return finite_.ext(); }
  unsigned conductor() const { return finite_.conductor(); }

  ScaledCyclotomic operator()(const EElement& a) const;
  /// |x|_E^{s0} for v_E(x) = v.
  ScaledCyclotomic abs_power(long v) const;

 private:
  MultChar finite_;
  mpq_class s0_;
};

/// A finite-order character of Q_ell^x trivial on 1 + ell^level, given by
/// its values on the primitive root g of Z/ell^2 and on ell.
class FChar {
 public:
  FChar(u64 ell, unsigned level, QmodZ unit_exponent, QmodZ ell_exponent);

  u64 ell() const { return ell_; }
  unsigned level() const { return level_; }
  u64 primitive_root() const { return g_; }
  const QmodZ& unit_exponent() const { return unit_; }
  const QmodZ& ell_exponent() const { return ellexp_; }
  unsigned conductor() const { return conductor_; }
  i64 order() const;

  QmodZ exponent(const mpq_class& x) const;
  Cyclotomic operator()(const mpq_class& x) const;
  FChar inverse() const { return {ell_, level_, -unit_, -ellexp_}; }
  friend bool operator==(const FChar& a, const FChar& b) = default;

 private:
  u64 ell_;
  unsigned level_;
  u64 g_;
  QmodZ unit_;
  QmodZ ellexp_;
  unsigned conductor_ = 0;
};

/// Discrete log of a unit modulo ell^k to the base primitive_root_mod_square(ell).
i64 dlog_mod_prime_power(i64 unit, u64 ell, unsigned k);

/// Hilbert symbol (a, b)_ell for odd ell and nonzero rationals.
int hilbert_symbol(const mpq_class& a, const mpq_class& b, u64 ell);

/// The quadratic character tau_{E/F} as an exponent in {0, 1/2}.
QmodZ tau_exponent(const LocalQuadExt& E, const mpq_class& x);

/// chi restricted to Q_ell^x.
FChar restrict_to_F(const MultChar& chi);
/// chi|_{F^x} == tau_{E/F}, checked on the generators g, ell of F^x.
bool is_self_dual(const MultChar& chi);

/// Every chi* with chi*|_{F^x} = tau_{E/F} and conductor <= max_conductor,
/// presented at level max(max_conductor, 1).
std::vector<MultChar> enumerate_self_dual(const LocalQuadExt& E, unsigned max_conductor,
                                          u64 budget = 10'000'000);

struct MuLocal {
  PadicVal value;
  bool trivial = false;  // all values are 1
};

/// inf over x in E^x of v_p(chi(x) - 1). The values form the group generated
/// by chi of the unit generators and of the uniformizer; the filtration
/// 1 + p^t of the value field is a chain of subgroups, so the infimum is
/// attained on a generator.
MuLocal mu_p_local(const ArithChar& chi, const PrimeAbovePChoice& choice);

}  // namespace anticyc
