#pragma once

#include <optional>
#include <string>

#include <gmpxx.h>

#include "anticyc/characters.hpp"
#include "anticyc/cyclotomic.hpp"
#include "anticyc/local_field.hpp"

namespace anticyc {

/// An unramified place v not dividing the conductor: lambda_+ is unramified
/// with lambda_+(ell) = exp(2 pi i r) * ell^-s, and c_v has valuation c.
struct UnramifiedRow {
  u64 ell = 3;
  QmodZ lambda_exponent;
  mpq_class lambda_norm = 0;  // s, with 2s integral
  long c_valuation = 0;
};

ScaledCyclotomic lambda_plus_at_uniformizer(const UnramifiedRow& row);

/// sum_{i=0}^{v(beta c)} lambda_+(ell^i c) |ell|^-i, zero unless beta c is integral.
ScaledCyclotomic whittaker_unramified(const UnramifiedRow& row, const mpq_class& beta);
/// lambda_w(beta) 1_{O^x}(beta).
ScaledCyclotomic whittaker_split(const FChar& lambda_w, const mpq_class& beta);
/// L(0, chi) A_beta(chi) psi(-t/2); t = 0 for odd ell.
ScaledCyclotomic whittaker_nonsplit(const ArithChar& chi, const mpq_class& beta, PsiSign sign = PsiSign::standard);
/// lambda_w(beta) 1_{u(1 + p Z_p)}(beta) for lambda_w a character of Q_p^x.
ScaledCyclotomic whittaker_p_torsion(const FChar& lambda_w, i64 u, const mpq_class& beta);

enum class PlaceTag { unramified_good, split_conductor, nonsplit, p_adic_torsion };
std::string to_string(PlaceTag tag);

struct PlaceRole {
  PlaceTag tag = PlaceTag::unramified_good;
  std::optional<UnramifiedRow> unramified;
  std::optional<FChar> lambda;
  std::optional<ArithChar> chi;
  i64 u = 1;
};

ScaledCyclotomic local_whittaker(const PlaceRole& role, const mpq_class& beta, PsiSign sign = PsiSign::standard);

/// (1 - lambda(varpi) q^-s)^-1 for unramified lambda, 1 otherwise. Throws PoleError.
ScaledCyclotomic local_L_factor(const ArithChar& lambda, const mpq_class& s);
ScaledCyclotomic local_L_factor(const FChar& lambda, const mpq_class& s);

/// Eul(lambda_w) = lambda_w(2 vartheta_w) L(0, lambda_w) / (eps(0, lambda_w, psi) L(1, lambda_w^-1)).
ScaledCyclotomic modified_euler(const FChar& lambda_w, const mpq_class& two_vartheta = -1,
                                PsiSign sign = PsiSign::standard);

}  // namespace anticyc
