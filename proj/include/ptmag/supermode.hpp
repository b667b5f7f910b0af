#pragma once

// Effective Kerr coefficients of the two supermodes.
//
// With (A, M)^T = Q^{-1} (a, m)^T the magnon operator is m = Q21 A + Q22 M,
// and chi (m^dag m)^2 contains chi1 (A^dag A)^2 + chi2 (M^dag M)^2 +
// chi3 A^dag A M^dag M with
//
//   chi1 = chi |Q21|^4,  chi2 = chi |Q22|^4,  chi3 = 4 chi |Q21|^2 |Q22|^2.
//
// The coefficients depend on how the columns of Q are scaled. Here each
// supermode operator is a unit-norm combination of a and m (rows of Q^{-1}
// have unit norm). In the unbroken PT phase this reproduces the
// chi g^4 / (g^2 - kappa_a^2)^2 growth toward the exceptional point; unit-norm
// columns would instead give |Q21| = 1/sqrt(2) throughout that phase. Only
// trends and ratios carry physical meaning.

#include <Eigen/Dense>

#include <cmath>
#include <string>

#include "ptmag/errors.hpp"
#include "ptmag/params.hpp"
#include "ptmag/spectrum.hpp"

namespace ptmag {

struct SupermodeTransform {
  Eigen::Matrix2cd q;      ///< P Q = Q D, columns scaled so rows of q_inv are unit-norm
  Eigen::Matrix2cd q_inv;
  Eigen::Matrix2cd d;
  double condition = 1.0;  ///< condition number of the unit-column eigenvector matrix
};

/// Condition number above which the transform is reported as ill-conditioned.
inline constexpr double kIllConditioned = 1e8;

inline SupermodeTransform supermode_transform(const SystemParams& p) {
  const SpectrumResult s = eigenvalues(p);
  if (s.defective)
    throw DegenerateTransformError("supermode_transform: eigenvectors coalesce at " + p.describe());
  SupermodeTransform t;
  t.d = s.d;
  t.condition = s.condition;
  const Eigen::Matrix2cd inv = s.q.inverse();
  if (!inv.allFinite())
    throw DegenerateTransformError("supermode_transform: Q is not invertible at " + p.describe());
  Eigen::Vector2d rows(inv.row(0).norm(), inv.row(1).norm());
  t.q = s.q * rows.cast<cplx>().asDiagonal();
  t.q_inv = rows.cwiseInverse().cast<cplx>().asDiagonal() * inv;
  return t;
}

struct EffectiveKerr {
  double chi1 = 0.0;
  double chi2 = 0.0;
  double chi3 = 0.0;
  double q21_abs = 0.0;
  double q22_abs = 0.0;
  double condition = 1.0;
  bool ill_conditioned = false;
};

inline EffectiveKerr effective_kerr(const SystemParams& p) {
  p.validate();
  const SupermodeTransform t = supermode_transform(p);
  EffectiveKerr k;
  k.q21_abs = std::abs(t.q(1, 0));
  k.q22_abs = std::abs(t.q(1, 1));
  const double q21_2 = k.q21_abs * k.q21_abs;
  const double q22_2 = k.q22_abs * k.q22_abs;
  k.chi1 = p.chi * q21_2 * q21_2;
  k.chi2 = p.chi * q22_2 * q22_2;
  k.chi3 = 4.0 * p.chi * q21_2 * q22_2;
  k.condition = t.condition;
  k.ill_conditioned = !(t.condition < kIllConditioned);
  return k;
}

struct ScalingPrediction {
  double epsilon = 0.0;
  double value = 0.0;
};

/// chi g^4 / (g^2 - kappa_a^2 + epsilon^2)^2, a proportionality law with no
/// absolute normalization. epsilon has no closed form and is never defaulted.
inline ScalingPrediction kerr_scaling(const SystemParams& p, double epsilon) {
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon))
    throw ParameterRangeError("kerr_scaling: epsilon must be >= 0");
  const double g2 = p.g * p.g;
  const double base = g2 - p.kappa_a * p.kappa_a + epsilon * epsilon;
  if (base == 0.0) {
    if (g2 == 0.0) return {epsilon, 0.0};
    throw SingularityError("kerr_scaling: pole at g^2 = kappa_a^2 - epsilon^2");
  }
  return {epsilon, p.chi * g2 * g2 / (base * base)};
}

}  // namespace ptmag
