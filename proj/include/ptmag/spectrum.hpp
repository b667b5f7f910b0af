#pragma once

// Two-mode non-Hermitian coupled-mode analysis: eigenfrequencies, the
// diagonalizing transform Q with P Q = Q D, exceptional points and the
// PT-phase label.
//
// Matrix convention (photon first):
//
//   P = [ omega_a - i kappa_a      g            ]
//       [ g                        omega_m - i kappa_m ]
//
// so row 2 of Q holds the magnon component of each eigenvector.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "ptmag/detail/parallel.hpp"
#include "ptmag/errors.hpp"
#include "ptmag/params.hpp"

namespace ptmag {

using cplx = std::complex<double>;

/// Default tolerance for eigenvalue coalescence, in kappa_m units.
inline constexpr double kDegeneracyTol = 1e-9;

struct CoupledModeMatrix {
  cplx p11;
  cplx p12;
  cplx p21;
  cplx p22;

  static CoupledModeMatrix from_frequencies(double omega_a, double kappa_a, double omega_m,
                                            double kappa_m, double g) {
    return {cplx(omega_a, -kappa_a), cplx(g, 0.0), cplx(g, 0.0), cplx(omega_m, -kappa_m)};
  }

  /// Rotating-frame matrix: detunings take the place of the bare frequencies.
  static CoupledModeMatrix from_params(const SystemParams& p) {
    return from_frequencies(p.delta_a, p.kappa_a, p.delta_m, p.kappa_m, p.g);
  }

  Eigen::Matrix2cd matrix() const {
    Eigen::Matrix2cd m;
    m << p11, p12, p21, p22;
    return m;
  }

  cplx trace() const { return p11 + p22; }
  cplx determinant() const { return p11 * p22 - p12 * p21; }

  /// 4 g^2 - [i(omega_a - omega_m) + (kappa_a - kappa_m)]^2, written in matrix entries.
  cplx discriminant() const {
    const cplx diff = p11 - p22;
    return 4.0 * p12 * p21 + diff * diff;
  }

  double scale() const {
    return std::max({1.0, std::abs(p11), std::abs(p12), std::abs(p21), std::abs(p22)});
  }

  bool finite() const {
    for (cplx z : {p11, p12, p21, p22})
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
  }
};

struct SpectrumResult {
  cplx omega1;
  cplx omega2;
  Eigen::Matrix2cd q;  ///< columns are unit-norm eigenvectors
  Eigen::Matrix2cd d;  ///< diag(omega1, omega2)
  cplx discriminant;
  bool defective = false;     ///< eigenvectors parallel: Q is not invertible
  double condition = 1.0;     ///< 2-norm condition number of Q
};

enum class PhaseLabel { unbroken, exceptional, broken };

inline std::string to_string(PhaseLabel p) {
  switch (p) {
    case PhaseLabel::unbroken: return "unbroken";
    case PhaseLabel::exceptional: return "exceptional";
    case PhaseLabel::broken: return "broken";
  }
  return "?";
}

namespace detail {

// sqrt branch with Re >= 0; on the imaginary axis take Im >= 0.
inline cplx branch_sqrt(cplx z) {
  cplx r = std::sqrt(z);
  if (r.real() < 0.0 || (r.real() == 0.0 && r.imag() < 0.0)) r = -r;
  return r;
}

// Unit eigenvector of P for eigenvalue lambda, first nonzero component real positive.
inline Eigen::Vector2cd eigenvector(const CoupledModeMatrix& m, cplx lambda, int fallback) {
  Eigen::Vector2cd a(m.p12, lambda - m.p11);
  Eigen::Vector2cd b(lambda - m.p22, m.p21);
  Eigen::Vector2cd v = a.norm() >= b.norm() ? a : b;
  if (v.norm() <= 1e-300 || v.norm() <= 1e-15 * m.scale()) {
    // P - lambda I vanishes: P is a multiple of the identity.
    v = Eigen::Vector2cd::Zero();
    v(fallback) = 1.0;
  }
  v.normalize();
  const int lead = std::abs(v(0)) > 1e-14 ? 0 : 1;
  v *= std::conj(v(lead)) / std::abs(v(lead));
  return v;
}

}  // namespace detail

inline SpectrumResult eigenvalues(const CoupledModeMatrix& m) {
  if (!m.finite()) throw ParameterRangeError("eigenvalues: non-finite matrix entries");
  SpectrumResult r;
  r.discriminant = m.discriminant();
  const cplx half_trace = 0.5 * m.trace();
  const cplx root = 0.5 * detail::branch_sqrt(r.discriminant);
  r.omega1 = half_trace + root;
  r.omega2 = half_trace - root;
  r.q.col(0) = detail::eigenvector(m, r.omega1, 0);
  r.q.col(1) = detail::eigenvector(m, r.omega2, 1);
  r.d = Eigen::Matrix2cd::Zero();
  r.d(0, 0) = r.omega1;
  r.d(1, 1) = r.omega2;

  const double overlap = std::abs(r.q.col(0).dot(r.q.col(1)));
  r.defective = std::abs(r.omega1 - r.omega2) <= kDegeneracyTol * m.scale() && overlap >= 1.0 - 1e-9;
  Eigen::JacobiSVD<Eigen::Matrix2cd> svd(r.q);
  const auto sv = svd.singularValues();
  r.condition = sv(1) > 0.0 ? sv(0) / sv(1) : std::numeric_limits<double>::infinity();
  return r;
}

inline SpectrumResult eigenvalues(const SystemParams& p) {
  return eigenvalues(CoupledModeMatrix::from_params(p));
}

inline PhaseLabel classify_phase(const CoupledModeMatrix& m, double tol = kDegeneracyTol) {
  if (!(tol > 0.0)) throw ParameterRangeError("classify_phase: tol must be > 0");
  const SpectrumResult s = eigenvalues(m);
  if (std::abs(s.omega1 - s.omega2) < tol) return PhaseLabel::exceptional;
  if (std::abs(s.omega1.imag()) <= tol && std::abs(s.omega2.imag()) <= tol)
    return PhaseLabel::unbroken;
  return PhaseLabel::broken;
}

/// Parameter varied by find_ep and spectrum_sweep.
/// `detuning` is the cavity-magnon mismatch: delta_a = delta_m + value.
enum class SpectrumVariable { coupling, kappa_a, detuning };

inline std::string to_string(SpectrumVariable v) {
  switch (v) {
    case SpectrumVariable::coupling: return "g";
    case SpectrumVariable::kappa_a: return "kappa_a";
    case SpectrumVariable::detuning: return "delta";
  }
  return "?";
}

inline SystemParams with_value(SystemParams p, SpectrumVariable v, double x) {
  switch (v) {
    case SpectrumVariable::coupling: p.g = x; break;
    case SpectrumVariable::kappa_a: p.kappa_a = x; break;
    case SpectrumVariable::detuning: p.delta_a = p.delta_m + x; break;
  }
  return p;
}

/// Locates the exceptional point along `var` inside [lo, hi].
///
/// Coarse scan of |discriminant|, golden-section refinement of the minimum,
/// then Gauss-Newton polishing of the complex discriminant as a function of
/// the real free variable. Throws NotFoundError unless the two eigenvalues
/// coalesce to within `tol` at the result.
inline double find_ep(const SystemParams& params, SpectrumVariable var, double lo, double hi,
                      double tol = 1e-6) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi))
    throw ParameterRangeError("find_ep: bracket must satisfy lo < hi");
  auto disc = [&](double x) {
    return CoupledModeMatrix::from_params(with_value(params, var, x)).discriminant();
  };
  auto f = [&](double x) { return std::abs(disc(x)); };

  constexpr int kScan = 4001;
  const double step = (hi - lo) / (kScan - 1);
  int best = 0;
  double best_val = f(lo);
  for (int i = 1; i < kScan; ++i) {
    const double v = f(lo + step * i);
    if (v < best_val) {
      best_val = v;
      best = i;
    }
  }
  double a = lo + step * std::max(0, best - 1);
  double b = lo + step * std::min(kScan - 1, best + 1);

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 200 && (b - a) > 1e-15 * std::max(1.0, std::abs(a)); ++it) {
    if (fc < fd) {
      b = d; d = c; fd = fc;
      c = b - inv_phi * (b - a); fc = f(c);
    } else {
      a = c; c = d; fc = fd;
      d = a + inv_phi * (b - a); fd = f(d);
    }
  }
  double x = fc < fd ? c : d;

  // The discriminant is quadratic in every free variable, so a central
  // difference gives its derivative up to rounding.
  const double h = 1e-4 * std::max(1.0, std::abs(x));
  for (int it = 0; it < 60; ++it) {
    const cplx dv = disc(x);
    if (dv == cplx(0.0)) break;
    const cplx slope = (disc(x + h) - disc(x - h)) / (2.0 * h);
    const double denom = std::norm(slope);
    if (denom == 0.0) break;
    const double next = x - (std::conj(slope) * dv).real() / denom;
    if (!(next >= lo && next <= hi) || !(std::abs(disc(next)) < std::abs(dv))) break;
    x = next;
  }

  const double split = std::sqrt(std::abs(disc(x)));
  if (!(split <= tol))
    throw NotFoundError("find_ep: no exceptional point for " + to_string(var) + " in [" +
                        std::to_string(lo) + ", " + std::to_string(hi) + "]; min |w1-w2| = " +
                        std::to_string(split));
  return x;
}

struct SpectrumRow {
  double value;
  cplx omega1;
  cplx omega2;
};

/// Eigenvalues along a sorted grid, with branches paired by continuation
/// (linear extrapolation from the previous two points) rather than by the
/// branch of the square root.
inline std::vector<SpectrumRow> spectrum_sweep(const SystemParams& params, SpectrumVariable var,
                                               std::span<const double> grid, unsigned jobs = 1) {
  if (grid.empty()) throw ParameterRangeError("spectrum_sweep: empty grid");
  if (!std::is_sorted(grid.begin(), grid.end()))
    throw ParameterRangeError("spectrum_sweep: grid must be sorted");
  std::vector<SpectrumRow> rows(grid.size());
  detail::parallel_for(grid.size(), jobs, [&](std::size_t i) {
    const SpectrumResult s = eigenvalues(with_value(params, var, grid[i]));
    rows[i] = {grid[i], s.omega1, s.omega2};
  });
  for (std::size_t i = 1; i < rows.size(); ++i) {
    cplx p1 = rows[i - 1].omega1, p2 = rows[i - 1].omega2;
    if (i >= 2 && grid[i - 1] != grid[i - 2]) {
      const double t = (grid[i] - grid[i - 1]) / (grid[i - 1] - grid[i - 2]);
      p1 += t * (rows[i - 1].omega1 - rows[i - 2].omega1);
      p2 += t * (rows[i - 1].omega2 - rows[i - 2].omega2);
    }
    const double keep = std::abs(rows[i].omega1 - p1) + std::abs(rows[i].omega2 - p2);
    const double swap = std::abs(rows[i].omega2 - p1) + std::abs(rows[i].omega1 - p2);
    if (swap < keep) std::swap(rows[i].omega1, rows[i].omega2);
  }
  return rows;
}

}  // namespace ptmag
