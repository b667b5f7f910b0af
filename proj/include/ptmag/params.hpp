#pragma once

// Model parameters for the driven cavity-magnon system.
//
// Everything inside the library is expressed with hbar = 1 and in units of
// the magnon linewidth kappa_m. Lab-frame quantities only appear here, at the
// conversion boundary.

#include <cmath>
#include <sstream>
#include <string>

#include "ptmag/errors.hpp"

namespace ptmag {

/// Rotating-frame parameters, all in units of kappa_m.
struct SystemParams {
  double delta_a = 0.0;      ///< cavity detuning omega_a - omega_d
  double delta_m = 0.0;      ///< magnon detuning omega_m - omega_d
  double kappa_a = 1.0;      ///< cavity rate; negative means gain
  double kappa_m = 1.0;      ///< magnon rate, always > 0
  double g = 0.0;            ///< cavity-magnon coupling
  double chi = 0.0;          ///< magnon Kerr coefficient
  double omega_d_amp = 0.0;  ///< magnon drive strength

  /// Balanced gain/loss at degenerate detunings.
  bool pt_configured(double tol = 0.0) const {
    return std::abs(delta_a - delta_m) <= tol && std::abs(kappa_a + kappa_m) <= tol;
  }

  void validate() const {
    const double fields[] = {delta_a, delta_m, kappa_a, kappa_m, g, chi, omega_d_amp};
    for (double v : fields) {
      if (!std::isfinite(v)) throw ParameterRangeError("SystemParams: non-finite field");
    }
    if (!(kappa_m > 0.0)) throw ParameterRangeError("SystemParams: kappa_m must be > 0");
    if (g < 0.0) throw ParameterRangeError("SystemParams: g must be >= 0");
    if (chi < 0.0) throw ParameterRangeError("SystemParams: chi must be >= 0");
    if (omega_d_amp < 0.0) throw ParameterRangeError("SystemParams: omega_d_amp must be >= 0");
  }

  std::string describe() const {
    std::ostringstream os;
    os.precision(6);
    os << "delta_a=" << delta_a << " delta_m=" << delta_m << " kappa_a=" << kappa_a
       << " kappa_m=" << kappa_m << " g=" << g << " chi=" << chi << " omega_d=" << omega_d_amp;
    return os.str();
  }

  friend bool operator==(const SystemParams&, const SystemParams&) = default;
};

/// Angular frequencies in the laboratory frame.
struct LabFrameParams {
  double omega_a = 1.0;
  double omega_m = 1.0;
  double omega_d = 1.0;

  void validate() const {
    if (!(omega_a > 0.0) || !(omega_m > 0.0) || !(omega_d > 0.0) || !std::isfinite(omega_a) ||
        !std::isfinite(omega_m) || !std::isfinite(omega_d)) {
      throw ParameterRangeError("LabFrameParams: frequencies must be finite and > 0");
    }
  }
};

/// Rates and couplings in lab units, before normalization.
struct LabRates {
  double kappa_a = 0.0;
  double kappa_m = 1.0;
  double g = 0.0;
  double chi = 0.0;
  double omega_d_amp = 0.0;
};

/// Material constants entering g, chi and Omega.
struct PhysicalConstants {
  double g_e = 2.0;     ///< Lande factor
  double mu_B = 1.0;    ///< Bohr magneton
  double mu_0 = 1.0;    ///< vacuum permeability
  double chi_an = 1.0;  ///< first-order anisotropy constant
  double M = 1.0;       ///< saturation magnetization
  double V_m = 1.0;     ///< sphere volume
  long long N = 1;      ///< number of unit cells
  double s = 2.5;       ///< spin per unit cell
  double B_0 = 0.0;     ///< static bias field
  double B_d = 0.0;     ///< drive field amplitude
  double omega_ai = 0.0;  ///< anisotropy frequency offset; stored, not used by any formula

  double gamma() const { return g_e * mu_B; }

  void validate() const {
    const double positive[] = {g_e, mu_B, mu_0, chi_an, M, V_m, s};
    for (double v : positive) {
      if (!std::isfinite(v)) throw ParameterRangeError("PhysicalConstants: non-finite field");
    }
    if (!(g_e > 0.0) || !(mu_B > 0.0) || !(mu_0 > 0.0) || !(s > 0.0))
      throw ParameterRangeError("PhysicalConstants: g_e, mu_B, mu_0, s must be > 0");
    if (chi_an < 0.0) throw ParameterRangeError("PhysicalConstants: chi_an must be >= 0");
    if (N <= 0) throw ParameterRangeError("PhysicalConstants: N must be > 0");
    if (!std::isfinite(B_0) || !std::isfinite(B_d) || !std::isfinite(omega_ai) || B_0 < 0.0 ||
        B_d < 0.0)
      throw ParameterRangeError("PhysicalConstants: B_0, B_d must be finite and >= 0");
  }
};

namespace detail {
inline double checked(double v, const char* what) {
  if (!std::isfinite(v)) throw ParameterRangeError(std::string(what) + ": non-finite result");
  return v;
}
}  // namespace detail

/// Cavity-magnon coupling g = (gamma B_0 / 2) sqrt(2 s N).
inline double derive_coupling(const PhysicalConstants& pc) {
  pc.validate();
  return detail::checked(0.5 * pc.gamma() * pc.B_0 * std::sqrt(2.0 * pc.s * double(pc.N)),
                         "derive_coupling");
}

/// Magnon Kerr coefficient chi = mu_0 chi_an gamma^2 / (M^2 V_m).
inline double derive_kerr(const PhysicalConstants& pc) {
  if (!(pc.M > 0.0) || !(pc.V_m > 0.0))
    throw DomainError("derive_kerr: M and V_m must be > 0");
  pc.validate();
  const double gam = pc.gamma();
  return detail::checked(pc.mu_0 * pc.chi_an * gam * gam / (pc.M * pc.M * pc.V_m), "derive_kerr");
}

/// Drive strength Omega = (eta / 2) B_d with eta = (gamma / 2) sqrt(5 N).
inline double derive_drive(const PhysicalConstants& pc) {
  pc.validate();
  const double eta = 0.5 * pc.gamma() * std::sqrt(5.0 * double(pc.N));
  return detail::checked(0.5 * eta * pc.B_d, "derive_drive");
}

/// Rotating-frame parameters in units of `unit` (the value of kappa_m in lab units).
inline SystemParams normalize(const LabFrameParams& lab, const LabRates& rates, double unit) {
  if (!(unit > 0.0) || !std::isfinite(unit)) throw DomainError("normalize: unit must be > 0");
  lab.validate();
  SystemParams p;
  p.delta_a = (lab.omega_a - lab.omega_d) / unit;
  p.delta_m = (lab.omega_m - lab.omega_d) / unit;
  p.kappa_a = rates.kappa_a / unit;
  p.kappa_m = rates.kappa_m / unit;
  p.g = rates.g / unit;
  p.chi = rates.chi / unit;
  p.omega_d_amp = rates.omega_d_amp / unit;
  p.validate();
  return p;
}

inline SystemParams normalize(const LabFrameParams& lab, const LabRates& rates) {
  return normalize(lab, rates, rates.kappa_m);
}

/// Re-express already rotating-frame parameters in units of `unit`.
inline SystemParams normalize(const SystemParams& p, double unit) {
  if (!(unit > 0.0) || !std::isfinite(unit)) throw DomainError("normalize: unit must be > 0");
  SystemParams q{p.delta_a / unit, p.delta_m / unit, p.kappa_a / unit, p.kappa_m / unit,
                 p.g / unit,       p.chi / unit,     p.omega_d_amp / unit};
  q.validate();
  return q;
}

inline SystemParams normalize(const SystemParams& p) { return normalize(p, p.kappa_m); }

}  // namespace ptmag
