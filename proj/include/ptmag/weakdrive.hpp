#pragma once

// Weak-drive steady state on the subspace with at most two excitations per
// mode. The state is written as sum C_mn |m n> with C_00 pinned to 1; the
// remaining eight amplitudes satisfy (H_eff c)_k = 0 for every k != |00>,
// where H_eff is the dissipative rotating-frame Hamiltonian restricted to the
// nine-state box. The system is generated from matrix elements rather than
// transcribed by hand.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "ptmag/errors.hpp"
#include "ptmag/fock.hpp"
#include "ptmag/params.hpp"

namespace ptmag {

struct AmplitudeVector {
  std::array<cplx, 9> c{};             ///< c[3 * m + n] = C_mn
  std::vector<std::string> warnings;   ///< weak-drive validity warnings

  cplx& operator()(int m, int n) { return c.at(3 * m + n); }
  cplx operator()(int m, int n) const { return c.at(3 * m + n); }

  double norm_squared() const {
    double s = 0.0;
    for (cplx z : c) s += std::norm(z);
    return s;
  }
};

enum class G2Variant { amplitude_sum, probability };

inline std::string to_string(G2Variant v) {
  return v == G2Variant::amplitude_sum ? "amplitude_sum" : "probability";
}

struct G2Result {
  double value = 0.0;
  G2Variant variant = G2Variant::amplitude_sum;
  Mode mode = Mode::magnon;
};

/// The 8x8 system M c = -b for the non-vacuum amplitudes, ordered as the
/// magnon-major basis with |00> removed: 01, 02, 10, 11, 12, 20, 21, 22.
struct WeakDriveSystem {
  Eigen::Matrix<cplx, 8, 8> matrix;
  Eigen::Matrix<cplx, 8, 1> source;
  std::array<FockState, 8> states;
};

inline WeakDriveSystem weak_drive_system(const SystemParams& p) {
  const FockSpace box(2, 2);
  const Eigen::MatrixXcd h = build_hamiltonian(p, box, Frame::rotating, true).entries;
  WeakDriveSystem sys;
  for (int r = 1; r < 9; ++r) {
    sys.states[r - 1] = box.state(r);
    sys.source(r - 1) = h(r, 0);
    for (int col = 1; col < 9; ++col) sys.matrix(r - 1, col - 1) = h(r, col);
  }
  return sys;
}

inline AmplitudeVector steady_amplitudes(const SystemParams& p) {
  p.validate();
  if (!(p.omega_d_amp > 0.0))
    throw ParameterRangeError("steady_amplitudes: omega_d_amp must be > 0");

  const WeakDriveSystem sys = weak_drive_system(p);
  // A zero eigenvalue of the drive-free part is a linear resonance: the drive
  // then lifts it only at first order and the amplitudes scale as 1/Omega_d.
  SystemParams undriven = p;
  undriven.omega_d_amp = 0.0;
  for (const auto& m : {weak_drive_system(undriven).matrix, sys.matrix}) {
    Eigen::JacobiSVD<Eigen::Matrix<cplx, 8, 8>> svd(m);
    const auto sv = svd.singularValues();
    if (!(sv(7) > 1e-12 * sv(0)))
      throw SingularityError("steady_amplitudes: singular amplitude system (sigma_min/sigma_max = " +
                             std::to_string(sv(7) / sv(0)) + ") at " + p.describe());
  }

  const Eigen::Matrix<cplx, 8, 1> rhs = -sys.source;
  const Eigen::Matrix<cplx, 8, 1> x = sys.matrix.fullPivLu().solve(rhs);
  const double residual = (sys.matrix * x - rhs).norm();
  if (!(residual < 1e-10 * rhs.norm()))
    throw SingularityError("steady_amplitudes: residual " + std::to_string(residual) +
                           " too large at " + p.describe());

  AmplitudeVector amps;
  amps.c[0] = 1.0;
  for (int k = 0; k < 8; ++k) amps.c[k + 1] = x(k);

  const double scale = std::max({p.chi, p.g, std::abs(p.delta_a), std::abs(p.delta_m), p.kappa_m});
  if (p.omega_d_amp > 0.1 * scale)
    amps.warnings.push_back("omega_d is not small against chi, g, |delta|, kappa_m");
  for (int k = 1; k < 9; ++k) {
    if (std::abs(amps.c[k]) > 0.3) {
      amps.warnings.push_back("amplitude |C| > 0.3: weak-drive truncation unreliable");
      break;
    }
  }
  return amps;
}

/// Reduced g2(0) from the truncated amplitudes.
///
/// amplitude_sum:  2|C20+C21+C22|^2 / (|C10+C11|^2 + 2|C20+C21+C22|^2)^2
/// probability:    2 P2 / (P1 + 2 P2)^2, P_k the normalized probability of k quanta
///
/// Photon formulas swap the two indices.
inline G2Result g2_analytic(const AmplitudeVector& amps, Mode mode,
                            G2Variant variant = G2Variant::amplitude_sum) {
  for (cplx z : amps.c)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw UndefinedStatisticsError("g2_analytic: non-finite amplitudes");
  auto amp = [&](int k, int j) { return mode == Mode::magnon ? amps(k, j) : amps(j, k); };

  double one = 0.0, two = 0.0;
  if (variant == G2Variant::amplitude_sum) {
    one = std::norm(amp(1, 0) + amp(1, 1));
    two = std::norm(amp(2, 0) + amp(2, 1) + amp(2, 2));
  } else {
    const double total = amps.norm_squared();
    for (int j = 0; j < 3; ++j) {
      one += std::norm(amp(1, j));
      two += std::norm(amp(2, j));
    }
    one /= total;
    two /= total;
  }
  const double mean = one + 2.0 * two;
  if (!(mean > 0.0))
    throw UndefinedStatisticsError("g2_analytic: no " + to_string(mode) + " population");
  return {2.0 * two / (mean * mean), variant, mode};
}

}  // namespace ptmag
