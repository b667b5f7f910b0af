#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "ptmag/lindblad.hpp"
#include "ptmag/weakdrive.hpp"

using namespace ptmag;

namespace {

SystemParams lossy(double chi = 0.1, double omega = 0.01) {
  return {0.0, 0.0, 1.0, 1.0, 1.0, chi, omega};
}

// Order of the unknowns in WeakDriveSystem.
enum { k01, k02, k10, k11, k12, k20, k21, k22 };

// The eight amplitude equations written out term by term (first index
// magnons). Returns the coefficient matrix; the source is Omega in the C10 row.
Eigen::Matrix<cplx, 8, 8> hand_system(const SystemParams& p, double c12_c22) {
  const cplx a(p.delta_a, -p.kappa_a), m(p.delta_m, -p.kappa_m);
  const double g = p.g, w = p.omega_d_amp, x = p.chi, r2 = std::sqrt(2.0);
  Eigen::Matrix<cplx, 8, 8> s = Eigen::Matrix<cplx, 8, 8>::Zero();
  s(k10, k10) = m + x;           s(k10, k01) = g;            s(k10, k20) = w * r2;
  s(k01, k01) = a;               s(k01, k10) = g;            s(k01, k11) = w;
  s(k11, k11) = a + m + x;       s(k11, k20) = r2 * g;       s(k11, k02) = r2 * g;
  s(k11, k21) = w * r2;          s(k11, k01) = w;
  s(k20, k20) = 2.0 * m + 4 * x; s(k20, k11) = r2 * g;       s(k20, k10) = r2 * w;
  s(k02, k02) = 2.0 * a;         s(k02, k11) = g * r2;       s(k02, k12) = w;
  s(k12, k12) = m + 2.0 * a + x; s(k12, k21) = 2 * g;        s(k12, k22) = c12_c22 * w;
  s(k12, k02) = w;
  s(k21, k21) = 2.0 * m + a + 4 * x; s(k21, k12) = 2 * g;    s(k21, k11) = r2 * w;
  s(k22, k22) = 2.0 * a + 2.0 * m + 4 * x;                   s(k22, k12) = w * r2;
  return s;
}

}  // namespace

TEST(WeakDrive, SystemMatchesHandWrittenEquations) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 50; ++trial) {
    SystemParams p{u(rng), u(rng), u(rng), 1.0, std::abs(u(rng)), std::abs(u(rng)), 0.1 + std::abs(u(rng))};
    const WeakDriveSystem sys = weak_drive_system(p);
    const auto ref = hand_system(p, std::sqrt(2.0));
    EXPECT_LT((sys.matrix - ref).cwiseAbs().maxCoeff(), 1e-14);
    for (int k = 0; k < 8; ++k)
      EXPECT_EQ(sys.source(k), k == k10 ? cplx(p.omega_d_amp) : cplx(0.0));
  }
}

// <1,2| m |2,2> = sqrt(2): the only entry differing from a unit coefficient
// in the C12 row's C22 term.
TEST(WeakDrive, OnlyC12C22CoefficientCarriesSqrtTwo) {
  const SystemParams p{0.3, -0.2, -0.7, 1.0, 0.9, 0.4, 0.5};
  const WeakDriveSystem sys = weak_drive_system(p);
  const auto diff = (sys.matrix - hand_system(p, 1.0)).eval();
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      if (i == k12 && j == k22)
        EXPECT_NEAR(std::abs(diff(i, j) - (std::sqrt(2.0) - 1.0) * p.omega_d_amp), 0.0, 1e-15);
      else
        EXPECT_LT(std::abs(diff(i, j)), 1e-15);
    }
}

TEST(WeakDrive, StateOrder) {
  const WeakDriveSystem sys = weak_drive_system(lossy());
  EXPECT_EQ(sys.states[k01], (FockState{0, 1}));
  EXPECT_EQ(sys.states[k12], (FockState{1, 2}));
  EXPECT_EQ(sys.states[k22], (FockState{2, 2}));
}

// Uncoupled magnon: C20 = -sqrt(2) W C10 / (2 z + 4 chi) and
// C10 (z + chi - 2 W^2 / (2 z + 4 chi)) = -W with z = delta_m - i kappa_m.
TEST(WeakDrive, UncoupledClosedForm) {
  for (double delta : {-1.5, 0.0, 0.8}) {
    SystemParams p{0.2, delta, 1.0, 1.0, 0.0, 0.3, 0.05};
    const AmplitudeVector amps = steady_amplitudes(p);
    const cplx z(delta, -1.0);
    const cplx w = p.omega_d_amp;
    const cplx den = 2.0 * z + 4.0 * p.chi;
    const cplx c10 = -w / (z + p.chi - 2.0 * w * w / den);
    const cplx c20 = -std::sqrt(2.0) * w * c10 / den;
    EXPECT_NEAR(std::abs(amps(1, 0) - c10), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(amps(2, 0) - c20), 0.0, 1e-14);
    for (int m = 0; m < 3; ++m)
      for (int n = 1; n < 3; ++n) EXPECT_EQ(amps(m, n), cplx(0.0)) << m << n;
    EXPECT_EQ(amps(0, 0), cplx(1.0));
  }
}

TEST(WeakDrive, DriveScaling) {
  const SystemParams p = lossy(0.1, 1e-4);
  SystemParams half = p;
  half.omega_d_amp /= 2.0;
  const AmplitudeVector a = steady_amplitudes(p);
  const AmplitudeVector b = steady_amplitudes(half);
  for (auto [m, n] : {std::pair{1, 0}, {0, 1}}) EXPECT_NEAR(std::abs(b(m, n) / a(m, n)), 0.5, 1e-6);
  for (auto [m, n] : {std::pair{2, 0}, {1, 1}, {0, 2}}) EXPECT_NEAR(std::abs(b(m, n) / a(m, n)), 0.25, 1e-6);
}

TEST(WeakDrive, LinearLimitProbabilityVariant) {
  for (double ka : {0.5, 1.0, 2.0}) {
    SystemParams p = lossy(0.0);
    p.kappa_a = ka;
    const AmplitudeVector amps = steady_amplitudes(p);
    EXPECT_NEAR(g2_analytic(amps, Mode::magnon, G2Variant::probability).value, 1.0, 1e-3) << ka;
    EXPECT_NEAR(g2_analytic(amps, Mode::photon, G2Variant::probability).value, 1.0, 1e-3) << ka;
  }
}

// The amplitude-sum form mixes the vacuum-normalized amplitudes of different
// photon sectors; its deviation from 1 in the linear limit shrinks with the drive.
TEST(WeakDrive, LinearLimitAmplitudeSumDeviationIsFirstOrder) {
  SystemParams p = lossy(0.0, 0.01);
  const double d1 = std::abs(g2_analytic(steady_amplitudes(p), Mode::magnon).value - 1.0);
  p.omega_d_amp = 0.005;
  const double d2 = std::abs(g2_analytic(steady_amplitudes(p), Mode::magnon).value - 1.0);
  EXPECT_LT(d1, 2e-2);
  EXPECT_NEAR(d2 / d1, 0.5, 0.05);
}

TEST(WeakDrive, BlockadeAndUndefinedStatistics) {
  AmplitudeVector amps;
  amps(0, 0) = 1.0;
  amps(1, 0) = 0.01;
  EXPECT_EQ(g2_analytic(amps, Mode::magnon).value, 0.0);
  EXPECT_EQ(g2_analytic(amps, Mode::magnon, G2Variant::probability).value, 0.0);
  EXPECT_THROW(g2_analytic(amps, Mode::photon), UndefinedStatisticsError);
  amps(1, 0) = NAN;
  EXPECT_THROW(g2_analytic(amps, Mode::magnon), UndefinedStatisticsError);
}

TEST(WeakDrive, PhotonFormulaSwapsIndices) {
  AmplitudeVector amps;
  amps(0, 0) = 1.0;
  amps(0, 1) = 0.02;
  amps(1, 1) = cplx(0.001, 0.003);
  amps(0, 2) = 0.0002;
  amps(1, 2) = 0.0001;
  AmplitudeVector t;
  for (int m = 0; m < 3; ++m)
    for (int n = 0; n < 3; ++n) t(n, m) = amps(m, n);
  for (G2Variant v : {G2Variant::amplitude_sum, G2Variant::probability})
    EXPECT_DOUBLE_EQ(g2_analytic(amps, Mode::photon, v).value, g2_analytic(t, Mode::magnon, v).value);
}

TEST(WeakDrive, LinearExceptionalPointIsSingular) {
  const SystemParams p{0.0, 0.0, -1.0, 1.0, 1.0, 0.0, 0.01};
  EXPECT_THROW(steady_amplitudes(p), SingularityError);
}

TEST(WeakDrive, RejectsZeroDrive) {
  EXPECT_THROW(steady_amplitudes(lossy(0.1, 0.0)), ParameterRangeError);
}

TEST(WeakDrive, StrongDriveWarns) {
  EXPECT_TRUE(steady_amplitudes(lossy()).warnings.empty());
  EXPECT_FALSE(steady_amplitudes(lossy(0.1, 0.5)).warnings.empty());
}

// Embedding the truncated state in Fock space and evaluating the operator
// definition reproduces the probability variant.
TEST(WeakDrive, ProbabilityVariantEqualsOperatorG2OfTruncatedState) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  const FockSpace box(2, 2);
  for (int trial = 0; trial < 30; ++trial) {
    SystemParams p{u(rng), u(rng), 0.2 + std::abs(u(rng)), 1.0, std::abs(u(rng)), std::abs(u(rng)), 0.02};
    const AmplitudeVector amps = steady_amplitudes(p);
    Eigen::VectorXcd psi(9);
    for (int k = 0; k < 9; ++k) psi(k) = amps.c[k];
    const DensityMatrix rho = DensityMatrix::pure(box, psi);
    for (Mode mode : {Mode::magnon, Mode::photon}) {
      if (mode == Mode::photon && p.g < 1e-3) continue;
      const double ref = g2_numeric(rho, mode);
      EXPECT_NEAR(g2_analytic(amps, mode, G2Variant::probability).value, ref, 1e-9 * std::max(1.0, ref));
    }
  }
}
