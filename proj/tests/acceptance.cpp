// Acceptance checks. `acceptance <n>` runs criterion n (1..8), `acceptance`
// runs all of them. Each criterion prints one PASS/FAIL line followed by
// indented detail lines; the exit status is nonzero if any check fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "ptmag/cli/reproduce.hpp"
#include "ptmag/cli/sweep.hpp"
#include "ptmag/errors.hpp"
#include "ptmag/lindblad.hpp"
#include "ptmag/spectrum.hpp"
#include "ptmag/supermode.hpp"
#include "ptmag/weakdrive.hpp"

using namespace ptmag;
using namespace ptmag::cli;

namespace {

struct Report {
  bool ok = true;
  std::vector<std::string> lines;

  void check(bool cond, const std::string& what) {
    ok = ok && cond;
    lines.push_back(std::string(cond ? "ok   " : "FAIL ") + what);
  }
  void note(const std::string& what) { lines.push_back("info " + what); }
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Runs fn and records NaN plus the error text if it throws.
double attempt(Report& r, const std::string& tag, const std::function<double()>& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    r.note(tag + ": " + e.what());
    return std::nan("");
  }
}

double analytic(const SystemParams& p, Mode mode, G2Variant v = G2Variant::amplitude_sum) {
  return g2_analytic(steady_amplitudes(p), mode, v).value;
}

const FockSpace kSpace(5, 5);

SystemParams fig5(double kappa_a, double delta) { return {delta, delta, kappa_a, 1.0, 1.0, 0.1, 0.01}; }

// Stable preset curves and a coarse subset of their sweep points.
std::vector<SystemParams> stable_preset_points(int per_curve) {
  std::vector<SystemParams> out;
  for (const char* id : {"fig5", "fig6", "fig7"}) {
    for (const Curve& c : figure_preset(id).curves) {
      if (c.cfg.params.kappa_a < 0.0) continue;
      SweepSpec s = c.cfg.sweep;
      s.points = per_curve;
      for (double x : s.grid()) out.push_back(apply_sweep(c.cfg.params, s.variable, x));
    }
  }
  return out;
}

// 1. Poissonian limit without Kerr term.
Report poissonian_limit() {
  Report r;
  const auto t0 = std::chrono::steady_clock::now();
  for (double ka : {1.0, -1.0}) {
    const SystemParams p{0.0, 0.0, ka, 1.0, 1.0, 0.0, 0.01};
    for (Mode mode : {Mode::magnon, Mode::photon}) {
      const std::string tag = fmt("kappa_a=%+g %s", ka, to_string(mode).c_str());
      const double prob = attempt(r, tag + " analytic", [&] { return analytic(p, mode, G2Variant::probability); });
      const double sum = attempt(r, tag + " analytic", [&] { return analytic(p, mode); });
      r.note(fmt("%s analytic amplitude_sum g2 = %.6g", tag.c_str(), sum));
      r.check(std::abs(prob - 1.0) <= 1e-3, fmt("%s analytic (probability) g2 = %.6g", tag.c_str(), prob));
      const double num = attempt(r, tag + " lindblad", [&] {
        return g2_numeric(steady_state(build_liouvillian(p, kSpace)), mode);
      });
      r.check(std::abs(num - 1.0) <= 1e-3, fmt("%s lindblad g2 = %.6g", tag.c_str(), num));
      if (ka < 0.0) {
        const double alt = attempt(r, tag + " gain_dissipator", [&] {
          return g2_numeric(steady_state(build_liouvillian(p, kSpace, {GainModel::gain_dissipator})), mode);
        });
        r.note(fmt("%s lindblad (gain_dissipator model) g2 = %.6g", tag.c_str(), alt));
      }
    }
  }
  const double dt = seconds_since(t0);
  r.check(dt < 1.0, fmt("runtime %.3f s < 1 s", dt));
  return r;
}

// 2. Conventional blockade minimum on the lossy side.
Report conventional_baseline() {
  Report r;
  const auto t0 = std::chrono::steady_clock::now();
  SweepSpec s{SweepVariable::delta, -5.0, 5.0, 201};
  double best = INFINITY, at = std::nan("");
  for (double x : s.grid()) {
    const double v = attempt(r, fmt("delta=%g", x), [&] { return analytic(fig5(1.0, x), Mode::magnon); });
    if (v < best) best = v, at = x;
  }
  r.check(std::abs(best - 0.9) <= 0.05, fmt("min g2_m = %.6g (0.9 +- 0.05)", best));
  r.check(std::abs(at - 1.5) <= 0.5, fmt("at delta = %.4g (1.5 +- 0.5)", at));
  const double num = g2_numeric(steady_state(build_liouvillian(fig5(1.0, at), kSpace)), Mode::magnon);
  r.note(fmt("lindblad g2_m at that point = %.6g", num));
  const double dt = seconds_since(t0);
  r.check(dt < 10.0, fmt("runtime %.3f s < 10 s", dt));
  return r;
}

// 3. Simultaneous magnon and photon blockade with balanced gain.
Report pt_blockade() {
  Report r;
  const SystemParams p = fig5(-1.0, 0.0);
  const double m = attempt(r, "magnon", [&] { return analytic(p, Mode::magnon); });
  const double a = attempt(r, "photon", [&] { return analytic(p, Mode::photon); });
  r.check(m < 0.1, fmt("analytic g2_m(0) = %.6g < 0.1", m));
  r.check(a < 0.1, fmt("analytic g2_a(0) = %.6g < 0.1", a));
  const Liouvillian l = build_liouvillian(p, kSpace);
  const StabilityReport st = stability(l);
  r.note(fmt("lindblad: %s, leading eigenvalue real part %.4g", st.stable ? "stable" : "unstable", st.abscissa));
  const DensityMatrix formal = null_state(l);
  r.note(fmt("trace-one null vector: g2_m = %.6g, g2_a = %.6g, min eigenvalue %.3g",
             g2_numeric(formal, Mode::magnon), g2_numeric(formal, Mode::photon), formal.min_eigenvalue()));
  return r;
}

// 4. Analytic (probability variant) against Lindblad over the full sweep.
Report solver_agreement() {
  Report r;
  const auto t0 = std::chrono::steady_clock::now();
  int stable = 0, compared = 0;
  double worst = 0.0, worst_at = std::nan("");
  for (const Curve& c : figure_preset("fig5").curves) {
    ScenarioConfig cfg = c.cfg;
    cfg.g2_variant = G2Variant::probability;
    for (const PointResult& pt : sweep_points(cfg)) {
      if (pt.stable_flag != 1.0) continue;
      ++stable;
      for (auto [an, li] : {std::pair{pt.g2_m_analytic, pt.g2_m_lindblad}, std::pair{pt.g2_a_analytic, pt.g2_a_lindblad}}) {
        ++compared;
        const double rel = std::abs(an - li) / std::abs(li);
        if (!(rel <= worst)) worst = rel, worst_at = pt.value;
      }
    }
  }
  r.note(fmt("%d stable points, %d comparisons", stable, compared));
  r.check(stable > 0 && worst < 0.1, fmt("worst relative difference %.4g at delta = %g (< 0.1)", worst, worst_at));
  const double dt = seconds_since(t0);
  r.check(dt < 60.0, fmt("runtime %.3f s < 60 s", dt));
  return r;
}

// 5. Exceptional point of the balanced system.
Report spectrum_ep() {
  Report r;
  const auto t0 = std::chrono::steady_clock::now();
  const SystemParams base{0.0, 0.0, -1.0, 1.0, 1.0, 0.0, 0.0};
  const SpectrumResult at = eigenvalues(base);
  r.check(std::abs(at.omega1 - at.omega2) < 1e-10, fmt("|w1 - w2| at g = 1: %.3g", std::abs(at.omega1 - at.omega2)));
  double worst = 0.0;
  for (int i = 0; i <= 1990; ++i) {
    SystemParams p = base;
    p.g = 1.01 + 0.001 * i;
    const SpectrumResult s = eigenvalues(p);
    worst = std::max({worst, std::abs(s.omega1.imag()), std::abs(s.omega2.imag())});
  }
  r.check(worst < 1e-10, fmt("max |Im w| over g in [1.01, 3]: %.3g", worst));
  const double g_ep = find_ep(base, SpectrumVariable::coupling, 0.5, 3.0);
  r.check(std::abs(g_ep - 1.0) < 1e-8, fmt("find_ep: g = %.15g", g_ep));
  const double dt = seconds_since(t0);
  r.check(dt < 1.0, fmt("runtime %.3f s < 1 s", dt));
  return r;
}

// 6. Weak Kerr term near the exceptional point.
Report kerr_relaxation() {
  Report r;
  const auto t0 = std::chrono::steady_clock::now();
  const SystemParams gain{0.0, 0.0, -3.0, 1.0, 2.0, 0.05, 0.01};
  SystemParams loss = gain;
  loss.kappa_a = 3.0;
  const double g_gain = attempt(r, "kappa_a=-3", [&] { return analytic(gain, Mode::magnon); });
  const double g_loss = attempt(r, "kappa_a=+3", [&] { return analytic(loss, Mode::magnon); });
  r.check(2.0 * g_gain <= g_loss,
          fmt("g2_m(kappa_a=-3) = %.6g, g2_m(kappa_a=+3) = %.6g, ratio %.4g (>= 2)", g_gain, g_loss, g_loss / g_gain));
  r.note(fmt("probability variant: %.6g vs %.6g", analytic(gain, Mode::magnon, G2Variant::probability),
             analytic(loss, Mode::magnon, G2Variant::probability)));
  r.note(fmt("lindblad kappa_a=+3: g2_m = %.6g",
             g2_numeric(steady_state(build_liouvillian(loss, kSpace)), Mode::magnon)));
  r.note(fmt("lindblad kappa_a=-3: %s",
             stability(build_liouvillian(gain, kSpace)).stable ? "stable" : "no steady state (unstable)"));
  const double dt = seconds_since(t0);
  r.check(dt < 10.0, fmt("runtime %.3f s < 10 s", dt));
  return r;
}

// 7. Property suite.
Report properties() {
  Report r;
  std::mt19937_64 rng(20261017);
  std::uniform_real_distribution<double> u(-5.0, 5.0), pos(0.0, 5.0);

  double vieta = 0.0, kerr = 0.0;
  for (int i = 0; i < 2000; ++i) {
    SystemParams p{u(rng), u(rng), u(rng), 0.1 + pos(rng), pos(rng), pos(rng), 0.0};
    const CoupledModeMatrix m = CoupledModeMatrix::from_params(p);
    const SpectrumResult s = eigenvalues(m);
    const double sc = m.scale();
    vieta = std::max({vieta, std::abs(s.omega1 + s.omega2 - m.trace()) / sc,
                      std::abs(s.omega1 * s.omega2 - m.determinant()) / (sc * sc)});
    try {
      const EffectiveKerr k = effective_kerr(p);
      const double lhs = k.chi3 * k.chi3, rhs = 16.0 * k.chi1 * k.chi2;
      if (rhs > 0.0) kerr = std::max(kerr, std::abs(lhs - rhs) / rhs);
    } catch (const DegenerateTransformError&) {
    }
  }
  r.check(vieta < 1e-12, fmt("Vieta identities, max scaled residual %.3g", vieta));
  r.check(kerr < 1e-12, fmt("chi3^2 = 16 chi1 chi2, max relative residual %.3g", kerr));

  const auto points = stable_preset_points(21);
  double trace_err = 0.0, herm = 0.0, min_eig = 0.0, residual = 0.0, drift = 0.0, halving = 0.0;
  int used = 0;
  for (const SystemParams& p : points) {
    const DensityMatrix rho = steady_state(build_liouvillian(p, kSpace));
    trace_err = std::max(trace_err, std::abs(rho.trace() - 1.0));
    herm = std::max(herm, rho.hermiticity_error());
    min_eig = std::min(min_eig, rho.min_eigenvalue());
    residual = std::max(residual, build_liouvillian(p, kSpace).apply(rho).rho.cwiseAbs().maxCoeff());
    const DensityMatrix small = steady_state(build_liouvillian(p, FockSpace(3, 3)));
    SystemParams half = p;
    half.omega_d_amp *= 0.5;
    for (Mode mode : {Mode::magnon, Mode::photon}) {
      double big = 0.0, coarse = 0.0;
      try {
        big = g2_numeric(rho, mode);
        coarse = g2_numeric(small, mode);
      } catch (const UndefinedStatisticsError&) {
        continue;
      }
      ++used;
      drift = std::max(drift, std::abs(coarse - big) / std::abs(big));
      halving = std::max(halving, std::abs(analytic(p, mode, G2Variant::probability) -
                                           analytic(half, mode, G2Variant::probability)));
    }
  }
  r.note(fmt("%zu stable preset points, %d g2 values", points.size(), used));
  r.check(std::abs(trace_err) < 1e-10, fmt("steady-state |tr - 1| = %.3g", trace_err));
  r.check(herm < 1e-12, fmt("steady-state Hermiticity error %.3g", herm));
  r.check(min_eig >= -1e-6, fmt("steady-state min eigenvalue %.3g (>= -1e-6)", min_eig));
  r.check(residual < 1e-8, fmt("steady-state residual |L rho| %.3g", residual));
  r.check(drift < 0.01, fmt("cutoff (3,3) -> (5,5) relative g2 drift %.3g", drift));
  r.check(halving < 1e-3, fmt("drive-halving change of analytic g2 (probability variant) %.3g", halving));

  const FockSpace s3(3, 3);
  const Liouvillian l = build_liouvillian(fig5(1.0, 1.5), s3);
  const DensityMatrix relaxed = evolve(DensityMatrix::projector(s3, {0, 0}), l, 20.0, stable_time_step(l));
  const double dist = trace_distance(relaxed, steady_state(l));
  r.check(dist < 1e-6, fmt("evolve to t = 20 vs steady_state, trace distance %.3g", dist));

  const double two = g2_numeric(DensityMatrix::projector(kSpace, {2, 0}), Mode::magnon);
  r.check(two == 0.5, fmt("g2 of |2><2| = %.17g", two));
  return r;
}

// 8. Supermode Kerr trend.
Report supermode_trend() {
  Report r;
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<double> xs, ys;
  for (double g : {1.2, 1.5, 2.0, 3.0}) {
    const SystemParams p{0.0, 0.0, -1.0, 1.0, g, 0.1, 0.0};
    const double chi1 = effective_kerr(p).chi1;
    xs.push_back(std::log(g * g * g * g / ((g * g - 1.0) * (g * g - 1.0))));
    ys.push_back(std::log(chi1));
    r.note(fmt("g = %g: chi1 = %.6g", g, chi1));
  }
  const double n = double(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  r.check(std::abs(slope - 1.0) <= 0.15, fmt("log-log slope %.12g (1 +- 0.15)", slope));
  const double dt = seconds_since(t0);
  r.check(dt < 1.0, fmt("runtime %.3f s < 1 s", dt));
  return r;
}

struct Criterion {
  const char* name;
  Report (*run)();
};

const Criterion kCriteria[] = {
    {"Poissonian limit without Kerr term", poissonian_limit},
    {"conventional blockade baseline", conventional_baseline},
    {"simultaneous blockade with balanced gain", pt_blockade},
    {"analytic and Lindblad agreement", solver_agreement},
    {"spectrum and exceptional point", spectrum_ep},
    {"weak Kerr term near the exceptional point", kerr_relaxation},
    {"property suite", properties},
    {"supermode Kerr trend", supermode_trend},
};

bool run(int i) {
  const Criterion& c = kCriteria[i - 1];
  Report r;
  try {
    r = c.run();
  } catch (const std::exception& e) {
    r.check(false, std::string("unexpected error: ") + e.what());
  }
  std::printf("criterion %d: %s: %s\n", i, r.ok ? "PASS" : "FAIL", c.name);
  for (const auto& line : r.lines) std::printf("    %s\n", line.c_str());
  std::fflush(stdout);
  return r.ok;
}

}  // namespace

int main(int argc, char** argv) {
  constexpr int count = int(std::size(kCriteria));
  if (argc > 2) {
    std::fprintf(stderr, "usage: acceptance [1..%d]\n", count);
    return 2;
  }
  if (argc == 2) {
    const int i = std::atoi(argv[1]);
    if (i < 1 || i > count) {
      std::fprintf(stderr, "usage: acceptance [1..%d]\n", count);
      return 2;
    }
    return run(i) ? 0 : 1;
  }
  bool ok = true;
  for (int i = 1; i <= count; ++i) ok = run(i) && ok;
  return ok ? 0 : 1;
}
