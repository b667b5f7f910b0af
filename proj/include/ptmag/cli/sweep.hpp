#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ptmag/cli/config.hpp"
#include "ptmag/cli/table.hpp"
#include "ptmag/detail/parallel.hpp"
#include "ptmag/lindblad.hpp"
#include "ptmag/weakdrive.hpp"

namespace ptmag::cli {

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct PointResult {
  double value = kNaN;
  double g2_m_analytic = kNaN;
  double g2_a_analytic = kNaN;
  double g2_m_lindblad = kNaN;
  double g2_a_lindblad = kNaN;
  double n_m = kNaN;
  double n_a = kNaN;
  double stable_flag = kNaN;
  double g2_m_formal = kNaN;  ///< from the trace-one null vector, stable or not
  double g2_a_formal = kNaN;
  double g2_m_alt = kNaN;     ///< Lindblad g2 under the other gain model
  double g2_a_alt = kNaN;
  double max_re_eigenvalue = kNaN;
  std::optional<DensityMatrix> rho;
  std::vector<std::string> diagnostics;

  bool failed() const {
    for (double v : {g2_m_analytic, g2_a_analytic, g2_m_lindblad, g2_a_lindblad, g2_m_formal, g2_a_formal})
      if (!std::isnan(v)) return false;
    return true;
  }
};

namespace detail {

template <class Fn>
double guarded(std::vector<std::string>& diag, const std::string& tag, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    diag.push_back(tag + ": " + e.what());
    return kNaN;
  }
}

inline GainModel other(GainModel g) {
  return g == GainModel::negative_rate ? GainModel::gain_dissipator : GainModel::negative_rate;
}

}  // namespace detail

/// Solves one sweep point with every solver the configuration asks for.
/// Failures become NaN entries plus a diagnostic; nothing is thrown for
/// solver errors.
inline PointResult evaluate_point(const ScenarioConfig& cfg, double x) {
  PointResult r;
  r.value = x;
  auto& diag = r.diagnostics;
  const SystemParams p = apply_sweep(cfg.params, cfg.sweep.variable, x);
  try {
    p.validate();
  } catch (const Error& e) {
    diag.push_back(e.what());
    return r;
  }

  if (cfg.solver != Solver::lindblad) {
    try {
      const AmplitudeVector amps = steady_amplitudes(p);
      for (const auto& w : amps.warnings) diag.push_back("analytic warning: " + w);
      r.g2_m_analytic = detail::guarded(diag, "analytic magnon",
                                        [&] { return g2_analytic(amps, Mode::magnon, cfg.g2_variant).value; });
      r.g2_a_analytic = detail::guarded(diag, "analytic photon",
                                        [&] { return g2_analytic(amps, Mode::photon, cfg.g2_variant).value; });
    } catch (const Error& e) {
      diag.push_back(std::string("analytic: ") + e.what());
    }
  }

  if (cfg.solver != Solver::analytic) {
    const FockSpace space = cfg.space();
    try {
      const Liouvillian l = build_liouvillian(p, space, cfg.lindblad());
      const StabilityReport s = stability(l);
      r.max_re_eigenvalue = s.abscissa;
      r.stable_flag = s.stable ? 1.0 : 0.0;
      const DensityMatrix formal = null_state(l);
      r.g2_m_formal = detail::guarded(diag, "formal magnon", [&] { return g2_numeric(formal, Mode::magnon); });
      r.g2_a_formal = detail::guarded(diag, "formal photon", [&] { return g2_numeric(formal, Mode::photon); });
      if (!s.stable) {
        std::ostringstream os;
        os << "lindblad: no steady state, eigenvalue " << s.leading << " (" << s.method << ")";
        diag.push_back(os.str());
      } else if (const double lowest = formal.min_eigenvalue(); lowest < -1e-6) {
        diag.push_back("lindblad: positivity violation, density-matrix eigenvalue " + std::to_string(lowest));
      } else {
        r.g2_m_lindblad = r.g2_m_formal;
        r.g2_a_lindblad = r.g2_a_formal;
        r.n_m = mean_number(formal, Mode::magnon);
        r.n_a = mean_number(formal, Mode::photon);
        r.rho = formal;
      }
    } catch (const Error& e) {
      diag.push_back(std::string("lindblad: ") + e.what());
    }

    if (p.kappa_a >= 0.0) {
      r.g2_m_alt = r.g2_m_lindblad;
      r.g2_a_alt = r.g2_a_lindblad;
    } else {
      try {
        const Liouvillian alt = build_liouvillian(p, space, {detail::other(cfg.gain_model)});
        const DensityMatrix rho = steady_state(alt);
        r.g2_m_alt = detail::guarded(diag, "alt magnon", [&] { return g2_numeric(rho, Mode::magnon); });
        r.g2_a_alt = detail::guarded(diag, "alt photon", [&] { return g2_numeric(rho, Mode::photon); });
      } catch (const Error& e) {
        diag.push_back("lindblad " + to_string(detail::other(cfg.gain_model)) + ": " + e.what());
      }
    }
  }
  return r;
}

/// Evaluates every grid point on up to `jobs` threads; order follows the grid.
inline std::vector<PointResult> sweep_points(const ScenarioConfig& cfg, unsigned jobs = 1) {
  const std::vector<double> grid = cfg.sweep.grid();
  std::vector<PointResult> out(grid.size());
  ptmag::detail::parallel_for(grid.size(), jobs, [&](std::size_t i) { out[i] = evaluate_point(cfg, grid[i]); });
  return out;
}

inline const std::vector<std::string>& sweep_columns() {
  static const std::vector<std::string> cols{
      "variable",           "g2_m_analytic",        "g2_a_analytic",         "g2_m_lindblad",
      "g2_a_lindblad",      "n_m",                  "n_a",                   "stable_flag",
      "log10_g2_m_analytic", "log10_g2_a_analytic", "log10_g2_m_lindblad",   "log10_g2_a_lindblad",
      "g2_m_lindblad_formal", "g2_a_lindblad_formal", "g2_m_lindblad_alt",   "g2_a_lindblad_alt",
      "max_re_eigenvalue"};
  return cols;
}

inline ResultTable to_table(const std::vector<PointResult>& points) {
  ResultTable t;
  t.columns = sweep_columns();
  t.text_column = "diagnostic";
  for (const auto& p : points) {
    t.rows.push_back({p.value, p.g2_m_analytic, p.g2_a_analytic, p.g2_m_lindblad, p.g2_a_lindblad, p.n_m, p.n_a,
                      p.stable_flag, std::log10(p.g2_m_analytic), std::log10(p.g2_a_analytic),
                      std::log10(p.g2_m_lindblad), std::log10(p.g2_a_lindblad), p.g2_m_formal, p.g2_a_formal,
                      p.g2_m_alt, p.g2_a_alt, p.max_re_eigenvalue});
    std::string d;
    for (const auto& s : p.diagnostics) d += (d.empty() ? "" : "; ") + s;
    t.text.push_back(d);
  }
  return t;
}

/// Sweep table for the configured scenario. Throws SweepError when no point
/// produced any g2 value.
inline ResultTable run_sweep(const ScenarioConfig& cfg, unsigned jobs = 1) {
  const auto points = sweep_points(cfg, jobs);
  bool any = false;
  for (const auto& p : points) any = any || !p.failed();
  if (!any) {
    std::string first = points.empty() || points[0].diagnostics.empty() ? "" : ": " + points[0].diagnostics[0];
    throw SweepError("run_sweep: every point failed" + first);
  }
  return to_table(points);
}

}  // namespace ptmag::cli
