#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "ptmag/cli/config.hpp"
#include "ptmag/cli/sweep.hpp"
#include "ptmag/cli/table.hpp"
#include "ptmag/detail/parallel.hpp"
#include "ptmag/spectrum.hpp"
#include "ptmag/supermode.hpp"

namespace ptmag::cli {

/// The eigenvalue problem only depends on the cavity-magnon mismatch, so a
/// `delta` sweep here moves delta_a against a fixed delta_m.
inline SpectrumVariable spectrum_variable(SweepVariable v) {
  switch (v) {
    case SweepVariable::delta: return SpectrumVariable::detuning;
    case SweepVariable::g: return SpectrumVariable::coupling;
    case SweepVariable::kappa_a: return SpectrumVariable::kappa_a;
    case SweepVariable::chi: break;
  }
  throw ConfigError("sweep.variable", 0, "chi does not enter the linear spectrum");
}

inline ResultTable spectrum_table(const std::vector<SpectrumRow>& rows) {
  ResultTable t;
  t.columns = {"value", "re_w1", "im_w1", "re_w2", "im_w2"};
  for (const auto& r : rows)
    t.rows.push_back({r.value, r.omega1.real(), r.omega1.imag(), r.omega2.real(), r.omega2.imag()});
  return t;
}

inline ResultTable run_spectrum(const ScenarioConfig& cfg, unsigned jobs = 1) {
  const auto grid = cfg.sweep.grid();
  return spectrum_table(spectrum_sweep(cfg.params, spectrum_variable(cfg.sweep.variable), grid, jobs));
}

/// Effective Kerr coefficients along the sweep, plus the proportionality law
/// evaluated with supermode.epsilon. Points at an exceptional point give NaN.
inline ResultTable run_supermode(const ScenarioConfig& cfg, unsigned jobs = 1) {
  const auto grid = cfg.sweep.grid();
  ResultTable t;
  t.columns = {"variable", "chi1", "chi2", "chi3", "q21_abs", "q22_abs", "condition", "ill_conditioned", "scaling"};
  t.text_column = "diagnostic";
  t.rows.assign(grid.size(), {});
  t.text.assign(grid.size(), {});
  ptmag::detail::parallel_for(grid.size(), jobs, [&](std::size_t i) {
    const SystemParams p = apply_sweep(cfg.params, cfg.sweep.variable, grid[i]);
    std::vector<double> row(t.columns.size(), kNaN);
    row[0] = grid[i];
    std::string diag;
    try {
      const EffectiveKerr k = effective_kerr(p);
      row[1] = k.chi1;
      row[2] = k.chi2;
      row[3] = k.chi3;
      row[4] = k.q21_abs;
      row[5] = k.q22_abs;
      row[6] = k.condition;
      row[7] = k.ill_conditioned ? 1.0 : 0.0;
    } catch (const Error& e) {
      diag = e.what();
    }
    try {
      row[8] = kerr_scaling(p, cfg.epsilon).value;
    } catch (const Error& e) {
      diag += (diag.empty() ? "" : "; ") + std::string(e.what());
    }
    t.rows[i] = std::move(row);
    t.text[i] = std::move(diag);
  });
  return t;
}

}  // namespace ptmag::cli
