#pragma once

// Built-in figure presets. Spectrum figures write one CSV with the two
// eigenvalues; statistics figures write one CSV per cavity rate and a
// two-panel plot (magnon, photon) on a logarithmic g2 axis.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <system_error>
#include <vector>

#include "ptmag/cli/config.hpp"
#include "ptmag/cli/spectral.hpp"
#include "ptmag/cli/svg_plot.hpp"
#include "ptmag/cli/sweep.hpp"
#include "ptmag/cli/table.hpp"

namespace ptmag::cli {

struct Curve {
  std::string tag;  ///< e.g. "kappa_a_-1"
  ScenarioConfig cfg;
};

struct FigurePreset {
  std::string id;
  bool spectrum = false;
  std::string x_label;
  std::vector<Curve> curves;
};

inline const std::vector<std::string>& figure_ids() {
  static const std::vector<std::string> ids{"fig2", "fig3", "fig4", "fig5", "fig6", "fig7"};
  return ids;
}

namespace detail {

inline ScenarioConfig preset_config(double kappa_a, double g, double chi, double delta, SweepVariable v,
                                    double from, double to) {
  ScenarioConfig c;
  c.params = {delta, delta, kappa_a, 1.0, g, chi, 0.01};
  c.sweep = {v, from, to, 201};
  return c;
}

inline std::string rate_tag(double kappa_a) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "kappa_a_%+g", kappa_a);
  return buf;
}

}  // namespace detail

inline FigurePreset figure_preset(const std::string& id) {
  using detail::preset_config;
  FigurePreset f;
  f.id = id;
  if (id == "fig2") {
    f.spectrum = true;
    f.x_label = "delta / kappa_m";
    f.curves.push_back({"", preset_config(-1.0, 1.0, 0.0, 0.0, SweepVariable::delta, -5.0, 5.0)});
  } else if (id == "fig3") {
    f.spectrum = true;
    f.x_label = "g / kappa_m";
    f.curves.push_back({"", preset_config(-1.0, 0.0, 0.0, 0.0, SweepVariable::g, 0.0, 3.0)});
  } else if (id == "fig4") {
    f.spectrum = true;
    f.x_label = "kappa_a / kappa_m";
    f.curves.push_back({"", preset_config(0.0, 1.0, 0.0, 0.0, SweepVariable::kappa_a, -3.0, 3.0)});
  } else if (id == "fig5") {
    f.x_label = "delta / kappa_m";
    for (double ka : {1.0, -1.0})
      f.curves.push_back({detail::rate_tag(ka), preset_config(ka, 1.0, 0.1, 0.0, SweepVariable::delta, -5.0, 5.0)});
  } else if (id == "fig6") {
    f.x_label = "g / kappa_m";
    for (double ka : {1.0, -1.0, -3.0})
      f.curves.push_back({detail::rate_tag(ka), preset_config(ka, 0.0, 0.1, 0.0, SweepVariable::g, 0.0, 3.0)});
  } else if (id == "fig7") {
    f.x_label = "chi / kappa_m";
    for (double ka : {3.0, -3.0})
      f.curves.push_back({detail::rate_tag(ka), preset_config(ka, 2.0, 0.0, 0.0, SweepVariable::chi, 0.0, 2.0)});
  } else {
    throw ConfigError("figure", 0, "unknown figure '" + id + "' (expected fig2 ... fig7)");
  }
  return f;
}

inline void ensure_directory(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory '" + dir.string() + "': " + ec.message());
}

inline Figure spectrum_figure(const FigurePreset& f, const ResultTable& t) {
  const auto x = t.values("value");
  Panel p{f.id + ": eigenvalues of the coupled-mode matrix", f.x_label, "omega / kappa_m", false, {}};
  p.series.push_back({"Re w1", x, t.values("re_w1"), false});
  p.series.push_back({"Im w1", x, t.values("im_w1"), true});
  p.series.push_back({"Re w2", x, t.values("re_w2"), false});
  p.series.push_back({"Im w2", x, t.values("im_w2"), true});
  return {"", {p}};
}

inline Figure statistics_figure(const FigurePreset& f, const std::vector<ResultTable>& tables) {
  Figure fig{f.id + ": equal-time second-order correlation", {}};
  for (const char* mode : {"m", "a"}) {
    Panel p{std::string(mode) == "m" ? "magnon" : "photon", f.x_label,
            std::string("g2_") + mode + "(0)", true, {}};
    for (std::size_t k = 0; k < tables.size(); ++k) {
      const ResultTable& t = tables[k];
      const auto x = t.values("variable");
      const std::string label = f.curves[k].tag;
      p.series.push_back({label + " analytic", x, t.values(std::string("g2_") + mode + "_analytic"), false});
      p.series.push_back({label + " Lindblad", x, t.values(std::string("g2_") + mode + "_lindblad"), true});
      // Unstable points: trace-one null vector of the Liouvillian.
      auto formal = t.values(std::string("g2_") + mode + "_lindblad_formal");
      const auto flag = t.values("stable_flag");
      bool any = false;
      for (std::size_t i = 0; i < formal.size(); ++i) {
        if (flag[i] == 1.0) formal[i] = kNaN;
        any = any || std::isfinite(formal[i]);
      }
      if (any) p.series.push_back({label + " null vector (unstable)", x, formal, true});
    }
    fig.panels.push_back(std::move(p));
  }
  return fig;
}

/// Runs a preset and writes its files into `out_dir`; returns the paths written.
inline std::vector<std::string> reproduce_figure(const std::string& id, const std::filesystem::path& out_dir,
                                                 unsigned jobs = 1) {
  const FigurePreset f = figure_preset(id);
  ensure_directory(out_dir);
  std::vector<std::string> written;
  auto write = [&](const std::string& name, const std::string& content) {
    const std::string path = (out_dir / name).string();
    write_text_file(path, content);
    written.push_back(path);
  };
  if (f.spectrum) {
    const ResultTable t = run_spectrum(f.curves[0].cfg, jobs);
    write(id + ".csv", emit_csv(t));
    write(id + ".svg", render_svg(spectrum_figure(f, t)));
    return written;
  }
  std::vector<ResultTable> tables;
  for (const Curve& c : f.curves) {
    tables.push_back(run_sweep(c.cfg, jobs));
    write(id + "_" + c.tag + ".csv", emit_csv(tables.back()));
  }
  write(id + ".svg", render_svg(statistics_figure(f, tables)));
  return written;
}

}  // namespace ptmag::cli
