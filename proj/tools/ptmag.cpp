// Command-line front end.
//
//   ptmag spectrum  --config scenario.conf [--out dir] [--jobs n]
//   ptmag g2        --config scenario.conf [--out dir] [--jobs n]
//   ptmag supermode --config scenario.conf [--out dir] [--jobs n]
//   ptmag ep        --config scenario.conf [--out dir]
//   ptmag reproduce fig5 [--out dir] [--jobs n]
//
// Exit status: 0 success, 1 configuration or usage error, 2 solver error,
// 3 I/O error.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "ptmag/cli/config.hpp"
#include "ptmag/cli/reproduce.hpp"
#include "ptmag/cli/spectral.hpp"
#include "ptmag/cli/svg_plot.hpp"
#include "ptmag/cli/sweep.hpp"
#include "ptmag/cli/table.hpp"
#include "ptmag/errors.hpp"
#include "ptmag/lindblad.hpp"
#include "ptmag/spectrum.hpp"

namespace fs = std::filesystem;
using namespace ptmag;
using namespace ptmag::cli;

namespace {

struct Options {
  std::string config;
  std::string out = ".";
  unsigned jobs = 1;
  std::string figure;
};

fs::path resolve(const Options& o, const std::string& name) {
  const fs::path p(name);
  return p.is_absolute() ? p : fs::path(o.out) / p;
}

void write(const Options& o, const std::string& name, const std::string& content) {
  const fs::path path = resolve(o, name);
  if (path.has_parent_path()) ensure_directory(path.parent_path());
  write_text_file(path.string(), content);
  std::cout << path.string() << '\n';
}

std::string csv_name(const ScenarioConfig& cfg, const std::string& fallback) {
  return cfg.outputs.csv_path.empty() ? fallback : cfg.outputs.csv_path;
}

void run_spectrum_cmd(const Options& o) {
  const ScenarioConfig cfg = load_config(o.config);
  const ResultTable t = run_spectrum(cfg, o.jobs);
  write(o, csv_name(cfg, "spectrum.csv"), emit_csv(t));
  if (cfg.outputs.plot_path) {
    FigurePreset f{"spectrum", true, to_string(cfg.sweep.variable) + " / kappa_m", {}};
    write(o, *cfg.outputs.plot_path, render_svg(spectrum_figure(f, t)));
  }
}

void run_g2_cmd(const Options& o) {
  const ScenarioConfig cfg = load_config(o.config);
  const auto points = sweep_points(cfg, o.jobs);
  bool any = false;
  for (const auto& p : points) any = any || !p.failed();
  if (!any)
    throw SweepError("every sweep point failed" +
                     (points[0].diagnostics.empty() ? std::string() : ": " + points[0].diagnostics[0]));
  const ResultTable t = to_table(points);
  write(o, csv_name(cfg, "g2.csv"), emit_csv(t));
  if (cfg.outputs.plot_path) {
    FigurePreset f{"g2", false, to_string(cfg.sweep.variable) + " / kappa_m", {{"", cfg}}};
    write(o, *cfg.outputs.plot_path, render_svg(statistics_figure(f, {t})));
  }
  if (cfg.outputs.rho_path) {
    const fs::path base(*cfg.outputs.rho_path);
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (!points[i].rho) continue;
      fs::path name = base;
      if (points.size() > 1)
        name.replace_filename(base.stem().string() + "_" + std::to_string(i) + base.extension().string());
      std::ostringstream os;
      write_density_matrix(os, *points[i].rho);
      write(o, name.string(), os.str());
    }
  }
}

void run_supermode_cmd(const Options& o) {
  const ScenarioConfig cfg = load_config(o.config);
  write(o, csv_name(cfg, "supermode.csv"), emit_csv(run_supermode(cfg, o.jobs)));
}

void run_ep_cmd(const Options& o) {
  const ScenarioConfig cfg = load_config(o.config);
  const SpectrumVariable v = spectrum_variable(cfg.sweep.variable);
  if (!(cfg.sweep.from < cfg.sweep.to))
    throw ConfigError("sweep.to", 0, "the search bracket needs sweep.from < sweep.to");
  const double x = find_ep(cfg.params, v, cfg.sweep.from, cfg.sweep.to);
  const SpectrumResult s = eigenvalues(with_value(cfg.params, v, x));
  ResultTable t;
  t.columns = {"value", "re_w", "im_w", "splitting"};
  t.rows.push_back({x, s.omega1.real(), s.omega1.imag(), std::abs(s.omega1 - s.omega2)});
  std::cout << to_string(cfg.sweep.variable) << " = " << format_number(x) << '\n';
  write(o, csv_name(cfg, "ep.csv"), emit_csv(t));
}

void run_reproduce_cmd(const Options& o) {
  const std::vector<std::string> ids = o.figure == "all" ? figure_ids() : std::vector<std::string>{o.figure};
  for (const auto& id : ids)
    for (const auto& path : reproduce_figure(id, o.out, o.jobs)) std::cout << path << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Driven PT-symmetric cavity-magnon system: spectra, blockade statistics, supermodes"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--out", o.out, "Output directory")->capture_default_str();
  app.add_option("--jobs", o.jobs, "Sweep points evaluated concurrently")
      ->check(CLI::Range(1u, 4096u))
      ->capture_default_str();

  auto with_config = [&](CLI::App* sub) {
    sub->add_option("--config", o.config, "Scenario file")->required();
    sub->fallthrough();
    return sub;
  };
  auto* spectrum = with_config(app.add_subcommand("spectrum", "Eigenvalues of the coupled-mode matrix along a sweep"));
  auto* g2 = with_config(app.add_subcommand("g2", "Equal-time g2 from the weak-drive and Lindblad solvers"));
  auto* supermode = with_config(app.add_subcommand("supermode", "Effective Kerr coefficients of the supermodes"));
  auto* ep = with_config(app.add_subcommand("ep", "Locate the exceptional point inside the sweep range"));
  auto* reproduce = app.add_subcommand("reproduce", "Regenerate a figure preset (fig2 ... fig7, or all)");
  reproduce->add_option("figure", o.figure, "Figure id")->required();
  reproduce->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*spectrum) run_spectrum_cmd(o);
    else if (*g2) run_g2_cmd(o);
    else if (*supermode) run_supermode_cmd(o);
    else if (*ep) run_ep_cmd(o);
    else if (*reproduce) run_reproduce_cmd(o);
  } catch (const ConfigError& e) {
    std::cerr << "ptmag: " << e.what() << '\n';
    return 1;
  } catch (const IoError& e) {
    std::cerr << "ptmag: " << e.what() << '\n';
    return 3;
  } catch (const Error& e) {
    std::cerr << "ptmag: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "ptmag: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
