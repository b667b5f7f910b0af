#pragma once

// Minimal standalone SVG line plots: one or more panels side by side, each
// with its own axes, ticks, labels and legend.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace ptmag::cli {

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
  bool dashed = false;
};

struct Panel {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_y = false;
  std::vector<Series> series;
};

struct Figure {
  std::string title;
  std::vector<Panel> panels;
};

namespace detail {

inline std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

inline std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", std::abs(v) < 1e-12 ? 0.0 : v);
  return buf;
}

inline double nice_step(double span, int target) {
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0, 10.0})
    if (m * mag >= raw) return m * mag;
  return 10.0 * mag;
}

inline const char* color(std::size_t i) {
  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#17becf", "#8c564b"};
  return palette[i % 7];
}

inline bool plottable(double y, bool log_y) { return std::isfinite(y) && (!log_y || y > 0.0); }

inline std::string render_panel(const Panel& p, double ox, double oy, double w, double h) {
  const double left = ox + 70, right = ox + w - 20, top = oy + 40, bottom = oy + h - 55;
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymin = xmin, ymax = -xmin;
  for (const auto& s : p.series)
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !plottable(s.y[i], p.log_y)) continue;
      const double y = p.log_y ? std::log10(s.y[i]) : s.y[i];
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  if (!std::isfinite(xmin)) xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  if (xmax == xmin) xmin -= 0.5, xmax += 0.5;
  if (p.log_y) {
    ymin = std::floor(ymin);
    ymax = std::ceil(ymax);
    if (ymax == ymin) ymax += 1;
  } else {
    if (ymax == ymin) ymin -= 0.5, ymax += 0.5;
    const double pad = 0.05 * (ymax - ymin);
    ymin -= pad;
    ymax += pad;
  }
  auto sx = [&](double x) { return left + (x - xmin) / (xmax - xmin) * (right - left); };
  auto sy = [&](double y) { return bottom - (y - ymin) / (ymax - ymin) * (bottom - top); };

  std::string out;
  out += "<g>\n";
  out += "<rect x=\"" + num(left) + "\" y=\"" + num(top) + "\" width=\"" + num(right - left) + "\" height=\"" +
         num(bottom - top) + "\" fill=\"none\" stroke=\"black\"/>\n";
  // x ticks
  const double xs = nice_step(xmax - xmin, 6);
  for (double t = std::ceil(xmin / xs) * xs; t <= xmax + 1e-9 * xs; t += xs) {
    out += "<line x1=\"" + num(sx(t)) + "\" y1=\"" + num(bottom) + "\" x2=\"" + num(sx(t)) + "\" y2=\"" +
           num(bottom + 5) + "\" stroke=\"black\"/>\n";
    out += "<text x=\"" + num(sx(t)) + "\" y=\"" + num(bottom + 18) +
           "\" font-size=\"11\" text-anchor=\"middle\">" + tick_label(t) + "</text>\n";
  }
  // y ticks
  const double ys = p.log_y ? std::max(1.0, std::ceil((ymax - ymin) / 8)) : nice_step(ymax - ymin, 6);
  for (double t = std::ceil(ymin / ys) * ys; t <= ymax + 1e-9 * ys; t += ys) {
    const std::string label = p.log_y ? "1e" + tick_label(t) : tick_label(t);
    out += "<line x1=\"" + num(left - 5) + "\" y1=\"" + num(sy(t)) + "\" x2=\"" + num(left) + "\" y2=\"" +
           num(sy(t)) + "\" stroke=\"black\"/>\n";
    out += "<text x=\"" + num(left - 8) + "\" y=\"" + num(sy(t) + 4) +
           "\" font-size=\"11\" text-anchor=\"end\">" + label + "</text>\n";
  }
  out += "<text x=\"" + num((left + right) / 2) + "\" y=\"" + num(bottom + 40) +
         "\" font-size=\"13\" text-anchor=\"middle\">" + xml_escape(p.x_label) + "</text>\n";
  out += "<text transform=\"translate(" + num(ox + 18) + "," + num((top + bottom) / 2) +
         ") rotate(-90)\" font-size=\"13\" text-anchor=\"middle\">" +
         xml_escape(p.y_label + (p.log_y ? " (log scale)" : "")) + "</text>\n";
  out += "<text x=\"" + num((left + right) / 2) + "\" y=\"" + num(top - 12) +
         "\" font-size=\"14\" text-anchor=\"middle\">" + xml_escape(p.title) + "</text>\n";

  for (std::size_t k = 0; k < p.series.size(); ++k) {
    const Series& s = p.series[k];
    std::string path;
    bool pen = false;
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !plottable(s.y[i], p.log_y)) {
        pen = false;
        continue;
      }
      const double y = p.log_y ? std::log10(s.y[i]) : s.y[i];
      path += (pen ? " L" : " M") + num(sx(s.x[i])) + "," + num(sy(y));
      pen = true;
    }
    if (!path.empty())
      out += "<path d=\"" + path + "\" fill=\"none\" stroke=\"" + color(k) + "\" stroke-width=\"1.6\"" +
             (s.dashed ? " stroke-dasharray=\"5,3\"" : "") + "/>\n";
    const double ly = top + 14 + 15 * double(k);
    out += "<line x1=\"" + num(right - 150) + "\" y1=\"" + num(ly - 4) + "\" x2=\"" + num(right - 125) +
           "\" y2=\"" + num(ly - 4) + "\" stroke=\"" + color(k) + "\" stroke-width=\"1.6\"" +
           (s.dashed ? " stroke-dasharray=\"5,3\"" : "") + "/>\n";
    out += "<text x=\"" + num(right - 120) + "\" y=\"" + num(ly) + "\" font-size=\"11\">" + xml_escape(s.name) +
           "</text>\n";
  }
  out += "</g>\n";
  return out;
}

}  // namespace detail

inline std::string render_svg(const Figure& f) {
  const double pw = 480, ph = 380, header = f.title.empty() ? 0 : 30;
  const double width = pw * std::max<std::size_t>(1, f.panels.size());
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + detail::num(width) + "\" height=\"" +
         detail::num(ph + header) + "\" viewBox=\"0 0 " + detail::num(width) + " " + detail::num(ph + header) +
         "\" font-family=\"sans-serif\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!f.title.empty())
    out += "<text x=\"" + detail::num(width / 2) + "\" y=\"22\" font-size=\"16\" text-anchor=\"middle\">" +
           detail::xml_escape(f.title) + "</text>\n";
  for (std::size_t i = 0; i < f.panels.size(); ++i) out += detail::render_panel(f.panels[i], pw * i, header, pw, ph);
  out += "</svg>\n";
  return out;
}

}  // namespace ptmag::cli
