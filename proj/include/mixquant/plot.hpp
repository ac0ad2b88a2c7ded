#pragma once

// Minimal SVG renderers: the codepoint chart (one row of dots per n at height
// n) and the step-density chart. No rendering dependency; coordinates are
// emitted with 4 decimal places.

#include <cstdio>
#include <sstream>
#include <string>

#include "mixquant/density.hpp"
#include "mixquant/selector.hpp"

namespace mixquant {

namespace detail {

inline std::string svg_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

}  // namespace detail

/// For each n = 1..max_n, the n optimal codepoints plotted at height n.
inline std::string render_codepoints_svg(int max_n) {
  if (max_n < 1) throw std::invalid_argument("render_codepoints_svg: need max_n >= 1");
  const double width = 640.0, row_h = 28.0, margin = 40.0;
  const double height = 2.0 * margin + row_h * max_n;
  const double x_scale = (width - 2.0 * margin) / 1.5;
  auto px = [&](double x) { return margin + x * x_scale; };
  auto py = [&](int n) { return height - margin - row_h * (n - 0.5); };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
     << height << "\">\n";
  os << "<line x1=\"" << detail::svg_num(px(0.75)) << "\" y1=\"" << detail::svg_num(margin)
     << "\" x2=\"" << detail::svg_num(px(0.75)) << "\" y2=\""
     << detail::svg_num(height - margin) << "\" stroke=\"#bbbbbb\" stroke-dasharray=\"4 3\"/>\n";
  for (int n = 1; n <= max_n; ++n) {
    const QuantizationResult r = solve(n);
    for (double x : r.codebook)
      os << "<circle cx=\"" << detail::svg_num(px(x)) << "\" cy=\""
         << detail::svg_num(py(n)) << "\" r=\"3.0000\" fill=\"#1f5fa8\"/>\n";
    os << "<text x=\"8\" y=\"" << detail::svg_num(py(n) + 4.0)
       << "\" font-size=\"12\">n=" << n << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

/// The step function of the mixed density with weight p.
inline std::string render_density_svg(double p) {
  const StepDensity d = StepDensity::mixture(p);
  const double width = 640.0, height = 360.0, margin = 50.0;
  const double x_scale = (width - 2.0 * margin) / 1.5;
  const double y_scale = (height - 2.0 * margin) / 1.0;
  auto px = [&](double x) { return margin + x * x_scale; };
  auto py = [&](double y) { return height - margin - y * y_scale; };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
     << height << "\">\n";
  // axes
  os << "<line x1=\"" << detail::svg_num(px(0)) << "\" y1=\"" << detail::svg_num(py(0))
     << "\" x2=\"" << detail::svg_num(px(1.55)) << "\" y2=\"" << detail::svg_num(py(0))
     << "\" stroke=\"#000000\"/>\n";
  os << "<line x1=\"" << detail::svg_num(px(0)) << "\" y1=\"" << detail::svg_num(py(0))
     << "\" x2=\"" << detail::svg_num(px(0)) << "\" y2=\"" << detail::svg_num(py(1.05))
     << "\" stroke=\"#000000\"/>\n";
  const auto& bp = d.breakpoints();
  const auto& lv = d.levels();
  for (std::size_t i = 0; i < lv.size(); ++i)
    os << "<line x1=\"" << detail::svg_num(px(bp[i])) << "\" y1=\""
       << detail::svg_num(py(lv[i])) << "\" x2=\"" << detail::svg_num(px(bp[i + 1]))
       << "\" y2=\"" << detail::svg_num(py(lv[i]))
       << "\" stroke=\"#b03030\" stroke-width=\"2\"/>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace mixquant
