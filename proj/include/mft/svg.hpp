#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

namespace mft {

// One curve of a line chart. NaN entries break the polyline, which is how
// parameter regions without an equilibrium are rendered as gaps.
struct ChartSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

namespace detail {

inline std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

inline std::string short_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

inline const char* series_color(std::size_t i) {
  static constexpr const char* palette[] = {"#1f6fb2", "#d1495b", "#2e8b57",
                                            "#b8860b", "#6a4fa3", "#444444"};
  return palette[i % (sizeof palette / sizeof palette[0])];
}

}  // namespace detail

// Writes a self-contained SVG line chart: axes, ticks, legend, one polyline
// group per series. No external references, CSS, or scripts.
inline void write_line_chart(std::ostream& os, const std::string& title,
                             const std::string& x_label,
                             const std::string& y_label,
                             const std::vector<ChartSeries>& series) {
  constexpr double width = 880.0;
  constexpr double height = 560.0;
  constexpr double ml = 78.0, mr = 24.0, mt = 48.0, mb = 64.0;
  const double plot_w = width - ml - mr;
  const double plot_h = height - mt - mb;

  double x_min = 0.0, x_max = 1.0, y_min = 0.0, y_max = 1.0;
  bool have = false;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      if (!have) {
        x_min = x_max = s.x[i];
        y_min = y_max = s.y[i];
        have = true;
      } else {
        x_min = std::min(x_min, s.x[i]);
        x_max = std::max(x_max, s.x[i]);
        y_min = std::min(y_min, s.y[i]);
        y_max = std::max(y_max, s.y[i]);
      }
    }
  }
  if (!have) {
    x_min = y_min = 0.0;
    x_max = y_max = 1.0;
  }
  if (x_max == x_min) x_max = x_min + 1.0;
  if (y_max == y_min) y_max = y_min + 1.0;
  const double y_pad = 0.05 * (y_max - y_min);
  y_min -= y_pad;
  y_max += y_pad;

  auto sx = [&](double x) { return ml + (x - x_min) / (x_max - x_min) * plot_w; };
  auto sy = [&](double y) {
    return mt + plot_h - (y - y_min) / (y_max - y_min) * plot_h;
  };

  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
     << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' '
     << height << "\">\n";
  os << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height
     << "\" fill=\"white\"/>\n";
  os << "<text x=\"" << width / 2 << "\" y=\"28\" text-anchor=\"middle\" "
        "font-family=\"sans-serif\" font-size=\"17\">"
     << detail::xml_escape(title) << "</text>\n";

  // Axes with 6 ticks each.
  os << "<g stroke=\"#222222\" stroke-width=\"1\" fill=\"none\">\n";
  os << "<path d=\"M" << ml << ' ' << mt << " L" << ml << ' ' << mt + plot_h
     << " L" << ml + plot_w << ' ' << mt + plot_h << "\"/>\n";
  os << "</g>\n";
  os << "<g font-family=\"sans-serif\" font-size=\"12\" fill=\"#222222\">\n";
  constexpr int kTicks = 6;
  for (int i = 0; i <= kTicks; ++i) {
    const double fx = x_min + (x_max - x_min) * i / kTicks;
    const double px = sx(fx);
    os << "<line x1=\"" << px << "\" y1=\"" << mt + plot_h << "\" x2=\"" << px
       << "\" y2=\"" << mt + plot_h + 5 << "\" stroke=\"#222222\"/>\n";
    os << "<text x=\"" << px << "\" y=\"" << mt + plot_h + 20
       << "\" text-anchor=\"middle\">" << detail::short_num(fx) << "</text>\n";
    const double fy = y_min + (y_max - y_min) * i / kTicks;
    const double py = sy(fy);
    os << "<line x1=\"" << ml - 5 << "\" y1=\"" << py << "\" x2=\"" << ml
       << "\" y2=\"" << py << "\" stroke=\"#222222\"/>\n";
    os << "<text x=\"" << ml - 9 << "\" y=\"" << py + 4
       << "\" text-anchor=\"end\">" << detail::short_num(fy) << "</text>\n";
    os << "<line x1=\"" << ml << "\" y1=\"" << py << "\" x2=\"" << ml + plot_w
       << "\" y2=\"" << py << "\" stroke=\"#dddddd\"/>\n";
  }
  os << "<text x=\"" << ml + plot_w / 2 << "\" y=\"" << height - 14
     << "\" text-anchor=\"middle\">" << detail::xml_escape(x_label)
     << "</text>\n";
  os << "<text x=\"20\" y=\"" << mt + plot_h / 2
     << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
     << mt + plot_h / 2 << ")\">" << detail::xml_escape(y_label)
     << "</text>\n";
  os << "</g>\n";

  for (std::size_t si = 0; si < series.size(); ++si) {
    const ChartSeries& s = series[si];
    os << "<g fill=\"none\" stroke=\"" << detail::series_color(si)
       << "\" stroke-width=\"2\">\n";
    bool in_segment = false;
    std::string path;
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) {
        in_segment = false;  // break the polyline at a gap
        continue;
      }
      char buf[64];
      std::snprintf(buf, sizeof buf, "%c%.2f %.2f ", in_segment ? 'L' : 'M',
                    sx(s.x[i]), sy(s.y[i]));
      path += buf;
      in_segment = true;
    }
    os << "<path d=\"" << path << "\"/>\n</g>\n";
  }

  // Legend, top right corner of the plot area.
  os << "<g font-family=\"sans-serif\" font-size=\"13\">\n";
  for (std::size_t si = 0; si < series.size(); ++si) {
    const double ly = mt + 14.0 + 20.0 * static_cast<double>(si);
    os << "<line x1=\"" << ml + plot_w - 150 << "\" y1=\"" << ly << "\" x2=\""
       << ml + plot_w - 118 << "\" y2=\"" << ly << "\" stroke=\""
       << detail::series_color(si) << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << ml + plot_w - 110 << "\" y=\"" << ly + 4
       << "\" fill=\"#222222\">" << detail::xml_escape(series[si].label)
       << "</text>\n";
  }
  os << "</g>\n</svg>\n";
}

}  // namespace mft
