#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace qwr::svg {

// Static vector plots of the CSV payloads: axes, series, legend. These are
// views of already-written numeric data and never feed back into results.

inline const std::vector<std::string>& palette() {
  static const std::vector<std::string> colors = {
      "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf"};
  return colors;
}

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

namespace detail {

inline std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

struct Frame {
  double width = 760, height = 520;
  double left = 70, right = 20, top = 40, bottom = 55;
  double x_min = 0, x_max = 1, y_min = 0, y_max = 1;
  bool log_x = false, log_y = false;

  double tx(double x) const {
    double v = log_x ? std::log10(x) : x;
    double lo = log_x ? std::log10(x_min) : x_min;
    double hi = log_x ? std::log10(x_max) : x_max;
    return left + (v - lo) / (hi - lo) * (width - left - right);
  }
  double ty(double y) const {
    double v = log_y ? std::log10(y) : y;
    double lo = log_y ? std::log10(y_min) : y_min;
    double hi = log_y ? std::log10(y_max) : y_max;
    return height - bottom - (v - lo) / (hi - lo) * (height - top - bottom);
  }
};

inline void open_doc(std::ostream& out, const Frame& f, const std::string& title) {
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << f.width << "\" height=\""
      << f.height << "\" viewBox=\"0 0 " << f.width << " " << f.height << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << f.width / 2 << "\" y=\"24\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"16\">" << title << "</text>\n";
}

inline void axes(std::ostream& out, const Frame& f, const std::string& xlabel,
                 const std::string& ylabel) {
  out << "<rect x=\"" << f.left << "\" y=\"" << f.top << "\" width=\""
      << f.width - f.left - f.right << "\" height=\"" << f.height - f.top - f.bottom
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  auto ticks = [&](bool horizontal) {
    bool log_axis = horizontal ? f.log_x : f.log_y;
    double lo = horizontal ? f.x_min : f.y_min;
    double hi = horizontal ? f.x_max : f.y_max;
    std::vector<double> at;
    if (log_axis) {
      for (int e = static_cast<int>(std::floor(std::log10(lo)));
           e <= static_cast<int>(std::ceil(std::log10(hi))); ++e) {
        double v = std::pow(10.0, e);
        if (v >= lo * 0.999 && v <= hi * 1.001) at.push_back(v);
      }
    } else {
      for (int k = 0; k <= 5; ++k) at.push_back(lo + k * (hi - lo) / 5.0);
    }
    for (double v : at) {
      if (horizontal) {
        double x = f.tx(v);
        out << "<line x1=\"" << x << "\" y1=\"" << f.height - f.bottom << "\" x2=\"" << x
            << "\" y2=\"" << f.height - f.bottom + 5 << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << x << "\" y=\"" << f.height - f.bottom + 20
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
            << fmt(v) << "</text>\n";
      } else {
        double y = f.ty(v);
        out << "<line x1=\"" << f.left - 5 << "\" y1=\"" << y << "\" x2=\"" << f.left
            << "\" y2=\"" << y << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << f.left - 8 << "\" y=\"" << y + 4
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << fmt(v)
            << "</text>\n";
      }
    }
  };
  ticks(true);
  ticks(false);
  out << "<text x=\"" << (f.left + f.width - f.right) / 2 << "\" y=\"" << f.height - 12
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << xlabel
      << "</text>\n"
      << "<text x=\"18\" y=\"" << (f.top + f.height - f.bottom) / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
         "transform=\"rotate(-90 18 " << (f.top + f.height - f.bottom) / 2 << ")\">" << ylabel
      << "</text>\n";
}

inline void legend(std::ostream& out, const Frame& f, const std::vector<std::string>& names) {
  double x = f.left + 12, y = f.top + 16;
  for (std::size_t s = 0; s < names.size(); ++s) {
    out << "<rect x=\"" << x << "\" y=\"" << y - 9 << "\" width=\"14\" height=\"9\" fill=\""
        << palette()[s % palette().size()] << "\"/>\n"
        << "<text x=\"" << x + 18 << "\" y=\"" << y << "\" font-family=\"sans-serif\" "
           "font-size=\"12\">" << names[s] << "</text>\n";
    y += 16;
  }
}

}  // namespace detail

/// Multi-series line/scatter chart; log axes opt-in. An optional straight
/// line (in the transformed coordinates) marks a power-law fit, and an
/// optional vertical marker shows a tail cut.
struct LineChartOptions {
  std::string title, xlabel, ylabel;
  bool log_x = false, log_y = false;
  bool markers = false;
  double fit_slope = 0.0, fit_intercept = 0.0;  // natural-log coordinates
  bool with_fit = false;
  double vline = 0.0;
  bool with_vline = false;
};

inline void write_line_chart(const std::filesystem::path& path,
                             const std::vector<Series>& series, const LineChartOptions& opt) {
  detail::Frame f;
  f.log_x = opt.log_x;
  f.log_y = opt.log_y;
  double x_min = 1e300, x_max = -1e300, y_min = 1e300, y_max = -1e300;
  for (const auto& s : series) {
    for (double v : s.x) { x_min = std::min(x_min, v); x_max = std::max(x_max, v); }
    for (double v : s.y) { y_min = std::min(y_min, v); y_max = std::max(y_max, v); }
  }
  if (!(x_min < x_max)) { x_min -= 0.5; x_max += 0.5; }
  if (!(y_min < y_max)) { y_min -= 0.5; y_max += 0.5; }
  if (!opt.log_y) { double pad = 0.05 * (y_max - y_min); y_min -= pad; y_max += pad; }
  f.x_min = x_min; f.x_max = x_max; f.y_min = y_min; f.y_max = y_max;

  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path.string());
  detail::open_doc(out, f, opt.title);
  detail::axes(out, f, opt.xlabel, opt.ylabel);

  for (std::size_t s = 0; s < series.size(); ++s) {
    const auto& color = palette()[s % palette().size()];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < series[s].x.size(); ++i)
      out << f.tx(series[s].x[i]) << "," << f.ty(series[s].y[i]) << " ";
    out << "\"/>\n";
    if (opt.markers) {
      for (std::size_t i = 0; i < series[s].x.size(); ++i)
        out << "<circle cx=\"" << f.tx(series[s].x[i]) << "\" cy=\"" << f.ty(series[s].y[i])
            << "\" r=\"2.5\" fill=\"" << color << "\"/>\n";
    }
  }
  if (opt.with_fit && opt.log_x && opt.log_y) {
    // y = exp(intercept) * x^slope drawn across the x range
    double y1 = std::exp(opt.fit_intercept + opt.fit_slope * std::log(x_min));
    double y2 = std::exp(opt.fit_intercept + opt.fit_slope * std::log(x_max));
    out << "<line x1=\"" << f.tx(x_min) << "\" y1=\"" << f.ty(y1) << "\" x2=\"" << f.tx(x_max)
        << "\" y2=\"" << f.ty(y2) << "\" stroke=\"black\" stroke-dasharray=\"6,4\"/>\n";
  }
  if (opt.with_vline && opt.vline > x_min && opt.vline < x_max) {
    out << "<line x1=\"" << f.tx(opt.vline) << "\" y1=\"" << f.top << "\" x2=\""
        << f.tx(opt.vline) << "\" y2=\"" << f.height - f.bottom
        << "\" stroke=\"gray\" stroke-dasharray=\"3,3\"/>\n";
  }
  std::vector<std::string> names;
  for (const auto& s : series) names.push_back(s.name);
  detail::legend(out, f, names);
  out << "</svg>\n";
}

/// Grouped bar chart: one group per node, one bar per algorithm.
inline void write_bar_chart(const std::filesystem::path& path,
                            const std::vector<std::string>& group_labels,
                            const std::vector<std::string>& series_names,
                            const std::vector<Eigen::VectorXd>& series,
                            const std::string& title, const std::string& ylabel) {
  detail::Frame f;
  double y_max = 0.0;
  for (const auto& s : series) y_max = std::max(y_max, s.maxCoeff());
  f.x_min = 0;
  f.x_max = static_cast<double>(group_labels.size());
  f.y_min = 0;
  f.y_max = y_max * 1.1;

  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path.string());
  detail::open_doc(out, f, title);
  detail::axes(out, f, "node", ylabel);

  const double group_w = (f.width - f.left - f.right) / group_labels.size();
  const double bar_w = group_w * 0.8 / std::max<std::size_t>(1, series.size());
  for (std::size_t g = 0; g < group_labels.size(); ++g) {
    for (std::size_t s = 0; s < series.size(); ++s) {
      double v = series[s][g];
      double x = f.left + g * group_w + group_w * 0.1 + s * bar_w;
      double y = f.ty(v);
      out << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << bar_w * 0.92
          << "\" height=\"" << (f.height - f.bottom) - y << "\" fill=\""
          << palette()[s % palette().size()] << "\"/>\n";
    }
    out << "<text x=\"" << f.left + (g + 0.5) * group_w << "\" y=\"" << f.height - f.bottom + 20
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
        << group_labels[g] << "</text>\n";
  }
  detail::legend(out, f, series_names);
  out << "</svg>\n";
}

/// Fidelity heatmap over a square damping grid, blue (low) to white (high).
inline void write_heatmap(const std::filesystem::path& path, const std::vector<double>& grid,
                          const Eigen::MatrixXd& m, const std::string& title) {
  detail::Frame f;
  f.x_min = grid.front(); f.x_max = grid.back();
  f.y_min = grid.front(); f.y_max = grid.back();
  double v_min = m.minCoeff(), v_max = m.maxCoeff();
  if (!(v_min < v_max)) v_min = v_max - 1e-9;

  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path.string());
  detail::open_doc(out, f, title);
  detail::axes(out, f, "alpha", "alpha'");

  const double cw = (f.width - f.left - f.right) / grid.size();
  const double ch = (f.height - f.top - f.bottom) / grid.size();
  for (Eigen::Index a = 0; a < m.rows(); ++a) {
    for (Eigen::Index b = 0; b < m.cols(); ++b) {
      double u = (m(a, b) - v_min) / (v_max - v_min);
      int r = static_cast<int>(30 + 225 * u);
      int g = static_cast<int>(60 + 195 * u);
      out << "<rect x=\"" << f.left + a * cw << "\" y=\""
          << f.height - f.bottom - (b + 1) * ch << "\" width=\"" << cw + 0.5 << "\" height=\""
          << ch + 0.5 << "\" fill=\"rgb(" << r << "," << g << ",255)\"/>\n";
    }
  }
  out << "<text x=\"" << f.width - f.right - 4 << "\" y=\"" << f.top - 6
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">min "
      << detail::fmt(v_min) << ", max " << detail::fmt(v_max) << "</text>\n";
  out << "</svg>\n";
}

}  // namespace qwr::svg
