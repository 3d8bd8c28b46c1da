#include "nlcl/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "nlcl/csv.hpp"

namespace nlcl {

namespace {

constexpr int kWidth = 960;
constexpr int kHeight = 600;
constexpr int kMarginL = 70, kMarginR = 20, kMarginT = 40, kMarginB = 50;

const char* kPalette[] = {"#0072bd", "#d95319", "#edb120",
                          "#7e2f8e", "#77ac30", "#4dbeee"};

std::string px(double v) {
  // pixel coordinates rounded to 1/100 px keep files small and stable
  return format_double(std::round(v * 100.0) / 100.0);
}

// Tick spacing of the form {1,2,5}*10^k giving roughly `target` intervals.
double nice_step(double span, int target) {
  if (span <= 0.0) return 1.0;
  double raw = span / target;
  double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (raw <= m * mag) return m * mag;
  }
  return 10.0 * mag;
}

}  // namespace

void emit_svg_plot(const std::string& path,
                   const std::vector<PlotSeries>& series,
                   const std::string& x_label, const std::string& y_label,
                   const std::string& title) {
  if (series.empty()) throw std::invalid_argument("emit_svg_plot: no series");
  double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
  double y_lo = x_lo, y_hi = -x_lo;
  for (const auto& s : series) {
    if (s.x.size() != s.y.size() || s.x.empty())
      throw std::invalid_argument("emit_svg_plot: bad series '" + s.label + "'");
    for (double v : s.x) {
      x_lo = std::min(x_lo, v);
      x_hi = std::max(x_hi, v);
    }
    for (double v : s.y) {
      y_lo = std::min(y_lo, v);
      y_hi = std::max(y_hi, v);
    }
  }
  if (x_hi == x_lo) {
    x_lo -= 0.5;
    x_hi += 0.5;
  }
  if (y_hi == y_lo) {
    y_lo -= 0.5;
    y_hi += 0.5;
  }
  double y_pad = 0.05 * (y_hi - y_lo);
  y_lo -= y_pad;
  y_hi += y_pad;

  const double plot_w = kWidth - kMarginL - kMarginR;
  const double plot_h = kHeight - kMarginT - kMarginB;
  auto sx = [&](double x) { return kMarginL + (x - x_lo) / (x_hi - x_lo) * plot_w; };
  auto sy = [&](double y) {
    return kMarginT + plot_h - (y - y_lo) / (y_hi - y_lo) * plot_h;
  };

  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
     << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " "
     << kHeight << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!title.empty())
    os << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
          "font-family=\"sans-serif\" font-size=\"16\">" << title << "</text>\n";

  // axes frame
  os << "<rect x=\"" << kMarginL << "\" y=\"" << kMarginT << "\" width=\""
     << px(plot_w) << "\" height=\"" << px(plot_h)
     << "\" fill=\"none\" stroke=\"#333\"/>\n";

  double xs = nice_step(x_hi - x_lo, 8);
  for (double t = std::ceil(x_lo / xs) * xs; t <= x_hi + 1e-12 * xs; t += xs) {
    double X = sx(t);
    os << "<line x1=\"" << px(X) << "\" y1=\"" << px(kMarginT + plot_h)
       << "\" x2=\"" << px(X) << "\" y2=\"" << px(kMarginT + plot_h + 5)
       << "\" stroke=\"#333\"/>\n";
    os << "<text x=\"" << px(X) << "\" y=\"" << px(kMarginT + plot_h + 20)
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
          "font-size=\"12\">" << format_double(std::round(t / xs) * xs)
       << "</text>\n";
  }
  double ys = nice_step(y_hi - y_lo, 6);
  for (double t = std::ceil(y_lo / ys) * ys; t <= y_hi + 1e-12 * ys; t += ys) {
    double Y = sy(t);
    os << "<line x1=\"" << px(kMarginL - 5) << "\" y1=\"" << px(Y) << "\" x2=\""
       << px(kMarginL) << "\" y2=\"" << px(Y) << "\" stroke=\"#333\"/>\n";
    os << "<text x=\"" << px(kMarginL - 8) << "\" y=\"" << px(Y + 4)
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">"
       << format_double(std::round(t / ys) * ys) << "</text>\n";
  }
  os << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 10
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        "font-size=\"13\">" << x_label << "</text>\n";
  os << "<text x=\"18\" y=\"" << kHeight / 2
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
        "transform=\"rotate(-90 18 " << kHeight / 2 << ")\">" << y_label
     << "</text>\n";

  for (std::size_t si = 0; si < series.size(); ++si) {
    const auto& s = series[si];
    const char* color = kPalette[si % (sizeof(kPalette) / sizeof(kPalette[0]))];
    os << "<polyline fill=\"none\" stroke=\"" << color
       << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (i) os << " ";
      os << px(sx(s.x[i])) << "," << px(sy(s.y[i]));
    }
    os << "\"/>\n";
  }

  // legend, top-right corner of the plot area
  double lx = kMarginL + plot_w - 190, ly = kMarginT + 12;
  os << "<rect x=\"" << px(lx - 8) << "\" y=\"" << px(ly - 10) << "\" width=\"190\" height=\""
     << px(series.size() * 18.0 + 8.0)
     << "\" fill=\"white\" stroke=\"#999\" opacity=\"0.9\"/>\n";
  for (std::size_t si = 0; si < series.size(); ++si) {
    const char* color = kPalette[si % (sizeof(kPalette) / sizeof(kPalette[0]))];
    double Y = ly + 18.0 * si;
    os << "<line x1=\"" << px(lx) << "\" y1=\"" << px(Y) << "\" x2=\""
       << px(lx + 24) << "\" y2=\"" << px(Y) << "\" stroke=\"" << color
       << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << px(lx + 30) << "\" y=\"" << px(Y + 4)
       << "\" font-family=\"sans-serif\" font-size=\"12\">" << series[si].label
       << "</text>\n";
  }
  os << "</svg>\n";
}

}  // namespace nlcl
