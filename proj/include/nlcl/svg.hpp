#ifndef NLCL_SVG_HPP
#define NLCL_SVG_HPP

#include <string>
#include <vector>

namespace nlcl {

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

/// Self-contained static SVG line plot: one polyline per series, axes with
/// tick labels, legend. Deterministic output for identical input. Throws on
/// an empty series list or mismatched x/y lengths.
void emit_svg_plot(const std::string& path,
                   const std::vector<PlotSeries>& series,
                   const std::string& x_label, const std::string& y_label,
                   const std::string& title = "");

}  // namespace nlcl

#endif
