#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gridcert::svg {

struct Series {
  std::string name;
  std::vector<std::pair<double, double>> points;
  std::string color;         // empty picks from the palette
  double stroke_width = 2.0;
  bool in_legend = true;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
};

/// Deterministic line plot on a fixed 800x600 viewBox with one polyline per
/// series and axis ticks at 1/2/5 multiples of a power of ten. Non-finite
/// points are dropped. Throws Error if no series has a finite point.
std::string render(const std::vector<Series>& series, const PlotSpec& spec);

enum class PlotKind { boundary, sweep, pv };

/// Renders the CSV emitted by the boundary, sweep or pvcurve commands.
std::string render_csv(std::string_view csv_text, PlotKind kind);

}  // namespace gridcert::svg
