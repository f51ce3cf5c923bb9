// Minimal SVG line plots for the bifurcation panels: axes, ticks, and
// polylines that break at non-finite samples. No external plotting stack.
#pragma once

#include <string>
#include <vector>

namespace graphon {

struct SvgSeries {
  std::vector<double> x, y;  // equal length; NaN/inf y breaks the line
  std::string stroke = "#000000";
  double width = 1.0;
  double opacity = 1.0;
};

class SvgPlot {
 public:
  SvgPlot(std::string title, std::string xlabel, std::string ylabel,
          int width = 560, int height = 360);

  void add_series(SvgSeries series);

  // Complete standalone SVG document.
  std::string render() const;

 private:
  std::string title_, xlabel_, ylabel_;
  int width_, height_;
  std::vector<SvgSeries> series_;
};

}  // namespace graphon
