#include "graphon/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace graphon {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

// Largest "nice" tick step (1/2/2.5/5 times a power of ten) giving at most
// ~6 ticks across `span`.
double nice_step(double span) {
  if (!(span > 0.0)) return 1.0;
  const double raw = span / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 2.5, 5.0, 10.0})
    if (m * mag >= raw) return m * mag;
  return 10.0 * mag;
}

}  // namespace

SvgPlot::SvgPlot(std::string title, std::string xlabel, std::string ylabel,
                 int width, int height)
    : title_(std::move(title)),
      xlabel_(std::move(xlabel)),
      ylabel_(std::move(ylabel)),
      width_(width),
      height_(height) {}

void SvgPlot::add_series(SvgSeries series) { series_.push_back(std::move(series)); }

std::string SvgPlot::render() const {
  const double ml = 62, mr = 16, mt = 30, mb = 46;  // margins
  const double pw = width_ - ml - mr, ph = height_ - mt - mb;

  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const auto& s : series_) {
    for (size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      ymin = std::min(ymin, s.y[i]);
      ymax = std::max(ymax, s.y[i]);
    }
  }
  if (!std::isfinite(xmin)) { xmin = 0; xmax = 1; }
  if (!std::isfinite(ymin)) { ymin = 0; ymax = 1; }
  if (xmax - xmin < 1e-300) { xmin -= 0.5; xmax += 0.5; }
  if (ymax - ymin < 1e-300) { ymin -= 0.5; ymax += 0.5; }
  const double ypad = 0.05 * (ymax - ymin);
  ymin -= ypad;
  ymax += ypad;

  auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * pw; };
  auto py = [&](double y) { return mt + ph - (y - ymin) / (ymax - ymin) * ph; };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width_
      << "\" height=\"" << height_ << "\" viewBox=\"0 0 " << width_ << " "
      << height_ << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
  out << "<text x=\"" << width_ / 2.0 << "\" y=\"18\" font-family=\"sans-serif\""
      << " font-size=\"13\" text-anchor=\"middle\">" << escape(title_) << "</text>\n";

  // ticks and grid
  const double xstep = nice_step(xmax - xmin);
  const double ystep = nice_step(ymax - ymin);
  out << "<g font-family=\"sans-serif\" font-size=\"10\" fill=\"#333333\">\n";
  for (double t = std::ceil(xmin / xstep) * xstep; t <= xmax + 1e-12 * xstep; t += xstep) {
    const double gx = px(t);
    out << "<line x1=\"" << num(gx) << "\" y1=\"" << num(mt) << "\" x2=\"" << num(gx)
        << "\" y2=\"" << num(mt + ph) << "\" stroke=\"#dddddd\" stroke-width=\"0.6\"/>\n";
    out << "<text x=\"" << num(gx) << "\" y=\"" << num(mt + ph + 14)
        << "\" text-anchor=\"middle\">" << num(t) << "</text>\n";
  }
  for (double t = std::ceil(ymin / ystep) * ystep; t <= ymax + 1e-12 * ystep; t += ystep) {
    const double gy = py(t);
    out << "<line x1=\"" << num(ml) << "\" y1=\"" << num(gy) << "\" x2=\"" << num(ml + pw)
        << "\" y2=\"" << num(gy) << "\" stroke=\"#dddddd\" stroke-width=\"0.6\"/>\n";
    out << "<text x=\"" << num(ml - 6) << "\" y=\"" << num(gy + 3)
        << "\" text-anchor=\"end\">" << num(t) << "</text>\n";
  }
  out << "</g>\n";

  // axes
  out << "<rect x=\"" << num(ml) << "\" y=\"" << num(mt) << "\" width=\"" << num(pw)
      << "\" height=\"" << num(ph) << "\" fill=\"none\" stroke=\"#222222\""
      << " stroke-width=\"1\"/>\n";
  out << "<text x=\"" << num(ml + pw / 2) << "\" y=\"" << num(height_ - 8)
      << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">"
      << escape(xlabel_) << "</text>\n";
  out << "<text x=\"14\" y=\"" << num(mt + ph / 2)
      << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\""
      << " transform=\"rotate(-90 14 " << num(mt + ph / 2) << ")\">"
      << escape(ylabel_) << "</text>\n";

  // series, split at non-finite points; isolated points become dots
  for (const auto& s : series_) {
    std::vector<std::vector<std::pair<double, double>>> runs(1);
    size_t n = std::min(s.x.size(), s.y.size());
    for (size_t i = 0; i < n; ++i) {
      if (std::isfinite(s.x[i]) && std::isfinite(s.y[i]))
        runs.back().emplace_back(px(s.x[i]), py(s.y[i]));
      else if (!runs.back().empty())
        runs.emplace_back();
    }
    for (const auto& r : runs) {
      if (r.empty()) continue;
      if (r.size() == 1) {
        out << "<circle cx=\"" << num(r[0].first) << "\" cy=\"" << num(r[0].second)
            << "\" r=\"" << num(std::max(1.2, s.width)) << "\" fill=\"" << s.stroke
            << "\" fill-opacity=\"" << num(s.opacity) << "\"/>\n";
        continue;
      }
      out << "<polyline fill=\"none\" stroke=\"" << s.stroke << "\" stroke-width=\""
          << num(s.width) << "\" stroke-opacity=\"" << num(s.opacity) << "\" points=\"";
      for (const auto& [cx, cy] : r) out << num(cx) << "," << num(cy) << " ";
      out << "\"/>\n";
    }
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace graphon
