#include "graphon/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace graphon {

namespace {

// Simpson weights for m intervals over a piece of length `len`, appended to
// `w` alongside the piece's nodes.
void append_piece(Grid& g, double lo, double hi, int m) {
  if (m < 2 || m % 2 != 0) throw std::invalid_argument("piece interval count must be even and >= 2");
  const int first = g.point_count();
  const double len = hi - lo;
  const double h = len / m;
  for (int k = 0; k <= m; ++k) {
    // lo + k*h accumulates rounding for tiny pieces; blend endpoints instead
    const double t = static_cast<double>(k) / m;
    g.nodes.push_back(lo * (1.0 - t) + hi * t);
  }
  Eigen::VectorXd w = Eigen::VectorXd::Zero(m + 1);
  for (int k = 0; k <= m; ++k) {
    double c = (k == 0 || k == m) ? 1.0 : (k % 2 ? 4.0 : 2.0);
    w[k] = c * h / 3.0;
  }
  Eigen::VectorXd merged(g.weights.size() + w.size());
  merged << g.weights, w;
  g.weights = std::move(merged);
  g.pieces.emplace_back(first, first + m);
}

}  // namespace

Grid uniform_grid(int M) {
  if (M < 2 || M % 2 != 0) throw std::invalid_argument("grid interval count must be even and >= 2");
  Grid g;
  g.weights = Eigen::VectorXd();
  append_piece(g, 0.0, 1.0, M);
  // exact uniform coordinates k/M (append_piece's blend already gives these)
  for (int k = 0; k <= M; ++k) g.nodes[k] = static_cast<double>(k) / M;
  g.eval_nodes = g.nodes;
  g.intervals = M;
  return g;
}

Grid segmented_grid(const std::vector<double>& interior_breaks, int M) {
  if (interior_breaks.empty()) return uniform_grid(M);
  for (size_t i = 0; i < interior_breaks.size(); ++i) {
    double b = interior_breaks[i];
    if (!(b > 0.0 && b < 1.0)) throw std::invalid_argument("breakpoints must lie in (0,1)");
    if (i > 0 && b <= interior_breaks[i - 1]) throw std::invalid_argument("breakpoints must be increasing");
  }
  std::vector<double> edges{0.0};
  edges.insert(edges.end(), interior_breaks.begin(), interior_breaks.end());
  edges.push_back(1.0);

  Grid g;
  g.weights = Eigen::VectorXd();
  int total = 0;
  for (size_t p = 0; p + 1 < edges.size(); ++p) {
    const double len = edges[p + 1] - edges[p];
    int m = static_cast<int>(std::lround(len * M));
    if (m % 2) ++m;
    if (m < 2) m = 2;
    append_piece(g, edges[p], edges[p + 1], m);
    total += m;
  }
  g.intervals = total;

  g.eval_nodes = g.nodes;
  constexpr double kNudge = 1e-9;
  for (size_t p = 0; p + 1 < g.pieces.size(); ++p) {
    const int end_of_piece = g.pieces[p].second;
    const int start_of_next = g.pieces[p + 1].first;
    g.eval_nodes[end_of_piece] -= kNudge;   // one-sided limit from the left
    g.eval_nodes[start_of_next] += kNudge;  // and from the right
  }
  return g;
}

int snap_intervals(int M, const std::vector<double>& fractions) {
  if (M < 2) M = 2;
  if (M % 2) ++M;
  if (fractions.empty()) return M;
  for (int m = M; m <= M + 64; m += 2) {
    bool ok = true;
    double prev = 0.0;
    for (double f : fractions) {
      const double pos = f * m;
      const double lenm = (f - prev) * m;
      if (std::abs(pos - std::lround(pos)) > 1e-9 ||
          std::lround(lenm) % 2 != 0) {
        ok = false;
        break;
      }
      prev = f;
    }
    // last piece must be even too
    if (ok && std::lround((1.0 - prev) * m) % 2 != 0) ok = false;
    if (ok) return m;
  }
  return M;
}

double integrate(const Grid& grid, const Eigen::VectorXd& values) {
  if (values.size() != grid.weights.size())
    throw std::invalid_argument("value count does not match grid node count");
  return grid.weights.dot(values);
}

}  // namespace graphon
