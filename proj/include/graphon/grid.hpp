// Quadrature grids on [0,1]: plain composite-Simpson grids and segmented
// grids whose pieces meet at kernel discontinuities with a duplicated
// interface node, so blockwise-constant integrands are integrated exactly.
#pragma once

#include <Eigen/Core>
#include <utility>
#include <vector>

namespace graphon {

struct Grid {
  // Output coordinates of the nodes. On a segmented grid the interface
  // coordinate appears twice (once as the end of a piece, once as the start
  // of the next one).
  std::vector<double> nodes;
  // Coordinates used when evaluating a kernel at a node. Identical to
  // `nodes` except at duplicated interface nodes, which are nudged by
  // +-1e-9 so one-sided limits of discontinuous kernels are sampled.
  std::vector<double> eval_nodes;
  // Quadrature weights (composite Simpson per piece); they sum to 1.
  Eigen::VectorXd weights;
  // Inclusive node index ranges of the smooth pieces. A plain grid has one
  // piece covering everything.
  std::vector<std::pair<int, int>> pieces;
  // Interval count of a plain uniform grid, or the total interval count the
  // segmented grid was built from. Kept for reporting.
  int intervals = 0;

  int point_count() const { return static_cast<int>(nodes.size()); }
  bool segmented() const { return pieces.size() > 1; }
};

// Uniform grid with M intervals (M even), Simpson weights (1,4,2,...,4,1)/(3M).
Grid uniform_grid(int M);

// Grid split at the given interior breakpoints (strictly increasing, in
// (0,1)). Each piece gets an even Simpson subgrid with interval counts
// proportional to its length, totalling approximately M; interface nodes are
// duplicated. M must be chosen so each piece's share is even (see
// snap_intervals); otherwise shares are rounded up to even.
Grid segmented_grid(const std::vector<double>& interior_breaks, int M);

// Smallest even M' >= M such that every breakpoint b in `fractions` lands on
// a node (b*M' integer within 1e-9) and the implied piece subdivisions are
// even. Searches up to M+64, then falls back to the smallest even M' >= M.
int snap_intervals(int M, const std::vector<double>& fractions);

// Composite-Simpson value of the integral that `values` samples on the grid.
double integrate(const Grid& grid, const Eigen::VectorXd& values);

}  // namespace graphon
