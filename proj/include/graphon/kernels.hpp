// The six graphon families: pointwise evaluation, weighted degree s(y),
// step-graphon matrices W_N (cell averages), and L2 kernel distance.
#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "graphon/grid.hpp"

namespace graphon {

enum class KernelFamily { ER, Ring, SmallWorld, PowerLaw, Modular, Bipartite };

struct Kernel {
  KernelFamily family = KernelFamily::ER;
  double p = 0.0;                      // ER, SmallWorld, Bipartite
  double q = 0.0;                      // Ring, SmallWorld
  double C = 0.0, nu = 0.0;            // PowerLaw
  double gamma = 0.0;                  // Modular, Bipartite
  double p_in = 0.0, p_out = 0.0;      // Modular

  static Kernel er(double p);
  static Kernel ring(double q);
  static Kernel small_world(double p, double q);
  static Kernel power_law(double C, double nu);
  static Kernel modular(double gamma, double p_in, double p_out);
  static Kernel bipartite(double gamma, double p);

  // W(y, y'). Throws std::invalid_argument for coordinates outside [0,1].
  double eval(double y, double yp) const;

  // PowerLaw clip boundary b0 = C^(-1/nu): W == 1 wherever y*y' <= b0.
  double clip_boundary() const;

  // Interior breakpoints at which solver grids should be segmented
  // (block boundaries). Empty for families handled on uniform grids.
  std::vector<double> segmentation() const;

  // Fractions that must land on grid nodes (band half-width or block edge),
  // used to snap the interval count. Empty for ER/PowerLaw.
  std::vector<double> alignment_fractions() const;

  const char* name() const;  // "er", "ring", ...
};

// Grid suited to the kernel at roughly M intervals: segmented at block
// boundaries for Modular/Bipartite, snapped so q*M is an integer for
// Ring/SmallWorld, plain uniform otherwise. The default M=200 becomes 204
// for the 1/3-parameter families.
Grid make_grid_for_kernel(const Kernel& kernel, int M);

// s(y) = int_0^1 W(y,y') dy'. PowerLaw uses the closed form (the integrand's
// clipped region makes it exact); everything else integrates piecewise
// composite Simpson with pieces split at the jump locations of W(y, .).
// `quadrature_points` (even, >= 2) is the total interval budget.
double weighted_degree(const Kernel& kernel, double y, int quadrature_points);

// Pure quadrature path, kept as a cross-check for the PowerLaw closed form.
double weighted_degree_quadrature(const Kernel& kernel, double y, int quadrature_points);

// (W_N)_ij = N^2 * integral of W over cell I_i x I_j, by per-cell 2-D
// composite Simpson with `subcell_points` intervals per axis (even).
Eigen::MatrixXd step_graphon_matrix(const Kernel& kernel, int N, int subcell_points = 8);

// || W_N - W ||_{L2([0,1]^2)} with W_N piecewise constant on N x N cells,
// by 2-D Simpson on a fine uniform grid with `fine_points` intervals per
// axis (even, at least 4N).
double kernel_l2_distance(const Kernel& kernel, const Eigen::MatrixXd& WN, int fine_points);

}  // namespace graphon
