#include "graphon/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace graphon {

namespace {

void check_unit(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0))
    throw std::invalid_argument(std::string(what) + " must lie in [0,1]");
}

double ring_indicator(double y, double yp, double q) {
  const double d = std::abs(y - yp);
  return std::min(d, 1.0 - d) <= q ? 1.0 : 0.0;
}

}  // namespace

Kernel Kernel::er(double p) {
  check_unit(p, "er p");
  Kernel k;
  k.family = KernelFamily::ER;
  k.p = p;
  return k;
}

Kernel Kernel::ring(double q) {
  if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("ring q must lie in (0,1)");
  Kernel k;
  k.family = KernelFamily::Ring;
  k.q = q;
  return k;
}

Kernel Kernel::small_world(double p, double q) {
  if (!(p >= 0.0 && p <= 0.5)) throw std::invalid_argument("small_world p must lie in [0,0.5]");
  if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("small_world q must lie in (0,1)");
  Kernel k;
  k.family = KernelFamily::SmallWorld;
  k.p = p;
  k.q = q;
  return k;
}

Kernel Kernel::power_law(double C, double nu) {
  if (!(C > 0.0 && C < 1.0)) throw std::invalid_argument("power_law C must lie in (0,1)");
  if (!(nu > -0.5 && nu < 0.0)) throw std::invalid_argument("power_law nu must lie in (-0.5,0)");
  Kernel k;
  k.family = KernelFamily::PowerLaw;
  k.C = C;
  k.nu = nu;
  return k;
}

Kernel Kernel::modular(double gamma, double p_in, double p_out) {
  if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("modular gamma must lie in (0,1)");
  check_unit(p_in, "modular p_in");
  check_unit(p_out, "modular p_out");
  Kernel k;
  k.family = KernelFamily::Modular;
  k.gamma = gamma;
  k.p_in = p_in;
  k.p_out = p_out;
  return k;
}

Kernel Kernel::bipartite(double gamma, double p) {
  if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("bipartite gamma must lie in (0,1)");
  check_unit(p, "bipartite p");
  Kernel k;
  k.family = KernelFamily::Bipartite;
  k.gamma = gamma;
  k.p = p;
  return k;
}

double Kernel::eval(double y, double yp) const {
  if (!(y >= 0.0 && y <= 1.0 && yp >= 0.0 && yp <= 1.0))
    throw std::invalid_argument("kernel coordinates must lie in [0,1]");
  switch (family) {
    case KernelFamily::ER:
      return p;
    case KernelFamily::Ring:
      return ring_indicator(y, yp, q);
    case KernelFamily::SmallWorld: {
      const double r = ring_indicator(y, yp, q);
      return (1.0 - p) * r + p * (1.0 - r);
    }
    case KernelFamily::PowerLaw: {
      const double prod = y * yp;
      if (prod <= 0.0) return 1.0;  // nu < 0: the power blows past the clip
      return std::min(C * std::pow(prod, nu), 1.0);
    }
    case KernelFamily::Modular:
      return (y < gamma) == (yp < gamma) ? p_in : p_out;
    case KernelFamily::Bipartite:
      return (y < gamma) != (yp < gamma) ? p : 0.0;
  }
  throw std::logic_error("unreachable kernel family");
}

double Kernel::clip_boundary() const {
  if (family != KernelFamily::PowerLaw)
    throw std::logic_error("clip boundary is a PowerLaw notion");
  return std::pow(C, -1.0 / nu);
}

std::vector<double> Kernel::segmentation() const {
  switch (family) {
    case KernelFamily::Modular:
    case KernelFamily::Bipartite:
      return {gamma};
    default:
      return {};
  }
}

std::vector<double> Kernel::alignment_fractions() const {
  switch (family) {
    case KernelFamily::Ring:
    case KernelFamily::SmallWorld:
      return {q};
    case KernelFamily::Modular:
    case KernelFamily::Bipartite:
      return {gamma};
    default:
      return {};
  }
}

const char* Kernel::name() const {
  switch (family) {
    case KernelFamily::ER: return "er";
    case KernelFamily::Ring: return "ring";
    case KernelFamily::SmallWorld: return "small_world";
    case KernelFamily::PowerLaw: return "power_law";
    case KernelFamily::Modular: return "modular";
    case KernelFamily::Bipartite: return "bipartite";
  }
  return "?";
}

Grid make_grid_for_kernel(const Kernel& kernel, int M) {
  const auto segs = kernel.segmentation();
  const int snapped = snap_intervals(M, kernel.alignment_fractions());
  if (segs.empty()) return uniform_grid(snapped);
  return segmented_grid(segs, snapped);
}

// ---------------------------------------------------------------------------

namespace {

// Jump locations of y' -> W(y, y') inside (0,1).
std::vector<double> row_breakpoints(const Kernel& kernel, double y) {
  std::vector<double> breaks;
  switch (kernel.family) {
    case KernelFamily::Ring:
    case KernelFamily::SmallWorld: {
      // band edges at arc distance q from y, wrapped into [0,1]
      for (double b : {y - kernel.q, y + kernel.q, y - kernel.q + 1.0, y + kernel.q - 1.0})
        if (b > 0.0 && b < 1.0) breaks.push_back(b);
      break;
    }
    case KernelFamily::Modular:
    case KernelFamily::Bipartite:
      breaks.push_back(kernel.gamma);
      break;
    case KernelFamily::PowerLaw: {
      // not a jump, but the clip kink; splitting keeps Simpson fourth-order
      if (y > 0.0) {
        const double b = kernel.clip_boundary() / y;
        if (b > 0.0 && b < 1.0) breaks.push_back(b);
      }
      break;
    }
    case KernelFamily::ER:
      break;
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  return breaks;
}

// Composite Simpson of y' -> W(y,y') over [lo,hi] with m intervals, sampling
// the endpoints one-sided (nudged inward) so jump values at piece edges do
// not leak across pieces.
double simpson_piece(const Kernel& kernel, double y, double lo, double hi, int m) {
  const double h = (hi - lo) / m;
  const double nudge = std::min(1e-9, 0.25 * h);
  double acc = 0.0;
  for (int k = 0; k <= m; ++k) {
    const double t = static_cast<double>(k) / m;
    double yp = lo * (1.0 - t) + hi * t;
    if (k == 0) yp = lo + nudge;
    if (k == m) yp = hi - nudge;
    const double c = (k == 0 || k == m) ? 1.0 : (k % 2 ? 4.0 : 2.0);
    acc += c * kernel.eval(y, yp);
  }
  return acc * h / 3.0;
}

}  // namespace

double weighted_degree_quadrature(const Kernel& kernel, double y, int quadrature_points) {
  if (quadrature_points < 2 || quadrature_points % 2 != 0)
    throw std::invalid_argument("quadrature interval count must be even and >= 2");
  if (!(y >= 0.0 && y <= 1.0)) throw std::invalid_argument("coordinate must lie in [0,1]");

  std::vector<double> edges{0.0};
  for (double b : row_breakpoints(kernel, y)) edges.push_back(b);
  edges.push_back(1.0);

  double total = 0.0;
  for (size_t i = 0; i + 1 < edges.size(); ++i) {
    const double len = edges[i + 1] - edges[i];
    int m = static_cast<int>(std::lround(len * quadrature_points));
    if (m % 2) ++m;
    if (m < 2) m = 2;
    total += simpson_piece(kernel, y, edges[i], edges[i + 1], m);
  }
  return total;
}

double weighted_degree(const Kernel& kernel, double y, int quadrature_points) {
  if (quadrature_points < 2 || quadrature_points % 2 != 0)
    throw std::invalid_argument("quadrature interval count must be even and >= 2");
  if (!(y >= 0.0 && y <= 1.0)) throw std::invalid_argument("coordinate must lie in [0,1]");
  if (kernel.family == KernelFamily::PowerLaw) {
    // closed form: s(y) = 1 below the clip boundary, else
    // (b0*nu/y + C*y^nu)/(1+nu); exact, and well-behaved near y = 0 where
    // the quadrature integrand is steep.
    const double b0 = kernel.clip_boundary();
    if (y <= b0) return 1.0;
    return (b0 / y * kernel.nu + kernel.C * std::pow(y, kernel.nu)) / (1.0 + kernel.nu);
  }
  return weighted_degree_quadrature(kernel, y, quadrature_points);
}

Eigen::MatrixXd step_graphon_matrix(const Kernel& kernel, int N, int subcell_points) {
  if (N < 1) throw std::invalid_argument("node count must be >= 1");
  if (subcell_points < 2 || subcell_points % 2 != 0)
    throw std::invalid_argument("subcell interval count must be even and >= 2");

  const int m = subcell_points;
  Eigen::VectorXd w(m + 1);  // 1-D Simpson weights integrating to 1 over the cell
  for (int k = 0; k <= m; ++k)
    w[k] = ((k == 0 || k == m) ? 1.0 : (k % 2 ? 4.0 : 2.0)) / (3.0 * m);

  // Outermost samples of each cell are nudged inward (as in simpson_piece) so
  // a kernel jump lying exactly on a cell edge does not leak the neighboring
  // cell's value into this cell's average; block kernels whose boundaries
  // align with the partition then average to their exact block values.
  const double nudge = std::min(1e-9, 0.25 / (m * static_cast<double>(N)));
  auto coord = [&](int cell_index, int k) {
    double t = static_cast<double>(k) / m;
    double y = (cell_index + t) / N;
    if (k == 0) y += nudge;
    if (k == m) y -= nudge;
    return std::min(std::max(y, 0.0), 1.0);
  };

  Eigen::MatrixXd WN(N, N);
  Eigen::MatrixXd vals(m + 1, m + 1);
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j <= i; ++j) {
      for (int a = 0; a <= m; ++a) {
        const double y = coord(i, a);
        for (int b = 0; b <= m; ++b) vals(a, b) = kernel.eval(y, coord(j, b));
      }
      const double avg = w.dot(vals * w);
      WN(i, j) = avg;
      WN(j, i) = avg;
    }
  }
  return WN;
}

double kernel_l2_distance(const Kernel& kernel, const Eigen::MatrixXd& WN, int fine_points) {
  const int N = static_cast<int>(WN.rows());
  if (WN.cols() != N) throw std::invalid_argument("step matrix must be square");
  if (fine_points % 2 != 0 || fine_points < 4 * N)
    throw std::invalid_argument("fine grid must be even and at least 4x denser than N");

  const int M = fine_points;
  Eigen::VectorXd w(M + 1);
  for (int k = 0; k <= M; ++k)
    w[k] = ((k == 0 || k == M) ? 1.0 : (k % 2 ? 4.0 : 2.0)) / (3.0 * M);

  auto cell = [N](double y) {
    int c = static_cast<int>(y * N);
    return std::min(c, N - 1);
  };

  double acc = 0.0;
  for (int a = 0; a <= M; ++a) {
    const double y = static_cast<double>(a) / M;
    const int i = cell(y);
    double row = 0.0;
    for (int b = 0; b <= M; ++b) {
      const double yp = static_cast<double>(b) / M;
      const double d = kernel.eval(y, yp) - WN(i, cell(yp));
      row += w[b] * d * d;
    }
    acc += w[a] * row;
  }
  return std::sqrt(std::max(acc, 0.0));
}

}  // namespace graphon
