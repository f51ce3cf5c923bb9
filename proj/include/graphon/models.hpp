// The six dynamics models as (f, G) pairs at the parameter values used for
// all experiments, with labeled initial conditions and the one-dimensional
// reduced right-hand side f(x) + kappa*G(x,x).
#pragma once

#include <string>
#include <utility>
#include <vector>

namespace graphon {

enum class ModelName { SIS, DoubleWell, GeneRegulatory, GLV, Mutualistic, WilsonCowan };

// The printed source of the gene-regulatory coupling has the Hill numerator
// in the node's own state; the standard form (and the one its own reduction
// presumes) uses the neighbor state. Default is the standard form.
enum class GeneCoupling { HillNeighbor, AsPrinted };

struct Model {
  ModelName name = ModelName::SIS;

  double mu = 1.0;                                    // SIS recovery rate
  double r1 = 1.0, r2 = 2.0, r3 = 5.0;                // DoubleWell roots
  double B = 1.0, f_exp = 1.0, h = 2.0;               // GeneRegulatory
  GeneCoupling gene_coupling = GeneCoupling::HillNeighbor;
  double growth = 0.5, c = 1.1;                       // GLV
  double mut_B = 0.1, mut_C = 1.0, mut_D = 5.0;       // Mutualistic
  double mut_E = 0.9, mut_H = 0.1, mut_K = 5.0;
  double wc_mu = 3.0, wc_delta = 1.0;                 // WilsonCowan

  static Model by_name(const std::string& name);

  // self dynamics f(x)
  double f(double x) const;
  // coupling G(x, x') without the D or W factors (the solver applies those)
  double G(double x, double xp) const;
  // f(x) + kappa * G(x, x), kappa = D*beta_eff or D*alpha
  double reduced_rhs(double kappa, double x) const;

  // G(x,x') = phi(x) * psi(x') for every model except Mutualistic; the
  // structured O(M) coupling paths rely on this factorization.
  bool separable() const;
  double phi(double x) const;
  double psi(double xp) const;

  // labeled constant initial fields; bistable models expose two
  std::vector<std::pair<std::string, double>> initial_conditions() const;

  // GLV needs c > D*growth for finite equilibria; its sweep covers
  // D*growth in [0,1], i.e. D in [0, d_max()]. Other models sweep the
  // effective coupling kappa over [0,20] directly.
  bool has_bounded_d_range() const { return name == ModelName::GLV; }
  double d_max() const { return 1.0 / growth; }

  const char* model_name() const;
};

}  // namespace graphon
