#include "graphon/models.hpp"

#include <cmath>
#include <stdexcept>

namespace graphon {

Model Model::by_name(const std::string& name) {
  Model m;
  if (name == "sis") m.name = ModelName::SIS;
  else if (name == "double_well") m.name = ModelName::DoubleWell;
  else if (name == "gene_regulatory") m.name = ModelName::GeneRegulatory;
  else if (name == "glv") m.name = ModelName::GLV;
  else if (name == "mutualistic") m.name = ModelName::Mutualistic;
  else if (name == "wilson_cowan") m.name = ModelName::WilsonCowan;
  else throw std::invalid_argument("unknown model: " + name);
  return m;
}

double Model::f(double x) const {
  switch (name) {
    case ModelName::SIS:
      return -mu * x;
    case ModelName::DoubleWell:
      return -(x - r1) * (x - r2) * (x - r3);
    case ModelName::GeneRegulatory:
      return f_exp == 1.0 ? -B * x : -B * std::pow(x, f_exp);
    case ModelName::GLV:
      return growth * x - c * x * x;
    case ModelName::Mutualistic:
      return mut_B + x * (1.0 - x / mut_K) * (x / mut_C - 1.0);
    case ModelName::WilsonCowan:
      return -x;
  }
  throw std::logic_error("unreachable model");
}

double Model::G(double x, double xp) const {
  switch (name) {
    case ModelName::SIS:
      return (1.0 - x) * xp;
    case ModelName::DoubleWell:
      return xp;
    case ModelName::GeneRegulatory: {
      const double xph = h == 2.0 ? xp * xp : std::pow(xp, h);
      if (gene_coupling == GeneCoupling::AsPrinted)
        return (h == 2.0 ? x * x : std::pow(x, h)) / (1.0 + xph);
      return xph / (1.0 + xph);
    }
    case ModelName::GLV:
      return x * xp;
    case ModelName::Mutualistic:
      return x * xp / (mut_D + mut_E * x + mut_H * xp);
    case ModelName::WilsonCowan:
      return 1.0 / (1.0 + std::exp(wc_mu - wc_delta * xp));
  }
  throw std::logic_error("unreachable model");
}

double Model::reduced_rhs(double kappa, double x) const {
  return f(x) + kappa * G(x, x);
}

bool Model::separable() const { return name != ModelName::Mutualistic; }

double Model::phi(double x) const {
  switch (name) {
    case ModelName::SIS:
      return 1.0 - x;
    case ModelName::DoubleWell:
    case ModelName::WilsonCowan:
      return 1.0;
    case ModelName::GeneRegulatory:
      if (gene_coupling != GeneCoupling::AsPrinted) return 1.0;
      return h == 2.0 ? x * x : std::pow(x, h);
    case ModelName::GLV:
      return x;
    case ModelName::Mutualistic:
      throw std::logic_error("mutualistic coupling is not separable");
  }
  throw std::logic_error("unreachable model");
}

double Model::psi(double xp) const {
  switch (name) {
    case ModelName::SIS:
    case ModelName::DoubleWell:
    case ModelName::GLV:
      return xp;
    case ModelName::GeneRegulatory: {
      const double xph = h == 2.0 ? xp * xp : std::pow(xp, h);
      return gene_coupling == GeneCoupling::AsPrinted ? 1.0 / (1.0 + xph) : xph / (1.0 + xph);
    }
    case ModelName::Mutualistic:
      throw std::logic_error("mutualistic coupling is not separable");
    case ModelName::WilsonCowan:
      return 1.0 / (1.0 + std::exp(wc_mu - wc_delta * xp));
  }
  throw std::logic_error("unreachable model");
}

std::vector<std::pair<std::string, double>> Model::initial_conditions() const {
  switch (name) {
    case ModelName::SIS:
      return {{"default", 1.0}};
    case ModelName::DoubleWell:
      return {{"lower", 0.0}, {"upper", 5.0}};
    case ModelName::GeneRegulatory:
      return {{"lower", 0.0}, {"upper", 10.0}};
    case ModelName::GLV:
      // x = 0 is an exact fixed point; a deterministic nudge makes the
      // nontrivial branch reachable
      return {{"default", 1e-6}};
    case ModelName::Mutualistic:
      return {{"lower", 0.0}, {"upper", 10.0}};
    case ModelName::WilsonCowan:
      return {{"lower", 0.0}, {"upper", 8.0}};
  }
  throw std::logic_error("unreachable model");
}

const char* Model::model_name() const {
  switch (name) {
    case ModelName::SIS: return "sis";
    case ModelName::DoubleWell: return "double_well";
    case ModelName::GeneRegulatory: return "gene_regulatory";
    case ModelName::GLV: return "glv";
    case ModelName::Mutualistic: return "mutualistic";
    case ModelName::WilsonCowan: return "wilson_cowan";
  }
  return "?";
}

}  // namespace graphon
