#include "hesse/infogeo.hpp"

#include <algorithm>
#include <cmath>

#include "hesse/potential.hpp"
#include "hesse/structure.hpp"

namespace hesse {

std::string to_string(SimplexCoords coords) { return coords == SimplexCoords::Mean ? "mean" : "natural"; }

SimplexFamily::SimplexFamily(int outcomes, SimplexCoords coords) : outcomes_(outcomes), coords_(coords) {
  if (outcomes < 2)
    throw InvalidArgument("simplex family with " + std::to_string(outcomes) + " outcome(s) has parameter dimension " +
                          std::to_string(std::max(0, outcomes - 1)));
  if (outcomes - 1 > kMaxJetDimension)
    throw InvalidArgument("simplex family supports at most " + std::to_string(kMaxJetDimension + 1) + " outcomes");
}

bool SimplexFamily::interior(const Eigen::VectorXd& point) const {
  if (point.size() != dimension() || !point.allFinite()) return false;
  if (coords_ == SimplexCoords::Natural) return true;
  return (point.array() > 0).all() && point.sum() < 1;
}

void SimplexFamily::check(const Eigen::VectorXd& point) const {
  if (point.size() != dimension())
    throw InvalidArgument("parameter of dimension " + std::to_string(point.size()) + " for " +
                          std::to_string(outcomes_) + " outcomes");
  if (!interior(point)) throw DomainError("parameter outside the open simplex");
}

std::vector<JetD> SimplexFamily::log_probability_jets(const Eigen::VectorXd& point, int order) const {
  check(point);
  const int d = dimension();
  const auto x = coordinate_jets<double>(point, order);
  std::vector<JetD> out;
  out.reserve(outcomes_);
  if (coords_ == SimplexCoords::Mean) {
    JetD rest = JetD::constant(d, order, 1.0);
    for (const auto& p : x) {
      out.push_back(log(p));
      rest -= p;
    }
    out.push_back(log(rest));
  } else {
    JetD z = JetD::constant(d, order, 1.0);
    for (const auto& t : x) z += exp(t);
    const JetD log_z = log(z);
    for (const auto& t : x) out.push_back(t - log_z);
    out.push_back(-log_z);
  }
  return out;
}

Eigen::VectorXd SimplexFamily::probabilities(const Eigen::VectorXd& point) const {
  const auto l = log_probability_jets(point, 0);
  Eigen::VectorXd p(outcomes_);
  for (int w = 0; w < outcomes_; ++w) p[w] = std::exp(l[w].value());
  return p;
}

Eigen::VectorXd SimplexFamily::to_natural(const Eigen::VectorXd& point) const {
  check(point);
  if (coords_ == SimplexCoords::Natural) return point;
  const Eigen::VectorXd p = probabilities(point);
  return (p.head(dimension()).array() / p[dimension()]).log().matrix();
}

Eigen::VectorXd SimplexFamily::to_mean(const Eigen::VectorXd& point) const {
  check(point);
  if (coords_ == SimplexCoords::Mean) return point;
  return probabilities(point).head(dimension());
}

namespace {

// Jets of the Fisher metric entries (order 1), row-major.
std::vector<JetD> fisher_jets(const SimplexFamily& family, const Eigen::VectorXd& point) {
  const int d = family.dimension();
  const auto l = family.log_probability_jets(point, 2);
  std::vector<JetD> g(static_cast<std::size_t>(d) * d, JetD::constant(d, 1, 0.0));
  for (const auto& lw : l) {
    const JetD p = exp(lw.truncated(1));
    for (int i = 0; i < d; ++i)
      for (int j = i; j < d; ++j) g[i * d + j] += p * lw.partial(i) * lw.partial(j);
  }
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < i; ++j) g[i * d + j] = g[j * d + i];
  return g;
}

}  // namespace

Eigen::MatrixXd fisher_metric(const SimplexFamily& family, const Eigen::VectorXd& point) {
  const int d = family.dimension();
  const auto l = family.log_probability_jets(point, 1);
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(d, d);
  for (const auto& lw : l) {
    const Eigen::VectorXd s = lw.gradient();
    g += std::exp(lw.value()) * s * s.transpose();
  }
  return g;
}

Tensor skewness_tensor(const SimplexFamily& family, const Eigen::VectorXd& point) {
  const int d = family.dimension();
  const auto l = family.log_probability_jets(point, 1);
  Tensor t = Tensor::covariant(d, 3);
  for (const auto& lw : l) {
    const double p = std::exp(lw.value());
    const Eigen::VectorXd s = lw.gradient();
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k) t(i, j, k) += p * s[i] * s[j] * s[k];
  }
  return t;
}

ConnectionCoefficients alpha_connection(const SimplexFamily& family, const Eigen::VectorXd& point, double a) {
  const int d = family.dimension();
  const auto g = fisher_jets(family, point);
  const Tensor t = skewness_tensor(family, point);
  const auto dg = [&](int i, int j, int k) { return g[i * d + j].d({k}); };
  ConnectionCoefficients c;
  c.a = a;
  c.lowered = Tensor::covariant(d, 3);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        c.lowered(i, j, k) = 0.5 * (dg(j, k, i) + dg(i, k, j) - dg(i, j, k)) - 0.5 * a * t(i, j, k);
  return c;
}

double duality_pairing_check(const SimplexFamily& family, const Eigen::VectorXd& point, double a) {
  const int d = family.dimension();
  const auto g = fisher_jets(family, point);
  const Tensor plus = alpha_connection(family, point, a).lowered;
  const Tensor minus = alpha_connection(family, point, -a).lowered;
  double r = 0;
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        r = std::max(r, std::abs(g[i * d + j].d({k}) - plus(k, i, j) - minus(k, j, i)));
  return r;
}

HessianCertificate hessian_structure_certificate(int outcomes, const std::vector<Eigen::VectorXd>& natural_samples,
                                                 double tolerance) {
  const SimplexFamily natural(outcomes, SimplexCoords::Natural);
  const SimplexFamily mean(outcomes, SimplexCoords::Mean);
  if (natural_samples.empty()) throw InvalidArgument("certificate needs at least one sample point");
  const PotentialPtr partition = multinomial_logpartition_potential(outcomes);
  HessianCertificate c;
  c.tolerance = tolerance;
  for (const auto& theta : natural_samples) {
    const Eigen::MatrixXd gf = fisher_metric(natural, theta);
    const Eigen::MatrixXd hess = partition->jet(theta, 2).hessian();
    c.potential_hessian_defect = std::max(c.potential_hessian_defect, (gf - hess).cwiseAbs().maxCoeff());
    c.e_flatness_defect = std::max(c.e_flatness_defect, alpha_connection(natural, theta, 1.0).lowered.max_abs());
    const Eigen::VectorXd p = natural.to_mean(theta);
    const Tensor diff = alpha_connection(mean, p, 1.0).lowered - alpha_connection(mean, p, 0.0).lowered;
    c.properness_witness = std::max(c.properness_witness, diff.max_abs());
  }
  c.hessian = c.potential_hessian_defect < tolerance;
  c.flat = c.e_flatness_defect < tolerance;
  c.proper = c.properness_witness > 1e-8;
  return c;
}

}  // namespace hesse
