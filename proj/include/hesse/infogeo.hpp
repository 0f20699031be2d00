#pragma once

#include <string>
#include <vector>

#include "hesse/jet.hpp"
#include "hesse/tensor.hpp"

namespace hesse {

// Mean coordinates p_1 .. p_{n-1}; natural coordinates theta_i with the last
// outcome as baseline, p_i = e^theta_i / (1 + sum_j e^theta_j).
enum class SimplexCoords { Mean, Natural };

std::string to_string(SimplexCoords coords);

// All strictly positive distributions on n outcomes.
class SimplexFamily {
 public:
  // Throws InvalidArgument for fewer than two outcomes.
  SimplexFamily(int outcomes, SimplexCoords coords);

  int outcomes() const { return outcomes_; }
  int dimension() const { return outcomes_ - 1; }
  SimplexCoords coords() const { return coords_; }

  bool interior(const Eigen::VectorXd& point) const;
  Eigen::VectorXd probabilities(const Eigen::VectorXd& point) const;
  // Jets of log p(omega) in the parameters, one per outcome. Throws
  // DomainError off the interior.
  std::vector<JetD> log_probability_jets(const Eigen::VectorXd& point, int order) const;

  Eigen::VectorXd to_natural(const Eigen::VectorXd& point) const;
  Eigen::VectorXd to_mean(const Eigen::VectorXd& point) const;

 private:
  void check(const Eigen::VectorXd& point) const;

  int outcomes_;
  SimplexCoords coords_;
};

// g_ij = sum_w p(w) d_i log p(w) d_j log p(w).
Eigen::MatrixXd fisher_metric(const SimplexFamily& family, const Eigen::VectorXd& point);
// T_ijk = sum_w p(w) d_i log p d_j log p d_k log p.
Tensor skewness_tensor(const SimplexFamily& family, const Eigen::VectorXd& point);

// Gamma^(a)_ij,k = g(nabla^(a)_i d_j, d_k) = Gamma^LC_ij,k - (a / 2) T_ijk, with
// the Levi-Civita part from exact derivatives of the metric.
struct ConnectionCoefficients {
  double a = 0;
  Tensor lowered;  // slots (i, j, k)
};
ConnectionCoefficients alpha_connection(const SimplexFamily& family, const Eigen::VectorXd& point, double a);

// max over (i, j, k) of |d_k g_ij - Gamma^(a)_ki,j - Gamma^(-a)_kj,i|.
double duality_pairing_check(const SimplexFamily& family, const Eigen::VectorXd& point, double a);

struct HessianCertificate {
  double potential_hessian_defect = 0;  // max |g^F - Hess log-partition| (natural coordinates)
  double e_flatness_defect = 0;         // max |Gamma^(1)| (natural coordinates)
  double properness_witness = 0;        // max |Gamma^(1) - Gamma^LC| (mean coordinates)
  double tolerance = 0;
  bool hessian = false;
  bool flat = false;
  bool proper = false;
  bool certified() const { return hessian && flat && proper; }
};
// Checks the dually flat Hessian structure at the given natural-coordinate
// samples; the properness witness is measured at the same distributions in
// mean coordinates.
HessianCertificate hessian_structure_certificate(int outcomes, const std::vector<Eigen::VectorXd>& natural_samples,
                                                 double tolerance = 1e-10);

}  // namespace hesse
