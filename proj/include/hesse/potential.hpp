#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "hesse/expression.hpp"
#include "hesse/jet.hpp"

namespace hesse {

// A smooth convex potential on an affine chart. Evaluation goes through jet
// arithmetic, so every partial derivative up to kMaxJetOrder is exact.
class PotentialField {
 public:
  virtual ~PotentialField() = default;

  virtual int dimension() const = 0;
  virtual std::string id() const = 0;
  // Chart-domain membership. The default accepts every point; evaluation may
  // still throw DomainError.
  virtual bool in_domain(const Eigen::VectorXd& x) const;
  int max_order() const { return kMaxJetOrder; }

  // All partial derivatives of order <= `order` at x.
  JetD jet(const Eigen::VectorXd& x, int order) const;
  // Evaluates the potential on arbitrary coordinate jets (no domain check).
  virtual JetD evaluate(std::span<const JetD> coordinates) const = 0;
};

using PotentialPtr = std::shared_ptr<const PotentialField>;

class ExpressionPotential final : public PotentialField {
 public:
  explicit ExpressionPotential(Expression expression, std::string id = {});
  int dimension() const override { return expression_.dimension(); }
  std::string id() const override { return id_; }
  JetD evaluate(std::span<const JetD> coordinates) const override;
  const Expression& expression() const { return expression_; }

 private:
  Expression expression_;
  std::string id_;
};

// Parameters of the built-in families.
//   quadratic                 n = dimension
//   log_cone                  n = dimension (>= 2)
//   torus_perturbed           n = dimension, epsilon, one frequency per axis
//   multinomial_logpartition  n = outcome count (dimension n - 1)
struct FamilyParams {
  int n = 2;
  double epsilon = 0.0;
  std::vector<double> frequencies;
};

PotentialPtr builtin_family(std::string_view name, const FamilyParams& params);

// |x|^2 / 2.
PotentialPtr quadratic_potential(int dimension);
// -log(x_n^2 - sum_{i<n} x_i^2) on the future cone x_n > |x'|.
PotentialPtr log_cone_potential(int dimension);
// |x|^2 / 2 + epsilon * prod_i sin(k_i x_i). The Hessian is I + epsilon * M
// with |M_ij| <= k_i k_j, so it stays positive definite whenever
// |epsilon| * sum_i k_i^2 < 1; construction rejects epsilon outside that bound.
PotentialPtr torus_perturbed_potential(int dimension, double epsilon, std::vector<double> frequencies);
double torus_epsilon_bound(std::span<const double> frequencies);
// log(1 + sum_i exp(theta_i)) with outcomes - 1 natural parameters.
PotentialPtr multinomial_logpartition_potential(int outcomes);
// c * phi; scales the Hessian metric by c.
PotentialPtr scaled_potential(PotentialPtr base, double factor);

// Lazy positive-definiteness test used at evaluation sites:
// smallest eigenvalue > 1e-12 * trace.
bool hessian_is_positive_definite(const Eigen::MatrixXd& hessian);

}  // namespace hesse
