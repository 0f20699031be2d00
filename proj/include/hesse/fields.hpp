#pragma once

#include <memory>
#include <string>
#include <vector>

#include "hesse/expression.hpp"
#include "hesse/potential.hpp"

namespace hesse {

// A vector field given by its contravariant components X^i, evaluated as jets.
class VectorField {
 public:
  virtual ~VectorField() = default;
  virtual int dimension() const = 0;
  virtual std::string describe() const = 0;
  // Jets of X^0 .. X^{n-1} of order `order` around x.
  virtual std::vector<JetD> jet(const Eigen::VectorXd& x, int order) const = 0;
  Eigen::VectorXd value(const Eigen::VectorXd& x) const;
};

class ScalarField {
 public:
  virtual ~ScalarField() = default;
  virtual int dimension() const = 0;
  virtual std::string describe() const = 0;
  virtual JetD jet(const Eigen::VectorXd& x, int order) const = 0;
};

using VectorFieldPtr = std::shared_ptr<const VectorField>;
using ScalarFieldPtr = std::shared_ptr<const ScalarField>;

VectorFieldPtr expression_vector_field(std::vector<Expression> components);
ScalarFieldPtr expression_scalar_field(Expression f);
VectorFieldPtr zero_vector_field(int dimension);

// alpha^sharp = g^ij alpha_j of the Hessian structure of `potential`.
// Costs three extra jet orders of the potential.
VectorFieldPtr koszul_sharp_field(PotentialPtr potential);
// F = log sqrt(det g), so that alpha = dF in the affine chart.
ScalarFieldPtr half_log_det_field(PotentialPtr potential);
// Metric gradient g^ij d_j f.
VectorFieldPtr gradient_field(PotentialPtr potential, ScalarFieldPtr f);

// a X + b Y and a f + b h.
VectorFieldPtr combine(double a, VectorFieldPtr x, double b, VectorFieldPtr y);
ScalarFieldPtr combine(double a, ScalarFieldPtr f, double b, ScalarFieldPtr h);

}  // namespace hesse
