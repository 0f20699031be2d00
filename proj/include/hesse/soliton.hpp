#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hesse/fields.hpp"
#include "hesse/structure.hpp"

namespace hesse {

enum class SolitonKind { VectorField, Gradient };
enum class SolitonClass { Expanding, Steady, Shrinking };

SolitonClass classify(double lambda);
std::string to_string(SolitonKind kind);
std::string to_string(SolitonClass c);

// beta - 1/2 L_X g = lambda g (vector kind) or beta - nabla nabla f = lambda g (gradient kind).
struct SolitonSpec {
  SolitonKind kind = SolitonKind::VectorField;
  VectorFieldPtr X;
  ScalarFieldPtr f;
  double lambda = 0;

  static SolitonSpec vector(VectorFieldPtr X, double lambda);
  static SolitonSpec gradient(ScalarFieldPtr f, double lambda);
  SolitonClass classification() const { return classify(lambda); }
  // Throws InvalidArgument unless exactly the field matching `kind` is set
  // and its dimension is n.
  void validate(int n) const;
};

// (L_X g)_ij = nabla_i X_j + nabla_j X_i.
Eigen::MatrixXd lie_derivative_metric(const StructurePoint& sp, const VectorField& X);
// d_i d_j f - Gamma^k_ij d_k f.
Eigen::MatrixXd hessian_of_function(const StructurePoint& sp, const ScalarField& f);

struct SolitonResidual {
  Eigen::MatrixXd tensor;
  double max_abs = 0;
};
SolitonResidual soliton_residual(const StructurePoint& sp, const SolitonSpec& spec);

struct EinsteinFit {
  double lambda = 0;        // midpoint of the per-sample trace ratios
  double max_residual = 0;  // max over samples of max |beta - lambda g|
  double min_ratio = 0;
  double max_ratio = 0;
};
// Per-sample ratio g^ij beta_ij / n; the midpoint of their range minimizes
// the worst-case deviation when beta is proportional to g at each sample.
EinsteinFit einstein_fit(const PotentialPtr& field, const std::vector<Eigen::VectorXd>& samples);

// Dual spec on (D', g): X' = X - 2 alpha^sharp, or f' = f - 2F with
// F = log sqrt(det g). The residual is beta' - 1/2 L_X' g - lambda g
// (resp. beta' - nabla nabla f' - lambda g).
struct DualSoliton {
  SolitonSpec spec;
  SolitonResidual residual;
};
DualSoliton dual_soliton(const StructurePoint& sp, const SolitonSpec& spec);

// max |L_{alpha^sharp} g - 2 nabla alpha|.
double lie_alpha_sharp_defect(const StructurePoint& sp);

struct SteadyCheck {
  double beta_norm = 0;  // metric norm of beta
  double lie_norm = 0;   // metric norm of L_X g
  bool steady = false;
};
SteadyCheck steady_killing_check(const StructurePoint& sp, const VectorField& X, double tolerance = 1e-8);

struct TraceIdentity {
  double koszul = 0;               // g^ij beta_ij - div alpha^sharp - |alpha|^2
  std::optional<double> soliton;   // g^ij beta_ij - div X - n lambda
};
TraceIdentity trace_identity_residual(const StructurePoint& sp, const SolitonSpec* spec = nullptr);

}  // namespace hesse
