#pragma once

#include <string>
#include <vector>

#include "hesse/local_jets.hpp"
#include "hesse/potential.hpp"
#include "hesse/tensor.hpp"

namespace hesse {

// Complete Hessian-structure tensor inventory at one chart point.
//
// Conventions: gamma_ijk = d_k g_ij / 2 is fully symmetric, gamma^i_jk equals
// the Levi-Civita Christoffel symbol in the affine chart, R^i_jkl is the
// component of Rm(d_k, d_l) d_j along d_i, and every repeated index pair in a
// norm or trace is contracted through the metric.
struct StructurePoint {
  PotentialPtr field;
  Eigen::VectorXd point;
  int jet_order = 0;

  JetD potential_jet;
  Metric metric;

  Tensor gamma_lower;  // gamma_ijk
  Tensor gamma_mixed;  // gamma^i_jk

  Eigen::VectorXd alpha;        // d_i log sqrt(det g)
  Eigen::VectorXd alpha_trace;  // gamma^r_ri
  Eigen::MatrixXd beta;         // d_i alpha_j
  Eigen::MatrixXd beta_trace;   // H^r_rij

  Tensor hessian_curvature;        // H^i_jkl = d_k gamma^i_jl
  Tensor hessian_curvature_lower;  // H_ijkl = g_ip H^p_jkl

  Tensor riemann;        // R^i_jkl from gamma gamma - gamma gamma
  Tensor riemann_lower;  // R_ijkl = g_ip R^p_jkl
  Tensor riemann_christoffel;  // R^i_jkl from derivatives of the Christoffel symbols
  Eigen::MatrixXd ricci;          // R_jk = R^s_jsk
  Eigen::MatrixXd ricci_formula;  // gamma^s_kr gamma^r_js - alpha_r gamma^r_jk
  double scalar_curvature = 0;    // g^jk R_jk
  double gamma_norm_sq = 0;
  double alpha_norm_sq = 0;

  Eigen::MatrixXd nabla_alpha;  // d_i alpha_j - gamma^k_ij alpha_k
  Tensor nabla_gamma;           // covariant derivative of gamma_jkl along i
  Tensor nabla_gamma_formula;   // phi_ijkl / 2 - (three gamma gamma terms)

  // Present only with a fifth-order jet.
  bool has_fifth_order = false;
  Tensor nabla_nabla_alpha;           // (nabla_i nabla alpha)_jk
  Eigen::VectorXd scalar_gradient;    // d_k R
  Eigen::MatrixXd scalar_hessian;     // d_i d_j R
  double scalar_laplacian = 0;        // g^ij (d_i d_j R - Gamma^k_ij d_k R)

  Eigen::VectorXd alpha_dual;  // first Koszul form of (D', g)
  Eigen::MatrixXd beta_dual;   // D' alpha' in the D-affine chart

  // Connection coefficients in the D-affine chart.
  Tensor flat_connection;  // all zero
  Tensor levi_civita;      // gamma^i_jk
  Tensor dual_connection;  // 2 gamma^i_jk
};

// Builds the inventory from a jet of order `jet_order` (4 or 5) at x.
// Throws DomainError outside the chart, NotPositiveDefinite when the
// Hessian fails the definiteness test.
StructurePoint structure_at(const PotentialPtr& field, const Eigen::VectorXd& x, int jet_order = kMaxJetOrder);

struct IdentityCheck {
  std::string name;
  std::string anchor;
  double residual = 0;
  double tolerance = 0;
  bool pass = false;
};

struct IdentityReport {
  std::vector<IdentityCheck> checks;
  bool all_pass() const;
  const IdentityCheck& find(const std::string& name) const;
};

// Residuals are max-abs differences divided by max(1, size of the reference
// quantity); each passes when below `tolerance`.
IdentityReport verify_identities(const StructurePoint& sp, double tolerance = 1e-8);

// Riemann tensor R^i_jkl = d_k Gamma^i_lj - d_l Gamma^i_kj + Gamma^i_kr Gamma^r_lj
// - Gamma^i_lr Gamma^r_kj with exact jet derivatives of the Christoffel symbols.
Tensor riemann_oracle(const PotentialField& field, const Eigen::VectorXd& x);

enum class LaplacianSource { Jet, FiniteDifference };

// 1/2 Delta R minus the right-hand side of the Bochner-type formula for the
// scalar curvature of a Hessian metric. Needs fifth-order jets.
double bochner_residual(const PotentialPtr& field, const Eigen::VectorXd& x,
                        LaplacianSource source = LaplacianSource::Jet);
double bochner_residual(const StructurePoint& sp, LaplacianSource source = LaplacianSource::Jet);

// Right-hand side terms, exposed for reporting.
struct BochnerTerms {
  double half_laplacian = 0;
  double nabla_nabla_alpha_gamma = 0;
  double rough_laplacian_alpha = 0;
  double nabla_gamma_sq = 0;
  double riemann_sq = 0;
  double ricci_sq = 0;
  double ricci_beta = 0;
  double ricci_nabla_alpha = 0;
  // |nabla alpha|^2: 1/2 Delta |alpha|^2 = (nabla_r nabla_r alpha_i) alpha_i + |nabla alpha|^2, and the
  // stated right-hand side omits the second term. It vanishes wherever nabla alpha = 0.
  double nabla_alpha_sq = 0;
  // Residual of the formula exactly as stated.
  double residual() const {
    return half_laplacian - (nabla_nabla_alpha_gamma - rough_laplacian_alpha + nabla_gamma_sq + riemann_sq +
                             ricci_sq + ricci_beta - ricci_nabla_alpha);
  }
  // Residual with the |nabla alpha|^2 term restored.
  double corrected_residual() const { return residual() + nabla_alpha_sq; }
};
BochnerTerms bochner_terms(const StructurePoint& sp, LaplacianSource source = LaplacianSource::Jet);

// Scalar curvature from a third-order jet.
double scalar_curvature_at(const PotentialField& field, const Eigen::VectorXd& x);

struct Properness {
  double max_gamma_norm = 0;
  bool proper = false;
};
Properness properness_indicator(const PotentialPtr& field, const std::vector<Eigen::VectorXd>& samples);

}  // namespace hesse
