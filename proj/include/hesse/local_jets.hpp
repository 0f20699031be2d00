#pragma once

#include <vector>

#include "hesse/jet.hpp"
#include "hesse/potential.hpp"

namespace hesse {

// Jets of the Hessian-geometry fields around one chart point, derived from a
// single order-K jet of the potential. Entry (i, j) of a matrix field lives at
// i * n + j, entry (i, j, k) of a rank-3 field at (i * n + j) * n + k.
struct LocalJets {
  int dimension = 0;
  int order = 0;                 // order of the potential jet
  JetD phi;                      // order K
  std::vector<JetD> g;           // g_ij = d_i d_j phi, order K-2
  std::vector<JetD> g_inv;       // order K-2
  JetD half_log_det;             // log sqrt(det g), order K-2
  // The rest needs K >= 3.
  std::vector<JetD> gamma;       // gamma_ijk = d_k g_ij / 2, order K-3
  std::vector<JetD> christoffel; // gamma^i_jk = g^ip gamma_pjk, order K-3
  std::vector<JetD> alpha;       // d_i log sqrt(det g), order K-3
  JetD scalar_curvature;         // |gamma|^2 - |alpha|^2, order K-3

  bool has_gamma() const { return order >= 3; }
};

LocalJets local_jets(const PotentialField& field, const Eigen::VectorXd& x, int order);

// Inverse and log-determinant of a symmetric positive definite matrix of jets
// by Gaussian elimination in jet arithmetic (no pivoting; pivots of an SPD
// matrix are positive).
std::vector<JetD> invert_jet_matrix(const std::vector<JetD>& m, int n);
JetD log_det_jet(const std::vector<JetD>& m, int n);

}  // namespace hesse
