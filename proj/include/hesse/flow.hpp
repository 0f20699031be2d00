#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "hesse/expression.hpp"
#include "hesse/potential.hpp"

namespace hesse {

// Potential mode: the state is psi on the periodic lattice over [0, 2 pi)^n
// and g = I + D^2 psi. Metric mode: the state is the symmetric g per node on a
// boxed patch whose outer layer follows a prescribed boundary metric.
enum class GridMode { Potential, Metric };
enum class Scheme { Euler, RK4 };

std::string to_string(GridMode mode);
std::string to_string(Scheme scheme);

using MetricBoundary = std::function<Eigen::MatrixXd(const Eigen::VectorXd& x, double t)>;

// Nodes closer than this to a patch edge are boundary nodes: the 5-point
// stencils reach two nodes out.
inline constexpr int kBoundaryLayer = 2;

struct MetricGrid {
  GridMode mode = GridMode::Potential;
  int dimension = 1;  // 1 or 2
  std::vector<int> shape;
  std::vector<double> spacing;
  std::vector<double> origin;
  bool periodic = true;
  MetricBoundary boundary;  // metric mode only
  // Node-major; potential mode stores psi, metric mode the packed upper
  // triangle (g11) or (g11, g12, g22).
  std::vector<double> state;
  double time = 0;

  int node_count() const;
  int components() const;
  Eigen::VectorXd coordinate(int node) const;
  // Distance in nodes to the nearest patch edge; large on the torus.
  int margin(int node) const;
  bool interior(int node) const { return margin(node) >= kBoundaryLayer; }
};

// Per-node symmetric tensor field. Entries at invalid nodes are zero.
struct GridField {
  std::vector<Eigen::MatrixXd> values;
  std::vector<char> valid;
};

MetricGrid torus_potential_grid(int dimension, int nodes_per_axis, const std::function<double(const Eigen::VectorXd&)>& psi0);
MetricGrid torus_potential_grid(int dimension, int nodes_per_axis, const Expression& psi0);
// psi0 = phi - |x|^2 / 2 of a torus_perturbed potential.
MetricGrid torus_potential_grid(int nodes_per_axis, const FamilyParams& torus_family);

// Patch of nodes_per_axis^n nodes centred at `center` with metric Hess phi.
MetricGrid metric_patch_grid(const PotentialField& field, const Eigen::VectorXd& center, int nodes_per_axis,
                             double spacing, MetricBoundary boundary);
// (1 + 2 lambda t) Hess phi(x): the exact flow of Hesse-Einstein data.
MetricBoundary einstein_boundary(PotentialPtr field, double lambda);

// Metric-mode copy with every g scaled by c (boundary scaled as well).
MetricGrid scaled(const MetricGrid& grid, double c);

GridField metric_on_grid(const MetricGrid& grid);
// beta_ij = d_i d_j log sqrt(det g) by 4th-order central differences: the
// 5-point second difference on the diagonal, the product of 5-point first
// differences off it. Throws FlowBlowUp if g is not positive definite at a node.
GridField beta_on_grid(const MetricGrid& grid);

// Largest stable explicit step: 0.25 h^2 / (n max |g^ij|).
double cfl_limit(const MetricGrid& grid);
int substeps_for(const MetricGrid& grid, double dt);

// Advances by dt, splitting into equal substeps that respect cfl_limit.
MetricGrid flow_step(const MetricGrid& grid, double dt, Scheme scheme);

struct TorusIntegrals {
  double beta_trace = 0;  // int g^ij beta_ij dv
  double alpha_sq = 0;    // int |alpha|^2 dv
  double div_alpha = 0;   // int div alpha^sharp dv
  double stokes_defect() const { return beta_trace - alpha_sq; }
};
TorusIntegrals torus_integrals(const MetricGrid& grid);

struct SelfSimilarity {
  double c_hat = 0;
  double deviation = 0;  // max |g - c_hat g0| over nodes and components
  double reference_norm = 0;
  bool self_similar = false;  // deviation < 1e-6 |g0|_inf
};
SelfSimilarity self_similarity_diagnostic(const MetricGrid& grid, const GridField& reference);

struct FlowRecord {
  double t = 0;
  double max_beta = 0;
  double min_eig = 0;
  double max_eig = 0;
  double int_beta_trace = 0;  // NaN off the torus
  double int_alpha_sq = 0;    // NaN off the torus
  double c_hat = 0;
  double ss_deviation = 0;
};
FlowRecord diagnose(const MetricGrid& grid, const GridField& reference);

struct FlowRun {
  std::vector<FlowRecord> records;
  MetricGrid final_state;  // last valid state
  bool blew_up = false;
  std::string message;
  bool self_similar = false;  // at the final state
};
// Integrates to t_end with round(t_end / dt) steps, recording every
// `record_every` steps plus the initial and final states. A blow-up stops the
// run and keeps the last valid state.
FlowRun integrate(const MetricGrid& initial, double dt, Scheme scheme, double t_end, int record_every = 1);

void write_csv(std::ostream& out, const std::vector<FlowRecord>& records);

}  // namespace hesse
