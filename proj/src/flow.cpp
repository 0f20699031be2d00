#include "hesse/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

namespace hesse {

std::string to_string(GridMode mode) { return mode == GridMode::Potential ? "potential" : "metric"; }
std::string to_string(Scheme scheme) { return scheme == Scheme::Euler ? "euler" : "rk4"; }

int MetricGrid::node_count() const {
  int c = 1;
  for (int s : shape) c *= s;
  return c;
}

int MetricGrid::components() const {
  if (mode == GridMode::Potential) return 1;
  return dimension * (dimension + 1) / 2;
}

namespace {

std::vector<int> unravel(const MetricGrid& g, int node) {
  std::vector<int> idx(g.dimension);
  for (int a = g.dimension - 1; a >= 0; --a) {
    idx[a] = node % g.shape[a];
    node /= g.shape[a];
  }
  return idx;
}

}  // namespace

Eigen::VectorXd MetricGrid::coordinate(int node) const {
  const auto idx = unravel(*this, node);
  Eigen::VectorXd x(dimension);
  for (int a = 0; a < dimension; ++a) x[a] = origin[a] + idx[a] * spacing[a];
  return x;
}

int MetricGrid::margin(int node) const {
  if (periodic) return std::numeric_limits<int>::max();
  const auto idx = unravel(*this, node);
  int m = std::numeric_limits<int>::max();
  for (int a = 0; a < dimension; ++a) m = std::min({m, idx[a], shape[a] - 1 - idx[a]});
  return m;
}

namespace {

constexpr int kOffsets[4] = {-2, -1, 1, 2};
constexpr double kFirst[4] = {1.0 / 12, -8.0 / 12, 8.0 / 12, -1.0 / 12};

// Packed position of (i, j) in the upper triangle.
int packed(int n, int i, int j) {
  if (i > j) std::swap(i, j);
  return n == 1 ? 0 : i + j;
}

// Neighbour table for the 5-point stencils; -1 where a patch stencil leaves the lattice.
class Stencil {
 public:
  explicit Stencil(const MetricGrid& g) : n_(g.dimension), h_(g.spacing), nb_(g.node_count() * n_ * 4) {
    const int count = g.node_count();
    std::vector<int> stride(n_, 1);
    for (int a = n_ - 2; a >= 0; --a) stride[a] = stride[a + 1] * g.shape[a + 1];
    for (int node = 0; node < count; ++node) {
      const auto idx = unravel(g, node);
      for (int a = 0; a < n_; ++a)
        for (int k = 0; k < 4; ++k) {
          int j = idx[a] + kOffsets[k];
          if (g.periodic) {
            j = ((j % g.shape[a]) + g.shape[a]) % g.shape[a];
          } else if (j < 0 || j >= g.shape[a]) {
            nb_[(node * n_ + a) * 4 + k] = -1;
            continue;
          }
          nb_[(node * n_ + a) * 4 + k] = node + (j - idx[a]) * stride[a];
        }
    }
  }

  int neighbour(int node, int axis, int k) const { return nb_[(node * n_ + axis) * 4 + k]; }

  bool has(int node, int axis) const {
    for (int k = 0; k < 4; ++k)
      if (neighbour(node, axis, k) < 0) return false;
    return true;
  }

  // d/dx_axis of component c of a node-major array with `stride` entries per node.
  double d1(const std::vector<double>& f, int stride, int c, int node, int axis) const {
    double s = 0;
    for (int k = 0; k < 4; ++k) s += kFirst[k] * f[neighbour(node, axis, k) * stride + c];
    return s / h_[axis];
  }

  // Second derivatives of a scalar node array; the node must be at least two
  // nodes from every patch edge.
  double d2(const std::vector<double>& f, int node, int a, int b) const {
    if (a == b) {
      const double s = -f[neighbour(node, a, 0)] + 16 * f[neighbour(node, a, 1)] - 30 * f[node] +
                       16 * f[neighbour(node, a, 2)] - f[neighbour(node, a, 3)];
      return s / (12 * h_[a] * h_[a]);
    }
    double s = 0;
    for (int p = 0; p < 4; ++p) {
      const int m = neighbour(node, b, p);
      for (int q = 0; q < 4; ++q) s += kFirst[p] * kFirst[q] * f[neighbour(m, a, q)];
    }
    return s / (h_[a] * h_[b]);
  }

 private:
  int n_;
  std::vector<double> h_;
  std::vector<int> nb_;
};

// Packed metric per node.
std::vector<double> packed_metric(const MetricGrid& g, const Stencil& st) {
  if (g.mode == GridMode::Metric) return g.state;
  const int n = g.dimension, c = n * (n + 1) / 2, count = g.node_count();
  std::vector<double> out(static_cast<std::size_t>(count) * c);
  for (int node = 0; node < count; ++node)
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) out[node * c + packed(n, i, j)] = (i == j ? 1.0 : 0.0) + st.d2(g.state, node, i, j);
  return out;
}

struct NodeMetric {
  double inv[3];  // packed inverse
  double det;
};

// Explicit adjugate inverse; throws on loss of definiteness.
NodeMetric node_inverse(const double* g, int n, int node, double t) {
  NodeMetric m{};
  if (n == 1) {
    if (!(g[0] > 0)) throw FlowBlowUp("metric not positive definite", node, t);
    m.det = g[0];
    m.inv[0] = 1.0 / g[0];
    return m;
  }
  m.det = g[0] * g[2] - g[1] * g[1];
  if (!(g[0] > 0) || !(m.det > 0)) throw FlowBlowUp("metric not positive definite", node, t);
  m.inv[0] = g[2] / m.det;
  m.inv[1] = -g[1] / m.det;
  m.inv[2] = g[0] / m.det;
  return m;
}

struct Geometry {
  std::vector<double> metric;  // packed g
  std::vector<NodeMetric> inverse;
  std::vector<double> half_log_det;  // log sqrt(det g / det g at node 0)
  std::vector<double> alpha;         // n per node
  std::vector<double> beta;          // packed
  std::vector<char> valid;           // alpha and beta available
};

// log sqrt(det g) is taken relative to node 0 so that a constant rescaling of
// g cancels before any differencing.
Geometry geometry(const MetricGrid& g, const Stencil& st) {
  const int n = g.dimension, c = n * (n + 1) / 2, count = g.node_count();
  Geometry geo;
  geo.metric = packed_metric(g, st);
  geo.inverse.resize(count);
  geo.half_log_det.resize(count);
  for (int node = 0; node < count; ++node) geo.inverse[node] = node_inverse(&geo.metric[node * c], n, node, g.time);
  for (int node = 0; node < count; ++node)
    geo.half_log_det[node] = 0.5 * std::log(geo.inverse[node].det / geo.inverse[0].det);

  geo.alpha.assign(static_cast<std::size_t>(count) * n, 0.0);
  geo.beta.assign(static_cast<std::size_t>(count) * c, 0.0);
  geo.valid.assign(count, 0);
  for (int node = 0; node < count; ++node) {
    bool ok = true;
    for (int a = 0; a < n; ++a) ok = ok && st.has(node, a);
    if (!ok) continue;
    geo.valid[node] = 1;
    for (int i = 0; i < n; ++i) {
      geo.alpha[node * n + i] = st.d1(geo.half_log_det, 1, 0, node, i);
      for (int j = i; j < n; ++j) geo.beta[node * c + packed(n, i, j)] = st.d2(geo.half_log_det, node, i, j);
    }
  }
  return geo;
}

Eigen::MatrixXd unpack(const double* p, int n) {
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = p[packed(n, i, j)];
  return m;
}

void check_grid(const MetricGrid& g) {
  if (g.dimension < 1 || g.dimension > 2) throw InvalidArgument("flow grids support n = 1 or 2");
  if (static_cast<int>(g.shape.size()) != g.dimension || static_cast<int>(g.spacing.size()) != g.dimension ||
      static_cast<int>(g.origin.size()) != g.dimension)
    throw InvalidArgument("grid shape, spacing and origin need one entry per axis");
  for (int s : g.shape)
    if (s < 5) throw InvalidArgument("grid needs at least 5 nodes per axis");
  if (g.periodic != (g.mode == GridMode::Potential))
    throw InvalidArgument("potential grids are periodic and metric grids are boxed patches");
  if (g.mode == GridMode::Metric && !g.boundary) throw InvalidArgument("metric patch without a boundary function");
  if (g.state.size() != static_cast<std::size_t>(g.node_count()) * g.components())
    throw InvalidArgument("grid state has the wrong length");
}

GridField to_field(const MetricGrid& g, const std::vector<double>& values, const std::vector<char>& valid) {
  const int n = g.dimension, c = n * (n + 1) / 2, count = g.node_count();
  GridField f;
  f.values.resize(count);
  f.valid = valid;
  for (int node = 0; node < count; ++node)
    f.values[node] = valid[node] ? unpack(&values[node * c], n) : Eigen::MatrixXd::Zero(n, n);
  return f;
}

void apply_boundary(MetricGrid& g, double t) {
  if (g.mode != GridMode::Metric) return;
  const int n = g.dimension, c = g.components();
  for (int node = 0; node < g.node_count(); ++node) {
    if (g.interior(node)) continue;
    const Eigen::MatrixXd b = g.boundary(g.coordinate(node), t);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) g.state[node * c + packed(n, i, j)] = b(i, j);
  }
}

// Time derivative of the state at time t (boundary already applied).
std::vector<double> rhs(const MetricGrid& g, const Stencil& st) {
  const int count = g.node_count();
  if (g.mode == GridMode::Potential) {
    const int n = g.dimension, c = n * (n + 1) / 2;
    const auto metric = packed_metric(g, st);
    std::vector<double> out(count);
    for (int node = 0; node < count; ++node) out[node] = std::log(node_inverse(&metric[node * c], n, node, g.time).det);
    return out;
  }
  const Geometry geo = geometry(g, st);
  std::vector<double> out(g.state.size(), 0.0);
  const int c = g.components();
  for (int node = 0; node < count; ++node)
    if (g.interior(node))
      for (int k = 0; k < c; ++k) out[node * c + k] = 2.0 * geo.beta[node * c + k];
  return out;
}

MetricGrid advanced(const MetricGrid& g, const std::vector<double>& k, double dt, double t) {
  MetricGrid out = g;
  for (std::size_t i = 0; i < out.state.size(); ++i) out.state[i] += dt * k[i];
  out.time = t;
  apply_boundary(out, t);
  return out;
}

MetricGrid single_step(const MetricGrid& g, const Stencil& st, double dt, Scheme scheme) {
  const double t = g.time;
  if (scheme == Scheme::Euler) return advanced(g, rhs(g, st), dt, t + dt);
  const auto k1 = rhs(g, st);
  const auto k2 = rhs(advanced(g, k1, dt / 2, t + dt / 2), st);
  const auto k3 = rhs(advanced(g, k2, dt / 2, t + dt / 2), st);
  const auto k4 = rhs(advanced(g, k3, dt, t + dt), st);
  std::vector<double> k(k1.size());
  for (std::size_t i = 0; i < k.size(); ++i) k[i] = (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]) / 6;
  return advanced(g, k, dt, t + dt);
}

double max_abs_entry(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

MetricGrid torus_potential_grid(int dimension, int nodes_per_axis,
                                const std::function<double(const Eigen::VectorXd&)>& psi0) {
  MetricGrid g;
  g.mode = GridMode::Potential;
  g.dimension = dimension;
  g.periodic = true;
  g.shape.assign(dimension, nodes_per_axis);
  g.spacing.assign(dimension, 2 * std::numbers::pi / nodes_per_axis);
  g.origin.assign(dimension, 0.0);
  if (dimension < 1 || dimension > 2) throw InvalidArgument("flow grids support n = 1 or 2");
  if (nodes_per_axis < 5) throw InvalidArgument("grid needs at least 5 nodes per axis");
  g.state.resize(g.node_count());
  for (int node = 0; node < g.node_count(); ++node) g.state[node] = psi0(g.coordinate(node));
  check_grid(g);
  metric_on_grid(g);  // definiteness of the initial data
  return g;
}

MetricGrid torus_potential_grid(int dimension, int nodes_per_axis, const Expression& psi0) {
  if (psi0.dimension() != dimension) throw InvalidArgument("initial potential has the wrong dimension");
  return torus_potential_grid(dimension, nodes_per_axis, [&](const Eigen::VectorXd& x) { return psi0.value(x); });
}

MetricGrid torus_potential_grid(int nodes_per_axis, const FamilyParams& p) {
  std::vector<double> k = p.frequencies;
  if (k.empty()) k.assign(p.n, 1.0);
  torus_perturbed_potential(p.n, p.epsilon, k);  // validates epsilon
  for (double ki : k)
    if (ki != std::round(ki)) throw InvalidArgument("torus frequencies must be integers to be periodic");
  return torus_potential_grid(p.n, nodes_per_axis, [&](const Eigen::VectorXd& x) {
    double w = p.epsilon;
    for (int i = 0; i < p.n; ++i) w *= std::sin(k[i] * x[i]);
    return w;
  });
}

MetricGrid metric_patch_grid(const PotentialField& field, const Eigen::VectorXd& center, int nodes_per_axis,
                             double spacing, MetricBoundary boundary) {
  const int n = field.dimension();
  if (center.size() != n) throw InvalidArgument("patch centre has the wrong dimension");
  if (!(spacing > 0)) throw InvalidArgument("grid spacing must be positive");
  MetricGrid g;
  g.mode = GridMode::Metric;
  g.dimension = n;
  g.periodic = false;
  g.shape.assign(n, nodes_per_axis);
  g.spacing.assign(n, spacing);
  g.origin.resize(n);
  for (int a = 0; a < n; ++a) g.origin[a] = center[a] - 0.5 * (nodes_per_axis - 1) * spacing;
  g.boundary = std::move(boundary);
  if (n < 1 || n > 2) throw InvalidArgument("flow grids support n = 1 or 2");
  if (nodes_per_axis < 2 * kBoundaryLayer + 1)
    throw InvalidArgument("patch needs at least " + std::to_string(2 * kBoundaryLayer + 1) + " nodes per axis");
  const int c = g.components();
  g.state.resize(static_cast<std::size_t>(g.node_count()) * c);
  for (int node = 0; node < g.node_count(); ++node) {
    const Eigen::MatrixXd h = field.jet(g.coordinate(node), 2).hessian();
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) g.state[node * c + packed(n, i, j)] = h(i, j);
  }
  check_grid(g);
  metric_on_grid(g);
  return g;
}

MetricBoundary einstein_boundary(PotentialPtr field, double lambda) {
  return [field = std::move(field), lambda](const Eigen::VectorXd& x, double t) -> Eigen::MatrixXd {
    return (1 + 2 * lambda * t) * field->jet(x, 2).hessian();
  };
}

MetricGrid scaled(const MetricGrid& grid, double c) {
  if (grid.mode != GridMode::Metric) throw InvalidArgument("only metric grids can be scaled");
  if (!(c > 0)) throw InvalidArgument("scale factor must be positive");
  MetricGrid out = grid;
  for (double& v : out.state) v *= c;
  out.boundary = [b = grid.boundary, c](const Eigen::VectorXd& x, double t) -> Eigen::MatrixXd { return c * b(x, t); };
  return out;
}

GridField metric_on_grid(const MetricGrid& grid) {
  check_grid(grid);
  const Stencil st(grid);
  const auto metric = packed_metric(grid, st);
  const int n = grid.dimension, c = n * (n + 1) / 2;
  for (int node = 0; node < grid.node_count(); ++node) node_inverse(&metric[node * c], n, node, grid.time);
  return to_field(grid, metric, std::vector<char>(grid.node_count(), 1));
}

GridField beta_on_grid(const MetricGrid& grid) {
  check_grid(grid);
  const Stencil st(grid);
  const Geometry geo = geometry(grid, st);
  return to_field(grid, geo.beta, geo.valid);
}

double cfl_limit(const MetricGrid& grid) {
  const GridField g = metric_on_grid(grid);
  double m = 0;
  for (const auto& v : g.values) m = std::max(m, max_abs_entry(v.inverse()));
  const double h = *std::min_element(grid.spacing.begin(), grid.spacing.end());
  return 0.25 * h * h / (grid.dimension * m);
}

int substeps_for(const MetricGrid& grid, double dt) {
  if (!(dt > 0)) throw InvalidArgument("time step must be positive");
  const double ratio = dt / cfl_limit(grid);
  return std::max(1, static_cast<int>(std::ceil(ratio * (1 - 1e-12))));
}

MetricGrid flow_step(const MetricGrid& grid, double dt, Scheme scheme) {
  check_grid(grid);
  const int m = substeps_for(grid, dt);
  const Stencil st(grid);
  const double t0 = grid.time;
  MetricGrid g = grid;
  for (int s = 0; s < m; ++s) {
    g = single_step(g, st, dt / m, scheme);
    g.time = t0 + dt * (s + 1) / m;
  }
  metric_on_grid(g);
  return g;
}

TorusIntegrals torus_integrals(const MetricGrid& grid) {
  check_grid(grid);
  if (!grid.periodic) throw InvalidArgument("torus integrals need a periodic grid");
  const Stencil st(grid);
  const Geometry geo = geometry(grid, st);
  const int n = grid.dimension, c = n * (n + 1) / 2, count = grid.node_count();
  double cell = 1;
  for (double h : grid.spacing) cell *= h;
  // flux^i = sqrt(det g) alpha^i, so that div alpha^sharp dv = d_i flux^i dx.
  std::vector<double> flux(static_cast<std::size_t>(count) * n, 0.0);
  TorusIntegrals r;
  for (int node = 0; node < count; ++node) {
    const NodeMetric& m = geo.inverse[node];
    const double vol = std::sqrt(m.det) * cell;
    double trace = 0, asq = 0;
    for (int i = 0; i < n; ++i) {
      double up = 0;
      for (int j = 0; j < n; ++j) {
        trace += m.inv[packed(n, i, j)] * geo.beta[node * c + packed(n, i, j)];
        asq += m.inv[packed(n, i, j)] * geo.alpha[node * n + i] * geo.alpha[node * n + j];
        up += m.inv[packed(n, i, j)] * geo.alpha[node * n + j];
      }
      flux[node * n + i] = std::sqrt(m.det) * up;
    }
    r.beta_trace += trace * vol;
    r.alpha_sq += asq * vol;
  }
  for (int node = 0; node < count; ++node)
    for (int i = 0; i < n; ++i) r.div_alpha += st.d1(flux, n, i, node, i) * cell;
  return r;
}

SelfSimilarity self_similarity_diagnostic(const MetricGrid& grid, const GridField& reference) {
  const GridField g = metric_on_grid(grid);
  if (g.values.size() != reference.values.size()) throw InvalidArgument("reference metric on a different lattice");
  double num = 0, den = 0;
  SelfSimilarity s;
  for (std::size_t i = 0; i < g.values.size(); ++i) {
    num += g.values[i].cwiseProduct(reference.values[i]).sum();
    den += reference.values[i].squaredNorm();
    s.reference_norm = std::max(s.reference_norm, max_abs_entry(reference.values[i]));
  }
  s.c_hat = num / den;
  for (std::size_t i = 0; i < g.values.size(); ++i)
    s.deviation = std::max(s.deviation, max_abs_entry(g.values[i] - s.c_hat * reference.values[i]));
  s.self_similar = s.deviation < 1e-6 * s.reference_norm;
  return s;
}

FlowRecord diagnose(const MetricGrid& grid, const GridField& reference) {
  FlowRecord r;
  r.t = grid.time;
  const GridField beta = beta_on_grid(grid);
  for (std::size_t i = 0; i < beta.values.size(); ++i)
    if (beta.valid[i]) r.max_beta = std::max(r.max_beta, max_abs_entry(beta.values[i]));
  const GridField g = metric_on_grid(grid);
  r.min_eig = std::numeric_limits<double>::infinity();
  r.max_eig = -r.min_eig;
  for (const auto& v : g.values) {
    const Eigen::VectorXd e = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(v, Eigen::EigenvaluesOnly).eigenvalues();
    r.min_eig = std::min(r.min_eig, e.minCoeff());
    r.max_eig = std::max(r.max_eig, e.maxCoeff());
  }
  if (grid.periodic) {
    const TorusIntegrals ti = torus_integrals(grid);
    r.int_beta_trace = ti.beta_trace;
    r.int_alpha_sq = ti.alpha_sq;
  } else {
    r.int_beta_trace = r.int_alpha_sq = std::numeric_limits<double>::quiet_NaN();
  }
  const SelfSimilarity s = self_similarity_diagnostic(grid, reference);
  r.c_hat = s.c_hat;
  r.ss_deviation = s.deviation;
  return r;
}

FlowRun integrate(const MetricGrid& initial, double dt, Scheme scheme, double t_end, int record_every) {
  if (!(dt > 0) || !(t_end >= 0)) throw InvalidArgument("flow needs dt > 0 and t_end >= 0");
  if (record_every < 1) throw InvalidArgument("record interval must be at least one step");
  const GridField reference = metric_on_grid(initial);
  const long steps = std::lround(t_end / dt);
  FlowRun run;
  run.final_state = initial;
  run.records.push_back(diagnose(initial, reference));
  for (long s = 1; s <= steps; ++s) {
    try {
      MetricGrid next = flow_step(run.final_state, dt, scheme);
      next.time = initial.time + s * dt;
      run.final_state = std::move(next);
    } catch (const FlowBlowUp& e) {
      run.blew_up = true;
      run.message = e.what();
      break;
    }
    if (s % record_every == 0 || s == steps) run.records.push_back(diagnose(run.final_state, reference));
  }
  run.self_similar = self_similarity_diagnostic(run.final_state, reference).self_similar;
  return run;
}

void write_csv(std::ostream& out, const std::vector<FlowRecord>& records) {
  out << "t,max_beta,min_eig,max_eig,int_beta_trace,int_alpha_sq,c_hat,ss_deviation\n";
  const auto old = out.precision(17);
  for (const auto& r : records)
    out << r.t << ',' << r.max_beta << ',' << r.min_eig << ',' << r.max_eig << ',' << r.int_beta_trace << ','
        << r.int_alpha_sq << ',' << r.c_hat << ',' << r.ss_deviation << '\n';
  out.precision(old);
}

}  // namespace hesse
