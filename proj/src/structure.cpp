#include "hesse/structure.hpp"

#include <algorithm>
#include <cmath>

namespace hesse {

namespace {

std::size_t at3(int n, int i, int j, int k) { return (static_cast<std::size_t>(i) * n + j) * n + k; }

double rel(double diff, double reference) { return diff / std::max(1.0, reference); }

double max_abs(const Eigen::MatrixXd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

// g^{ia} g^{jb} A_ij B_ab
double metric_pairing(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, const Metric& m) {
  return (m.g_inv * a * m.g_inv).cwiseProduct(b).sum();
}

}  // namespace

StructurePoint structure_at(const PotentialPtr& field, const Eigen::VectorXd& x, int jet_order) {
  if (!field) throw InvalidArgument("structure_at without a potential");
  if (jet_order < 4 || jet_order > kMaxJetOrder)
    throw InvalidArgument("structure_at needs a jet order in [4, " + std::to_string(kMaxJetOrder) + "], got " +
                          std::to_string(jet_order));
  const LocalJets lj = local_jets(*field, x, jet_order);
  const int n = lj.dimension;

  StructurePoint sp;
  sp.field = field;
  sp.point = x;
  sp.jet_order = jet_order;
  sp.potential_jet = lj.phi;

  const Eigen::MatrixXd g = lj.phi.hessian();
  sp.metric = invert_spd(g);
  if (!hessian_is_positive_definite(g))
    throw NotPositiveDefinite("Hessian of " + field->id() + " is numerically singular", n);
  const Metric& m = sp.metric;

  sp.gamma_lower = Tensor::covariant(n, 3);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) sp.gamma_lower(i, j, k) = 0.5 * lj.phi.d({i, j, k});
  sp.gamma_mixed = raise(sp.gamma_lower, 0, m);
  const Tensor& gam = sp.gamma_mixed;

  sp.alpha.resize(n);
  for (int i = 0; i < n; ++i) sp.alpha[i] = lj.alpha[i].value();
  sp.alpha_trace = trace(gam, 0, 1, m).as_vector();

  sp.beta.resize(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) sp.beta(i, j) = lj.alpha[j].d({i});

  // d_c Gamma^i_ab
  const auto d_christoffel = [&](int i, int a, int b, int c) { return lj.christoffel[at3(n, i, a, b)].d({c}); };

  sp.hessian_curvature = Tensor(n, {Variance::Upper, Variance::Lower, Variance::Lower, Variance::Lower});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) sp.hessian_curvature(i, j, k, l) = d_christoffel(i, j, l, k);
  sp.hessian_curvature_lower = lower(sp.hessian_curvature, 0, m);
  sp.beta_trace = trace(sp.hessian_curvature, 0, 1, m).as_matrix();

  sp.riemann = Tensor(n, {Variance::Upper, Variance::Lower, Variance::Lower, Variance::Lower});
  sp.riemann_christoffel = sp.riemann;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double shortcut = 0, quadratic = 0;
          for (int r = 0; r < n; ++r) {
            shortcut += gam(i, l, r) * gam(r, j, k) - gam(i, k, r) * gam(r, j, l);
            quadratic += gam(i, k, r) * gam(r, l, j) - gam(i, l, r) * gam(r, k, j);
          }
          sp.riemann(i, j, k, l) = shortcut;
          sp.riemann_christoffel(i, j, k, l) = d_christoffel(i, l, j, k) - d_christoffel(i, k, j, l) + quadratic;
        }
  sp.riemann_lower = lower(sp.riemann, 0, m);
  sp.ricci = trace(sp.riemann, 0, 2, m).as_matrix();
  sp.ricci_formula.resize(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      double s = 0;
      for (int r = 0; r < n; ++r) {
        s -= sp.alpha[r] * gam(r, j, k);
        for (int q = 0; q < n; ++q) s += gam(q, k, r) * gam(r, j, q);
      }
      sp.ricci_formula(j, k) = s;
    }
  sp.scalar_curvature = m.g_inv.cwiseProduct(sp.ricci).sum();
  sp.gamma_norm_sq = norm_sq(sp.gamma_lower, m);
  sp.alpha_norm_sq = sp.alpha.dot(m.g_inv * sp.alpha);

  sp.nabla_alpha.resize(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = sp.beta(i, j);
      for (int k = 0; k < n; ++k) s -= gam(k, i, j) * sp.alpha[k];
      sp.nabla_alpha(i, j) = s;
    }

  const Tensor& gl = sp.gamma_lower;
  sp.nabla_gamma = Tensor::covariant(n, 4);
  sp.nabla_gamma_formula = Tensor::covariant(n, 4);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double conn = 0, pairs = 0;
          for (int p = 0; p < n; ++p) {
            conn += gam(p, i, j) * gl(p, k, l) + gam(p, i, k) * gl(j, p, l) + gam(p, i, l) * gl(j, k, p);
            for (int q = 0; q < n; ++q)
              pairs += m.g_inv(p, q) * (gl(p, i, j) * gl(q, k, l) + gl(p, i, k) * gl(q, j, l) + gl(p, i, l) * gl(q, j, k));
          }
          sp.nabla_gamma(i, j, k, l) = lj.gamma[at3(n, j, k, l)].d({i}) - conn;
          sp.nabla_gamma_formula(i, j, k, l) = 0.5 * lj.phi.d({i, j, k, l}) - pairs;
        }

  if (jet_order >= 5) {
    sp.has_fifth_order = true;
    // Jets of (nabla alpha)_jk, one order above the values used here.
    std::vector<JetD> na(static_cast<std::size_t>(n) * n);
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        JetD s = lj.alpha[k].partial(j);
        for (int p = 0; p < n; ++p) s -= lj.christoffel[at3(n, p, j, k)] * lj.alpha[p];
        na[j * n + k] = s;
      }
    sp.nabla_nabla_alpha = Tensor::covariant(n, 3);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          double s = na[j * n + k].d({i});
          for (int p = 0; p < n; ++p) s -= gam(p, i, j) * sp.nabla_alpha(p, k) + gam(p, i, k) * sp.nabla_alpha(j, p);
          sp.nabla_nabla_alpha(i, j, k) = s;
        }
    sp.scalar_gradient = lj.scalar_curvature.gradient();
    sp.scalar_hessian = lj.scalar_curvature.hessian();
    double lap = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double s = sp.scalar_hessian(i, j);
        for (int k = 0; k < n; ++k) s -= gam(k, i, j) * sp.scalar_gradient[k];
        lap += m.g_inv(i, j) * s;
      }
    sp.scalar_laplacian = lap;
  }

  sp.alpha_dual = -sp.alpha;
  sp.beta_dual.resize(n, n);
  sp.dual_connection = 2.0 * gam;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = -sp.beta(i, j);  // d_i alpha'_j
      for (int k = 0; k < n; ++k) s -= sp.dual_connection(k, i, j) * sp.alpha_dual[k];
      sp.beta_dual(i, j) = s;
    }
  sp.flat_connection = Tensor(n, {Variance::Upper, Variance::Lower, Variance::Lower});
  sp.levi_civita = gam;
  return sp;
}

bool IdentityReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const IdentityCheck& c) { return c.pass; });
}

const IdentityCheck& IdentityReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return c;
  throw InvalidArgument("no identity check named " + name);
}

IdentityReport verify_identities(const StructurePoint& sp, double tolerance) {
  const Metric& m = sp.metric;
  const int n = m.dimension();
  IdentityReport report;
  const auto add = [&](std::string name, std::string anchor, double residual) {
    report.checks.push_back({std::move(name), std::move(anchor), residual, tolerance, residual < tolerance});
  };

  add("alpha_trace_vs_logdet", "alpha_i = gamma^r_ri",
      rel(max_abs(sp.alpha - sp.alpha_trace), max_abs(sp.alpha)));
  add("beta_vs_hessian_curvature_trace", "beta_ij = H^r_rij",
      rel(max_abs(sp.beta - sp.beta_trace), max_abs(sp.beta)));
  add("riemann_shortcut_vs_christoffel", "R^i_jkl = gamma^i_lr gamma^r_jk - gamma^i_kr gamma^r_jl",
      rel((sp.riemann - sp.riemann_christoffel).max_abs(), sp.riemann_christoffel.max_abs()));
  add("ricci_formula", "R_jk = gamma^s_kr gamma^r_js - alpha_r gamma^r_jk",
      rel(max_abs(sp.ricci - sp.ricci_formula), max_abs(sp.ricci)));
  add("scalar_curvature", "R = |gamma|^2 - |alpha|^2",
      rel(std::abs(sp.scalar_curvature - (sp.gamma_norm_sq - sp.alpha_norm_sq)),
          std::max(sp.gamma_norm_sq, sp.alpha_norm_sq)));
  add("nabla_gamma_symmetry", "nabla_i gamma_jkl symmetric in i, j, k, l",
      rel(sp.nabla_gamma.symmetry_defect(), sp.nabla_gamma.max_abs()));
  add("nabla_gamma_formula", "nabla_i gamma_jkl = phi_ijkl / 2 - (gamma gamma + gamma gamma + gamma gamma)",
      rel((sp.nabla_gamma - sp.nabla_gamma_formula).max_abs(), sp.nabla_gamma.max_abs()));
  add("dual_alpha", "alpha' = -alpha", rel(max_abs(sp.alpha_dual + sp.alpha), max_abs(sp.alpha)));
  add("dual_beta", "beta' = beta - 2 nabla alpha",
      rel(max_abs(sp.beta_dual - sp.beta + 2.0 * sp.nabla_alpha), max_abs(sp.beta_dual)));

  // X g(Y, Z) = g(D_X Y, Z) + g(Y, D'_X Z) on coordinate fields; D_X Y = 0.
  double pairing = 0, pairing_ref = 0;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const double lhs = sp.potential_jet.d({i, j, k});
        double rhs = 0;
        for (int p = 0; p < n; ++p) rhs += m.g(i, p) * sp.dual_connection(p, k, j);
        pairing = std::max(pairing, std::abs(lhs - rhs));
        pairing_ref = std::max(pairing_ref, std::abs(lhs));
      }
  add("duality_pairing", "X g(Y,Z) = g(D_X Y, Z) + g(Y, D'_X Z)", rel(pairing, pairing_ref));

  const double trace_beta = m.g_inv.cwiseProduct(sp.beta).sum();
  const double div_alpha = m.g_inv.cwiseProduct(sp.nabla_alpha).sum();
  add("koszul_trace_identity", "g^ij beta_ij = div alpha^sharp + |alpha|^2",
      rel(std::abs(trace_beta - div_alpha - sp.alpha_norm_sq), std::abs(trace_beta)));
  return report;
}

Tensor riemann_oracle(const PotentialField& field, const Eigen::VectorXd& x) {
  const LocalJets lj = local_jets(field, x, 4);
  const int n = lj.dimension;
  Tensor r(n, {Variance::Upper, Variance::Lower, Variance::Lower, Variance::Lower});
  const auto gam = [&](int i, int a, int b) { return lj.christoffel[at3(n, i, a, b)].value(); };
  const auto dgam = [&](int i, int a, int b, int c) { return lj.christoffel[at3(n, i, a, b)].d({c}); };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double s = dgam(i, l, j, k) - dgam(i, k, j, l);
          for (int q = 0; q < n; ++q) s += gam(i, k, q) * gam(q, l, j) - gam(i, l, q) * gam(q, k, j);
          r(i, j, k, l) = s;
        }
  return r;
}

double scalar_curvature_at(const PotentialField& field, const Eigen::VectorXd& x) {
  return local_jets(field, x, 3).scalar_curvature.value();
}

namespace {

// Laplace-Beltrami operator of R by fourth-order central differences of the
// scalar-curvature field, step 1e-3 * max(1, |x|_inf).
double fd_scalar_laplacian(const StructurePoint& sp) {
  const PotentialField& f = *sp.field;
  const Eigen::VectorXd& x = sp.point;
  const int n = static_cast<int>(x.size());
  const double h = 1e-3 * std::max(1.0, x.cwiseAbs().maxCoeff());
  const double r0 = scalar_curvature_at(f, x);
  const auto at = [&](int i, int si, int j, int sj) {
    Eigen::VectorXd y = x;
    y[i] += si * h;
    y[j] += sj * h;
    return scalar_curvature_at(f, y);
  };
  static constexpr int offs[4] = {-2, -1, 1, 2};
  static constexpr double w1[4] = {1.0 / 12, -8.0 / 12, 8.0 / 12, -1.0 / 12};
  Eigen::VectorXd grad(n);
  Eigen::MatrixXd hess(n, n);
  for (int i = 0; i < n; ++i) {
    double d1 = 0;
    for (int a = 0; a < 4; ++a) d1 += w1[a] * at(i, offs[a], i, 0);
    grad[i] = d1 / h;
    hess(i, i) = (-at(i, 2, i, 0) + 16 * at(i, 1, i, 0) - 30 * r0 + 16 * at(i, -1, i, 0) - at(i, -2, i, 0)) /
                 (12 * h * h);
    for (int j = 0; j < i; ++j) {
      double d2 = 0;
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) d2 += w1[a] * w1[b] * at(i, offs[a], j, offs[b]);
      hess(i, j) = hess(j, i) = d2 / (h * h);
    }
  }
  double lap = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = hess(i, j);
      for (int k = 0; k < n; ++k) s -= sp.gamma_mixed(k, i, j) * grad[k];
      lap += sp.metric.g_inv(i, j) * s;
    }
  return lap;
}

}  // namespace

BochnerTerms bochner_terms(const StructurePoint& sp, LaplacianSource source) {
  if (!sp.has_fifth_order) throw InvalidArgument("Bochner formula needs a fifth-order jet");
  const Metric& m = sp.metric;
  BochnerTerms t;
  t.half_laplacian = 0.5 * (source == LaplacianSource::Jet ? sp.scalar_laplacian : fd_scalar_laplacian(sp));

  Tensor gamma_upper = sp.gamma_lower;
  for (int s = 0; s < 3; ++s) gamma_upper = raise(gamma_upper, s, m);
  for (std::size_t i = 0; i < gamma_upper.size(); ++i)
    t.nabla_nabla_alpha_gamma += sp.nabla_nabla_alpha.values()[i] * gamma_upper.values()[i];

  const Eigen::VectorXd rough = trace(sp.nabla_nabla_alpha, 0, 1, m).as_vector();
  t.rough_laplacian_alpha = rough.dot(m.g_inv * sp.alpha);
  t.nabla_gamma_sq = norm_sq(sp.nabla_gamma, m);
  t.riemann_sq = norm_sq(sp.riemann_lower, m);
  t.ricci_sq = metric_pairing(sp.ricci, sp.ricci, m);
  t.ricci_beta = metric_pairing(sp.ricci, sp.beta, m);
  t.ricci_nabla_alpha = metric_pairing(sp.ricci, sp.nabla_alpha, m);
  t.nabla_alpha_sq = metric_pairing(sp.nabla_alpha, sp.nabla_alpha, m);
  return t;
}

double bochner_residual(const StructurePoint& sp, LaplacianSource source) {
  return bochner_terms(sp, source).residual();
}

double bochner_residual(const PotentialPtr& field, const Eigen::VectorXd& x, LaplacianSource source) {
  return bochner_residual(structure_at(field, x, 5), source);
}

Properness properness_indicator(const PotentialPtr& field, const std::vector<Eigen::VectorXd>& samples) {
  if (samples.empty()) throw InvalidArgument("properness indicator needs at least one sample point");
  Properness p;
  for (const auto& x : samples) {
    const LocalJets lj = local_jets(*field, x, 3);
    const Metric m = invert_spd(lj.phi.hessian());
    Tensor gl = Tensor::covariant(lj.dimension, 3);
    for (std::size_t i = 0; i < gl.size(); ++i) gl.values()[i] = lj.gamma[i].value();
    p.max_gamma_norm = std::max(p.max_gamma_norm, std::sqrt(std::max(0.0, norm_sq(gl, m))));
  }
  p.proper = p.max_gamma_norm > 1e-8;
  return p;
}

}  // namespace hesse
