#include "hesse/soliton.hpp"

#include <algorithm>
#include <cmath>

namespace hesse {

SolitonClass classify(double lambda) {
  if (lambda > 0) return SolitonClass::Expanding;
  if (lambda < 0) return SolitonClass::Shrinking;
  return SolitonClass::Steady;
}

std::string to_string(SolitonKind kind) { return kind == SolitonKind::Gradient ? "gradient" : "vector"; }

std::string to_string(SolitonClass c) {
  switch (c) {
    case SolitonClass::Expanding: return "expanding";
    case SolitonClass::Steady: return "steady";
    case SolitonClass::Shrinking: return "shrinking";
  }
  return "";
}

SolitonSpec SolitonSpec::vector(VectorFieldPtr X, double lambda) {
  SolitonSpec s;
  s.kind = SolitonKind::VectorField;
  s.X = std::move(X);
  s.lambda = lambda;
  return s;
}

SolitonSpec SolitonSpec::gradient(ScalarFieldPtr f, double lambda) {
  SolitonSpec s;
  s.kind = SolitonKind::Gradient;
  s.f = std::move(f);
  s.lambda = lambda;
  return s;
}

void SolitonSpec::validate(int n) const {
  if (kind == SolitonKind::VectorField) {
    if (!X || f) throw InvalidArgument("vector soliton needs X and no f");
    if (X->dimension() != n) throw InvalidArgument("soliton vector field has the wrong dimension");
  } else {
    if (!f || X) throw InvalidArgument("gradient soliton needs f and no X");
    if (f->dimension() != n) throw InvalidArgument("soliton potential f has the wrong dimension");
  }
  if (!std::isfinite(lambda)) throw InvalidArgument("soliton constant must be finite");
}

namespace {

double max_abs(const Eigen::MatrixXd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

double metric_norm(const Eigen::MatrixXd& a, const Metric& m) {
  return std::sqrt(std::max(0.0, (m.g_inv * a * m.g_inv).cwiseProduct(a).sum()));
}

// div Y = nabla_i Y^i from a first-order jet of Y.
double divergence(const StructurePoint& sp, const std::vector<JetD>& y) {
  const int n = static_cast<int>(y.size());
  double s = 0;
  for (int i = 0; i < n; ++i) {
    s += y[i].d({i});
    for (int k = 0; k < n; ++k) s += sp.gamma_mixed(i, i, k) * y[k].value();
  }
  return s;
}

SolitonResidual finish(const StructurePoint& sp, const Eigen::MatrixXd& beta, const Eigen::MatrixXd& term,
                       double lambda) {
  SolitonResidual r;
  r.tensor = beta - term - lambda * sp.metric.g;
  r.max_abs = max_abs(r.tensor);
  return r;
}

Eigen::MatrixXd soliton_term(const StructurePoint& sp, const SolitonSpec& spec) {
  spec.validate(static_cast<int>(sp.point.size()));
  if (spec.kind == SolitonKind::VectorField) return 0.5 * lie_derivative_metric(sp, *spec.X);
  return hessian_of_function(sp, *spec.f);
}

}  // namespace

Eigen::MatrixXd lie_derivative_metric(const StructurePoint& sp, const VectorField& X) {
  const int n = static_cast<int>(sp.point.size());
  if (X.dimension() != n) throw InvalidArgument("vector field dimension mismatch");
  const auto x = X.jet(sp.point, 1);
  // (nabla_i X)^k = d_i X^k + Gamma^k_il X^l, then lowered.
  Eigen::MatrixXd cov(n, n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      double s = x[k].d({i});
      for (int l = 0; l < n; ++l) s += sp.gamma_mixed(k, i, l) * x[l].value();
      cov(i, k) = s;
    }
  const Eigen::MatrixXd lowered = cov * sp.metric.g;  // nabla_i X_j
  return lowered + lowered.transpose();
}

Eigen::MatrixXd hessian_of_function(const StructurePoint& sp, const ScalarField& f) {
  const int n = static_cast<int>(sp.point.size());
  if (f.dimension() != n) throw InvalidArgument("scalar field dimension mismatch");
  const JetD j = f.jet(sp.point, 2);
  Eigen::MatrixXd h = j.hessian();
  const Eigen::VectorXd grad = j.gradient();
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l) h(i, k) -= sp.gamma_mixed(l, i, k) * grad[l];
  return h;
}

SolitonResidual soliton_residual(const StructurePoint& sp, const SolitonSpec& spec) {
  return finish(sp, sp.beta, soliton_term(sp, spec), spec.lambda);
}

EinsteinFit einstein_fit(const PotentialPtr& field, const std::vector<Eigen::VectorXd>& samples) {
  if (samples.empty()) throw InvalidArgument("einstein_fit needs at least one sample point");
  std::vector<StructurePoint> points;
  points.reserve(samples.size());
  EinsteinFit fit;
  fit.min_ratio = std::numeric_limits<double>::infinity();
  fit.max_ratio = -fit.min_ratio;
  for (const auto& x : samples) {
    points.push_back(structure_at(field, x, 4));
    const auto& sp = points.back();
    const double ratio = sp.metric.g_inv.cwiseProduct(sp.beta).sum() / static_cast<double>(x.size());
    fit.min_ratio = std::min(fit.min_ratio, ratio);
    fit.max_ratio = std::max(fit.max_ratio, ratio);
  }
  fit.lambda = 0.5 * (fit.min_ratio + fit.max_ratio);
  for (const auto& sp : points) fit.max_residual = std::max(fit.max_residual, max_abs(sp.beta - fit.lambda * sp.metric.g));
  return fit;
}

DualSoliton dual_soliton(const StructurePoint& sp, const SolitonSpec& spec) {
  spec.validate(static_cast<int>(sp.point.size()));
  DualSoliton d;
  if (spec.kind == SolitonKind::VectorField)
    d.spec = SolitonSpec::vector(combine(1.0, spec.X, -2.0, koszul_sharp_field(sp.field)), spec.lambda);
  else
    d.spec = SolitonSpec::gradient(combine(1.0, spec.f, -2.0, half_log_det_field(sp.field)), spec.lambda);
  d.residual = finish(sp, sp.beta_dual, soliton_term(sp, d.spec), spec.lambda);
  return d;
}

double lie_alpha_sharp_defect(const StructurePoint& sp) {
  const auto sharp = koszul_sharp_field(sp.field);
  return max_abs(lie_derivative_metric(sp, *sharp) - 2.0 * sp.nabla_alpha);
}

SteadyCheck steady_killing_check(const StructurePoint& sp, const VectorField& X, double tolerance) {
  SteadyCheck c;
  c.beta_norm = metric_norm(sp.beta, sp.metric);
  c.lie_norm = metric_norm(lie_derivative_metric(sp, X), sp.metric);
  c.steady = c.beta_norm < tolerance && c.lie_norm < tolerance;
  return c;
}

TraceIdentity trace_identity_residual(const StructurePoint& sp, const SolitonSpec* spec) {
  const Metric& m = sp.metric;
  const double n = static_cast<double>(sp.point.size());
  const double trace_beta = m.g_inv.cwiseProduct(sp.beta).sum();
  TraceIdentity t;
  const double div_alpha = divergence(sp, koszul_sharp_field(sp.field)->jet(sp.point, 1));
  t.koszul = trace_beta - div_alpha - sp.alpha_norm_sq;
  if (spec) {
    spec->validate(static_cast<int>(n));
    double div_x;
    if (spec->kind == SolitonKind::VectorField)
      div_x = divergence(sp, spec->X->jet(sp.point, 1));
    else
      div_x = m.g_inv.cwiseProduct(hessian_of_function(sp, *spec->f)).sum();
    t.soliton = trace_beta - div_x - n * spec->lambda;
  }
  return t;
}

}  // namespace hesse
