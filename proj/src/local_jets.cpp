#include "hesse/local_jets.hpp"

namespace hesse {

namespace {

std::vector<JetD> upper_triangular_pivots(std::vector<JetD> a, int n) {
  std::vector<JetD> pivots;
  for (int k = 0; k < n; ++k) {
    const JetD& p = a[k * n + k];
    if (!(p.value() > 0)) throw NotPositiveDefinite("metric jet is not positive definite", k + 1);
    const JetD inv_p = reciprocal(p);
    for (int i = k + 1; i < n; ++i) {
      const JetD f = a[i * n + k] * inv_p;
      for (int j = k; j < n; ++j) a[i * n + j] -= f * a[k * n + j];
    }
    pivots.push_back(p);
  }
  return pivots;
}

}  // namespace

std::vector<JetD> invert_jet_matrix(const std::vector<JetD>& m, int n) {
  const int order = m.front().order();
  std::vector<JetD> a = m;
  std::vector<JetD> inv(static_cast<std::size_t>(n) * n, JetD::constant(m.front().dimension(), order, 0.0));
  for (int i = 0; i < n; ++i) inv[i * n + i] = JetD::constant(m.front().dimension(), order, 1.0);
  // Gauss-Jordan.
  for (int k = 0; k < n; ++k) {
    if (!(a[k * n + k].value() > 0)) throw NotPositiveDefinite("metric jet is not positive definite", k + 1);
    const JetD inv_p = reciprocal(a[k * n + k]);
    for (int j = 0; j < n; ++j) {
      a[k * n + j] *= inv_p;
      inv[k * n + j] *= inv_p;
    }
    for (int i = 0; i < n; ++i) {
      if (i == k) continue;
      const JetD f = a[i * n + k];
      for (int j = 0; j < n; ++j) {
        a[i * n + j] -= f * a[k * n + j];
        inv[i * n + j] -= f * inv[k * n + j];
      }
    }
  }
  return inv;
}

JetD log_det_jet(const std::vector<JetD>& m, int n) {
  const auto pivots = upper_triangular_pivots(m, n);
  JetD sum = log(pivots.front());
  for (int k = 1; k < n; ++k) sum += log(pivots[k]);
  return sum;
}

LocalJets local_jets(const PotentialField& field, const Eigen::VectorXd& x, int order) {
  if (order < 2) throw InvalidArgument("local jets need a potential jet of order >= 2");
  LocalJets lj;
  const int n = field.dimension();
  lj.dimension = n;
  lj.order = order;
  lj.phi = field.jet(x, order);

  std::vector<JetD> grad;
  for (int i = 0; i < n; ++i) grad.push_back(lj.phi.partial(i));
  lj.g.resize(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) lj.g[i * n + j] = lj.g[j * n + i] = grad[i].partial(j);
  lj.g_inv = invert_jet_matrix(lj.g, n);
  lj.half_log_det = 0.5 * log_det_jet(lj.g, n);
  if (order < 3) return lj;

  const auto at3 = [n](int i, int j, int k) { return (static_cast<std::size_t>(i) * n + j) * n + k; };
  lj.gamma.resize(static_cast<std::size_t>(n) * n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) lj.gamma[at3(i, j, k)] = 0.5 * lj.g[i * n + j].partial(k);

  const int lo = order - 3;
  std::vector<JetD> g_inv_lo;
  for (const auto& e : lj.g_inv) g_inv_lo.push_back(e.truncated(lo));
  const JetD zero = JetD::constant(n, lo, 0.0);
  lj.christoffel.assign(lj.gamma.size(), zero);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        JetD s = zero;
        for (int p = 0; p < n; ++p) s += g_inv_lo[i * n + p] * lj.gamma[at3(p, j, k)];
        lj.christoffel[at3(i, j, k)] = s;
      }
  for (int i = 0; i < n; ++i) lj.alpha.push_back(lj.half_log_det.partial(i));

  // |gamma|^2 = gamma_ijk gamma^{ijk}, with gamma^{ijk} = g^{jb} g^{kc} gamma^i_bc.
  std::vector<JetD> half(lj.gamma.size(), zero);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int c = 0; c < n; ++c) {
        JetD s = zero;
        for (int b = 0; b < n; ++b) s += g_inv_lo[j * n + b] * lj.christoffel[at3(i, b, c)];
        half[at3(i, j, c)] = s;
      }
  JetD gamma_sq = zero;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        JetD up = zero;
        for (int c = 0; c < n; ++c) up += g_inv_lo[k * n + c] * half[at3(i, j, c)];
        gamma_sq += lj.gamma[at3(i, j, k)] * up;
      }
  JetD alpha_sq = zero;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) alpha_sq += g_inv_lo[i * n + j] * lj.alpha[i] * lj.alpha[j];
  lj.scalar_curvature = gamma_sq - alpha_sq;
  return lj;
}

}  // namespace hesse
