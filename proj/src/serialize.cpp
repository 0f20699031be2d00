#include "hesse/serialize.hpp"

namespace hesse {

Json to_json(const Eigen::VectorXd& v) {
  Json j = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) j.push_back(v[i]);
  return j;
}

Json to_json(const Eigen::MatrixXd& m) {
  Json j = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    j.push_back(std::move(row));
  }
  return j;
}

Json to_json(const Tensor& t) {
  Json variance = Json::array();
  for (Variance v : t.variances()) variance.push_back(v == Variance::Upper ? "upper" : "lower");
  return {{"rank", t.rank()}, {"dimension", t.dimension()}, {"variance", variance}, {"values", t.values()}};
}

Json to_json(const StructurePoint& sp) {
  Json j;
  j["field"] = sp.field ? sp.field->id() : "";
  j["point"] = to_json(sp.point);
  j["jet_order"] = sp.jet_order;
  j["potential"] = sp.potential_jet.value();
  j["g"] = to_json(sp.metric.g);
  j["g_inv"] = to_json(sp.metric.g_inv);
  j["sqrt_det"] = sp.metric.sqrt_det;
  j["gamma_lower"] = to_json(sp.gamma_lower);
  j["gamma_mixed"] = to_json(sp.gamma_mixed);
  j["alpha"] = to_json(sp.alpha);
  j["alpha_trace"] = to_json(sp.alpha_trace);
  j["beta"] = to_json(sp.beta);
  j["beta_trace"] = to_json(sp.beta_trace);
  j["hessian_curvature"] = to_json(sp.hessian_curvature);
  j["hessian_curvature_lower"] = to_json(sp.hessian_curvature_lower);
  j["riemann"] = to_json(sp.riemann);
  j["riemann_lower"] = to_json(sp.riemann_lower);
  j["ricci"] = to_json(sp.ricci);
  j["scalar_curvature"] = sp.scalar_curvature;
  j["gamma_norm_sq"] = sp.gamma_norm_sq;
  j["alpha_norm_sq"] = sp.alpha_norm_sq;
  j["nabla_alpha"] = to_json(sp.nabla_alpha);
  j["nabla_gamma"] = to_json(sp.nabla_gamma);
  j["alpha_dual"] = to_json(sp.alpha_dual);
  j["beta_dual"] = to_json(sp.beta_dual);
  j["connections"] = {{"flat", to_json(sp.flat_connection)},
                      {"levi_civita", to_json(sp.levi_civita)},
                      {"dual", to_json(sp.dual_connection)}};
  return j;
}

Json snapshot(const MetricGrid& grid) {
  Json j;
  j["mode"] = to_string(grid.mode);
  j["dimension"] = grid.dimension;
  j["shape"] = grid.shape;
  j["spacing"] = grid.spacing;
  j["origin"] = grid.origin;
  j["periodic"] = grid.periodic;
  j["time"] = grid.time;
  j["components"] = grid.components();
  j["state"] = grid.state;
  return j;
}

}  // namespace hesse
