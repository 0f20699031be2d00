#include "hesse/run.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "hesse/errors.hpp"
#include "hesse/infogeo.hpp"
#include "hesse/serialize.hpp"
#include "hesse/soliton.hpp"
#include "hesse/structure.hpp"

namespace hesse {

namespace {

double max_abs(const Eigen::MatrixXd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

struct Tolerances {
  std::optional<double> override_;
  double operator()(double fallback) const { return override_.value_or(fallback); }
};

std::uint64_t seed_from(const Manifest& m, const RunOptions& o) {
  if (o.seed) return *o.seed;
  if (m.has("samples", "seed")) return m.unsigned_integer("samples", "seed");
  return 0;
}

Json point_json(const Eigen::VectorXd& x) { return to_json(x); }

// Worst value over samples together with where it happened.
struct Worst {
  double value = 0;
  Eigen::VectorXd where;
  void update(double v, const Eigen::VectorXd& x) {
    if (where.size() == 0 || std::abs(v) > std::abs(value)) {
      value = v;
      where = x;
    }
  }
  Json detail() const { return Json{{"point", point_json(where)}}; }
};

void add_properness(Report& report, const PotentialPtr& field, const std::vector<Eigen::VectorXd>& samples) {
  const Properness p = properness_indicator(field, samples);
  report.add(info("properness", "max |gamma|_g over samples; proper when > 1e-8", p.max_gamma_norm,
                  Json{{"proper", p.proper}}));
}

// ---- analyze ---------------------------------------------------------------

void analyze(Report& report, const PotentialPtr& field, const std::vector<Eigen::VectorXd>& samples) {
  double min_ratio = std::numeric_limits<double>::infinity();
  Eigen::VectorXd where;
  for (const auto& x : samples) {
    const StructurePoint sp = structure_at(field, x);
    report.add_dump(to_json(sp));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sp.metric.g, Eigen::EigenvaluesOnly);
    const double ratio = eig.eigenvalues().minCoeff() / sp.metric.g.trace();
    if (ratio < min_ratio) {
      min_ratio = ratio;
      where = x;
    }
  }
  report.add(above("hessian_positive_definite", "min eigenvalue of Hess phi / trace", min_ratio, 1e-12,
                   Json{{"point", point_json(where)}}));
  add_properness(report, field, samples);
}

// ---- verify ----------------------------------------------------------------

void verify(Report& report, const PotentialPtr& field, const std::vector<Eigen::VectorXd>& samples,
            const Tolerances& tol) {
  const double identity_tol = tol(1e-8);
  std::vector<IdentityCheck> worst;
  std::vector<Eigen::VectorXd> worst_at;
  Worst oracle, bochner_jet, bochner_fd, bochner_fixed, scale;
  int fd_skipped = 0;
  const std::vector<double> factors = {0.5, 2.0, 10.0};

  for (const auto& x : samples) {
    const StructurePoint sp = structure_at(field, x, 5);
    const IdentityReport ids = verify_identities(sp, identity_tol);
    if (worst.empty()) {
      worst = ids.checks;
      worst_at.assign(worst.size(), x);
    } else {
      for (std::size_t i = 0; i < worst.size(); ++i)
        if (ids.checks[i].residual > worst[i].residual) {
          worst[i] = ids.checks[i];
          worst_at[i] = x;
        }
    }

    const Tensor oracle_r = riemann_oracle(*field, x);
    double d = 0, ref = 0;
    for (std::size_t i = 0; i < oracle_r.size(); ++i) {
      d = std::max(d, std::abs(oracle_r.values()[i] - sp.riemann.values()[i]));
      ref = std::max(ref, std::abs(oracle_r.values()[i]));
    }
    oracle.update(d / std::max(1.0, ref), x);

    const BochnerTerms jet_terms = bochner_terms(sp, LaplacianSource::Jet);
    bochner_jet.update(jet_terms.residual(), x);
    bochner_fixed.update(jet_terms.corrected_residual(), x);
    // The stencil can leave the domain next to its edge; such points are skipped.
    try {
      bochner_fd.update(bochner_terms(sp, LaplacianSource::FiniteDifference).residual(), x);
    } catch (const DomainError&) {
      ++fd_skipped;
    }

    for (double c : factors) {
      const StructurePoint sc = structure_at(scaled_potential(field, c), x, 4);
      const double r = std::max(max_abs(sc.beta - sp.beta) / std::max(1.0, max_abs(sp.beta)),
                                max_abs(sc.alpha - sp.alpha) / std::max(1.0, max_abs(sp.alpha)));
      scale.update(r, x);
    }
  }

  for (std::size_t i = 0; i < worst.size(); ++i)
    report.add(below(worst[i].name, worst[i].anchor, worst[i].residual, identity_tol,
                     Json{{"point", point_json(worst_at[i])}}));
  report.add(below("riemann_oracle", "R^i_jkl from d Gamma - d Gamma + Gamma Gamma - Gamma Gamma", oracle.value,
                   identity_tol, oracle.detail()));

  const std::string bochner_anchor =
      "1/2 Delta R = (nabla nabla alpha, gamma) - |nabla nabla alpha| trace term + |nabla gamma|^2 + |Rm|^2 + "
      "|Ric|^2 + (Ric, beta) - (Ric, nabla alpha)";
  const double bochner_tol = tol(1e-6);
  report.add(below("bochner", bochner_anchor, std::abs(bochner_jet.value), bochner_tol,
                   Json{{"point", point_json(bochner_jet.where)}, {"laplacian", "jet"},
                        {"signed_residual", bochner_jet.value}}));
  report.add(below("bochner_fd", bochner_anchor, std::abs(bochner_fd.value), bochner_tol,
                   Json{{"point", point_json(bochner_fd.where)}, {"laplacian", "finite difference"},
                        {"signed_residual", bochner_fd.value}, {"skipped_near_edge", fd_skipped}}));
  report.add(below("bochner_with_nabla_alpha_sq", "same right-hand side plus |nabla alpha|^2",
                   std::abs(bochner_fixed.value), bochner_tol, bochner_fixed.detail()));
  report.add(below("scale_invariance", "alpha and beta unchanged under phi -> c phi, c in {0.5, 2, 10}", scale.value,
                   tol(1e-12), scale.detail()));
  add_properness(report, field, samples);
}

// ---- soliton ---------------------------------------------------------------

SolitonSpec soliton_from(const Manifest& m, int n) {
  m.require_keys("soliton", {"kind", "lambda", "X", "f"});
  const std::string kind = m.text_or("soliton", "kind", "vector");
  const double lambda = m.number_or("soliton", "lambda", 0.0);
  if (kind == "vector") {
    if (!m.has("soliton", "X")) return SolitonSpec::vector(zero_vector_field(n), lambda);
    std::vector<Expression> comps;
    for (const auto& s : m.texts("soliton", "X")) comps.push_back(parse_potential(s, n));
    if (static_cast<int>(comps.size()) != n)
      throw InvalidArgument("[soliton] X has " + std::to_string(comps.size()) + " components, expected " +
                            std::to_string(n));
    return SolitonSpec::vector(expression_vector_field(std::move(comps)), lambda);
  }
  if (kind == "gradient") {
    if (!m.has("soliton", "f")) throw InvalidArgument("[soliton] kind = gradient needs f");
    return SolitonSpec::gradient(expression_scalar_field(parse_potential(m.text("soliton", "f"), n)), lambda);
  }
  throw InvalidArgument("[soliton] kind must be vector or gradient, got '" + kind + "'");
}

void soliton(Report& report, const Manifest& m, const PotentialPtr& field, const std::vector<Eigen::VectorXd>& samples,
             const Tolerances& tol) {
  const int n = field->dimension();
  const SolitonSpec spec = soliton_from(m, n);
  spec.validate(n);
  const double t = tol(1e-8);
  const bool is_vector = spec.kind == SolitonKind::VectorField;

  Worst primal, dual, lie, koszul, trace, beta_norm, lie_norm;
  for (const auto& x : samples) {
    const StructurePoint sp = structure_at(field, x, 4);
    primal.update(soliton_residual(sp, spec).max_abs, x);
    dual.update(dual_soliton(sp, spec).residual.max_abs, x);
    lie.update(lie_alpha_sharp_defect(sp), x);
    const TraceIdentity ti = trace_identity_residual(sp, &spec);
    koszul.update(ti.koszul, x);
    trace.update(ti.soliton.value_or(0.0), x);
    if (is_vector) {
      const SteadyCheck s = steady_killing_check(sp, *spec.X, t);
      beta_norm.update(s.beta_norm, x);
      lie_norm.update(s.lie_norm, x);
    }
  }

  const std::string primal_anchor =
      is_vector ? "beta - 1/2 L_X g = lambda g" : "beta - nabla nabla f = lambda g";
  Json d = primal.detail();
  d["kind"] = to_string(spec.kind);
  d["lambda"] = spec.lambda;
  d["class"] = to_string(spec.classification());
  report.add(below("soliton_residual", primal_anchor, primal.value, t, d));
  report.add(below("dual_soliton_residual",
                   is_vector ? "beta' - 1/2 L_X' g = lambda g with X' = X - 2 alpha^sharp"
                             : "beta' - nabla nabla f' = lambda g with f' = f - 2 log sqrt(det g)",
                   dual.value, t, dual.detail()));
  report.add(below("lie_alpha_sharp", "L_{alpha^sharp} g = 2 nabla alpha", lie.value, t, lie.detail()));
  report.add(below("koszul_trace_identity", "g^ij beta_ij = div alpha^sharp + |alpha|^2", std::abs(koszul.value), t,
                   koszul.detail()));
  report.add(below("soliton_trace_identity",
                   is_vector ? "g^ij beta_ij = div X + n lambda" : "g^ij beta_ij = Delta f + n lambda",
                   std::abs(trace.value), t, trace.detail()));

  if (is_vector && spec.lambda == 0) {
    const double v = std::max(beta_norm.value, lie_norm.value);
    report.add(below("steady_killing", "steady: beta = 0 and L_X g = 0", v, t,
                     Json{{"beta_norm", beta_norm.value}, {"lie_norm", lie_norm.value}}));
  } else if (is_vector) {
    report.add(info("steady_killing", "|beta|_g and |L_X g|_g", std::max(beta_norm.value, lie_norm.value),
                    Json{{"beta_norm", beta_norm.value}, {"lie_norm", lie_norm.value}}));
  }

  const EinsteinFit fit = einstein_fit(field, samples);
  report.add(info("einstein_fit", "max |beta - lambda_hat g| with lambda_hat from trace ratios", fit.max_residual,
                  Json{{"lambda_hat", fit.lambda}, {"min_ratio", fit.min_ratio}, {"max_ratio", fit.max_ratio}}));
}

// ---- flow ------------------------------------------------------------------

Scheme scheme_from(const std::string& s) {
  if (s == "rk4") return Scheme::RK4;
  if (s == "euler") return Scheme::Euler;
  throw InvalidArgument("[flow] scheme must be euler or rk4, got '" + s + "'");
}

MetricGrid flow_grid(const Manifest& m, PotentialPtr& field, double& lambda) {
  const std::string mode = m.text_or("flow", "mode", "potential");
  if (mode == "potential") {
    const int nodes = static_cast<int>(m.integer_or("flow", "nodes", 32));
    if (m.has("flow", "initial")) {
      const int n = static_cast<int>(m.integer_or("flow", "n", 2));
      return torus_potential_grid(n, nodes, parse_potential(m.text("flow", "initial"), n));
    }
    if (m.text_or("potential", "family", "") != "torus_perturbed")
      throw InvalidArgument("[flow] mode = potential needs [flow] initial or a torus_perturbed [potential]");
    FamilyParams p;
    p.n = static_cast<int>(m.integer_or("potential", "n", 2));
    p.epsilon = m.number_or("potential", "epsilon", 0.0);
    if (m.has("potential", "frequencies")) p.frequencies = m.numbers("potential", "frequencies");
    return torus_potential_grid(nodes, p);
  }
  if (mode == "metric") {
    field = potential_from(m);
    if (!m.has("flow", "center")) throw InvalidArgument("[flow] mode = metric needs center");
    const auto centers = m.points("flow", "center");
    if (centers.size() != 1) throw InvalidArgument("[flow] center must be a single point");
    if (m.has("flow", "lambda")) {
      lambda = m.number("flow", "lambda");
    } else {
      lambda = einstein_fit(field, centers).lambda;
    }
    const int nodes = static_cast<int>(m.integer_or("flow", "nodes", 33));
    const double h = m.number_or("flow", "spacing", 1e-2);
    return metric_patch_grid(*field, centers.front(), nodes, h, einstein_boundary(field, lambda));
  }
  throw InvalidArgument("[flow] mode must be potential or metric, got '" + mode + "'");
}

void flow(RunOutput& out, const Manifest& m, const Tolerances& tol) {
  m.require_keys("flow", {"mode", "n", "nodes", "spacing", "center", "lambda", "initial", "dt", "scheme", "t_end",
                          "record_every"});
  Report& report = out.report;
  PotentialPtr field;
  double lambda = 0;
  const MetricGrid initial = flow_grid(m, field, lambda);
  const double dt = m.number_or("flow", "dt", 1e-3);
  const double t_end = m.number_or("flow", "t_end", 0.1);
  const int every = static_cast<int>(m.integer_or("flow", "record_every", 10));
  if (!(dt > 0) || !(t_end > 0) || every < 1) throw InvalidArgument("[flow] needs dt > 0, t_end > 0, record_every >= 1");
  const Scheme scheme = scheme_from(m.text_or("flow", "scheme", "rk4"));

  const FlowRun run = integrate(initial, dt, scheme, t_end, every);
  out.flow_records = run.records;
  out.snapshot = snapshot(run.final_state);

  Json run_info{{"mode", to_string(initial.mode)},
                {"scheme", to_string(scheme)},
                {"dt", dt},
                {"substeps", substeps_for(initial, dt)},
                {"cfl_limit", cfl_limit(initial)},
                {"nodes", initial.node_count()}};
  if (run.blew_up) run_info["message"] = run.message;
  report.set("flow", run_info);

  report.add(at_least("flow_completed", "time reached without loss of positive definiteness", run.final_state.time,
                      t_end - 0.5 * dt, Json{{"blew_up", run.blew_up}}));
  double min_eig = std::numeric_limits<double>::infinity();
  for (const auto& r : run.records) min_eig = std::min(min_eig, r.min_eig);
  report.add(above("positive_definite", "min eigenvalue of g over nodes and records", min_eig, 0.0));

  const FlowRecord& last = run.records.back();
  if (initial.mode == GridMode::Metric) {
    const GridField g = metric_on_grid(run.final_state);
    double err = 0;
    for (int node = 0; node < run.final_state.node_count(); ++node) {
      if (!run.final_state.interior(node)) continue;
      const Eigen::MatrixXd exact = initial.boundary(run.final_state.coordinate(node), run.final_state.time);
      err = std::max(err, max_abs(g.values[node] - exact));
    }
    report.add(below("einstein_exact_solution", "g(t) = (1 + 2 lambda t) g(0) on interior nodes", err, tol(1e-6),
                     Json{{"lambda", lambda}, {"t", run.final_state.time}}));
    const double expected = 1 + 2 * lambda * run.final_state.time;
    report.add(below("self_similarity_factor", "|c_hat - (1 + 2 lambda t)|", std::abs(last.c_hat - expected),
                     tol(1e-6), Json{{"c_hat", last.c_hat}, {"expected", expected}}));
  } else {
    double defect = 0, min_alpha_sq = std::numeric_limits<double>::infinity();
    for (const auto& r : run.records) {
      defect = std::max(defect, std::abs(r.int_beta_trace - r.int_alpha_sq));
      min_alpha_sq = std::min(min_alpha_sq, r.int_alpha_sq);
    }
    report.add(below("torus_stokes_identity", "int g^ij beta_ij dv = int |alpha|^2 dv", defect, tol(1e-7)));
    report.add(at_least("torus_alpha_sq_nonnegative", "int |alpha|^2 dv >= 0", min_alpha_sq, 0.0));
    report.add(info("self_similarity", "c_hat and max |g - c_hat g0| at the final state", last.ss_deviation,
                    Json{{"c_hat", last.c_hat}, {"self_similar", run.self_similar}}));
  }
}

// ---- infogeo ---------------------------------------------------------------

SimplexCoords coords_from(const std::string& s) {
  if (s == "mean") return SimplexCoords::Mean;
  if (s == "natural") return SimplexCoords::Natural;
  throw InvalidArgument("[family] coords must be mean or natural, got '" + s + "'");
}

void infogeo(Report& report, const Manifest& m, std::uint64_t seed, std::optional<int> points, const Tolerances& tol) {
  if (!m.has("family")) throw InvalidArgument("infogeo needs a [family] section");
  m.require_keys("family", {"outcomes", "coords", "a"});
  if (m.has("samples")) m.require_keys("samples", {"points", "random", "seed"});
  const int outcomes = static_cast<int>(m.integer_or("family", "outcomes", 2));
  const SimplexFamily family(outcomes, coords_from(m.text_or("family", "coords", "mean")));
  const SimplexFamily natural(outcomes, SimplexCoords::Natural);
  const std::vector<double> as = m.has("family", "a") ? m.numbers("family", "a") : std::vector<double>{1.0};
  const int d = family.dimension();

  std::vector<Eigen::VectorXd> samples;
  if (m.has("samples", "points")) samples = m.points("samples", "points");
  for (const auto& x : samples)
    if (x.size() != d || !family.interior(x))
      throw DomainError("[samples] point outside the open simplex in " + to_string(family.coords()) + " coordinates");
  const int draws = points.value_or(static_cast<int>(m.integer_or("samples", "random", samples.empty() ? 20 : 0)));
  // Uniform on the simplex: normalized exponential variables.
  Sampler rng(seed);
  for (int s = 0; s < draws; ++s) {
    Eigen::VectorXd e(outcomes);
    for (int w = 0; w < outcomes; ++w) e[w] = -std::log1p(-rng.uniform());
    const Eigen::VectorXd p = e / e.sum();
    Eigen::VectorXd x(d);
    for (int i = 0; i < d; ++i)
      x[i] = family.coords() == SimplexCoords::Mean ? p[i] : std::log(p[i] / p[d]);
    if (family.interior(x)) samples.push_back(x);
  }
  if (samples.empty()) throw InvalidArgument("infogeo needs at least one sample");

  std::vector<Eigen::VectorXd> thetas;
  double min_eig = std::numeric_limits<double>::infinity();
  Worst affine, pairing, cross;
  const PotentialPtr partition = multinomial_logpartition_potential(outcomes);
  for (const auto& x : samples) {
    const Eigen::VectorXd theta = family.to_natural(x);
    thetas.push_back(theta);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(fisher_metric(family, x), Eigen::EigenvaluesOnly);
    min_eig = std::min(min_eig, eig.eigenvalues().minCoeff());

    const Tensor lc = alpha_connection(family, x, 0.0).lowered;
    const double scale = std::max(1.0, lc.max_abs());
    for (double a : as) {
      const Tensor plus = alpha_connection(family, x, a).lowered;
      const Tensor minus = alpha_connection(family, x, -a).lowered;
      affine.update((plus + minus - 2.0 * lc).max_abs() / scale, x);
      pairing.update(duality_pairing_check(family, x, a) / scale, x);
    }
    const StructurePoint sp = structure_at(partition, theta, 4);
    cross.update(max_abs(sp.metric.g - fisher_metric(natural, theta)) / std::max(1.0, max_abs(sp.metric.g)), x);
  }

  report.add(above("fisher_positive_definite", "min eigenvalue of the Fisher metric", min_eig, 0.0));
  report.add(below("connection_affine_in_a", "Gamma^(a) + Gamma^(-a) = 2 Gamma^(0), relative to max |Gamma^(0)|",
                   affine.value, tol(1e-12), affine.detail()));
  Json pd = pairing.detail();
  pd["a"] = as;
  report.add(below("duality_pairing", "d_k g_ij = Gamma^(a)_ki,j + Gamma^(-a)_kj,i, relative to max |Gamma^(0)|",
                   pairing.value, tol(1e-10), pd));
  const double cert_tol = tol(1e-10);
  const HessianCertificate c = hessian_structure_certificate(outcomes, thetas, cert_tol);
  report.add(below("potential_hessian", "Fisher metric = Hess of the log-partition in natural coordinates",
                   c.potential_hessian_defect, cert_tol));
  report.add(below("e_connection_flat", "Gamma^(1) = 0 in natural coordinates", c.e_flatness_defect, cert_tol));
  report.add(above("properness_witness", "max |Gamma^(1) - Gamma^LC| in mean coordinates", c.properness_witness, 1e-8));
  report.add(below("cross_module_metric", "structure metric of the log-partition = Fisher metric", cross.value,
                   cert_tol, cross.detail()));
  report.set("certificate", Json{{"hessian", c.hessian}, {"flat", c.flat}, {"proper", c.proper},
                                 {"certified", c.certified()}});
  report.set("sample_count", samples.size());
}

}  // namespace

PotentialPtr potential_from(const Manifest& m) {
  if (!m.has("potential")) throw InvalidArgument("manifest needs a [potential] section");
  m.require_keys("potential", {"expr", "family", "n", "epsilon", "frequencies", "name"});
  const bool has_expr = m.has("potential", "expr"), has_family = m.has("potential", "family");
  if (has_expr == has_family) throw InvalidArgument("[potential] needs exactly one of expr and family");
  const int n = static_cast<int>(m.integer_or("potential", "n", 2));
  if (has_expr) {
    if (n < 1 || n > 16) throw InvalidArgument("[potential] n must be in 1..16");
    return std::make_shared<ExpressionPotential>(parse_potential(m.text("potential", "expr"), n),
                                                 m.text_or("potential", "name", ""));
  }
  FamilyParams p;
  p.n = n;
  p.epsilon = m.number_or("potential", "epsilon", 0.0);
  if (m.has("potential", "frequencies")) p.frequencies = m.numbers("potential", "frequencies");
  return builtin_family(m.text("potential", "family"), p);
}

std::vector<Eigen::VectorXd> samples_from(const Manifest& m, const PotentialField& field, std::uint64_t seed,
                                          std::optional<int> points) {
  if (m.has("samples")) m.require_keys("samples", {"points", "random", "box", "seed"});
  const int n = field.dimension();
  std::vector<Eigen::VectorXd> out;
  if (m.has("samples", "points")) out = m.points("samples", "points");
  for (const auto& x : out) {
    if (x.size() != n)
      throw InvalidArgument("[samples] point of dimension " + std::to_string(x.size()) + ", expected " +
                            std::to_string(n));
    if (!field.in_domain(x)) throw DomainError("[samples] point outside the domain of " + field.id());
  }
  const long long draws = points ? *points : m.integer_or("samples", "random", 0);
  if (draws < 0) throw InvalidArgument("sample count must be non-negative");
  if (draws > 0) {
    if (!m.has("samples", "box")) throw InvalidArgument("random samples need [samples] box = (lo...), (hi...)");
    const auto box = m.points("samples", "box");
    if (box.size() != 2 || box[0].size() != n || box[1].size() != n)
      throw InvalidArgument("[samples] box must be two points of dimension " + std::to_string(n));
    Sampler rng(seed);
    long long accepted = 0, tries = 0;
    while (accepted < draws) {
      if (++tries > 1000 * draws) throw DomainError("[samples] box hardly meets the domain of " + field.id());
      Eigen::VectorXd x(n);
      for (int i = 0; i < n; ++i) x[i] = rng.uniform(box[0][i], box[1][i]);
      if (!field.in_domain(x)) continue;
      out.push_back(x);
      ++accepted;
    }
  }
  if (out.empty()) throw InvalidArgument("no sample points: give [samples] points or random");
  return out;
}

Json manifest_echo(const Manifest& m) {
  Json j = Json::object();
  for (const auto& s : m.sections()) {
    Json sec = Json::object();
    for (const auto& e : s.entries) sec[e.key] = e.value;
    j[s.name] = sec;
  }
  return j;
}

int exit_code(const Report& report) { return report.all_pass() ? 0 : 1; }

RunOutput run(std::string_view command, const Manifest& m, const RunOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const std::uint64_t seed = seed_from(m, options);
  RunOutput out{Report(std::string(command), manifest_echo(m), seed), {}, Json()};
  const Tolerances tol{options.tolerance};

  if (command == "analyze" || command == "verify" || command == "soliton") {
    const PotentialPtr field = potential_from(m);
    const auto samples = samples_from(m, *field, seed, options.points);
    out.report.set("potential", field->id());
    out.report.set("sample_count", samples.size());
    if (command == "analyze") analyze(out.report, field, samples);
    else if (command == "verify") verify(out.report, field, samples, tol);
    else {
      if (!m.has("soliton")) throw InvalidArgument("soliton needs a [soliton] section");
      soliton(out.report, m, field, samples, tol);
    }
  } else if (command == "flow") {
    if (!m.has("flow")) throw InvalidArgument("flow needs a [flow] section");
    flow(out, m, tol);
  } else if (command == "infogeo") {
    infogeo(out.report, m, seed, options.points, tol);
  } else {
    throw InvalidArgument("unknown command '" + std::string(command) + "'");
  }

  out.report.set_wall_seconds(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  return out;
}

}  // namespace hesse
