#include "hesse/potential.hpp"

#include <cmath>
#include <sstream>

namespace hesse {

bool PotentialField::in_domain(const Eigen::VectorXd&) const { return true; }

JetD PotentialField::jet(const Eigen::VectorXd& x, int order) const {
  if (order < 0 || order > max_order())
    throw InvalidArgument("jet order " + std::to_string(order) + " exceeds K_max = " + std::to_string(max_order()));
  if (x.size() != dimension())
    throw InvalidArgument("point of dimension " + std::to_string(x.size()) + " for a " +
                          std::to_string(dimension()) + "-dimensional potential");
  if (!in_domain(x)) throw DomainError("point outside the domain of " + id());
  const auto vars = coordinate_jets<double>(x, order);
  return evaluate(vars);
}

ExpressionPotential::ExpressionPotential(Expression expression, std::string id)
    : expression_(std::move(expression)), id_(std::move(id)) {
  if (id_.empty()) id_ = "expr:" + expression_.to_string();
}

JetD ExpressionPotential::evaluate(std::span<const JetD> coordinates) const {
  return expression_.evaluate(coordinates);
}

namespace {

class Quadratic final : public PotentialField {
 public:
  explicit Quadratic(int n) : n_(n) {}
  int dimension() const override { return n_; }
  std::string id() const override { return "quadratic(n=" + std::to_string(n_) + ")"; }
  JetD evaluate(std::span<const JetD> x) const override {
    JetD sum = JetD::constant(n_, x.front().order(), 0.0);
    for (const auto& xi : x) sum += xi * xi;
    return 0.5 * sum;
  }

 private:
  int n_;
};

class LogCone final : public PotentialField {
 public:
  explicit LogCone(int n) : n_(n) {}
  int dimension() const override { return n_; }
  std::string id() const override { return "log_cone(n=" + std::to_string(n_) + ")"; }
  bool in_domain(const Eigen::VectorXd& x) const override {
    return x[n_ - 1] > x.head(n_ - 1).norm();
  }
  JetD evaluate(std::span<const JetD> x) const override {
    JetD q = x[n_ - 1] * x[n_ - 1];
    for (int i = 0; i + 1 < n_; ++i) q -= x[i] * x[i];
    return -log(q);
  }

 private:
  int n_;
};

class TorusPerturbed final : public PotentialField {
 public:
  TorusPerturbed(int n, double epsilon, std::vector<double> k) : n_(n), epsilon_(epsilon), k_(std::move(k)) {}
  int dimension() const override { return n_; }
  std::string id() const override {
    std::ostringstream os;
    os << "torus_perturbed(n=" << n_ << ",epsilon=" << epsilon_ << ",frequencies=";
    for (std::size_t i = 0; i < k_.size(); ++i) os << (i ? ";" : "") << k_[i];
    os << ")";
    return os.str();
  }
  JetD evaluate(std::span<const JetD> x) const override {
    const int order = x.front().order();
    JetD quad = JetD::constant(n_, order, 0.0);
    JetD wave = JetD::constant(n_, order, 1.0);
    for (int i = 0; i < n_; ++i) {
      quad += x[i] * x[i];
      wave *= sin(k_[i] * x[i]);
    }
    return 0.5 * quad + epsilon_ * wave;
  }

 private:
  int n_;
  double epsilon_;
  std::vector<double> k_;
};

class MultinomialLogPartition final : public PotentialField {
 public:
  explicit MultinomialLogPartition(int outcomes) : outcomes_(outcomes) {}
  int dimension() const override { return outcomes_ - 1; }
  std::string id() const override { return "multinomial_logpartition(n=" + std::to_string(outcomes_) + ")"; }
  JetD evaluate(std::span<const JetD> theta) const override {
    JetD z = JetD::constant(dimension(), theta.front().order(), 1.0);
    for (const auto& t : theta) z += exp(t);
    return log(z);
  }

 private:
  int outcomes_;
};

class Scaled final : public PotentialField {
 public:
  Scaled(PotentialPtr base, double c) : base_(std::move(base)), c_(c) {}
  int dimension() const override { return base_->dimension(); }
  std::string id() const override {
    std::ostringstream os;
    os << c_ << "*" << base_->id();
    return os.str();
  }
  bool in_domain(const Eigen::VectorXd& x) const override { return base_->in_domain(x); }
  JetD evaluate(std::span<const JetD> x) const override { return c_ * base_->evaluate(x); }

 private:
  PotentialPtr base_;
  double c_;
};

void require_dimension(int n, int minimum, std::string_view family) {
  if (n < minimum)
    throw InvalidArgument(std::string(family) + " needs n >= " + std::to_string(minimum) + ", got " +
                          std::to_string(n));
}

}  // namespace

PotentialPtr quadratic_potential(int dimension) {
  require_dimension(dimension, 1, "quadratic");
  return std::make_shared<Quadratic>(dimension);
}

PotentialPtr log_cone_potential(int dimension) {
  require_dimension(dimension, 2, "log_cone");
  return std::make_shared<LogCone>(dimension);
}

double torus_epsilon_bound(std::span<const double> frequencies) {
  double s = 0;
  for (double k : frequencies) s += k * k;
  return s > 0 ? 1.0 / s : std::numeric_limits<double>::infinity();
}

PotentialPtr torus_perturbed_potential(int dimension, double epsilon, std::vector<double> frequencies) {
  require_dimension(dimension, 1, "torus_perturbed");
  if (frequencies.empty()) frequencies.assign(dimension, 1.0);
  if (static_cast<int>(frequencies.size()) != dimension)
    throw InvalidArgument("torus_perturbed needs one frequency per axis");
  const double bound = torus_epsilon_bound(frequencies);
  if (!(std::abs(epsilon) < bound))
    throw InvalidArgument("torus_perturbed epsilon " + std::to_string(epsilon) +
                          " outside the positive-definiteness bound |epsilon| < " + std::to_string(bound));
  return std::make_shared<TorusPerturbed>(dimension, epsilon, std::move(frequencies));
}

PotentialPtr multinomial_logpartition_potential(int outcomes) {
  require_dimension(outcomes, 2, "multinomial_logpartition");
  return std::make_shared<MultinomialLogPartition>(outcomes);
}

PotentialPtr scaled_potential(PotentialPtr base, double factor) {
  if (!(factor > 0)) throw InvalidArgument("potential scale factor must be positive");
  return std::make_shared<Scaled>(std::move(base), factor);
}

PotentialPtr builtin_family(std::string_view name, const FamilyParams& params) {
  if (name == "quadratic") return quadratic_potential(params.n);
  if (name == "log_cone") return log_cone_potential(params.n);
  if (name == "torus_perturbed") return torus_perturbed_potential(params.n, params.epsilon, params.frequencies);
  if (name == "multinomial_logpartition") return multinomial_logpartition_potential(params.n);
  throw InvalidArgument("unknown potential family '" + std::string(name) + "'");
}

bool hessian_is_positive_definite(const Eigen::MatrixXd& hessian) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(hessian, Eigen::EigenvaluesOnly);
  const double trace = hessian.trace();
  return trace > 0 && eig.eigenvalues().minCoeff() > 1e-12 * trace;
}

}  // namespace hesse
