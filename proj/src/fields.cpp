#include "hesse/fields.hpp"

#include <sstream>

#include "hesse/local_jets.hpp"

namespace hesse {

Eigen::VectorXd VectorField::value(const Eigen::VectorXd& x) const {
  const auto j = jet(x, 0);
  Eigen::VectorXd v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = j[i].value();
  return v;
}

namespace {

void check_point(int dimension, const Eigen::VectorXd& x) {
  if (x.size() != dimension)
    throw InvalidArgument("point of dimension " + std::to_string(x.size()) + " for a field of dimension " +
                          std::to_string(dimension));
}

class ExpressionVector final : public VectorField {
 public:
  explicit ExpressionVector(std::vector<Expression> c) : c_(std::move(c)) {}
  int dimension() const override { return static_cast<int>(c_.size()); }
  std::string describe() const override {
    std::string s = "[";
    for (std::size_t i = 0; i < c_.size(); ++i) s += (i ? ", " : "") + c_[i].to_string();
    return s + "]";
  }
  std::vector<JetD> jet(const Eigen::VectorXd& x, int order) const override {
    check_point(dimension(), x);
    const auto vars = coordinate_jets<double>(x, order);
    std::vector<JetD> out;
    out.reserve(c_.size());
    for (const auto& e : c_) out.push_back(e.evaluate(vars));
    return out;
  }

 private:
  std::vector<Expression> c_;
};

class ExpressionScalar final : public ScalarField {
 public:
  explicit ExpressionScalar(Expression f) : f_(std::move(f)) {}
  int dimension() const override { return f_.dimension(); }
  std::string describe() const override { return f_.to_string(); }
  JetD jet(const Eigen::VectorXd& x, int order) const override {
    check_point(dimension(), x);
    return f_.evaluate(coordinate_jets<double>(x, order));
  }

 private:
  Expression f_;
};

class ZeroVector final : public VectorField {
 public:
  explicit ZeroVector(int n) : n_(n) {}
  int dimension() const override { return n_; }
  std::string describe() const override { return "0"; }
  std::vector<JetD> jet(const Eigen::VectorXd& x, int order) const override {
    check_point(n_, x);
    return std::vector<JetD>(n_, JetD::constant(n_, order, 0.0));
  }

 private:
  int n_;
};

class KoszulSharp final : public VectorField {
 public:
  explicit KoszulSharp(PotentialPtr p) : p_(std::move(p)) {}
  int dimension() const override { return p_->dimension(); }
  std::string describe() const override { return "alpha_sharp(" + p_->id() + ")"; }
  std::vector<JetD> jet(const Eigen::VectorXd& x, int order) const override {
    const LocalJets lj = local_jets(*p_, x, order + 3);
    const int n = lj.dimension;
    std::vector<JetD> out;
    for (int i = 0; i < n; ++i) {
      JetD s = JetD::constant(n, order, 0.0);
      for (int j = 0; j < n; ++j) s += lj.g_inv[i * n + j] * lj.alpha[j];
      out.push_back(std::move(s));
    }
    return out;
  }

 private:
  PotentialPtr p_;
};

class HalfLogDet final : public ScalarField {
 public:
  explicit HalfLogDet(PotentialPtr p) : p_(std::move(p)) {}
  int dimension() const override { return p_->dimension(); }
  std::string describe() const override { return "log_sqrt_det_g(" + p_->id() + ")"; }
  JetD jet(const Eigen::VectorXd& x, int order) const override {
    return local_jets(*p_, x, order + 2).half_log_det;
  }

 private:
  PotentialPtr p_;
};

class Gradient final : public VectorField {
 public:
  Gradient(PotentialPtr p, ScalarFieldPtr f) : p_(std::move(p)), f_(std::move(f)) {}
  int dimension() const override { return p_->dimension(); }
  std::string describe() const override { return "grad(" + f_->describe() + ")"; }
  std::vector<JetD> jet(const Eigen::VectorXd& x, int order) const override {
    const LocalJets lj = local_jets(*p_, x, order + 2);
    const JetD f = f_->jet(x, order + 1);
    const int n = lj.dimension;
    std::vector<JetD> out;
    for (int i = 0; i < n; ++i) {
      JetD s = JetD::constant(n, order, 0.0);
      for (int j = 0; j < n; ++j) s += lj.g_inv[i * n + j] * f.partial(j);
      out.push_back(std::move(s));
    }
    return out;
  }

 private:
  PotentialPtr p_;
  ScalarFieldPtr f_;
};

std::string coefficient(double a) {
  std::ostringstream os;
  os << a;
  return os.str();
}

class VectorCombination final : public VectorField {
 public:
  VectorCombination(double a, VectorFieldPtr x, double b, VectorFieldPtr y)
      : a_(a), b_(b), x_(std::move(x)), y_(std::move(y)) {}
  int dimension() const override { return x_->dimension(); }
  std::string describe() const override {
    return coefficient(a_) + "*" + x_->describe() + " + " + coefficient(b_) + "*" + y_->describe();
  }
  std::vector<JetD> jet(const Eigen::VectorXd& x, int order) const override {
    auto u = x_->jet(x, order);
    const auto v = y_->jet(x, order);
    for (std::size_t i = 0; i < u.size(); ++i) u[i] = a_ * u[i] + b_ * v[i];
    return u;
  }

 private:
  double a_, b_;
  VectorFieldPtr x_, y_;
};

class ScalarCombination final : public ScalarField {
 public:
  ScalarCombination(double a, ScalarFieldPtr f, double b, ScalarFieldPtr h)
      : a_(a), b_(b), f_(std::move(f)), h_(std::move(h)) {}
  int dimension() const override { return f_->dimension(); }
  std::string describe() const override {
    return coefficient(a_) + "*" + f_->describe() + " + " + coefficient(b_) + "*" + h_->describe();
  }
  JetD jet(const Eigen::VectorXd& x, int order) const override {
    return a_ * f_->jet(x, order) + b_ * h_->jet(x, order);
  }

 private:
  double a_, b_;
  ScalarFieldPtr f_, h_;
};

}  // namespace

VectorFieldPtr expression_vector_field(std::vector<Expression> components) {
  if (components.empty()) throw InvalidArgument("vector field without components");
  for (const auto& c : components)
    if (c.dimension() != static_cast<int>(components.size()))
      throw InvalidArgument("vector field needs one component per coordinate");
  return std::make_shared<ExpressionVector>(std::move(components));
}

ScalarFieldPtr expression_scalar_field(Expression f) { return std::make_shared<ExpressionScalar>(std::move(f)); }

VectorFieldPtr zero_vector_field(int dimension) { return std::make_shared<ZeroVector>(dimension); }

VectorFieldPtr koszul_sharp_field(PotentialPtr potential) {
  return std::make_shared<KoszulSharp>(std::move(potential));
}

ScalarFieldPtr half_log_det_field(PotentialPtr potential) {
  return std::make_shared<HalfLogDet>(std::move(potential));
}

VectorFieldPtr gradient_field(PotentialPtr potential, ScalarFieldPtr f) {
  if (potential->dimension() != f->dimension()) throw InvalidArgument("gradient field dimension mismatch");
  return std::make_shared<Gradient>(std::move(potential), std::move(f));
}

VectorFieldPtr combine(double a, VectorFieldPtr x, double b, VectorFieldPtr y) {
  if (x->dimension() != y->dimension()) throw InvalidArgument("vector field dimension mismatch");
  return std::make_shared<VectorCombination>(a, std::move(x), b, std::move(y));
}

ScalarFieldPtr combine(double a, ScalarFieldPtr f, double b, ScalarFieldPtr h) {
  if (f->dimension() != h->dimension()) throw InvalidArgument("scalar field dimension mismatch");
  return std::make_shared<ScalarCombination>(a, std::move(f), b, std::move(h));
}

}  // namespace hesse
