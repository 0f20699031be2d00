#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "hesse/errors.hpp"
#include "hesse/multi_index.hpp"

namespace hesse {

// Truncated multivariate Taylor polynomial of order K in n variables.
//
// Coefficients are stored as raw partial derivatives d^m f (no 1/m! factor),
// one entry per multi-index with |m| <= K, graded by degree. Arithmetic
// propagates derivatives exactly: products use the multivariate Leibniz rule
// and elementary functions are applied by composition with their univariate
// Taylor series.
template <typename Scalar>
class Jet {
 public:
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  Jet() : Jet(0, 0) {}
  Jet(int dimension, int order) : table_(&MultiIndexTable::get(dimension)), order_(order) {
    if (order < 0 || order > kMaxJetOrder)
      throw InvalidArgument("jet order " + std::to_string(order) + " outside [0, " +
                            std::to_string(kMaxJetOrder) + "]");
    coeffs_.assign(table_->size(order), Scalar(0));
  }

  static Jet constant(int dimension, int order, Scalar value) {
    Jet j(dimension, order);
    j.coeffs_[0] = value;
    return j;
  }
  // The coordinate function x_axis expanded around a point whose axis-th
  // coordinate is `value`.
  static Jet variable(int dimension, int order, int axis, Scalar value) {
    Jet j = constant(dimension, order, value);
    if (axis < 0 || axis >= dimension) throw InvalidArgument("jet variable axis out of range");
    if (order > 0) j.coeffs_[1 + axis] = Scalar(1);
    return j;
  }

  int dimension() const { return table_->dimension(); }
  int order() const { return order_; }
  int size() const { return static_cast<int>(coeffs_.size()); }
  const MultiIndexTable& table() const { return *table_; }

  Scalar value() const { return coeffs_[0]; }
  const Scalar& operator[](int position) const { return coeffs_[position]; }
  Scalar& operator[](int position) { return coeffs_[position]; }
  const std::vector<Scalar>& coefficients() const { return coeffs_; }

  // Partial derivative along the listed axes, e.g. d({0, 0, 1}) = d^3/dx0^2 dx1.
  Scalar d(std::initializer_list<int> axes) const { return d(std::span<const int>(axes.begin(), axes.size())); }
  Scalar d(std::span<const int> axes) const {
    if (static_cast<int>(axes.size()) > order_)
      throw InvalidArgument("derivative order exceeds jet order");
    std::vector<int> m(dimension(), 0);
    for (int a : axes) {
      if (a < 0 || a >= dimension()) throw InvalidArgument("derivative axis out of range");
      ++m[a];
    }
    return coeffs_[table_->position(m)];
  }

  Vector gradient() const {
    if (order_ < 1) throw InvalidArgument("gradient needs a jet of order >= 1");
    Vector g(dimension());
    for (int i = 0; i < dimension(); ++i) g[i] = coeffs_[1 + i];
    return g;
  }

  Matrix hessian() const {
    const int n = dimension();
    Matrix h(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) h(i, j) = h(j, i) = d({i, j});
    return h;
  }

  // Jet of d f / d x_axis, one order lower.
  Jet partial(int axis) const {
    if (order_ < 1) throw InvalidArgument("cannot differentiate an order-0 jet");
    if (axis < 0 || axis >= dimension()) throw InvalidArgument("derivative axis out of range");
    Jet r(dimension(), order_ - 1);
    for (int p = 0; p < r.size(); ++p) r.coeffs_[p] = coeffs_[table_->shifted(p, axis)];
    return r;
  }

  Jet truncated(int order) const {
    if (order > order_) throw InvalidArgument("cannot raise jet order by truncation");
    Jet r(dimension(), order);
    std::copy_n(coeffs_.begin(), r.size(), r.coeffs_.begin());
    return r;
  }

  Jet operator-() const {
    Jet r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }

  Jet& operator+=(const Jet& o) { return accumulate(o, Scalar(1)); }
  Jet& operator-=(const Jet& o) { return accumulate(o, Scalar(-1)); }
  Jet& operator+=(Scalar s) {
    coeffs_[0] += s;
    return *this;
  }
  Jet& operator-=(Scalar s) {
    coeffs_[0] -= s;
    return *this;
  }
  Jet& operator*=(Scalar s) {
    for (auto& c : coeffs_) c *= s;
    return *this;
  }
  Jet& operator/=(Scalar s) {
    for (auto& c : coeffs_) c /= s;
    return *this;
  }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator+(Jet a, Scalar s) { return a += s; }
  friend Jet operator+(Scalar s, Jet a) { return a += s; }
  friend Jet operator-(Jet a, Scalar s) { return a -= s; }
  friend Jet operator-(Scalar s, const Jet& a) { return -a + s; }
  friend Jet operator*(Jet a, Scalar s) { return a *= s; }
  friend Jet operator*(Scalar s, Jet a) { return a *= s; }
  friend Jet operator/(Jet a, Scalar s) { return a /= s; }

  friend Jet operator*(const Jet& a, const Jet& b) {
    check_compatible(a, b);
    const int order = std::min(a.order_, b.order_);
    Jet r(a.dimension(), order);
    for (int p = 0; p < r.size(); ++p) {
      Scalar sum(0);
      for (const auto& t : a.table_->products(p)) sum += t.weight * a.coeffs_[t.left] * b.coeffs_[t.right];
      r.coeffs_[p] = sum;
    }
    return r;
  }
  Jet& operator*=(const Jet& o) { return *this = *this * o; }

  friend Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }
  friend Jet operator/(Scalar s, const Jet& b) { return reciprocal(b) * s; }

 private:
  static void check_compatible(const Jet& a, const Jet& b) {
    if (a.dimension() != b.dimension()) throw InvalidArgument("jet dimension mismatch");
  }

  Jet& accumulate(const Jet& o, Scalar sign) {
    check_compatible(*this, o);
    if (o.order_ < order_) *this = truncated(o.order_);
    for (int p = 0; p < size(); ++p) coeffs_[p] += sign * o.coeffs_[p];
    return *this;
  }

  const MultiIndexTable* table_;
  int order_;
  std::vector<Scalar> coeffs_;
};

// f(u) for a univariate f given its derivatives f^(k)(u0), k = 0..order,
// at u0 = u.value().
template <typename Scalar>
Jet<Scalar> compose(const Jet<Scalar>& u, std::span<const Scalar> derivatives) {
  const int order = u.order();
  if (static_cast<int>(derivatives.size()) < order + 1)
    throw InvalidArgument("compose needs derivatives up to the jet order");
  Jet<Scalar> du = u;
  du[0] = Scalar(0);
  Scalar factorial(1);
  for (int k = 2; k <= order; ++k) factorial *= k;
  Jet<Scalar> r = Jet<Scalar>::constant(u.dimension(), order, derivatives[order] / factorial);
  for (int k = order - 1; k >= 0; --k) {
    factorial /= (k + 1);
    r = r * du + derivatives[k] / factorial;
  }
  return r;
}

template <typename Scalar>
Jet<Scalar> reciprocal(const Jet<Scalar>& u) {
  using std::pow;
  const Scalar u0 = u.value();
  if (u0 == Scalar(0)) throw DomainError("division by zero in jet arithmetic");
  std::vector<Scalar> d(u.order() + 1);
  // d^k/du^k (1/u) = (-1)^k k! / u^(k+1)
  Scalar c(1);
  for (int k = 0; k <= u.order(); ++k) {
    d[k] = c / pow(u0, k + 1);
    c *= -(k + 1);
  }
  return compose<Scalar>(u, d);
}

template <typename Scalar>
Jet<Scalar> exp(const Jet<Scalar>& u) {
  using std::exp;
  std::vector<Scalar> d(u.order() + 1, exp(u.value()));
  return compose<Scalar>(u, d);
}

template <typename Scalar>
Jet<Scalar> log(const Jet<Scalar>& u) {
  using std::log;
  using std::pow;
  const Scalar u0 = u.value();
  if (!(u0 > Scalar(0))) throw DomainError("log of non-positive value " + std::to_string(double(u0)));
  std::vector<Scalar> d(u.order() + 1);
  d[0] = log(u0);
  // d^k/du^k log u = (-1)^(k-1) (k-1)! / u^k
  Scalar c(1);
  for (int k = 1; k <= u.order(); ++k) {
    d[k] = c / pow(u0, k);
    c *= -k;
  }
  return compose<Scalar>(u, d);
}

// Real power with a positive base.
template <typename Scalar>
Jet<Scalar> pow(const Jet<Scalar>& u, Scalar exponent) {
  using std::pow;
  const Scalar u0 = u.value();
  if (!(u0 > Scalar(0)))
    throw DomainError("real power of non-positive base " + std::to_string(double(u0)));
  std::vector<Scalar> d(u.order() + 1);
  Scalar c(1);
  for (int k = 0; k <= u.order(); ++k) {
    d[k] = c * pow(u0, exponent - k);
    c *= (exponent - k);
  }
  return compose<Scalar>(u, d);
}

// Integer power; any base for non-negative exponents, non-zero base otherwise.
template <typename Scalar>
Jet<Scalar> pow(const Jet<Scalar>& u, int exponent) {
  using std::pow;
  const Scalar u0 = u.value();
  if (exponent < 0 && u0 == Scalar(0)) throw DomainError("negative power of zero");
  std::vector<Scalar> d(u.order() + 1, Scalar(0));
  Scalar c(1);
  for (int k = 0; k <= u.order(); ++k) {
    if (exponent >= 0 && k > exponent) break;
    d[k] = c * pow(u0, exponent - k);
    c *= (exponent - k);
  }
  return compose<Scalar>(u, d);
}

template <typename Scalar>
Jet<Scalar> sqrt(const Jet<Scalar>& u) {
  return pow(u, Scalar(0.5));
}

template <typename Scalar>
Jet<Scalar> sin(const Jet<Scalar>& u) {
  using std::cos;
  using std::sin;
  const Scalar s = sin(u.value()), c = cos(u.value());
  const Scalar cycle[4] = {s, c, -s, -c};
  std::vector<Scalar> d(u.order() + 1);
  for (int k = 0; k <= u.order(); ++k) d[k] = cycle[k % 4];
  return compose<Scalar>(u, d);
}

template <typename Scalar>
Jet<Scalar> cos(const Jet<Scalar>& u) {
  using std::cos;
  using std::sin;
  const Scalar s = sin(u.value()), c = cos(u.value());
  const Scalar cycle[4] = {c, -s, -c, s};
  std::vector<Scalar> d(u.order() + 1);
  for (int k = 0; k <= u.order(); ++k) d[k] = cycle[k % 4];
  return compose<Scalar>(u, d);
}

// Coordinate jets (x_0, ..., x_{n-1}) expanded at `point`.
template <typename Scalar>
std::vector<Jet<Scalar>> coordinate_jets(const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& point, int order) {
  const int n = static_cast<int>(point.size());
  std::vector<Jet<Scalar>> vars;
  vars.reserve(n);
  for (int i = 0; i < n; ++i) vars.push_back(Jet<Scalar>::variable(n, order, i, point[i]));
  return vars;
}

using JetD = Jet<double>;

}  // namespace hesse
