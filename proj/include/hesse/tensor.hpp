#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

#include "hesse/errors.hpp"

namespace hesse {

enum class Variance : unsigned char { Upper, Lower };

inline Variance opposite(Variance v) { return v == Variance::Upper ? Variance::Lower : Variance::Upper; }

// Dense rank-r tensor over an n-dimensional chart, row-major, with a variance
// flag per slot. Ranks and dimensions here are tiny (n <= 8, r <= 4).
template <typename Scalar>
class DenseTensor {
 public:
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  DenseTensor() = default;
  DenseTensor(int dimension, std::vector<Variance> variance)
      : dimension_(dimension), variance_(std::move(variance)) {
    if (dimension < 0) throw InvalidArgument("negative tensor dimension");
    std::size_t len = 1;
    for (std::size_t i = 0; i < variance_.size(); ++i) len *= static_cast<std::size_t>(dimension);
    values_.assign(len, Scalar(0));
  }

  static DenseTensor covariant(int dimension, int rank) {
    return DenseTensor(dimension, std::vector<Variance>(rank, Variance::Lower));
  }

  static DenseTensor from_matrix(const Matrix& m, Variance a = Variance::Lower, Variance b = Variance::Lower) {
    if (m.rows() != m.cols()) throw InvalidArgument("tensor from non-square matrix");
    DenseTensor t(static_cast<int>(m.rows()), {a, b});
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j) t(i, j) = m(i, j);
    return t;
  }
  static DenseTensor from_vector(const Vector& v, Variance a = Variance::Lower) {
    DenseTensor t(static_cast<int>(v.size()), {a});
    for (int i = 0; i < v.size(); ++i) t(i) = v[i];
    return t;
  }

  int rank() const { return static_cast<int>(variance_.size()); }
  int dimension() const { return dimension_; }
  Variance variance(int slot) const { return variance_.at(slot); }
  const std::vector<Variance>& variances() const { return variance_; }
  std::size_t size() const { return values_.size(); }
  const std::vector<Scalar>& values() const { return values_; }
  std::vector<Scalar>& values() { return values_; }

  template <typename... I>
  Scalar& operator()(I... idx) {
    return values_[offset({static_cast<int>(idx)...})];
  }
  template <typename... I>
  const Scalar& operator()(I... idx) const {
    return values_[offset({static_cast<int>(idx)...})];
  }
  Scalar& at(std::span<const int> idx) { return values_[offset(idx)]; }
  const Scalar& at(std::span<const int> idx) const { return values_[offset(idx)]; }

  std::size_t offset(std::span<const int> idx) const {
    std::size_t off = 0;
    for (int i : idx) off = off * dimension_ + static_cast<std::size_t>(i);
    return off;
  }
  std::size_t offset(std::initializer_list<int> idx) const {
    return offset(std::span<const int>(idx.begin(), idx.size()));
  }
  // Inverse of offset().
  std::vector<int> index_of(std::size_t off) const {
    std::vector<int> idx(rank());
    for (int s = rank() - 1; s >= 0; --s) {
      idx[s] = static_cast<int>(off % dimension_);
      off /= dimension_;
    }
    return idx;
  }

  Matrix as_matrix() const {
    if (rank() != 2) throw InvalidArgument("as_matrix on a tensor of rank " + std::to_string(rank()));
    Matrix m(dimension_, dimension_);
    for (int i = 0; i < dimension_; ++i)
      for (int j = 0; j < dimension_; ++j) m(i, j) = (*this)(i, j);
    return m;
  }
  Vector as_vector() const {
    if (rank() != 1) throw InvalidArgument("as_vector on a tensor of rank " + std::to_string(rank()));
    return Eigen::Map<const Vector>(values_.data(), dimension_);
  }

  Scalar max_abs() const {
    Scalar m(0);
    for (const auto& v : values_) m = std::max<Scalar>(m, std::abs(v));
    return m;
  }

  DenseTensor& operator+=(const DenseTensor& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
    return *this;
  }
  DenseTensor& operator-=(const DenseTensor& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
    return *this;
  }
  DenseTensor& operator*=(Scalar s) {
    for (auto& v : values_) v *= s;
    return *this;
  }
  friend DenseTensor operator+(DenseTensor a, const DenseTensor& b) { return a += b; }
  friend DenseTensor operator-(DenseTensor a, const DenseTensor& b) { return a -= b; }
  friend DenseTensor operator*(DenseTensor a, Scalar s) { return a *= s; }
  friend DenseTensor operator*(Scalar s, DenseTensor a) { return a *= s; }

  // Tensor with slots reordered: result slot s is this tensor's slot perm[s].
  DenseTensor permuted(std::span<const int> perm) const {
    if (static_cast<int>(perm.size()) != rank()) throw InvalidArgument("permutation length mismatch");
    std::vector<Variance> v(rank());
    for (int s = 0; s < rank(); ++s) v[s] = variance_[perm[s]];
    DenseTensor r(dimension_, v);
    std::vector<int> src(rank());
    for (std::size_t off = 0; off < r.size(); ++off) {
      const auto idx = r.index_of(off);
      for (int s = 0; s < rank(); ++s) src[perm[s]] = idx[s];
      r.values_[off] = at(src);
    }
    return r;
  }

  // Largest |T - T o sigma| over every permutation sigma of the slots.
  Scalar symmetry_defect() const {
    std::vector<int> perm(rank());
    std::iota(perm.begin(), perm.end(), 0);
    Scalar worst(0);
    while (std::next_permutation(perm.begin(), perm.end())) worst = std::max<Scalar>(worst, (*this - permuted(perm)).max_abs());
    return worst;
  }

 private:
  void check_same_shape(const DenseTensor& o) const {
    if (o.dimension_ != dimension_ || o.variance_ != variance_) throw InvalidArgument("tensor shape mismatch");
  }

  int dimension_ = 0;
  std::vector<Variance> variance_;
  std::vector<Scalar> values_;
};

// Metric at a point: g, its inverse and the volume density sqrt(det g).
template <typename Scalar>
struct MetricPoint {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Matrix g;
  Matrix g_inv;
  Scalar sqrt_det;

  int dimension() const { return static_cast<int>(g.rows()); }
};

// Cholesky-based inverse and sqrt(det) of a symmetric positive definite
// matrix. Throws NotPositiveDefinite naming the first failing leading minor
// (1-based).
template <typename Scalar>
MetricPoint<Scalar> invert_spd(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& g) {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const int n = static_cast<int>(g.rows());
  if (g.cols() != n) throw InvalidArgument("invert_spd on a non-square matrix");
  const Scalar scale = std::max<Scalar>(Scalar(1), g.cwiseAbs().maxCoeff());
  if ((g - g.transpose()).cwiseAbs().maxCoeff() > Scalar(1e-12) * scale)
    throw InvalidArgument("invert_spd on a non-symmetric matrix");
  Matrix l = Matrix::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    Scalar d = g(j, j);
    for (int k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (!(d > Scalar(0))) throw NotPositiveDefinite("matrix is not positive definite", j + 1);
    l(j, j) = std::sqrt(d);
    for (int i = j + 1; i < n; ++i) {
      Scalar s = g(i, j);
      for (int k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / l(j, j);
    }
  }
  const Matrix l_inv = l.template triangularView<Eigen::Lower>().solve(Matrix::Identity(n, n));
  Matrix inv = l_inv.transpose() * l_inv;
  inv = Scalar(0.5) * (inv + inv.transpose()).eval();
  return {g, inv, l.diagonal().prod()};
}

namespace detail {

template <typename Scalar>
DenseTensor<Scalar> apply_to_slot(const DenseTensor<Scalar>& t, int slot,
                                  const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& m, Variance result) {
  auto v = t.variances();
  v[slot] = result;
  DenseTensor<Scalar> r(t.dimension(), v);
  const int n = t.dimension();
  std::vector<int> src;
  for (std::size_t off = 0; off < r.size(); ++off) {
    auto idx = r.index_of(off);
    const int i = idx[slot];
    Scalar sum(0);
    src = idx;
    for (int p = 0; p < n; ++p) {
      src[slot] = p;
      sum += m(i, p) * t.at(src);
    }
    r.values()[off] = sum;
  }
  return r;
}

template <typename Scalar>
void check_slot(const DenseTensor<Scalar>& t, int slot) {
  if (slot < 0 || slot >= t.rank())
    throw InvalidArgument("slot " + std::to_string(slot) + " out of range for rank " + std::to_string(t.rank()));
}

}  // namespace detail

// T^{..i..} = g^{ip} T_{..p..}
template <typename Scalar>
DenseTensor<Scalar> raise(const DenseTensor<Scalar>& t, int slot, const MetricPoint<Scalar>& m) {
  detail::check_slot(t, slot);
  if (t.variance(slot) != Variance::Lower) throw InvalidArgument("raise on an upper slot");
  if (m.dimension() != t.dimension()) throw InvalidArgument("metric dimension mismatch");
  return detail::apply_to_slot(t, slot, m.g_inv, Variance::Upper);
}

// T_{..i..} = g_{ip} T^{..p..}
template <typename Scalar>
DenseTensor<Scalar> lower(const DenseTensor<Scalar>& t, int slot, const MetricPoint<Scalar>& m) {
  detail::check_slot(t, slot);
  if (t.variance(slot) != Variance::Upper) throw InvalidArgument("lower on a lower slot");
  if (m.dimension() != t.dimension()) throw InvalidArgument("metric dimension mismatch");
  return detail::apply_to_slot(t, slot, m.g, Variance::Lower);
}

// Contracts slot pairs (a in A, b in B). Pairs of opposite variance contract
// directly; pairs of equal variance contract through the metric, which must
// then be supplied. Result slots: free slots of A, then free slots of B.
template <typename Scalar>
DenseTensor<Scalar> contract(const DenseTensor<Scalar>& a, DenseTensor<Scalar> b,
                             const std::vector<std::pair<int, int>>& pairs,
                             const MetricPoint<Scalar>* m = nullptr) {
  if (a.dimension() != b.dimension()) throw InvalidArgument("contract: dimension mismatch");
  const int n = a.dimension();
  std::vector<bool> a_used(a.rank(), false), b_used(b.rank(), false);
  for (auto [sa, sb] : pairs) {
    detail::check_slot(a, sa);
    detail::check_slot(b, sb);
    if (a_used[sa] || b_used[sb]) throw InvalidArgument("contract: slot used twice");
    a_used[sa] = b_used[sb] = true;
    if (a.variance(sa) == b.variance(sb)) {
      if (!m) throw InvalidArgument("contract: equal variances need a metric");
      b = b.variance(sb) == Variance::Lower ? raise(b, sb, *m) : lower(b, sb, *m);
    }
  }
  std::vector<int> a_free, b_free;
  std::vector<Variance> v;
  for (int s = 0; s < a.rank(); ++s)
    if (!a_used[s]) a_free.push_back(s), v.push_back(a.variance(s));
  for (int s = 0; s < b.rank(); ++s)
    if (!b_used[s]) b_free.push_back(s), v.push_back(b.variance(s));
  DenseTensor<Scalar> r(n, v);
  const int k = static_cast<int>(pairs.size());
  std::size_t inner = 1;
  for (int i = 0; i < k; ++i) inner *= n;
  std::vector<int> ia(a.rank()), ib(b.rank());
  for (std::size_t off = 0; off < r.size(); ++off) {
    const auto idx = r.index_of(off);
    std::size_t pos = 0;
    for (int s : a_free) ia[s] = idx[pos++];
    for (int s : b_free) ib[s] = idx[pos++];
    Scalar sum(0);
    for (std::size_t c = 0; c < inner; ++c) {
      std::size_t rem = c;
      for (int p = k - 1; p >= 0; --p) {
        const int val = static_cast<int>(rem % n);
        rem /= n;
        ia[pairs[p].first] = val;
        ib[pairs[p].second] = val;
      }
      sum += a.at(ia) * b.at(ib);
    }
    r.values()[off] = sum;
  }
  return r;
}

template <typename Scalar>
DenseTensor<Scalar> contract(const DenseTensor<Scalar>& a, const DenseTensor<Scalar>& b,
                             const std::vector<std::pair<int, int>>& pairs, const MetricPoint<Scalar>& m) {
  return contract(a, b, pairs, &m);
}

// Trace over two slots of one tensor, through the metric when both slots
// have the same variance.
template <typename Scalar>
DenseTensor<Scalar> trace(const DenseTensor<Scalar>& t, int s1, int s2, const MetricPoint<Scalar>& m) {
  detail::check_slot(t, s1);
  detail::check_slot(t, s2);
  if (s1 == s2) throw InvalidArgument("trace over a single slot");
  DenseTensor<Scalar> u = t;
  if (u.variance(s1) == u.variance(s2)) u = u.variance(s2) == Variance::Lower ? raise(u, s2, m) : lower(u, s2, m);
  std::vector<Variance> v;
  for (int s = 0; s < u.rank(); ++s)
    if (s != s1 && s != s2) v.push_back(u.variance(s));
  DenseTensor<Scalar> r(u.dimension(), v);
  std::vector<int> src(u.rank());
  for (std::size_t off = 0; off < r.size(); ++off) {
    const auto idx = r.index_of(off);
    for (int s = 0, p = 0; s < u.rank(); ++s)
      if (s != s1 && s != s2) src[s] = idx[p++];
    Scalar sum(0);
    for (int i = 0; i < u.dimension(); ++i) {
      src[s1] = src[s2] = i;
      sum += u.at(src);
    }
    r.values()[off] = sum;
  }
  return r;
}

// |T|^2 with every slot contracted against a copy of T through the metric.
template <typename Scalar>
Scalar norm_sq(const DenseTensor<Scalar>& t, const MetricPoint<Scalar>& m) {
  if (m.dimension() != t.dimension()) throw InvalidArgument("norm_sq: dimension mismatch");
  DenseTensor<Scalar> dual = t;
  for (int s = 0; s < t.rank(); ++s)
    dual = dual.variance(s) == Variance::Lower ? raise(dual, s, m) : lower(dual, s, m);
  Scalar sum(0);
  for (std::size_t i = 0; i < t.size(); ++i) sum += t.values()[i] * dual.values()[i];
  return sum;
}

// Musical isomorphism: alpha^sharp = g^{-1} alpha.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> sharp(const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& alpha,
                                               const MetricPoint<Scalar>& m) {
  if (alpha.size() != m.dimension()) throw InvalidArgument("sharp: dimension mismatch");
  return m.g_inv * alpha;
}

using Tensor = DenseTensor<double>;
using Metric = MetricPoint<double>;

}  // namespace hesse
