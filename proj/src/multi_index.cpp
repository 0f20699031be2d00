#include "hesse/multi_index.hpp"

#include <array>
#include <map>
#include <memory>
#include <mutex>

#include "hesse/errors.hpp"

namespace hesse {

namespace {

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// All exponent vectors of total degree `degree`, lexicographically descending.
void compositions(int dimension, int degree, std::vector<std::uint8_t>& current, int axis,
                  std::vector<std::vector<std::uint8_t>>& out) {
  if (axis == dimension - 1) {
    current[axis] = static_cast<std::uint8_t>(degree);
    out.push_back(current);
    return;
  }
  for (int k = degree; k >= 0; --k) {
    current[axis] = static_cast<std::uint8_t>(k);
    compositions(dimension, degree - k, current, axis + 1, out);
  }
}

}  // namespace

const MultiIndexTable& MultiIndexTable::get(int dimension) {
  if (dimension < 0 || dimension > kMaxJetDimension)
    throw InvalidArgument("jet dimension " + std::to_string(dimension) + " outside [0, " +
                          std::to_string(kMaxJetDimension) + "]");
  static std::mutex mutex;
  static std::array<std::unique_ptr<MultiIndexTable>, kMaxJetDimension + 1> tables;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = tables[dimension];
  if (!slot) slot.reset(new MultiIndexTable(dimension));
  return *slot;
}

std::uint64_t MultiIndexTable::encode(std::span<const std::uint8_t> m) const {
  std::uint64_t code = 0;
  for (auto e : m) code = code * (kMaxJetOrder + 1) + e;
  return code;
}

MultiIndexTable::MultiIndexTable(int dimension) : dimension_(dimension) {
  prefix_.assign(kMaxJetOrder + 1, 0);
  std::vector<std::vector<std::uint8_t>> all;
  if (dimension == 0) {
    all.emplace_back();
    for (auto& p : prefix_) p = 1;
  } else {
    std::vector<std::uint8_t> current(dimension, 0);
    for (int d = 0; d <= kMaxJetOrder; ++d) {
      compositions(dimension, d, current, 0, all);
      prefix_[d] = static_cast<int>(all.size());
    }
  }
  const int count = static_cast<int>(all.size());
  exponents_.reserve(static_cast<std::size_t>(count) * dimension);
  for (int p = 0; p < count; ++p) {
    int deg = 0;
    for (auto e : all[p]) {
      exponents_.push_back(e);
      deg += e;
    }
    degree_.push_back(deg);
    lookup_.emplace(encode(all[p]), p);
  }

  shifted_.assign(static_cast<std::size_t>(count) * dimension, -1);
  for (int p = 0; p < count; ++p) {
    if (degree_[p] == kMaxJetOrder) continue;
    for (int a = 0; a < dimension; ++a) {
      auto m = all[p];
      ++m[a];
      shifted_[static_cast<std::size_t>(p) * dimension + a] = lookup_.at(encode(m));
    }
  }

  product_offset_.push_back(0);
  std::vector<std::uint8_t> left(dimension), right(dimension);
  for (int p = 0; p < count; ++p) {
    const auto& m = all[p];
    // Odometer over every left <= m componentwise.
    std::fill(left.begin(), left.end(), 0);
    while (true) {
      double w = 1.0;
      for (int i = 0; i < dimension; ++i) {
        right[i] = static_cast<std::uint8_t>(m[i] - left[i]);
        w *= binomial(m[i], left[i]);
      }
      products_.push_back({lookup_.at(encode(left)), lookup_.at(encode(right)), w});
      int i = 0;
      while (i < dimension && left[i] == m[i]) left[i++] = 0;
      if (i == dimension) break;
      ++left[i];
    }
    product_offset_.push_back(products_.size());
  }
}

int MultiIndexTable::position(std::span<const int> exponents) const {
  if (static_cast<int>(exponents.size()) != dimension_)
    throw InvalidArgument("multi-index length does not match jet dimension");
  std::vector<std::uint8_t> m(exponents.size());
  int deg = 0;
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    if (exponents[i] < 0) throw InvalidArgument("negative multi-index entry");
    deg += exponents[i];
    if (deg > kMaxJetOrder) return -1;
    m[i] = static_cast<std::uint8_t>(exponents[i]);
  }
  return lookup_.at(encode(m));
}

}  // namespace hesse
