#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

namespace hesse {

// Highest derivative order any jet carries. Fifth derivatives of the
// potential are the most any curvature formula in the library consumes.
inline constexpr int kMaxJetOrder = 5;
inline constexpr int kMaxJetDimension = 16;

// Enumeration of the multi-indices m with |m| <= kMaxJetOrder in n variables,
// graded by total degree. Because of the grading, the multi-indices of degree
// <= K form a prefix of length size(K), so truncating a jet is a resize.
class MultiIndexTable {
 public:
  struct ProductTerm {
    int left;
    int right;
    double weight;  // prod_i binomial(m_i, left_i)
  };

  // Shared, immutable, thread-safe after construction.
  static const MultiIndexTable& get(int dimension);

  int dimension() const { return dimension_; }
  int size(int order) const { return prefix_[order]; }
  int degree(int position) const { return degree_[position]; }
  std::span<const std::uint8_t> exponents(int position) const {
    return {exponents_.data() + static_cast<std::size_t>(position) * dimension_,
            static_cast<std::size_t>(dimension_)};
  }

  // Position of the multi-index with the given exponents, -1 if its degree
  // exceeds kMaxJetOrder.
  int position(std::span<const int> exponents) const;
  // Position of m + e_axis, -1 when that would exceed kMaxJetOrder.
  int shifted(int position, int axis) const {
    return shifted_[static_cast<std::size_t>(position) * dimension_ + axis];
  }
  // Leibniz terms: all (a, b) with a + b = m.
  std::span<const ProductTerm> products(int position) const {
    return {products_.data() + product_offset_[position],
            products_.data() + product_offset_[position + 1]};
  }

 private:
  explicit MultiIndexTable(int dimension);
  std::uint64_t encode(std::span<const std::uint8_t> m) const;

  int dimension_;
  std::vector<std::uint8_t> exponents_;
  std::vector<int> degree_;
  std::vector<int> prefix_;
  std::vector<int> shifted_;
  std::vector<ProductTerm> products_;
  std::vector<std::size_t> product_offset_;
  std::unordered_map<std::uint64_t, int> lookup_;
};

}  // namespace hesse
