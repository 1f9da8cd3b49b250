#pragma once

#include <Eigen/Core>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <limits>
#include <new>
#include <span>
#include <utility>
#include <vector>

#include "kgforge/error.hpp"
#include "kgforge/parallel.hpp"
#include "kgforge/tfidf.hpp"

namespace kgforge {

/// n(n-1)/2; throws CapacityError if that does not fit in 64 bits.
std::uint64_t pair_count(std::uint64_t n);

/// Upper-triangular pairwise distances (i < j) in row-major condensed order,
/// stored in fixed-size blocks so no single allocation limits n.
template <typename Scalar>
class CondensedMatrix {
 public:
  using Block = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  static constexpr std::uint64_t kDefaultBlockEntries = std::uint64_t{1} << 20;

  CondensedMatrix() = default;

  /// `max_bytes` of 0 means no explicit budget.
  explicit CondensedMatrix(std::uint64_t n, std::uint64_t block_entries = kDefaultBlockEntries,
                           std::uint64_t max_bytes = 0)
      : n_(n), size_(pair_count(n)), block_entries_(block_entries) {
    if (block_entries_ == 0) throw ValidationError("block size must be positive");
    const std::uint64_t bytes = size_ * sizeof(Scalar);
    if (max_bytes != 0 && bytes > max_bytes) {
      throw CapacityError(bytes, "distance matrix for " + std::to_string(n) + " items exceeds the memory budget");
    }
    try {
      const std::uint64_t count = (size_ + block_entries_ - 1) / block_entries_;
      blocks_.reserve(count);
      for (std::uint64_t b = 0; b < count; ++b) {
        const std::uint64_t len = std::min(block_entries_, size_ - b * block_entries_);
        blocks_.emplace_back(Block::Zero(static_cast<Eigen::Index>(len)));
      }
    } catch (const std::bad_alloc&) {
      blocks_.clear();
      throw CapacityError(bytes, "cannot allocate distance matrix for " + std::to_string(n) + " items");
    }
  }

  std::uint64_t items() const noexcept { return n_; }
  std::uint64_t size() const noexcept { return size_; }
  std::uint64_t block_entries() const noexcept { return block_entries_; }
  std::size_t block_count() const noexcept { return blocks_.size(); }
  const Block& block(std::size_t b) const { return blocks_[b]; }
  Block& block(std::size_t b) { return blocks_[b]; }

  /// First condensed index of row i, i.e. of the pair (i, i+1).
  std::uint64_t row_start(std::uint64_t i) const noexcept { return i * n_ - i * (i + 1) / 2; }

  /// Condensed index of the unordered pair {i, j}, i != j.
  std::uint64_t index(std::uint64_t i, std::uint64_t j) const noexcept {
    if (i > j) std::swap(i, j);
    return row_start(i) + (j - i - 1);
  }

  /// Inverse of index(): the pair (i, j), i < j, stored at k.
  std::pair<std::uint64_t, std::uint64_t> pair(std::uint64_t k) const noexcept {
    // Closed form estimate, then exact correction.
    const double nn = static_cast<double>(n_);
    const double disc = (2 * nn - 1) * (2 * nn - 1) - 8.0 * static_cast<double>(k);
    double est = std::floor(((2 * nn - 1) - std::sqrt(std::max(0.0, disc))) / 2);
    std::uint64_t i = est < 0 ? 0 : static_cast<std::uint64_t>(est);
    if (i > n_ - 2) i = n_ - 2;
    while (i > 0 && row_start(i) > k) --i;
    while (i + 1 < n_ - 1 && row_start(i + 1) <= k) ++i;
    return {i, i + 1 + (k - row_start(i))};
  }

  Scalar at(std::uint64_t k) const noexcept {
    return blocks_[k / block_entries_](static_cast<Eigen::Index>(k % block_entries_));
  }
  Scalar& at(std::uint64_t k) noexcept {
    return blocks_[k / block_entries_](static_cast<Eigen::Index>(k % block_entries_));
  }
  Scalar operator()(std::uint64_t i, std::uint64_t j) const noexcept { return at(index(i, j)); }
  Scalar& operator()(std::uint64_t i, std::uint64_t j) noexcept { return at(index(i, j)); }

  bool bitwise_equal(const CondensedMatrix& other) const;

 private:
  std::uint64_t n_ = 0;
  std::uint64_t size_ = 0;
  std::uint64_t block_entries_ = kDefaultBlockEntries;
  std::vector<Block> blocks_;
};

template <typename Scalar>
bool CondensedMatrix<Scalar>::bitwise_equal(const CondensedMatrix& other) const {
  if (n_ != other.n_ || size_ != other.size_) return false;
  for (std::uint64_t k = 0; k < size_; ++k) {
    Scalar a = at(k);
    Scalar b = other.at(k);
    if (std::memcmp(&a, &b, sizeof(Scalar)) != 0) return false;
  }
  return true;
}

struct MatrixOptions {
  unsigned workers = 1;
  std::uint64_t block_entries = CondensedMatrix<double>::kDefaultBlockEntries;
  std::uint64_t max_bytes = 0;
};

/// Pairwise cosine distances. Rows are split across workers by entry count;
/// every entry is computed by the same expression regardless of the split.
template <typename Scalar>
CondensedMatrix<Scalar> distance_matrix(std::span<const TfIdfVector<Scalar>> vectors, const MatrixOptions& opts = {}) {
  const std::uint64_t n = vectors.size();
  if (n < 2) throw ValidationError("distance_matrix needs at least 2 vectors");
  CondensedMatrix<Scalar> m(n, opts.block_entries, opts.max_bytes);
  const unsigned workers = std::max(1U, opts.workers);
  // Row boundaries that give every worker about the same number of entries.
  std::vector<std::uint64_t> bounds{0};
  for (unsigned w = 1; w < workers; ++w) {
    const std::uint64_t target = m.size() * w / workers;
    std::uint64_t lo = bounds.back();
    std::uint64_t hi = n;
    while (lo < hi) {
      std::uint64_t mid = (lo + hi) / 2;
      if (m.row_start(mid) < target) lo = mid + 1;
      else hi = mid;
    }
    bounds.push_back(lo);
  }
  bounds.push_back(n);
  parallel_slices(workers, workers, [&](std::size_t begin, std::size_t end, unsigned) {
    for (std::size_t w = begin; w < end; ++w) {
      for (std::uint64_t i = bounds[w]; i < bounds[w + 1]; ++i) {
        std::uint64_t k = m.row_start(i);
        for (std::uint64_t j = i + 1; j < n; ++j, ++k) m.at(k) = cosine_distance(vectors[i], vectors[j]);
      }
    }
  });
  return m;
}

template <typename Scalar>
CondensedMatrix<Scalar> distance_matrix(const std::vector<TfIdfVector<Scalar>>& vectors, const MatrixOptions& opts = {}) {
  return distance_matrix(std::span<const TfIdfVector<Scalar>>(vectors), opts);
}

/// Binary layout: magic "KGFCMAT1", then little-endian u64 n, u64 block
/// entries, u64 scalar width, followed by all entries in condensed order.
void write_matrix(const CondensedMatrix<double>& m, const std::filesystem::path& path);
CondensedMatrix<double> read_matrix(const std::filesystem::path& path);

}  // namespace kgforge
