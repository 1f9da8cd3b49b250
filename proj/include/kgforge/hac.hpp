#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "kgforge/condensed_matrix.hpp"
#include "kgforge/error.hpp"

namespace kgforge {

enum class Linkage { Single, Complete };

std::string_view to_string(Linkage l) noexcept;
Linkage linkage_from_string(std::string_view s);

/// Leaves are 0..n-1; the k-th merge creates cluster n+k. `left < right`.
template <typename Scalar>
struct Merge {
  std::int64_t left;
  std::int64_t right;
  Scalar distance;
  std::int64_t id;

  friend bool operator==(const Merge&, const Merge&) = default;
};

template <typename Scalar>
struct Dendrogram {
  std::int64_t leaves = 0;
  std::vector<Merge<Scalar>> merges;
};

/// Pointer representation (pi, lambda) of a hierarchy: item i joins the
/// cluster of the later item pi[i] at height lambda[i]. The last item has
/// lambda = +inf.
template <typename Scalar>
struct PointerRepresentation {
  std::vector<std::int64_t> pi;
  std::vector<Scalar> lambda;
};

namespace detail {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  /// Makes `root` the representative of the union of the sets of a and b.
  void unite(std::size_t a, std::size_t b, std::size_t root) {
    parent_[find(a)] = root;
    parent_[find(b)] = root;
  }
  void grow(std::size_t n) {
    auto old = parent_.size();
    parent_.resize(n);
    std::iota(parent_.begin() + static_cast<std::ptrdiff_t>(old), parent_.end(), old);
  }

 private:
  std::vector<std::size_t> parent_;
};

template <typename Scalar>
void check_finite(const CondensedMatrix<Scalar>& m) {
  for (std::uint64_t k = 0; k < m.size(); ++k) {
    if (std::isnan(m.at(k))) {
      auto [i, j] = m.pair(k);
      throw ValidationError("NaN distance between items " + std::to_string(i) + " and " + std::to_string(j));
    }
  }
}

/// Turns merges given as (item, item, height) in ascending height order into
/// a dendrogram with sequential cluster ids.
template <typename Scalar>
Dendrogram<Scalar> relabel(std::int64_t n, const std::vector<Merge<Scalar>>& item_merges) {
  Dendrogram<Scalar> d;
  d.leaves = n;
  d.merges.reserve(item_merges.size());
  DisjointSets sets(static_cast<std::size_t>(2 * n));
  std::vector<std::int64_t> label(static_cast<std::size_t>(2 * n));
  std::iota(label.begin(), label.end(), std::int64_t{0});
  std::int64_t next = n;
  for (const auto& m : item_merges) {
    auto ra = sets.find(static_cast<std::size_t>(m.left));
    auto rb = sets.find(static_cast<std::size_t>(m.right));
    std::int64_t a = label[ra];
    std::int64_t b = label[rb];
    d.merges.push_back({std::min(a, b), std::max(a, b), m.distance, next});
    sets.unite(ra, rb, static_cast<std::size_t>(next));
    label[static_cast<std::size_t>(next)] = next;
    ++next;
  }
  return d;
}

}  // namespace detail

/// SLINK: single-linkage pointer representation in O(n^2) time, O(n) extra space.
template <typename Scalar>
PointerRepresentation<Scalar> slink(const CondensedMatrix<Scalar>& m) {
  const auto n = static_cast<std::int64_t>(m.items());
  const Scalar inf = std::numeric_limits<Scalar>::infinity();
  PointerRepresentation<Scalar> p{std::vector<std::int64_t>(static_cast<std::size_t>(n)),
                                  std::vector<Scalar>(static_cast<std::size_t>(n))};
  std::vector<Scalar> mu(static_cast<std::size_t>(n));
  for (std::int64_t k = 0; k < n; ++k) {
    p.pi[k] = k;
    p.lambda[k] = inf;
    for (std::int64_t i = 0; i < k; ++i) mu[i] = m(i, k);
    for (std::int64_t i = 0; i < k; ++i) {
      const auto pi_i = p.pi[i];
      if (p.lambda[i] >= mu[i]) {
        mu[pi_i] = std::min(mu[pi_i], p.lambda[i]);
        p.lambda[i] = mu[i];
        p.pi[i] = k;
      } else {
        mu[pi_i] = std::min(mu[pi_i], mu[i]);
      }
    }
    for (std::int64_t i = 0; i < k; ++i) {
      if (p.lambda[i] >= p.lambda[p.pi[i]]) p.pi[i] = k;
    }
  }
  return p;
}

/// Defays' CLINK: complete-linkage-style pointer representation in O(n^2).
/// The hierarchy depends on item order and can differ from greedy complete
/// linkage; hac() uses an exact method instead.
template <typename Scalar>
PointerRepresentation<Scalar> clink(const CondensedMatrix<Scalar>& m) {
  const auto n = static_cast<std::int64_t>(m.items());
  const Scalar inf = std::numeric_limits<Scalar>::infinity();
  PointerRepresentation<Scalar> p{std::vector<std::int64_t>(static_cast<std::size_t>(n)),
                                  std::vector<Scalar>(static_cast<std::size_t>(n))};
  std::vector<Scalar> mu(static_cast<std::size_t>(n));
  for (std::int64_t k = 0; k < n; ++k) {
    p.pi[k] = k;
    p.lambda[k] = inf;
    if (k == 0) continue;
    for (std::int64_t i = 0; i < k; ++i) mu[i] = m(i, k);
    for (std::int64_t i = 0; i < k; ++i) {
      if (p.lambda[i] < mu[i]) {
        mu[p.pi[i]] = std::max(mu[p.pi[i]], mu[i]);
        mu[i] = inf;
      }
    }
    std::int64_t a = k - 1;
    for (std::int64_t i = k - 1; i >= 0; --i) {
      if (p.lambda[i] >= mu[p.pi[i]]) {
        if (mu[i] < mu[a]) a = i;
      } else {
        mu[i] = inf;
      }
    }
    std::int64_t b = p.pi[a];
    Scalar c = p.lambda[a];
    p.pi[a] = k;
    p.lambda[a] = mu[a];
    if (a < k - 1) {
      while (b < k - 1) {
        const std::int64_t next = p.pi[b];
        const Scalar e = p.lambda[b];
        p.pi[b] = k;
        p.lambda[b] = c;
        b = next;
        c = e;
      }
      if (b == k - 1) {
        p.pi[b] = k;
        p.lambda[b] = c;
      }
    }
    for (std::int64_t i = 0; i < k; ++i) {
      if (p.pi[p.pi[i]] == k && p.lambda[i] >= p.lambda[p.pi[i]]) p.pi[i] = k;
    }
  }
  return p;
}

/// Dendrogram from a pointer representation; merges in ascending height,
/// ties by item index.
template <typename Scalar>
Dendrogram<Scalar> to_dendrogram(const PointerRepresentation<Scalar>& p) {
  const auto n = static_cast<std::int64_t>(p.pi.size());
  std::vector<std::int64_t> order;
  for (std::int64_t i = 0; i < n; ++i) {
    if (p.pi[i] != i) order.push_back(i);
  }
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return p.lambda[a] < p.lambda[b]; });
  std::vector<Merge<Scalar>> item_merges;
  item_merges.reserve(order.size());
  for (auto i : order) item_merges.push_back({i, p.pi[i], p.lambda[i], -1});
  return detail::relabel(n, item_merges);
}

/// Exact agglomerative clustering with the nearest-neighbour chain over a
/// working copy of the matrix (Lance-Williams update: min or max). O(n^2)
/// time for both reducible linkages.
template <typename Scalar>
Dendrogram<Scalar> nn_chain(CondensedMatrix<Scalar> work, Linkage linkage) {
  const auto n = static_cast<std::int64_t>(work.items());
  std::vector<char> active(static_cast<std::size_t>(n), 1);
  std::vector<std::int64_t> chain;
  chain.reserve(static_cast<std::size_t>(n));
  std::vector<Merge<Scalar>> item_merges;
  item_merges.reserve(static_cast<std::size_t>(n - 1));
  std::int64_t first_active = 0;

  while (static_cast<std::int64_t>(item_merges.size()) < n - 1) {
    if (chain.empty()) {
      while (!active[first_active]) ++first_active;
      chain.push_back(first_active);
    }
    std::int64_t a = 0;
    std::int64_t b = 0;
    for (;;) {
      a = chain.back();
      const std::int64_t prev = chain.size() >= 2 ? chain[chain.size() - 2] : -1;
      std::int64_t best = prev;
      Scalar best_d = prev >= 0 ? work(a, prev) : std::numeric_limits<Scalar>::infinity();
      for (std::int64_t x = 0; x < n; ++x) {
        if (x == a || !active[x]) continue;
        const Scalar dx = work(a, x);
        if (dx < best_d || (best < 0 && dx == best_d)) {
          best = x;
          best_d = dx;
        }
      }
      if (best == prev) {
        b = prev;
        chain.pop_back();
        chain.pop_back();
        break;
      }
      chain.push_back(best);
    }
    const Scalar d_ab = work(a, b);
    const std::int64_t keep = std::max(a, b);
    const std::int64_t drop = std::min(a, b);
    for (std::int64_t x = 0; x < n; ++x) {
      if (!active[x] || x == a || x == b) continue;
      const Scalar da = work(a, x);
      const Scalar db = work(b, x);
      work(keep, x) = linkage == Linkage::Complete ? std::max(da, db) : std::min(da, db);
    }
    active[drop] = 0;
    item_merges.push_back({drop, keep, d_ab, -1});
  }
  std::stable_sort(item_merges.begin(), item_merges.end(),
                   [](const auto& x, const auto& y) { return x.distance < y.distance; });
  return detail::relabel(n, item_merges);
}

/// Hierarchical agglomerative clustering: SLINK for single linkage, the
/// nearest-neighbour chain for complete linkage. Both match greedy
/// agglomeration exactly when all distances are distinct.
template <typename Scalar>
Dendrogram<Scalar> hac(const CondensedMatrix<Scalar>& m, Linkage linkage) {
  if (m.items() < 2) throw ValidationError("hac needs at least 2 items");
  detail::check_finite(m);
  if (linkage == Linkage::Single) return to_dendrogram(slink(m));
  return nn_chain(m, linkage);
}

/// `left right distance newId` per line.
void write_dendrogram(const Dendrogram<double>& d, const std::filesystem::path& path);
std::string to_dendrogram_text(const Dendrogram<double>& d);
Dendrogram<double> parse_dendrogram(std::string_view text);
Dendrogram<double> read_dendrogram(const std::filesystem::path& path);

/// Throws ValidationError unless `d` is a well-formed binary merge tree.
template <typename Scalar>
void validate_dendrogram(const Dendrogram<Scalar>& d) {
  const std::int64_t n = d.leaves;
  if (n < 1) throw ValidationError("dendrogram without leaves");
  if (static_cast<std::int64_t>(d.merges.size()) != n - 1) throw ValidationError("dendrogram needs n-1 merges");
  std::vector<char> used(static_cast<std::size_t>(2 * n - 1), 0);
  for (std::size_t k = 0; k < d.merges.size(); ++k) {
    const auto& m = d.merges[k];
    const std::int64_t id = n + static_cast<std::int64_t>(k);
    if (m.id != id) throw ValidationError("merge " + std::to_string(k) + " must create cluster " + std::to_string(id));
    for (auto child : {m.left, m.right}) {
      if (child < 0 || child >= id) throw ValidationError("merge child refers to a cluster not yet created");
      if (used[child]) throw ValidationError("cluster " + std::to_string(child) + " merged twice");
      used[child] = 1;
    }
    if (m.left >= m.right) throw ValidationError("merge children must be ordered left < right");
    if (!(m.distance >= 0)) throw ValidationError("negative or NaN merge distance");
  }
}

}  // namespace kgforge
