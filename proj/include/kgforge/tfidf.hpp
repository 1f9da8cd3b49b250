#pragma once

#include <Eigen/SparseCore>
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "kgforge/tokenize.hpp"

namespace kgforge {

/// Dense term ids in first-seen order over the corpus.
class TermDictionary {
 public:
  int intern(const std::string& token);
  int find(const std::string& token) const;
  const std::string& term(int id) const { return terms_.at(static_cast<std::size_t>(id)); }
  int size() const noexcept { return static_cast<int>(terms_.size()); }

 private:
  std::vector<std::string> terms_;
  std::unordered_map<std::string, int> ids_;
};

/// Non-negative sparse weights with a cached squared L2 norm.
template <typename Scalar>
struct TfIdfVector {
  Eigen::SparseVector<Scalar> weights;
  Scalar squared_norm = Scalar(0);

  TfIdfVector() = default;
  explicit TfIdfVector(Eigen::SparseVector<Scalar> w) : weights(std::move(w)) {
    weights.prune(Scalar(0));
    squared_norm = weights.dot(weights);
  }

  Scalar norm() const { return std::sqrt(squared_norm); }
  Eigen::Index nonzeros() const { return weights.nonZeros(); }
};

/// 1 - u.v / (|u| |v|), clamped to [0, 1]; 1 when either vector is zero.
/// Identical non-zero vectors give exactly 0.
template <typename Scalar>
Scalar cosine_distance(const TfIdfVector<Scalar>& u, const TfIdfVector<Scalar>& v) {
  if (u.squared_norm <= Scalar(0) || v.squared_norm <= Scalar(0)) return Scalar(1);
  const Scalar dot = u.weights.dot(v.weights);
  const Scalar d = Scalar(1) - dot / std::sqrt(u.squared_norm * v.squared_norm);
  return std::clamp(d, Scalar(0), Scalar(1));
}

template <typename Scalar>
struct TfIdfModel {
  TermDictionary terms;
  std::vector<TfIdfVector<Scalar>> vectors;
};

/// weight(t, d) = count(t, d) * ln(N / df(t)); terms present in every
/// document get weight 0 and are not stored.
template <typename Scalar = double>
TfIdfModel<Scalar> tfidf_vectors(std::span<const TokenStream> docs) {
  TfIdfModel<Scalar> model;
  std::vector<std::vector<std::pair<int, int>>> counts(docs.size());
  std::vector<int> df;
  for (std::size_t d = 0; d < docs.size(); ++d) {
    std::unordered_map<int, int> tf;
    std::vector<int> order;
    for (const auto& token : docs[d]) {
      int id = model.terms.intern(token);
      if (static_cast<std::size_t>(id) >= df.size()) df.resize(static_cast<std::size_t>(id) + 1, 0);
      if (tf[id]++ == 0) order.push_back(id);
    }
    for (int id : order) {
      ++df[static_cast<std::size_t>(id)];
      counts[d].emplace_back(id, tf[id]);
    }
    std::sort(counts[d].begin(), counts[d].end());
  }
  const auto n_docs = static_cast<Scalar>(docs.size());
  const Eigen::Index dim = model.terms.size();
  model.vectors.reserve(docs.size());
  for (const auto& doc : counts) {
    Eigen::SparseVector<Scalar> w(dim);
    w.reserve(static_cast<Eigen::Index>(doc.size()));
    for (auto [id, tf] : doc) {
      const int freq = df[static_cast<std::size_t>(id)];
      if (static_cast<Scalar>(freq) == n_docs) continue;
      w.insertBack(id) = static_cast<Scalar>(tf) * std::log(n_docs / static_cast<Scalar>(freq));
    }
    model.vectors.emplace_back(std::move(w));
  }
  return model;
}

template <typename Scalar = double>
TfIdfModel<Scalar> tfidf_vectors(const std::vector<TokenStream>& docs) {
  return tfidf_vectors<Scalar>(std::span<const TokenStream>(docs));
}

/// `termId token` per line.
void write_term_dictionary(const TermDictionary& dict, const std::filesystem::path& path);
TermDictionary read_term_dictionary(const std::filesystem::path& path);

/// `termId weight` per line, weights printed to round-trip exactly.
void write_vector_file(const TfIdfVector<double>& v, const std::filesystem::path& path);
TfIdfVector<double> read_vector_file(const std::filesystem::path& path, Eigen::Index dimension);

}  // namespace kgforge
