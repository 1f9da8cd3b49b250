#pragma once

#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "kgforge/graph.hpp"

namespace kgforge {

/// Multiset of normalized tokens, in order of appearance.
using TokenStream = std::vector<std::string>;

/// Porter's original algorithm; words with characters outside [a-z] are
/// returned unchanged.
std::string porter_stem(std::string_view word);

class StopwordList {
 public:
  /// Common English function words.
  static const StopwordList& english();
  /// One word per line; `#` comments allowed.
  static StopwordList parse(std::string_view text);

  bool contains(std::string_view lowercase_word) const { return words_.contains(std::string(lowercase_word)); }
  std::size_t size() const noexcept { return words_.size(); }

 private:
  std::unordered_set<std::string> words_;
};

/// Splits on whitespace, punctuation, underscores and lower-to-upper case
/// changes, lowercases, drops stopwords and stems.
class Tokenizer {
 public:
  Tokenizer() : stopwords_(&StopwordList::english()) {}
  explicit Tokenizer(const StopwordList& stopwords) : stopwords_(&stopwords) {}

  TokenStream operator()(std::string_view text) const;
  void append(std::string_view text, TokenStream& out) const;

 private:
  const StopwordList* stopwords_;
};

TokenStream tokenize(std::string_view text);

/// Tokens of every string-valued literal (plain or xsd:string) in the graph.
TokenStream kg_document(const KnowledgeGraph& kg, const Tokenizer& tokenizer = Tokenizer());

}  // namespace kgforge
