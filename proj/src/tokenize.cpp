#include "kgforge/tokenize.hpp"

#include "kgforge/text.hpp"

namespace kgforge {

namespace {

constexpr std::string_view kEnglishStopwords[] = {
    "a",       "about",   "above",  "after",   "again",   "against", "all",     "am",     "an",     "and",
    "any",     "are",     "as",     "at",      "be",      "because", "been",    "before", "being",  "below",
    "between", "both",    "but",    "by",      "can",     "could",   "did",     "do",     "does",   "doing",
    "down",    "during",  "each",   "few",     "for",     "from",    "further", "had",    "has",    "have",
    "having",  "he",      "her",    "here",    "hers",    "herself", "him",     "himself", "his",   "how",
    "i",       "if",      "in",     "into",    "is",      "it",      "its",     "itself", "just",   "me",
    "more",    "most",    "my",     "myself",  "no",      "nor",     "not",     "now",    "of",     "off",
    "on",      "once",    "only",   "or",      "other",   "our",     "ours",    "ourselves", "out", "over",
    "own",     "same",    "she",    "should",  "so",      "some",    "such",    "than",   "that",   "the",
    "their",   "theirs",  "them",   "themselves", "then", "there",   "these",   "they",   "this",   "those",
    "through", "to",      "too",    "under",   "until",   "up",      "very",    "was",    "we",     "were",
    "what",    "when",    "where",  "which",   "while",   "who",     "whom",    "why",    "will",   "with",
    "would",   "you",     "your",   "yours",   "yourself", "yourselves",
};

bool is_token_char(char c) {
  auto u = static_cast<unsigned char>(c);
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || u >= 0x80;
}

bool is_lower(char c) { return c >= 'a' && c <= 'z'; }
bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }

}  // namespace

const StopwordList& StopwordList::english() {
  static const StopwordList list = [] {
    StopwordList l;
    for (auto w : kEnglishStopwords) l.words_.emplace(w);
    return l;
  }();
  return list;
}

StopwordList StopwordList::parse(std::string_view content) {
  StopwordList l;
  for (auto line : text::split(content, '\n')) {
    auto t = text::trim(line);
    if (t.empty() || t.front() == '#') continue;
    l.words_.insert(text::to_lower(t));
  }
  return l;
}

void Tokenizer::append(std::string_view s, TokenStream& out) const {
  auto flush = [&](std::size_t begin, std::size_t end) {
    if (begin >= end) return;
    auto word = text::to_lower(s.substr(begin, end - begin));
    if (stopwords_->contains(word)) return;
    auto stem = porter_stem(word);
    if (!stem.empty()) out.push_back(std::move(stem));
  };
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!is_token_char(s[i])) {
      flush(start, i);
      start = i + 1;
    } else if (i > start && is_upper(s[i]) && is_lower(s[i - 1])) {
      flush(start, i);
      start = i;
    }
  }
  flush(start, s.size());
}

TokenStream Tokenizer::operator()(std::string_view s) const {
  TokenStream out;
  append(s, out);
  return out;
}

TokenStream tokenize(std::string_view s) { return Tokenizer()(s); }

TokenStream kg_document(const KnowledgeGraph& kg, const Tokenizer& tokenizer) {
  TokenStream out;
  for (const auto& t : kg.triples()) {
    if (const Literal* lit = as_literal(t.object); lit && lit->is_string()) tokenizer.append(lit->lexical(), out);
  }
  return out;
}

}  // namespace kgforge
