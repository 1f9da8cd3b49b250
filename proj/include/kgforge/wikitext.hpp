#pragma once

// MediaWiki markup handling needed for infobox extraction.

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "kgforge/rdf.hpp"
#include "kgforge/vocab.hpp"

namespace kgforge {

struct InfoboxInstance {
  std::string template_name;
  std::vector<std::pair<std::string, std::string>> pairs;

  friend bool operator==(const InfoboxInstance&, const InfoboxInstance&) = default;
};

struct InfoboxScan {
  std::vector<InfoboxInstance> infoboxes;
  std::vector<std::string> warnings;
};

/// Top-level templates whose name contains "infobox" (any case), with their
/// named parameters in source order. Positional parameters are dropped and
/// templates nested in values are flattened to their argument text.
/// Unbalanced braces are recovered from and reported in `warnings`.
InfoboxScan scan_infoboxes(std::string_view wikitext);

inline std::vector<InfoboxInstance> extract_infoboxes(std::string_view wikitext) {
  return scan_infoboxes(wikitext).infoboxes;
}

/// Replaces every template invocation by its space-joined argument values.
std::string flatten_templates(std::string_view wikitext);

/// Markup-stripped display text: links become their labels, formatting,
/// tags, references and comments disappear, whitespace is collapsed.
std::string strip_markup(std::string_view wikitext);

/// Page title or link target as an IRI path segment.
std::string title_to_segment(std::string_view title);

/// A value that is exactly one wiki link maps to that page's resource IRI,
/// anything else to a plain literal of its stripped text. Empty text yields
/// nullopt (the pair is skipped).
std::optional<Object> value_to_object(std::string_view raw_value, std::string_view wiki_id,
                                      const Namespace& ns = Namespace());

/// Keys are stored normalized (lowercase, no '_' or spaces).
class SynonymMap {
 public:
  /// birthdate / birth_date / dateofbirth -> birthDate.
  static SynonymMap defaults();
  /// `key=canonical` lines; `#` comments allowed.
  static SynonymMap parse(std::string_view text);

  void add(std::string_view key, std::string canonical);
  const std::string* find(std::string_view key) const;
  void merge(const SynonymMap& other);
  std::size_t size() const noexcept { return map_.size(); }

  static std::string normalize_key(std::string_view key);

 private:
  std::unordered_map<std::string, std::string> map_;
};

std::string normalize_property_key(std::string_view key, const SynonymMap& synonyms);

/// "Infobox character" -> "Character".
std::string class_name_for_template(std::string_view template_name);

/// First paragraph of the lead section, stripped of markup.
std::string lead_abstract(std::string_view wikitext);

}  // namespace kgforge
