#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kgforge/graph.hpp"
#include "kgforge/vocab.hpp"
#include "kgforge/wikitext.hpp"

namespace kgforge {

struct WikiPage {
  std::string title;
  std::string wikitext;
  bool is_redirect = false;
};

struct WikiDump {
  std::string wiki_id;
  std::vector<WikiPage> pages;
  /// Non-fatal issues found while reading (duplicate titles).
  std::vector<std::string> warnings;
};

/// Reads a MediaWiki XML export. Only main-namespace pages (ns 0, or no <ns>)
/// are kept; of several revisions the last one wins; of duplicate titles the
/// last page wins. Throws XmlError with the byte offset on malformed XML.
WikiDump parse_wiki_dump(std::string_view xml, std::string wiki_id);
/// The wiki id is the file stem.
WikiDump read_wiki_dump(const std::filesystem::path& path);

struct ExtractionSettings {
  Namespace ns;
  SynonymMap synonyms = SynonymMap::defaults();
  bool abstracts = true;
  unsigned workers = 1;
};

struct ExtractionWarning {
  std::string page;
  std::string message;
};

struct ExtractionResult {
  KnowledgeGraph graph;
  std::vector<ExtractionWarning> warnings;
};

/// One resource per non-redirect page with its label, optional abstract,
/// one class per infobox and one property per infobox key.
ExtractionResult extract_wiki(const WikiDump& dump, const ExtractionSettings& settings = {});

struct WikiMetadata {
  std::string wiki_id;
  std::optional<std::uint64_t> pages;
  std::optional<std::uint64_t> articles;
  std::optional<std::uint64_t> users;
  std::optional<std::uint64_t> active_users;
  std::optional<double> wam_score;
};

/// `key=value` lines with keys pages, articles, users, activeusers, wam.
/// Throws ValidationError for negative or non-numeric counts and for a WAM
/// score outside [0, 100].
WikiMetadata parse_wiki_metadata(std::string_view text, std::string wiki_id);
WikiMetadata load_wiki_metadata(const std::filesystem::path& path);

}  // namespace kgforge
