#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "kgforge/hac.hpp"

namespace kgforge::testsupport {

std::filesystem::path data_dir();

/// Fresh empty directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag);
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const noexcept { return path_; }
  std::filesystem::path operator/(const std::string& rel) const { return path_ / rel; }

 private:
  std::filesystem::path path_;
};

struct SyntheticPage {
  std::string title;
  std::string wikitext;
};

/// MediaWiki export XML for the given pages.
std::string mediawiki_xml(const std::vector<SyntheticPage>& pages);

/// Writes `count` wikis `<prefix><k>.xml` with `.meta` sidecars. Wikis come
/// in topic families that share entity names, infobox templates and keys, so
/// matching finds overlaps within a family.
void write_synthetic_wikis(const std::filesystem::path& dir, std::size_t count, std::uint64_t seed,
                           const std::string& prefix = "wiki");

/// Random word documents of mixed topics.
std::vector<std::vector<std::string>> synthetic_token_docs(std::size_t count, std::uint64_t seed);

/// Random binary merge tree over n leaves with increasing heights.
Dendrogram<double> random_dendrogram(std::int64_t n, std::mt19937_64& rng);

/// Balanced dendrogram over a power-of-two number of leaves.
Dendrogram<double> balanced_dendrogram(std::int64_t n);

/// (((0,1),2),3)...
Dendrogram<double> caterpillar_dendrogram(std::int64_t n);

std::string read_file(const std::filesystem::path& p);

/// Peak resident set size of this process in bytes.
std::uint64_t peak_rss_bytes();

}  // namespace kgforge::testsupport
