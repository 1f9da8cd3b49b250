#include "fixtures.hpp"

#include <sys/resource.h>

#include <algorithm>
#include <atomic>
#include <fstream>
#include <sstream>

#ifndef KGFORGE_TEST_DATA_DIR
#error "KGFORGE_TEST_DATA_DIR must be defined"
#endif

namespace kgforge::testsupport {

std::filesystem::path data_dir() { return KGFORGE_TEST_DATA_DIR; }

TempDir::TempDir(const std::string& tag) {
  static std::atomic<unsigned> counter{0};
  path_ = std::filesystem::temp_directory_path() /
          ("kgforge-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
  std::filesystem::remove_all(path_);
  std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

namespace {

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

const std::vector<std::string> kSyllables{"ka", "ra", "to", "mi", "sel", "dor", "an", "vek", "lu",  "ther",
                                          "os", "ne", "bri", "gal", "ur", "fen", "zi", "mor", "ta", "quin"};

std::string make_name(std::mt19937_64& rng, int syllables) {
  std::uniform_int_distribution<std::size_t> pick(0, kSyllables.size() - 1);
  std::string s;
  for (int i = 0; i < syllables; ++i) s += kSyllables[pick(rng)];
  s[0] = static_cast<char>(s[0] - 'a' + 'A');
  return s;
}

struct Family {
  std::vector<std::string> entities;
  std::vector<std::string> classes;
  std::vector<std::string> keys;
  std::vector<std::string> words;
};

std::vector<Family> make_families(std::uint64_t seed) {
  std::mt19937_64 rng(seed * 7919 + 17);
  const std::vector<std::vector<std::string>> class_sets{
      {"character", "starship", "planet"}, {"actor", "film", "studio"}, {"hero", "kingdom", "weapon"},
      {"player", "team", "stadium"}};
  const std::vector<std::vector<std::string>> key_sets{
      {"species", "birth_date", "rank", "homeworld", "eye colour"},
      {"birth_date", "spouse", "height", "director", "year"},
      {"allegiance", "birthdate", "realm", "weapon type", "title"},
      {"position", "birth_date", "league", "capacity", "coach"}};
  const std::vector<std::vector<std::string>> word_sets{
      {"warp", "nebula", "federation", "shuttle", "phaser", "orbit", "galaxy", "captain"},
      {"cinema", "premiere", "oscar", "script", "sequel", "studio", "camera", "drama"},
      {"dragon", "castle", "sorcery", "sword", "quest", "elven", "prophecy", "throne"},
      {"goal", "season", "league", "transfer", "stadium", "coach", "trophy", "derby"}};
  std::vector<Family> out;
  for (std::size_t f = 0; f < class_sets.size(); ++f) {
    Family fam{{}, class_sets[f], key_sets[f], word_sets[f]};
    while (fam.entities.size() < 24) {
      auto name = make_name(rng, 2) + " " + make_name(rng, 2);
      if (std::find(fam.entities.begin(), fam.entities.end(), name) == fam.entities.end()) {
        fam.entities.push_back(name);
      }
    }
    out.push_back(std::move(fam));
  }
  return out;
}

template <typename T>
const T& pick(const std::vector<T>& v, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> d(0, v.size() - 1);
  return v[d(rng)];
}

}  // namespace

std::string mediawiki_xml(const std::vector<SyntheticPage>& pages) {
  std::ostringstream out;
  out << "<mediawiki xml:lang=\"en\">\n";
  for (std::size_t i = 0; i < pages.size(); ++i) {
    out << "  <page>\n    <title>" << xml_escape(pages[i].title) << "</title>\n    <ns>0</ns>\n    <id>" << i + 1
        << "</id>\n    <revision>\n      <text>" << xml_escape(pages[i].wikitext)
        << "</text>\n    </revision>\n  </page>\n";
  }
  out << "</mediawiki>\n";
  return out.str();
}

void write_synthetic_wikis(const std::filesystem::path& dir, std::size_t count, std::uint64_t seed,
                           const std::string& prefix) {
  std::filesystem::create_directories(dir);
  const auto families = make_families(seed);
  for (std::size_t k = 0; k < count; ++k) {
    std::mt19937_64 rng(seed + 1000003 * (k + 1));
    const Family& fam = families[k % families.size()];
    std::vector<std::string> chosen = fam.entities;
    std::shuffle(chosen.begin(), chosen.end(), rng);
    chosen.resize(10 + k % 7);
    std::vector<SyntheticPage> pages;
    for (const auto& entity : chosen) {
      std::string title = entity;
      if (rng() % 5 == 0) std::replace(title.begin(), title.end(), ' ', '-');
      std::ostringstream text;
      text << "{{Infobox " << pick(fam.classes, rng) << "\n";
      text << "| name = " << entity << "\n";
      for (int p = 0; p < 3; ++p) {
        const auto& key = pick(fam.keys, rng);
        if (rng() % 3 == 0) {
          text << "| " << key << " = [[" << pick(fam.entities, rng) << "]]\n";
        } else {
          text << "| " << key << " = " << pick(fam.words, rng) << " " << rng() % 100 << "\n";
        }
      }
      text << "}}\n";
      text << "'''" << entity << "''' is known for";
      for (int w = 0; w < 6; ++w) text << ' ' << pick(fam.words, rng);
      text << ".\n";
      pages.push_back({title, text.str()});
    }
    const auto id = prefix + std::to_string(k);
    std::ofstream(dir / (id + ".xml")) << mediawiki_xml(pages);
    std::ofstream(dir / (id + ".meta")) << "pages=" << pages.size() * 3 << "\narticles=" << pages.size()
                                        << "\nusers=" << 5 + k << "\nactiveusers=" << 1 + k % 4
                                        << "\nwam=" << (k * 37) % 100 << ".5\n";
  }
}

std::vector<std::vector<std::string>> synthetic_token_docs(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::string> vocab;
  for (int i = 0; i < 4000; ++i) vocab.push_back(make_name(rng, 3) + std::to_string(i));
  std::vector<std::vector<std::string>> docs(count);
  std::uniform_int_distribution<int> topic(0, 39);
  std::uniform_int_distribution<int> within(0, 99);
  std::uniform_int_distribution<int> length(20, 80);
  for (auto& d : docs) {
    const int t = topic(rng);
    const int n = length(rng);
    for (int i = 0; i < n; ++i) d.push_back(vocab[static_cast<std::size_t>(t * 100 + within(rng))]);
  }
  return docs;
}

Dendrogram<double> random_dendrogram(std::int64_t n, std::mt19937_64& rng) {
  Dendrogram<double> d;
  d.leaves = n;
  std::vector<std::int64_t> active(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) active[static_cast<std::size_t>(i)] = i;
  double height = 0.0;
  for (std::int64_t k = 0; k + 1 < n; ++k) {
    std::uniform_int_distribution<std::size_t> pick_a(0, active.size() - 1);
    auto ia = pick_a(rng);
    auto a = active[ia];
    active.erase(active.begin() + static_cast<std::ptrdiff_t>(ia));
    std::uniform_int_distribution<std::size_t> pick_b(0, active.size() - 1);
    auto ib = pick_b(rng);
    auto b = active[ib];
    active.erase(active.begin() + static_cast<std::ptrdiff_t>(ib));
    height += 1.0;
    d.merges.push_back({std::min(a, b), std::max(a, b), height, n + k});
    active.push_back(n + k);
  }
  return d;
}

Dendrogram<double> balanced_dendrogram(std::int64_t n) {
  Dendrogram<double> d;
  d.leaves = n;
  std::vector<std::int64_t> layer(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) layer[static_cast<std::size_t>(i)] = i;
  std::int64_t next = n;
  double height = 1.0;
  while (layer.size() > 1) {
    std::vector<std::int64_t> up;
    for (std::size_t i = 0; i + 1 < layer.size(); i += 2) {
      d.merges.push_back({layer[i], layer[i + 1], height, next});
      up.push_back(next++);
    }
    layer = up;
    height += 1.0;
  }
  return d;
}

Dendrogram<double> caterpillar_dendrogram(std::int64_t n) {
  Dendrogram<double> d;
  d.leaves = n;
  std::int64_t current = 0;
  for (std::int64_t k = 1; k < n; ++k) {
    d.merges.push_back({std::min(current, k), std::max(current, k), static_cast<double>(k), n + k - 1});
    current = n + k - 1;
  }
  return d;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::uint64_t peak_rss_bytes() {
  rusage usage{};
  getrusage(RUSAGE_SELF, &usage);
  return static_cast<std::uint64_t>(usage.ru_maxrss) * 1024;
}

}  // namespace kgforge::testsupport
