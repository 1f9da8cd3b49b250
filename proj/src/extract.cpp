#include "kgforge/extract.hpp"

#include <charconv>
#include <map>

#include "kgforge/error.hpp"
#include "kgforge/fs.hpp"
#include "kgforge/parallel.hpp"
#include "kgforge/text.hpp"
#include "xml_reader.hpp"

namespace kgforge {

WikiDump parse_wiki_dump(std::string_view xml_text, std::string wiki_id) {
  WikiDump dump;
  dump.wiki_id = std::move(wiki_id);
  std::map<std::string, std::size_t> by_title;

  xml::Reader reader(xml_text);
  std::vector<std::string> path;
  WikiPage page;
  std::string ns;
  std::string revision_text;
  bool in_page = false;

  for (;;) {
    auto ev = reader.next();
    if (ev == xml::Event::End) break;
    switch (ev) {
      case xml::Event::StartElement:
        path.push_back(reader.name());
        if (reader.name() == "page") {
          in_page = true;
          page = WikiPage{};
          ns.clear();
        } else if (in_page && reader.name() == "redirect" && path.size() >= 2 && path[path.size() - 2] == "page") {
          page.is_redirect = true;
        } else if (in_page && reader.name() == "text") {
          revision_text.clear();
        }
        break;
      case xml::Event::Text:
        if (!in_page || path.empty()) break;
        if (path.back() == "title" && path.size() >= 2 && path[path.size() - 2] == "page") {
          page.title += reader.text();
        } else if (path.back() == "ns" && path.size() >= 2 && path[path.size() - 2] == "page") {
          ns += reader.text();
        } else if (path.back() == "text") {
          revision_text += reader.text();
        }
        break;
      case xml::Event::EndElement:
        if (reader.name() == "text" && in_page) {
          page.wikitext = revision_text;
        } else if (reader.name() == "page") {
          in_page = false;
          auto ns_trimmed = text::trim(ns);
          if (!ns_trimmed.empty() && ns_trimmed != "0") break;
          page.title = std::string(text::trim(page.title));
          if (page.title.empty()) {
            dump.warnings.push_back("page without title at byte " + std::to_string(reader.offset()));
            break;
          }
          auto lead = text::trim(page.wikitext);
          if (lead.size() >= 9 && text::iequals(lead.substr(0, 9), "#redirect")) page.is_redirect = true;
          if (auto it = by_title.find(page.title); it != by_title.end()) {
            dump.warnings.push_back("duplicate title '" + page.title + "', keeping the later page");
            dump.pages[it->second] = std::move(page);
          } else {
            by_title.emplace(page.title, dump.pages.size());
            dump.pages.push_back(std::move(page));
          }
        }
        if (!path.empty()) path.pop_back();
        break;
      case xml::Event::End:
        break;
    }
  }
  return dump;
}

WikiDump read_wiki_dump(const std::filesystem::path& path) {
  auto content = fs::read_text(path);
  try {
    return parse_wiki_dump(content, path.stem().string());
  } catch (const XmlError& e) {
    throw XmlError(e.offset(), path.string() + ": malformed XML: " + e.message());
  }
}

ExtractionResult extract_wiki(const WikiDump& dump, const ExtractionSettings& settings) {
  if (is_reserved_wiki_id(dump.wiki_id)) throw ValidationError("reserved or invalid wiki id '" + dump.wiki_id + "'");
  const Namespace& ns = settings.ns;
  const Iri rdf_type{std::string(vocab::kRdfType)};
  const Iri rdfs_label{std::string(vocab::kRdfsLabel)};
  const Iri rdfs_comment{std::string(vocab::kRdfsComment)};
  const Iri derived_from = ns.meta(meta_terms::kDerivedFrom);

  struct Partial {
    std::vector<Triple> triples;
    std::vector<ExtractionWarning> warnings;
  };
  const std::size_t n = dump.pages.size();
  unsigned workers = std::max(1U, settings.workers);
  std::vector<Partial> partials(std::min<std::size_t>(workers, std::max<std::size_t>(n, 1)));

  parallel_slices(n, static_cast<unsigned>(partials.size()), [&](std::size_t begin, std::size_t end, unsigned w) {
    Partial& out = partials[w];
    for (std::size_t i = begin; i < end; ++i) {
      const WikiPage& page = dump.pages[i];
      if (page.is_redirect) continue;
      Iri resource = ns.resource(dump.wiki_id, title_to_segment(page.title));
      out.triples.push_back({resource, rdfs_label, Literal(page.title)});
      if (settings.abstracts) {
        if (auto abstract = lead_abstract(page.wikitext); !abstract.empty()) {
          out.triples.push_back({resource, rdfs_comment, Literal(std::move(abstract))});
        }
      }
      auto scan = scan_infoboxes(page.wikitext);
      for (auto& w : scan.warnings) out.warnings.push_back({page.title, std::move(w)});
      for (const auto& box : scan.infoboxes) {
        Iri cls = ns.class_iri(dump.wiki_id, class_name_for_template(box.template_name));
        out.triples.push_back({resource, rdf_type, cls});
        out.triples.push_back({cls, derived_from, Literal("infobox")});
        for (const auto& [key, raw] : box.pairs) {
          auto prop_name = normalize_property_key(key, settings.synonyms);
          if (prop_name.empty()) continue;
          auto object = value_to_object(raw, dump.wiki_id, ns);
          if (!object) continue;
          out.triples.push_back({resource, ns.property(dump.wiki_id, prop_name), std::move(*object)});
        }
      }
    }
  });

  ExtractionResult result;
  std::vector<Triple> all;
  for (auto& p : partials) {
    all.insert(all.end(), std::make_move_iterator(p.triples.begin()), std::make_move_iterator(p.triples.end()));
    for (auto& w : p.warnings) result.warnings.push_back(std::move(w));
  }
  result.graph = KnowledgeGraph(dump.wiki_id, std::move(all));
  return result;
}

namespace {

std::uint64_t parse_count(std::string_view key, std::string_view value) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw ValidationError("metadata '" + std::string(key) + "' is not a non-negative integer: '" + std::string(value) + "'");
  }
  return v;
}

}  // namespace

WikiMetadata parse_wiki_metadata(std::string_view content, std::string wiki_id) {
  WikiMetadata meta;
  meta.wiki_id = std::move(wiki_id);
  for (auto line : text::split(content, '\n')) {
    auto t = text::trim(line);
    if (t.empty() || t.front() == '#') continue;
    auto eq = t.find('=');
    if (eq == std::string_view::npos) throw ValidationError("metadata line without '=': '" + std::string(t) + "'");
    auto key = text::to_lower(text::trim(t.substr(0, eq)));
    auto value = text::trim(t.substr(eq + 1));
    if (key == "pages") meta.pages = parse_count(key, value);
    else if (key == "articles") meta.articles = parse_count(key, value);
    else if (key == "users") meta.users = parse_count(key, value);
    else if (key == "activeusers") meta.active_users = parse_count(key, value);
    else if (key == "wam") {
      double wam = 0;
      auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), wam);
      if (ec != std::errc{} || ptr != value.data() + value.size()) {
        throw ValidationError("metadata 'wam' is not a number: '" + std::string(value) + "'");
      }
      if (!(wam >= 0.0 && wam <= 100.0)) {
        throw ValidationError("metadata 'wam' outside [0,100]: " + std::string(value));
      }
      meta.wam_score = wam;
    }
  }
  return meta;
}

WikiMetadata load_wiki_metadata(const std::filesystem::path& path) {
  return parse_wiki_metadata(fs::read_text(path), path.stem().string());
}

}  // namespace kgforge
