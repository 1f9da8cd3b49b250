#include "kgforge/analyze.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <sstream>

#include "kgforge/text.hpp"

namespace kgforge {

namespace {

constexpr std::array<EntityKind, 4> kKinds{EntityKind::Instance, EntityKind::Class, EntityKind::Property,
                                           EntityKind::Other};

}  // namespace

ClosureStats closure_stats(std::span<const IdentitySet> sets) {
  ClosureStats out;
  for (auto kind : kKinds) {
    KindStats row;
    row.kind = kind;
    std::vector<std::size_t> sizes;
    for (const auto& s : sets) {
      if (s.kind == kind) sizes.push_back(s.members.size());
    }
    if (sizes.empty()) {
      out.omitted.push_back(kind);
      continue;
    }
    row.sets = sizes.size();
    row.min_size = *std::min_element(sizes.begin(), sizes.end());
    row.max_size = *std::max_element(sizes.begin(), sizes.end());
    for (auto z : sizes) row.total_size += z;
    row.mean_size = static_cast<double>(row.total_size) / static_cast<double>(row.sets);
    double ss = 0.0;
    for (auto z : sizes) ss += (static_cast<double>(z) - row.mean_size) * (static_cast<double>(z) - row.mean_size);
    row.stddev_size = std::sqrt(ss / static_cast<double>(row.sets));
    out.rows.push_back(row);
  }
  return out;
}

double same_label_fraction(std::span<const Alignment> alignments, const LabelIndex& labels) {
  std::size_t total = 0;
  std::size_t differing = 0;
  for (const auto& al : alignments) {
    for (const auto& c : al) {
      ++total;
      auto ls = labels.labels(c.source);
      auto lt = labels.labels(c.target);
      std::vector<std::string> common;
      std::set_intersection(ls.begin(), ls.end(), lt.begin(), lt.end(), std::back_inserter(common));
      if (common.empty()) ++differing;
    }
  }
  return total == 0 ? 0.0 : static_cast<double>(differing) / static_cast<double>(total);
}

std::set<std::string> default_service_pages() { return {"main page", "discussion", "community portal"}; }

std::vector<MatchedEntry> top_matched(std::span<const IdentitySet> sets, std::size_t k, EntityKind kind,
                                      const LabelIndex& labels, const std::set<std::string>& blocklist) {
  std::set<std::string> blocked;
  for (const auto& b : blocklist) blocked.insert(text::normalize_label(b));
  std::vector<MatchedEntry> entries;
  for (const auto& s : sets) {
    if (s.kind != kind) continue;
    std::map<std::string, std::size_t> freq;
    std::size_t size = 0;
    for (const auto& m : s.members) {
      auto ls = labels.labels(m);
      if (std::any_of(ls.begin(), ls.end(), [&](const std::string& l) { return blocked.contains(l); })) continue;
      ++size;
      for (const auto& l : ls) ++freq[l];
    }
    if (size == 0) continue;
    std::string label;
    std::size_t best = 0;
    for (const auto& [l, n] : freq) {
      if (n > best) {
        best = n;
        label = l;
      }
    }
    entries.push_back({label, size});
  }
  std::sort(entries.begin(), entries.end(), [](const MatchedEntry& a, const MatchedEntry& b) {
    if (a.size != b.size) return a.size > b.size;
    return a.label < b.label;
  });
  if (entries.size() > k) entries.resize(k);
  return entries;
}

namespace {

using Pair = std::pair<std::string, std::string>;

std::set<Pair> pairs_of(const Alignment& al) {
  std::set<Pair> out;
  for (const auto& c : al) {
    const auto& a = c.source.str();
    const auto& b = c.target.str();
    out.insert(a < b ? Pair{a, b} : Pair{b, a});
  }
  return out;
}

void finish(Scores& s) {
  s.precision = s.system == 0 ? 0.0 : static_cast<double>(s.correct) / static_cast<double>(s.system);
  s.recall = s.reference == 0 ? 0.0 : static_cast<double>(s.correct) / static_cast<double>(s.reference);
  s.f1 = s.precision > 0.0 && s.recall > 0.0 ? 2.0 * s.precision * s.recall / (s.precision + s.recall) : 0.0;
}

}  // namespace

EvalResult evaluate_alignment(const Alignment& system, const Alignment& reference, const Namespace& ns) {
  const auto sys = pairs_of(system);
  const auto ref = pairs_of(reference);
  std::array<Scores, 4> per{};
  auto kind_of = [&](const Pair& p) { return static_cast<std::size_t>(ns.kind_of(Iri(p.first))); };
  for (const auto& p : sys) {
    auto& s = per[kind_of(p)];
    ++s.system;
    if (ref.contains(p)) ++s.correct;
  }
  for (const auto& p : ref) ++per[kind_of(p)].reference;

  EvalResult out;
  for (std::size_t k = 0; k < per.size(); ++k) {
    per[k].kind = kKinds[k];
    out.overall.system += per[k].system;
    out.overall.reference += per[k].reference;
    out.overall.correct += per[k].correct;
    if (per[k].system == 0 && per[k].reference == 0) continue;
    finish(per[k]);
    out.rows.push_back(per[k]);
  }
  finish(out.overall);
  return out;
}

KgProfile kg_profile(const KnowledgeGraph& kg, const Namespace& ns) {
  KgProfile p;
  for (const auto& iri : kg.iris()) {
    switch (ns.kind_of(iri)) {
      case EntityKind::Instance: ++p.instances; break;
      case EntityKind::Class: ++p.classes; break;
      case EntityKind::Property: ++p.properties; break;
      case EntityKind::Other: break;
    }
  }
  std::set<std::string_view> infobox;
  for (const Triple* t : kg.by_predicate(ns.meta(meta_terms::kDerivedFrom))) {
    if (ns.kind_of(t->subject) == EntityKind::Class) infobox.insert(t->subject.str());
  }
  p.infobox_classes = infobox.size();
  for (const auto& t : kg.triples()) {
    const auto& pred = t.predicate.str();
    if (pred == vocab::kRdfsLabel || pred == vocab::kRdfsComment || ns.is_meta(t.predicate)) continue;
    ++p.assertions;
  }
  return p;
}

nlohmann::ordered_json class_distribution(const KnowledgeGraph& kg, double min_share, const Namespace& ns) {
  const Iri type(std::string(vocab::kRdfType));
  const Iri used_in = ns.meta(meta_terms::kUsedIn);
  const Iri wiki_id = ns.meta(meta_terms::kWikiId);

  std::map<std::string, std::string> wiki_names;
  for (const Triple* t : kg.by_predicate(wiki_id)) {
    if (const Literal* l = as_literal(t->object)) wiki_names[t->subject.str()] = l->lexical();
  }
  auto wikis_of = [&](const Iri& s) {
    std::vector<std::string> out;
    for (const auto& t : kg.by_subject(s)) {
      if (t.predicate != used_in) continue;
      if (const Iri* w = as_iri(t.object)) {
        auto it = wiki_names.find(w->str());
        out.push_back(it != wiki_names.end() ? it->second : std::string(w->fragment()));
      }
    }
    if (out.empty()) out.emplace_back("unknown");
    return out;
  };

  struct ClassTally {
    std::size_t count = 0;
    std::map<std::string, std::size_t> wikis;
  };
  std::map<std::string, ClassTally> classes;
  std::size_t total = 0;
  for (const Triple* t : kg.by_predicate(type)) {
    const Iri* c = as_iri(t->object);
    if (!c) continue;
    auto& tally = classes[std::string(c->fragment())];
    ++tally.count;
    ++total;
    for (auto& w : wikis_of(t->subject)) ++tally.wikis[w];
  }

  auto node = [](const std::string& name, std::size_t value, double share) {
    nlohmann::ordered_json j;
    j["name"] = name;
    j["value"] = value;
    j["share"] = share;
    return j;
  };
  auto by_value = [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  };

  nlohmann::ordered_json root = node("classes", total, total == 0 ? 0.0 : 1.0);
  root["children"] = nlohmann::ordered_json::array();
  std::vector<std::pair<std::string, std::size_t>> ranked;
  for (const auto& [name, tally] : classes) ranked.emplace_back(name, tally.count);
  std::sort(ranked.begin(), ranked.end(), by_value);
  std::size_t other = 0;
  for (const auto& [name, count] : ranked) {
    const double share = static_cast<double>(count) / static_cast<double>(total);
    if (share < min_share) {
      other += count;
      continue;
    }
    auto child = node(name, count, share);
    child["children"] = nlohmann::ordered_json::array();
    std::vector<std::pair<std::string, std::size_t>> wikis(classes[name].wikis.begin(), classes[name].wikis.end());
    std::sort(wikis.begin(), wikis.end(), by_value);
    std::size_t wiki_total = 0;
    for (const auto& w : wikis) wiki_total += w.second;
    std::size_t wiki_other = 0;
    for (const auto& [w, n] : wikis) {
      const double ws = static_cast<double>(n) / static_cast<double>(wiki_total);
      if (ws < min_share) {
        wiki_other += n;
      } else {
        child["children"].push_back(node(w, n, ws));
      }
    }
    if (wiki_other > 0) {
      child["children"].push_back(
          node("other", wiki_other, static_cast<double>(wiki_other) / static_cast<double>(wiki_total)));
    }
    root["children"].push_back(std::move(child));
  }
  if (other > 0) root["children"].push_back(node("other", other, static_cast<double>(other) / static_cast<double>(total)));
  return root;
}

std::string to_tsv(const ClosureStats& s) {
  std::ostringstream out;
  out << "kind\tsets\tmin\tmax\tmean\tstddev\n";
  for (const auto& r : s.rows) {
    out << to_string(r.kind) << '\t' << r.sets << '\t' << r.min_size << '\t' << r.max_size << '\t'
        << text::format_double(r.mean_size) << '\t' << text::format_double(r.stddev_size) << '\n';
  }
  for (auto k : s.omitted) out << "# no identity sets of kind " << to_string(k) << '\n';
  return out.str();
}

std::string to_tsv(const std::vector<MatchedEntry>& top) {
  std::ostringstream out;
  out << "rank\tlabel\tsize\n";
  for (std::size_t i = 0; i < top.size(); ++i) out << i + 1 << '\t' << top[i].label << '\t' << top[i].size << '\n';
  return out.str();
}

std::string to_tsv(const EvalResult& r) {
  std::ostringstream out;
  out << "kind\tsystem\treference\tcorrect\tprecision\trecall\tf1\n";
  auto row = [&](std::string_view name, const Scores& s) {
    out << name << '\t' << s.system << '\t' << s.reference << '\t' << s.correct << '\t'
        << text::format_double(s.precision) << '\t' << text::format_double(s.recall) << '\t'
        << text::format_double(s.f1) << '\n';
  };
  for (const auto& s : r.rows) row(to_string(s.kind), s);
  row("all", r.overall);
  return out.str();
}

std::string to_tsv(const KgProfile& p) {
  std::ostringstream out;
  out << "metric\tvalue\n"
      << "instances\t" << p.instances << '\n'
      << "classes\t" << p.classes << '\n'
      << "infoboxClasses\t" << p.infobox_classes << '\n'
      << "properties\t" << p.properties << '\n'
      << "assertions\t" << p.assertions << '\n';
  return out.str();
}

}  // namespace kgforge
