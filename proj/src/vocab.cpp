#include "kgforge/vocab.hpp"

#include "kgforge/error.hpp"

namespace kgforge {

std::string_view to_string(EntityKind k) noexcept {
  switch (k) {
    case EntityKind::Instance: return "instance";
    case EntityKind::Class: return "class";
    case EntityKind::Property: return "property";
    case EntityKind::Other: return "other";
  }
  return "other";
}

EntityKind entity_kind_from_string(std::string_view s) {
  if (s == "instance") return EntityKind::Instance;
  if (s == "class") return EntityKind::Class;
  if (s == "property") return EntityKind::Property;
  if (s == "other") return EntityKind::Other;
  throw ValidationError("unknown entity kind '" + std::string(s) + "'");
}

Namespace::Namespace(std::string base) : base_(std::move(base)) {
  while (!base_.empty() && base_.back() == '/') base_.pop_back();
  Iri check(base_ + "/");
}

namespace {

Iri mint(const std::string& base, std::string_view wiki, std::string_view segment, std::string_view name) {
  std::string s;
  s.reserve(base.size() + wiki.size() + segment.size() + name.size() + 3);
  s += base;
  s.push_back('/');
  s += wiki;
  s.push_back('/');
  s += segment;
  s.push_back('/');
  s += name;
  return Iri(std::move(s));
}

}  // namespace

Iri Namespace::resource(std::string_view wiki, std::string_view name) const {
  return mint(base_, wiki, "resource", name);
}
Iri Namespace::class_iri(std::string_view wiki, std::string_view name) const {
  return mint(base_, wiki, "class", name);
}
Iri Namespace::property(std::string_view wiki, std::string_view name) const {
  return mint(base_, wiki, "property", name);
}

Iri Namespace::in_kind(EntityKind kind, std::string_view wiki, std::string_view name) const {
  switch (kind) {
    case EntityKind::Instance: return resource(wiki, name);
    case EntityKind::Class: return class_iri(wiki, name);
    case EntityKind::Property: return property(wiki, name);
    case EntityKind::Other: break;
  }
  throw ValidationError("cannot mint an IRI of kind 'other'");
}

Iri Namespace::meta(std::string_view term) const { return Iri(base_ + "/meta/" + std::string(term)); }

Iri Namespace::wiki_resource(std::string_view wiki) const {
  return Iri(base_ + "/meta/wiki/" + std::string(wiki));
}

bool Namespace::is_meta(const Iri& iri) const noexcept {
  std::string_view v = iri.str();
  return v.size() > base_.size() + 6 && v.starts_with(base_) && v.substr(base_.size()).starts_with("/meta/");
}

EntityKind Namespace::kind_of(const Iri& iri) const noexcept {
  std::string_view v = iri.str();
  if (!v.starts_with(base_) || v.size() <= base_.size() || v[base_.size()] != '/') return EntityKind::Other;
  v.remove_prefix(base_.size() + 1);
  auto slash = v.find('/');
  if (slash == 0 || slash == std::string_view::npos) return EntityKind::Other;
  std::string_view wiki = v.substr(0, slash);
  if (wiki == "meta") return EntityKind::Other;
  v.remove_prefix(slash + 1);
  auto kind_end = v.find('/');
  if (kind_end == std::string_view::npos || kind_end + 1 >= v.size()) return EntityKind::Other;
  std::string_view segment = v.substr(0, kind_end);
  if (v.substr(kind_end + 1).find('/') != std::string_view::npos) return EntityKind::Other;
  if (segment == "resource") return EntityKind::Instance;
  if (segment == "class") return EntityKind::Class;
  if (segment == "property") return EntityKind::Property;
  return EntityKind::Other;
}

EntityKind entity_kind(const Iri& iri) noexcept {
  static const Namespace kDefault;
  return kDefault.kind_of(iri);
}

bool is_reserved_wiki_id(std::string_view id) noexcept {
  return id.empty() || id == "meta" || id == "fused" || id.find_first_of("/ \t\n\r") != std::string_view::npos;
}

}  // namespace kgforge
