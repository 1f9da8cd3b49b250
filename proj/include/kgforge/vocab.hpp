#pragma once

#include <string>
#include <string_view>

#include "kgforge/rdf.hpp"

namespace kgforge {

namespace vocab {

inline constexpr std::string_view kRdfType = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
inline constexpr std::string_view kRdfsLabel = "http://www.w3.org/2000/01/rdf-schema#label";
inline constexpr std::string_view kRdfsComment = "http://www.w3.org/2000/01/rdf-schema#comment";
inline constexpr std::string_view kXsdString = "http://www.w3.org/2001/XMLSchema#string";
inline constexpr std::string_view kXsdInteger = "http://www.w3.org/2001/XMLSchema#integer";
inline constexpr std::string_view kXsdDouble = "http://www.w3.org/2001/XMLSchema#double";

inline constexpr std::string_view kDefaultBase = "http://kgforge.local";

}  // namespace vocab

enum class EntityKind { Instance, Class, Property, Other };

std::string_view to_string(EntityKind k) noexcept;
/// Parses "instance", "class", "property" or "other".
EntityKind entity_kind_from_string(std::string_view s);

/// IRI minting for one base namespace:
///   <base>/<wiki>/{resource|class|property}/<name> for extracted entities
///   <base>/meta/<term> for provenance vocabulary and wiki resources.
class Namespace {
 public:
  Namespace() : Namespace(std::string(vocab::kDefaultBase)) {}
  explicit Namespace(std::string base);

  const std::string& base() const noexcept { return base_; }

  /// `name` is an already-encoded path segment.
  Iri resource(std::string_view wiki, std::string_view name) const;
  Iri class_iri(std::string_view wiki, std::string_view name) const;
  Iri property(std::string_view wiki, std::string_view name) const;
  Iri in_kind(EntityKind kind, std::string_view wiki, std::string_view name) const;

  Iri meta(std::string_view term) const;
  Iri wiki_resource(std::string_view wiki) const;
  bool is_meta(const Iri& iri) const noexcept;

  EntityKind kind_of(const Iri& iri) const noexcept;

 private:
  std::string base_;
};

/// Kind by namespace convention under the default base.
EntityKind entity_kind(const Iri& iri) noexcept;

/// Wiki ids that would collide with reserved namespace segments.
bool is_reserved_wiki_id(std::string_view id) noexcept;

namespace meta_terms {
inline constexpr std::string_view kDerivedFrom = "derivedFrom";
inline constexpr std::string_view kUsedIn = "usedIn";
inline constexpr std::string_view kWikiId = "wikiId";
inline constexpr std::string_view kNumPages = "numPages";
inline constexpr std::string_view kNumArticles = "numArticles";
inline constexpr std::string_view kNumUsers = "numUsers";
inline constexpr std::string_view kNumActiveUsers = "numActiveUsers";
inline constexpr std::string_view kWamScore = "wamScore";
}  // namespace meta_terms

}  // namespace kgforge
