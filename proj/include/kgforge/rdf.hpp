#pragma once

// Triples and the IRI/literal terms they are built from.

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace kgforge {

/// Absolute IRI. Construction validates the scheme separator.
class Iri {
 public:
  explicit Iri(std::string value);

  const std::string& str() const noexcept { return value_; }

  /// Substring after the last '/'.
  std::string_view fragment() const noexcept;

  friend bool operator==(const Iri&, const Iri&) = default;
  friend std::strong_ordering operator<=>(const Iri& a, const Iri& b) { return a.value_ <=> b.value_; }

 private:
  std::string value_;
};

/// Literal value. A datatype and a language tag never coexist.
class Literal {
 public:
  explicit Literal(std::string lexical) : lexical_(std::move(lexical)) {}
  Literal(std::string lexical, Iri datatype);
  Literal(std::string lexical, std::string language);

  const std::string& lexical() const noexcept { return lexical_; }
  const std::optional<Iri>& datatype() const noexcept { return datatype_; }
  const std::optional<std::string>& language() const noexcept { return language_; }

  /// True for plain literals and xsd:string.
  bool is_string() const noexcept;

  friend bool operator==(const Literal&, const Literal&) = default;

 private:
  std::string lexical_;
  std::optional<Iri> datatype_;
  std::optional<std::string> language_;
};

using Object = std::variant<Iri, Literal>;

std::string to_ntriples(const Iri& iri);
std::string to_ntriples(const Literal& lit);
std::string to_ntriples(const Object& obj);

inline const Iri* as_iri(const Object& o) noexcept { return std::get_if<Iri>(&o); }
inline const Literal* as_literal(const Object& o) noexcept { return std::get_if<Literal>(&o); }

struct Triple {
  Iri subject;
  Iri predicate;
  Object object;

  friend bool operator==(const Triple&, const Triple&) = default;
};

/// Order by (subject, predicate, serialized object). This is the on-disk order.
bool operator<(const Triple& a, const Triple& b);

/// One terminated N-Triples statement line, including the trailing newline.
std::string to_ntriples(const Triple& t);

}  // namespace kgforge
