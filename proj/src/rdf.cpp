#include "kgforge/rdf.hpp"

#include "kgforge/error.hpp"
#include "kgforge/vocab.hpp"

namespace kgforge {

Iri::Iri(std::string value) : value_(std::move(value)) {
  auto sep = value_.find("://");
  if (value_.empty() || sep == std::string::npos || sep == 0) {
    throw ValidationError("not an absolute IRI: '" + value_ + "'");
  }
}

std::string_view Iri::fragment() const noexcept {
  std::string_view v = value_;
  auto pos = v.rfind('/');
  return pos == std::string_view::npos ? v : v.substr(pos + 1);
}

Literal::Literal(std::string lexical, Iri datatype)
    : lexical_(std::move(lexical)), datatype_(std::move(datatype)) {}

Literal::Literal(std::string lexical, std::string language)
    : lexical_(std::move(lexical)), language_(std::move(language)) {
  if (language_->empty()) throw ValidationError("empty language tag");
}

bool Literal::is_string() const noexcept {
  return !datatype_ || datatype_->str() == vocab::kXsdString;
}

std::string to_ntriples(const Iri& iri) { return "<" + iri.str() + ">"; }

namespace {

void escape_into(std::string& out, std::string_view s) {
  for (char c : s) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '"': out += "\\\""; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default: out.push_back(c);
    }
  }
}

}  // namespace

std::string to_ntriples(const Literal& lit) {
  std::string out;
  out.reserve(lit.lexical().size() + 2);
  out.push_back('"');
  escape_into(out, lit.lexical());
  out.push_back('"');
  if (lit.datatype()) {
    out += "^^";
    out += to_ntriples(*lit.datatype());
  } else if (lit.language()) {
    out.push_back('@');
    out += *lit.language();
  }
  return out;
}

std::string to_ntriples(const Object& obj) {
  return std::visit([](const auto& o) { return to_ntriples(o); }, obj);
}

bool operator<(const Triple& a, const Triple& b) {
  if (auto c = a.subject.str().compare(b.subject.str()); c != 0) return c < 0;
  if (auto c = a.predicate.str().compare(b.predicate.str()); c != 0) return c < 0;
  if (a.object == b.object) return false;
  return to_ntriples(a.object) < to_ntriples(b.object);
}

std::string to_ntriples(const Triple& t) {
  std::string line = to_ntriples(t.subject);
  line.push_back(' ');
  line += to_ntriples(t.predicate);
  line.push_back(' ');
  line += to_ntriples(t.object);
  line += " .\n";
  return line;
}

}  // namespace kgforge
