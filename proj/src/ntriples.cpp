#include "kgforge/ntriples.hpp"

#include <cctype>
#include <fstream>
#include <istream>
#include <sstream>

#include "kgforge/error.hpp"
#include "kgforge/fs.hpp"
#include "kgforge/text.hpp"

namespace kgforge {

namespace {

class LineCursor {
 public:
  LineCursor(std::string_view line, std::size_t line_no) : s_(line), line_no_(line_no) {}

  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
  }
  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return at_end() ? '\0' : s_[pos_]; }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(line_no_, what + " at column " + std::to_string(pos_ + 1));
  }

  Iri iri() {
    if (peek() != '<') fail("expected '<'");
    auto close = s_.find('>', pos_ + 1);
    if (close == std::string_view::npos) fail("unterminated IRI");
    std::string value(s_.substr(pos_ + 1, close - pos_ - 1));
    for (char c : value) {
      if (c == ' ' || c == '<' || c == '"' || c == '{' || c == '}' || c == '|' || c == '\\' || c == '^' || c == '`')
        fail("illegal character in IRI");
    }
    pos_ = close + 1;
    try {
      return Iri(std::move(value));
    } catch (const ValidationError& e) {
      fail(e.what());
    }
  }

  std::uint32_t hex_digits(int count) {
    if (pos_ + count > s_.size()) fail("truncated unicode escape");
    std::uint32_t v = 0;
    for (int i = 0; i < count; ++i) {
      char c = s_[pos_++];
      v <<= 4;
      if (c >= '0' && c <= '9') v |= static_cast<std::uint32_t>(c - '0');
      else if (c >= 'a' && c <= 'f') v |= static_cast<std::uint32_t>(c - 'a' + 10);
      else if (c >= 'A' && c <= 'F') v |= static_cast<std::uint32_t>(c - 'A' + 10);
      else fail("bad hex digit in escape");
    }
    return v;
  }

  Literal literal() {
    ++pos_;  // opening quote
    std::string lex;
    for (;;) {
      if (at_end()) fail("unterminated literal");
      char c = s_[pos_++];
      if (c == '"') break;
      if (c != '\\') {
        lex.push_back(c);
        continue;
      }
      if (at_end()) fail("dangling escape");
      char e = s_[pos_++];
      switch (e) {
        case 't': lex.push_back('\t'); break;
        case 'b': lex.push_back('\b'); break;
        case 'n': lex.push_back('\n'); break;
        case 'r': lex.push_back('\r'); break;
        case 'f': lex.push_back('\f'); break;
        case '"': lex.push_back('"'); break;
        case '\'': lex.push_back('\''); break;
        case '\\': lex.push_back('\\'); break;
        case 'u': text::append_utf8(lex, hex_digits(4)); break;
        case 'U': text::append_utf8(lex, hex_digits(8)); break;
        default: fail(std::string("unknown escape \\") + e);
      }
    }
    if (peek() == '@') {
      auto start = ++pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '-')) ++pos_;
      if (pos_ == start) fail("empty language tag");
      return Literal(std::move(lex), std::string(s_.substr(start, pos_ - start)));
    }
    if (s_.substr(pos_).starts_with("^^")) {
      pos_ += 2;
      return Literal(std::move(lex), iri());
    }
    return Literal(std::move(lex));
  }

  Object object() {
    if (peek() == '<') return iri();
    if (peek() == '"') return literal();
    if (peek() == '_') fail("blank nodes are not supported");
    fail("expected object");
  }

  void expect_end() {
    skip_ws();
    if (peek() != '.') fail("expected '.'");
    ++pos_;
    skip_ws();
    if (!at_end() && peek() != '#') fail("trailing content after '.'");
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
  std::size_t line_no_;
};

bool is_blank_or_comment(std::string_view line) {
  auto t = text::trim(line);
  return t.empty() || t.front() == '#';
}

}  // namespace

Triple parse_ntriples_line(std::string_view line, std::size_t line_no) {
  LineCursor cur(line, line_no);
  cur.skip_ws();
  if (cur.peek() == '_') cur.fail("blank nodes are not supported");
  Iri subject = cur.iri();
  cur.skip_ws();
  Iri predicate = cur.iri();
  cur.skip_ws();
  Object object = cur.object();
  cur.expect_end();
  return Triple{std::move(subject), std::move(predicate), std::move(object)};
}

KnowledgeGraph parse_ntriples(std::istream& in, std::string id) {
  std::vector<Triple> triples;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (is_blank_or_comment(line)) continue;
    triples.push_back(parse_ntriples_line(line, line_no));
  }
  return KnowledgeGraph(std::move(id), std::move(triples));
}

KnowledgeGraph parse_ntriples(std::string_view text, std::string id) {
  std::istringstream in{std::string(text)};
  return parse_ntriples(in, std::move(id));
}

void serialize_ntriples(const KnowledgeGraph& kg, std::ostream& out) {
  for (const auto& t : kg.triples()) out << to_ntriples(t);
}

std::string serialize_ntriples(const KnowledgeGraph& kg) {
  std::string out;
  for (const auto& t : kg.triples()) out += to_ntriples(t);
  return out;
}

KnowledgeGraph read_ntriples_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  try {
    return parse_ntriples(in, path.stem().string());
  } catch (const ParseError& e) {
    throw ParseError(e.line(), path.string() + ": " + e.message());
  }
}

void write_ntriples_file(const KnowledgeGraph& kg, const std::filesystem::path& path) {
  fs::write_atomically(path, [&](std::ostream& out) { serialize_ntriples(kg, out); });
}

}  // namespace kgforge
