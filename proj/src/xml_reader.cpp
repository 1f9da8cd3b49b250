#include "xml_reader.hpp"

#include <cctype>

#include "kgforge/error.hpp"
#include "kgforge/text.hpp"

namespace kgforge::xml {

namespace {

bool is_name_char(char c) {
  auto u = static_cast<unsigned char>(c);
  return std::isalnum(u) || c == '_' || c == ':' || c == '-' || c == '.' || u >= 0x80;
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

}  // namespace

void Reader::fail(std::size_t at, const std::string& what) const { throw XmlError(at, what); }

std::string Reader::decode(std::string_view raw, std::size_t base) const {
  std::string out;
  out.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    char c = raw[i];
    if (c == '<') fail(base + i, "unexpected '<'");
    if (c != '&') {
      out.push_back(c);
      continue;
    }
    auto semi = raw.find(';', i);
    if (semi == std::string_view::npos) fail(base + i, "unterminated entity reference");
    auto ent = raw.substr(i + 1, semi - i - 1);
    if (ent == "lt") out.push_back('<');
    else if (ent == "gt") out.push_back('>');
    else if (ent == "amp") out.push_back('&');
    else if (ent == "quot") out.push_back('"');
    else if (ent == "apos") out.push_back('\'');
    else if (ent.size() > 1 && ent[0] == '#') {
      bool hex = ent[1] == 'x';
      auto digits = ent.substr(hex ? 2 : 1);
      if (digits.empty()) fail(base + i, "empty character reference");
      std::uint32_t cp = 0;
      for (char d : digits) {
        int v = -1;
        if (d >= '0' && d <= '9') v = d - '0';
        else if (hex && d >= 'a' && d <= 'f') v = d - 'a' + 10;
        else if (hex && d >= 'A' && d <= 'F') v = d - 'A' + 10;
        if (v < 0 || cp > 0x10FFFF) fail(base + i, "bad character reference");
        cp = cp * (hex ? 16 : 10) + static_cast<std::uint32_t>(v);
      }
      if (cp == 0 || cp > 0x10FFFF) fail(base + i, "character reference out of range");
      text::append_utf8(out, cp);
    } else {
      fail(base + i, "unknown entity '&" + std::string(ent) + ";'");
    }
    i = semi;
  }
  return out;
}

void Reader::skip_markup_declaration() {
  // <!DOCTYPE ...> with an optional [internal subset]
  int bracket = 0;
  for (std::size_t i = pos_ + 2; i < doc_.size(); ++i) {
    if (doc_[i] == '[') ++bracket;
    else if (doc_[i] == ']') --bracket;
    else if (doc_[i] == '>' && bracket <= 0) {
      pos_ = i + 1;
      return;
    }
  }
  fail(pos_, "unterminated declaration");
}

void Reader::parse_tag() {
  std::size_t start = pos_;
  bool closing = doc_[pos_ + 1] == '/';
  std::size_t i = pos_ + (closing ? 2 : 1);
  std::size_t name_start = i;
  while (i < doc_.size() && is_name_char(doc_[i])) ++i;
  if (i == name_start) fail(start, "missing element name");
  name_.assign(doc_.substr(name_start, i - name_start));
  attrs_.clear();

  if (closing) {
    while (i < doc_.size() && is_space(doc_[i])) ++i;
    if (i >= doc_.size() || doc_[i] != '>') fail(i, "malformed end tag");
    if (stack_.empty() || stack_.back() != name_) {
      fail(start, "end tag </" + name_ + "> does not match " + (stack_.empty() ? "anything" : "<" + stack_.back() + ">"));
    }
    stack_.pop_back();
    pos_ = i + 1;
    last_ = Event::EndElement;
    return;
  }

  for (;;) {
    while (i < doc_.size() && is_space(doc_[i])) ++i;
    if (i >= doc_.size()) fail(start, "unterminated start tag");
    if (doc_[i] == '>') {
      ++i;
      break;
    }
    if (doc_[i] == '/' && i + 1 < doc_.size() && doc_[i + 1] == '>') {
      i += 2;
      pending_end_ = true;
      break;
    }
    std::size_t an = i;
    while (i < doc_.size() && is_name_char(doc_[i])) ++i;
    if (i == an) fail(i, "malformed attribute");
    std::string attr(doc_.substr(an, i - an));
    while (i < doc_.size() && is_space(doc_[i])) ++i;
    if (i >= doc_.size() || doc_[i] != '=') fail(i, "expected '=' after attribute name");
    ++i;
    while (i < doc_.size() && is_space(doc_[i])) ++i;
    if (i >= doc_.size() || (doc_[i] != '"' && doc_[i] != '\'')) fail(i, "expected quoted attribute value");
    char q = doc_[i++];
    auto close = doc_.find(q, i);
    if (close == std::string_view::npos) fail(i, "unterminated attribute value");
    attrs_.emplace_back(std::move(attr), decode(doc_.substr(i, close - i), i));
    i = close + 1;
  }
  if (stack_.empty() && seen_root_) fail(start, "content after the root element");
  seen_root_ = true;
  stack_.push_back(name_);
  pos_ = i;
  last_ = Event::StartElement;
}

Event Reader::next() {
  if (pending_end_) {
    pending_end_ = false;
    stack_.pop_back();
    attrs_.clear();
    last_ = Event::EndElement;
    return last_;
  }
  text_.clear();
  for (;;) {
    event_offset_ = pos_;
    if (pos_ >= doc_.size()) {
      if (!stack_.empty()) fail(pos_, "unexpected end of document inside <" + stack_.back() + ">");
      if (!seen_root_) fail(pos_, "no root element");
      return last_ = Event::End;
    }
    if (doc_[pos_] != '<') {
      auto lt = doc_.find('<', pos_);
      if (lt == std::string_view::npos) lt = doc_.size();
      auto raw = doc_.substr(pos_, lt - pos_);
      if (stack_.empty()) {
        for (std::size_t k = 0; k < raw.size(); ++k) {
          if (!is_space(raw[k])) fail(pos_ + k, "text outside the root element");
        }
        pos_ = lt;
        continue;
      }
      text_ = decode(raw, pos_);
      pos_ = lt;
      return last_ = Event::Text;
    }
    auto rest = doc_.substr(pos_);
    if (rest.starts_with("<?")) {
      auto end = doc_.find("?>", pos_ + 2);
      if (end == std::string_view::npos) fail(pos_, "unterminated processing instruction");
      pos_ = end + 2;
      continue;
    }
    if (rest.starts_with("<!--")) {
      auto end = doc_.find("-->", pos_ + 4);
      if (end == std::string_view::npos) fail(pos_, "unterminated comment");
      pos_ = end + 3;
      continue;
    }
    if (rest.starts_with("<![CDATA[")) {
      if (stack_.empty()) fail(pos_, "CDATA outside the root element");
      auto end = doc_.find("]]>", pos_ + 9);
      if (end == std::string_view::npos) fail(pos_, "unterminated CDATA section");
      text_.assign(doc_.substr(pos_ + 9, end - pos_ - 9));
      pos_ = end + 3;
      return last_ = Event::Text;
    }
    if (rest.starts_with("<!")) {
      skip_markup_declaration();
      continue;
    }
    if (rest.size() < 2) fail(pos_, "truncated tag");
    parse_tag();
    return last_;
  }
}

}  // namespace kgforge::xml
