#include "kgforge/wikitext.hpp"

#include <cctype>

#include "kgforge/text.hpp"

namespace kgforge {

namespace {

bool at(std::string_view s, std::size_t i, std::string_view token) { return s.substr(i, token.size()) == token; }

std::string remove_comments(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    auto open = s.find("<!--", i);
    if (open == std::string_view::npos) {
      out.append(s.substr(i));
      break;
    }
    out.append(s.substr(i, open - i));
    auto close = s.find("-->", open + 4);
    if (close == std::string_view::npos) break;
    i = close + 3;
  }
  return out;
}

/// Index just past the "}}" matching the "{{" at `start`, or npos.
std::size_t find_template_end(std::string_view s, std::size_t start) {
  int depth = 0;
  std::size_t i = start;
  while (i + 1 < s.size()) {
    if (at(s, i, "{{")) {
      ++depth;
      i += 2;
    } else if (at(s, i, "}}")) {
      --depth;
      i += 2;
      if (depth == 0) return i;
    } else {
      ++i;
    }
  }
  return std::string_view::npos;
}

/// Splits a template body on '|' outside nested templates and links.
std::vector<std::string_view> split_params(std::string_view body) {
  std::vector<std::string_view> parts;
  int braces = 0;
  int links = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < body.size();) {
    if (at(body, i, "{{")) {
      ++braces;
      i += 2;
    } else if (at(body, i, "}}")) {
      braces = std::max(0, braces - 1);
      i += 2;
    } else if (at(body, i, "[[")) {
      ++links;
      i += 2;
    } else if (at(body, i, "]]")) {
      links = std::max(0, links - 1);
      i += 2;
    } else if (body[i] == '|' && braces == 0 && links == 0) {
      parts.push_back(body.substr(start, i - start));
      start = ++i;
    } else {
      ++i;
    }
  }
  parts.push_back(body.substr(start));
  return parts;
}

/// Position of the first '=' outside nested templates and links.
std::size_t find_top_level_equals(std::string_view part) {
  int depth = 0;
  for (std::size_t i = 0; i < part.size();) {
    if (at(part, i, "{{") || at(part, i, "[[")) {
      ++depth;
      i += 2;
    } else if (at(part, i, "}}") || at(part, i, "]]")) {
      depth = std::max(0, depth - 1);
      i += 2;
    } else if (part[i] == '=' && depth == 0) {
      return i;
    } else {
      ++i;
    }
  }
  return std::string_view::npos;
}

std::string_view strip_template_prefix(std::string_view name) {
  name = text::trim(name);
  if (name.size() > 9 && text::iequals(name.substr(0, 9), "template:")) name = text::trim(name.substr(9));
  return name;
}

std::string collapse_whitespace(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending_space = false;
  for (char c : s) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v') {
      pending_space = !out.empty();
    } else {
      if (pending_space) out.push_back(' ');
      pending_space = false;
      out.push_back(c);
    }
  }
  return out;
}

/// Body of an unbalanced template: up to the first blank line.
std::string_view recover_body(std::string_view s, std::size_t start) {
  auto stop = s.find("\n\n", start);
  if (stop == std::string_view::npos) stop = s.size();
  return s.substr(start + 2, stop - start - 2);
}

std::string remove_templates(std::string_view s) {
  std::string out;
  std::size_t i = 0;
  while (i < s.size()) {
    if (at(s, i, "{{")) {
      auto end = find_template_end(s, i);
      if (end == std::string_view::npos) {
        auto stop = s.find("\n\n", i);
        if (stop == std::string_view::npos) break;
        i = stop;
      } else {
        i = end;
      }
      continue;
    }
    out.push_back(s[i++]);
  }
  return out;
}

std::string remove_tables(std::string_view s) {
  std::string out;
  int depth = 0;
  for (auto line : text::split(s, '\n')) {
    auto t = text::trim(line);
    if (t.starts_with("{|")) {
      ++depth;
      continue;
    }
    if (depth > 0) {
      if (t.starts_with("|}")) --depth;
      continue;
    }
    out.append(line);
    out.push_back('\n');
  }
  return out;
}

bool is_dropped_link_target(std::string_view target) {
  target = text::trim(target);
  for (std::string_view prefix : {"file:", "image:", "category:", "media:"}) {
    if (target.size() >= prefix.size() && text::iequals(target.substr(0, prefix.size()), prefix)) return true;
  }
  return false;
}

std::string decode_entities(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '&') {
      out.push_back(s[i]);
      continue;
    }
    auto semi = s.find(';', i);
    if (semi == std::string_view::npos || semi - i > 10) {
      out.push_back('&');
      continue;
    }
    auto name = s.substr(i + 1, semi - i - 1);
    std::string repl;
    if (name == "nbsp") repl = " ";
    else if (name == "amp") repl = "&";
    else if (name == "lt") repl = "<";
    else if (name == "gt") repl = ">";
    else if (name == "quot") repl = "\"";
    else if (name == "apos") repl = "'";
    else if (name.size() > 1 && name[0] == '#') {
      std::uint32_t cp = 0;
      bool ok = true;
      bool hexa = name[1] == 'x' || name[1] == 'X';
      for (char c : name.substr(hexa ? 2 : 1)) {
        int d = -1;
        if (c >= '0' && c <= '9') d = c - '0';
        else if (hexa && c >= 'a' && c <= 'f') d = c - 'a' + 10;
        else if (hexa && c >= 'A' && c <= 'F') d = c - 'A' + 10;
        if (d < 0) ok = false;
        else cp = cp * (hexa ? 16 : 10) + static_cast<std::uint32_t>(d);
      }
      if (ok && cp > 0 && cp < 0x110000) text::append_utf8(repl, cp);
      else ok = false;
      if (!ok) {
        out.push_back('&');
        continue;
      }
    } else {
      out.push_back('&');
      continue;
    }
    out += repl;
    i = semi;
  }
  return out;
}

/// Removes <ref>..</ref>, turns <br> into spaces and drops other tags.
std::string strip_tags(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    if (s[i] != '<' || i + 1 >= s.size() ||
        !(std::isalpha(static_cast<unsigned char>(s[i + 1])) || s[i + 1] == '/')) {
      out.push_back(s[i++]);
      continue;
    }
    auto close = s.find('>', i);
    if (close == std::string_view::npos) {
      out.push_back(s[i++]);
      continue;
    }
    auto tag = text::to_lower(s.substr(i + 1, close - i - 1));
    bool self_closing = !tag.empty() && tag.back() == '/';
    if (tag.starts_with("ref") && (tag.size() == 3 || tag[3] == ' ' || tag[3] == '/' || tag[3] == '>')) {
      if (self_closing) {
        i = close + 1;
        continue;
      }
      auto lower_rest = text::to_lower(s.substr(close + 1));
      auto end = lower_rest.find("</ref>");
      i = end == std::string::npos ? s.size() : close + 1 + end + 6;
      continue;
    }
    if (tag.starts_with("br")) out.push_back(' ');
    i = close + 1;
  }
  return out;
}

std::string strip_links(std::string_view s);

std::string render_link(std::string_view inner) {
  auto pipe = inner.find('|');
  std::string_view target = pipe == std::string_view::npos ? inner : inner.substr(0, pipe);
  if (is_dropped_link_target(target)) return {};
  if (pipe == std::string_view::npos || text::trim(inner.substr(pipe + 1)).empty()) {
    auto t = text::trim(target);
    if (!t.empty() && t.front() == ':') t.remove_prefix(1);
    auto hash = t.find('#');
    if (hash != std::string_view::npos && hash > 0) t = t.substr(0, hash);
    return std::string(t);
  }
  return strip_links(inner.substr(pipe + 1));
}

std::string strip_links(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    if (at(s, i, "[[")) {
      int depth = 0;
      std::size_t j = i;
      std::size_t end = std::string_view::npos;
      while (j + 1 < s.size()) {
        if (at(s, j, "[[")) {
          ++depth;
          j += 2;
        } else if (at(s, j, "]]")) {
          --depth;
          j += 2;
          if (depth == 0) {
            end = j;
            break;
          }
        } else {
          ++j;
        }
      }
      if (end == std::string_view::npos) {
        out.push_back(s[i++]);
        continue;
      }
      out += render_link(s.substr(i + 2, end - i - 4));
      i = end;
      continue;
    }
    if (s[i] == '[' && (at(s, i + 1, "http://") || at(s, i + 1, "https://") || at(s, i + 1, "//"))) {
      auto close = s.find(']', i);
      if (close != std::string_view::npos) {
        auto inner = s.substr(i + 1, close - i - 1);
        auto space = inner.find(' ');
        if (space != std::string_view::npos) out.append(inner.substr(space + 1));
        i = close + 1;
        continue;
      }
    }
    out.push_back(s[i++]);
  }
  return out;
}

std::string strip_line_markup(std::string_view s) {
  std::string out;
  for (auto line : text::split(s, '\n')) {
    auto t = text::trim(line);
    while (!t.empty() && (t.front() == '*' || t.front() == '#' || t.front() == ':' || t.front() == ';')) {
      t.remove_prefix(1);
    }
    while (t.size() >= 2 && t.front() == '=' && t.back() == '=') t = text::trim(t.substr(1, t.size() - 2));
    out.append(t);
    out.push_back('\n');
  }
  return out;
}

std::string remove_quotes_and_magic(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size();) {
    if (at(s, i, "''")) {
      while (i < s.size() && s[i] == '\'') ++i;
      continue;
    }
    if (at(s, i, "__")) {
      std::size_t j = i + 2;
      while (j < s.size() && std::isupper(static_cast<unsigned char>(s[j]))) ++j;
      if (j > i + 2 && at(s, j, "__")) {
        i = j + 2;
        continue;
      }
    }
    out.push_back(s[i++]);
  }
  return out;
}

}  // namespace

std::string flatten_templates(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    if (!at(s, i, "{{")) {
      out.push_back(s[i++]);
      continue;
    }
    auto end = find_template_end(s, i);
    std::string_view body;
    if (end == std::string_view::npos) {
      body = s.substr(i + 2);
      end = s.size();
    } else {
      body = s.substr(i + 2, end - i - 4);
    }
    auto parts = split_params(body);
    std::string joined;
    for (std::size_t p = 1; p < parts.size(); ++p) {
      auto part = parts[p];
      auto eq = find_top_level_equals(part);
      if (eq != std::string_view::npos) part = part.substr(eq + 1);
      auto flat = flatten_templates(text::trim(part));
      auto value = text::trim(flat);
      if (value.empty()) continue;
      if (!joined.empty()) joined.push_back(' ');
      joined.append(value);
    }
    out += joined;
    i = end;
  }
  return out;
}

InfoboxScan scan_infoboxes(std::string_view wikitext) {
  InfoboxScan scan;
  std::string clean = remove_comments(wikitext);
  std::string_view s = clean;
  std::size_t i = 0;
  while (i < s.size()) {
    if (at(s, i, "}}")) {
      scan.warnings.push_back("stray '}}' at offset " + std::to_string(i));
      i += 2;
      continue;
    }
    if (!at(s, i, "{{")) {
      ++i;
      continue;
    }
    auto end = find_template_end(s, i);
    std::string_view body;
    if (end == std::string_view::npos) {
      scan.warnings.push_back("unbalanced '{{' at offset " + std::to_string(i));
      body = recover_body(s, i);
      end = i + 2 + body.size();
    } else {
      body = s.substr(i + 2, end - i - 4);
    }
    i = end;

    auto parts = split_params(body);
    auto name = strip_template_prefix(parts.front());
    if (!text::icontains(name, "infobox")) continue;

    InfoboxInstance box;
    box.template_name = collapse_whitespace(name);
    for (std::size_t p = 1; p < parts.size(); ++p) {
      auto eq = find_top_level_equals(parts[p]);
      if (eq == std::string_view::npos) continue;
      auto key = text::trim(parts[p].substr(0, eq));
      if (key.empty()) continue;
      auto value = flatten_templates(parts[p].substr(eq + 1));
      box.pairs.emplace_back(std::string(key), std::string(text::trim(value)));
    }
    scan.infoboxes.push_back(std::move(box));
  }
  return scan;
}

std::string strip_markup(std::string_view wikitext) {
  std::string s = remove_comments(wikitext);
  s = flatten_templates(s);
  s = strip_tags(s);
  s = strip_links(s);
  s = remove_quotes_and_magic(s);
  s = strip_line_markup(s);
  s = decode_entities(s);
  return collapse_whitespace(s);
}

std::string title_to_segment(std::string_view title) {
  std::string spaced(text::trim(title));
  for (char& c : spaced) {
    if (c == '_') c = ' ';
  }
  return text::iri_segment(collapse_whitespace(spaced));
}

std::optional<Object> value_to_object(std::string_view raw_value, std::string_view wiki_id, const Namespace& ns) {
  std::string clean = remove_comments(raw_value);
  auto v = text::trim(clean);
  if (v.size() > 4 && v.starts_with("[[") && v.ends_with("]]")) {
    auto inner = v.substr(2, v.size() - 4);
    if (inner.find("[[") == std::string_view::npos && inner.find("]]") == std::string_view::npos) {
      auto target = text::trim(inner.substr(0, inner.find('|')));
      if (!target.empty() && target.front() == ':') target = text::trim(target.substr(1));
      auto hash = target.find('#');
      if (hash != std::string_view::npos) target = text::trim(target.substr(0, hash));
      if (!target.empty() && !is_dropped_link_target(target)) {
        return Object{ns.resource(wiki_id, title_to_segment(target))};
      }
    }
  }
  auto stripped = strip_markup(v);
  if (stripped.empty()) return std::nullopt;
  return Object{Literal(std::move(stripped))};
}

SynonymMap SynonymMap::defaults() {
  SynonymMap m;
  m.add("birthdate", "birthDate");
  m.add("birth_date", "birthDate");
  m.add("dateofbirth", "birthDate");
  return m;
}

SynonymMap SynonymMap::parse(std::string_view text_in) {
  SynonymMap m;
  for (auto line : text::split(text_in, '\n')) {
    auto t = text::trim(line);
    if (t.empty() || t.front() == '#') continue;
    auto eq = t.find('=');
    if (eq == std::string_view::npos) continue;
    auto key = text::trim(t.substr(0, eq));
    auto canonical = text::trim(t.substr(eq + 1));
    if (!key.empty() && !canonical.empty()) m.add(key, std::string(canonical));
  }
  return m;
}

std::string SynonymMap::normalize_key(std::string_view key) {
  std::string out;
  for (char c : text::to_lower(text::trim(key))) {
    if (c != '_' && c != ' ') out.push_back(c);
  }
  return out;
}

void SynonymMap::add(std::string_view key, std::string canonical) { map_[normalize_key(key)] = std::move(canonical); }

const std::string* SynonymMap::find(std::string_view key) const {
  auto it = map_.find(normalize_key(key));
  return it == map_.end() ? nullptr : &it->second;
}

void SynonymMap::merge(const SynonymMap& other) {
  for (const auto& [k, v] : other.map_) map_[k] = v;
}

std::string normalize_property_key(std::string_view key, const SynonymMap& synonyms) {
  if (const std::string* hit = synonyms.find(key)) return *hit;
  std::string out;
  std::string token;
  auto flush = [&] {
    if (token.empty()) return;
    if (out.empty()) {
      token[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(token[0])));
    } else {
      token[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(token[0])));
    }
    out += token;
    token.clear();
  };
  for (char c : text::trim(key)) {
    if (c == ' ' || c == '_' || c == '-' || c == '\t') flush();
    else token.push_back(c);
  }
  flush();
  return text::iri_segment(out);
}

std::string class_name_for_template(std::string_view template_name) {
  std::string name(strip_template_prefix(template_name));
  for (char& c : name) {
    if (c == '_') c = ' ';
  }
  auto lower = text::to_lower(name);
  auto pos = lower.find("infobox");
  if (pos != std::string::npos) name.erase(pos, 7);
  std::string_view t = text::trim(name);
  while (!t.empty() && (t.front() == '-' || t.front() == ':' || t.front() == '/')) t = text::trim(t.substr(1));
  while (!t.empty() && (t.back() == '-' || t.back() == ':' || t.back() == '/')) t = text::trim(t.substr(0, t.size() - 1));
  std::string result = collapse_whitespace(t);
  if (result.empty()) result = "Infobox";
  result[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(result[0])));
  return title_to_segment(result);
}

std::string lead_abstract(std::string_view wikitext) {
  std::string s = remove_comments(wikitext);
  std::size_t heading = s.starts_with("=") ? 0 : s.find("\n=");
  if (heading != std::string::npos) s.resize(heading);
  s = remove_templates(s);
  s = remove_tables(s);
  std::string paragraph;
  auto emit = [&]() -> std::string {
    auto stripped = strip_markup(paragraph);
    paragraph.clear();
    return stripped;
  };
  for (auto line : text::split(s, '\n')) {
    if (text::trim(line).empty()) {
      if (auto p = emit(); !p.empty()) return p;
      continue;
    }
    paragraph.append(line);
    paragraph.push_back('\n');
  }
  return emit();
}

}  // namespace kgforge
