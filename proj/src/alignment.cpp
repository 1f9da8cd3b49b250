#include "kgforge/alignment.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "kgforge/error.hpp"
#include "kgforge/fs.hpp"
#include "kgforge/text.hpp"

namespace kgforge {

Correspondence::Correspondence(Iri src, Iri tgt, double conf)
    : source(std::move(src)), target(std::move(tgt)), confidence(conf) {
  if (!(confidence >= 0.0 && confidence <= 1.0)) {
    throw ValidationError("confidence outside [0,1]: " + text::format_double(confidence));
  }
  if (source == target) throw ValidationError("correspondence links " + source.str() + " to itself");
}

Alignment inverted(const Alignment& al) {
  Alignment out;
  out.reserve(al.size());
  for (const auto& c : al) out.emplace_back(c.target, c.source, c.confidence);
  return out;
}

namespace {

std::string_view strip_brackets(std::string_view s) {
  if (s.size() >= 2 && s.front() == '<' && s.back() == '>') return s.substr(1, s.size() - 2);
  return s;
}

}  // namespace

Alignment parse_alignment_tsv(std::istream& in) {
  Alignment al;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::trim(line).empty()) continue;
    auto fields = text::split(line, '\t');
    if (fields.size() != 4) throw ParseError(line_no, "expected 4 tab-separated fields");
    if (text::trim(fields[2]) != "=") throw ParseError(line_no, "relation must be '='");
    auto conf_text = text::trim(fields[3]);
    double conf = 0.0;
    auto [ptr, ec] = std::from_chars(conf_text.data(), conf_text.data() + conf_text.size(), conf);
    if (ec != std::errc{} || ptr != conf_text.data() + conf_text.size()) {
      throw ParseError(line_no, "bad confidence '" + std::string(conf_text) + "'");
    }
    try {
      al.emplace_back(Iri(std::string(strip_brackets(text::trim(fields[0])))),
                      Iri(std::string(strip_brackets(text::trim(fields[1])))), conf);
    } catch (const ValidationError& e) {
      throw ParseError(line_no, e.what());
    }
  }
  return al;
}

Alignment parse_alignment_tsv(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_alignment_tsv(in);
}

void write_alignment_tsv(const Alignment& al, std::ostream& out) {
  for (const auto& c : al) {
    out << c.source.str() << '\t' << c.target.str() << "\t=\t" << text::format_double(c.confidence) << '\n';
  }
}

std::string to_alignment_tsv(const Alignment& al) {
  std::ostringstream out;
  write_alignment_tsv(al, out);
  return out.str();
}

Alignment read_alignment_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return parse_alignment_tsv(in);
}

void write_alignment_file(const Alignment& al, const std::filesystem::path& path) {
  fs::write_atomically(path, [&](std::ostream& out) { write_alignment_tsv(al, out); });
}

}  // namespace kgforge
