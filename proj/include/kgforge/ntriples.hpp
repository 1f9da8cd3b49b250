#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "kgforge/graph.hpp"

namespace kgforge {

/// Parses line-oriented N-Triples (no blank nodes). Blank lines and `#`
/// comments are skipped. Throws ParseError with the 1-based line number.
KnowledgeGraph parse_ntriples(std::istream& in, std::string id = {});
KnowledgeGraph parse_ntriples(std::string_view text, std::string id = {});

/// Parses one statement; exposed for line-parallel readers.
Triple parse_ntriples_line(std::string_view line, std::size_t line_no);

void serialize_ntriples(const KnowledgeGraph& kg, std::ostream& out);
std::string serialize_ntriples(const KnowledgeGraph& kg);

/// Graph id defaults to the file stem.
KnowledgeGraph read_ntriples_file(const std::filesystem::path& path);
/// Writes via a temporary sibling and renames into place.
void write_ntriples_file(const KnowledgeGraph& kg, const std::filesystem::path& path);

}  // namespace kgforge
