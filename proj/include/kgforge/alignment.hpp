#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "kgforge/rdf.hpp"

namespace kgforge {

/// Scored equivalence link. The relation is always equivalence ("=").
struct Correspondence {
  Correspondence(Iri source, Iri target, double confidence);

  Iri source;
  Iri target;
  double confidence;

  friend bool operator==(const Correspondence&, const Correspondence&) = default;
};

using Alignment = std::vector<Correspondence>;

/// Reverses every correspondence.
Alignment inverted(const Alignment& al);

/// `source<TAB>target<TAB>=<TAB>confidence` per line. IRIs may be written bare
/// or in angle brackets; output uses bare IRIs.
Alignment parse_alignment_tsv(std::istream& in);
Alignment parse_alignment_tsv(std::string_view text);
void write_alignment_tsv(const Alignment& al, std::ostream& out);
std::string to_alignment_tsv(const Alignment& al);

Alignment read_alignment_file(const std::filesystem::path& path);
void write_alignment_file(const Alignment& al, const std::filesystem::path& path);

}  // namespace kgforge
