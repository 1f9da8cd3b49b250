#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace kgforge::text {

std::string to_lower(std::string_view s);
std::string_view trim(std::string_view s);
std::vector<std::string_view> split(std::string_view s, char sep);
bool iequals(std::string_view a, std::string_view b);
bool icontains(std::string_view haystack, std::string_view needle);

/// Appends the UTF-8 encoding of `cp`.
void append_utf8(std::string& out, std::uint32_t cp);

/// Percent-encodes everything that cannot appear inside one IRI path segment.
/// Spaces become underscores; non-ASCII bytes pass through.
std::string iri_segment(std::string_view s);

std::string percent_decode(std::string_view s);

/// Shortest decimal representation that round-trips.
std::string format_double(double v);

/// Lowercased with underscores turned into spaces; used for label comparison.
std::string normalize_label(std::string_view s);

std::uint64_t fnv1a(std::string_view data, std::uint64_t seed = 14695981039346656037ULL);
std::string hex64(std::uint64_t v);

}  // namespace kgforge::text
