#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>

namespace kgforge::fs {

/// Writes through `writer` into `<path>.tmp.<unique>` and renames it over
/// `path`, so a reader never sees a partially written artifact.
void write_atomically(const std::filesystem::path& path, const std::function<void(std::ostream&)>& writer);
void write_text_atomically(const std::filesystem::path& path, const std::string& contents);

std::string read_text(const std::filesystem::path& path);

}  // namespace kgforge::fs
