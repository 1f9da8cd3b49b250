#pragma once

// Minimal pull parser for the MediaWiki export format. Checks nesting and
// entity syntax, reports byte offsets on error; no DTD or namespace handling.

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace kgforge::xml {

enum class Event { StartElement, EndElement, Text, End };

class Reader {
 public:
  explicit Reader(std::string_view doc) : doc_(doc) {}

  Event next();

  /// Element name for Start/End events.
  const std::string& name() const noexcept { return name_; }
  /// Decoded character data for Text events.
  const std::string& text() const noexcept { return text_; }
  const std::vector<std::pair<std::string, std::string>>& attributes() const noexcept { return attrs_; }
  /// Byte offset where the current event started.
  std::size_t offset() const noexcept { return event_offset_; }
  std::size_t depth() const noexcept { return stack_.size(); }

 private:
  [[noreturn]] void fail(std::size_t at, const std::string& what) const;
  std::string decode(std::string_view raw, std::size_t base) const;
  void parse_tag();
  void skip_markup_declaration();

  std::string_view doc_;
  std::size_t pos_ = 0;
  std::size_t event_offset_ = 0;
  std::string name_;
  std::string text_;
  std::vector<std::pair<std::string, std::string>> attrs_;
  std::vector<std::string> stack_;
  bool pending_end_ = false;
  bool seen_root_ = false;
  Event last_ = Event::Text;
};

}  // namespace kgforge::xml
