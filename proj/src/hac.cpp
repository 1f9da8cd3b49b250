#include "kgforge/hac.hpp"

#include <charconv>
#include <sstream>

#include "kgforge/fs.hpp"
#include "kgforge/merge_plan.hpp"
#include "kgforge/text.hpp"

namespace kgforge {

std::string_view to_string(Linkage l) noexcept { return l == Linkage::Single ? "single" : "complete"; }

Linkage linkage_from_string(std::string_view s) {
  if (s == "single") return Linkage::Single;
  if (s == "complete") return Linkage::Complete;
  throw ValidationError("unknown linkage '" + std::string(s) + "' (expected single or complete)");
}

namespace {

template <typename T>
T parse_number(std::string_view field, std::size_t line_no) {
  T v{};
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw ParseError(line_no, "bad number '" + std::string(field) + "'");
  }
  return v;
}

std::vector<std::string_view> fields_of(std::string_view line) {
  std::vector<std::string_view> out;
  for (auto f : text::split(text::trim(line), ' ')) {
    if (!f.empty()) out.push_back(f);
  }
  return out;
}

}  // namespace

std::string to_dendrogram_text(const Dendrogram<double>& d) {
  std::string out;
  for (const auto& m : d.merges) {
    out += std::to_string(m.left) + ' ' + std::to_string(m.right) + ' ' + text::format_double(m.distance) + ' ' +
           std::to_string(m.id) + '\n';
  }
  return out;
}

void write_dendrogram(const Dendrogram<double>& d, const std::filesystem::path& path) {
  fs::write_text_atomically(path, to_dendrogram_text(d));
}

Dendrogram<double> parse_dendrogram(std::string_view content) {
  Dendrogram<double> d;
  std::size_t line_no = 0;
  for (auto line : text::split(content, '\n')) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    auto f = fields_of(line);
    if (f.size() != 4) throw ParseError(line_no, "expected 'left right distance newId'");
    d.merges.push_back({parse_number<std::int64_t>(f[0], line_no), parse_number<std::int64_t>(f[1], line_no),
                        parse_number<double>(f[2], line_no), parse_number<std::int64_t>(f[3], line_no)});
  }
  d.leaves = static_cast<std::int64_t>(d.merges.size()) + 1;
  validate_dendrogram(d);
  return d;
}

Dendrogram<double> read_dendrogram(const std::filesystem::path& path) { return parse_dendrogram(fs::read_text(path)); }

std::size_t MergePlan::task_count() const noexcept {
  std::size_t total = 0;
  for (const auto& l : levels) total += l.size();
  return total;
}

std::int64_t MergePlan::root() const noexcept {
  if (levels.empty()) return 0;
  return levels.back().back().output;
}

PlanStats plan_stats(const MergePlan& plan) {
  PlanStats s;
  s.height = plan.levels.size();
  for (const auto& l : plan.levels) s.merges_per_level.push_back(l.size());
  return s;
}

void validate_plan(const MergePlan& plan) {
  const std::int64_t n = plan.leaves;
  if (n < 1) throw ValidationError("plan without leaves");
  // level at which each id becomes available; leaves at -1
  std::vector<long> available(static_cast<std::size_t>(2 * n - 1), -2);
  std::vector<char> consumed(static_cast<std::size_t>(2 * n - 1), 0);
  for (std::int64_t i = 0; i < n; ++i) available[static_cast<std::size_t>(i)] = -1;
  for (std::size_t level = 0; level < plan.levels.size(); ++level) {
    if (plan.levels[level].empty()) throw ValidationError("empty plan level " + std::to_string(level));
    for (const auto& t : plan.levels[level]) {
      if (t.output < n || t.output >= 2 * n - 1 || available[static_cast<std::size_t>(t.output)] != -2) {
        throw ValidationError("task output " + std::to_string(t.output) + " is invalid or produced twice");
      }
      for (auto in : {t.left, t.right}) {
        if (in < 0 || in >= 2 * n - 1) throw ValidationError("task input out of range");
        auto at = available[static_cast<std::size_t>(in)];
        if (at == -2 || at >= static_cast<long>(level)) {
          throw ValidationError("task input " + std::to_string(in) + " is not produced by an earlier level");
        }
        if (consumed[static_cast<std::size_t>(in)]) throw ValidationError("input " + std::to_string(in) + " consumed twice");
        consumed[static_cast<std::size_t>(in)] = 1;
      }
    }
    for (const auto& t : plan.levels[level]) available[static_cast<std::size_t>(t.output)] = static_cast<long>(level);
  }
  if (plan.task_count() != static_cast<std::size_t>(n - 1)) throw ValidationError("plan needs n-1 tasks");
}

std::string to_plan_text(const MergePlan& plan) {
  std::ostringstream out;
  out << "leaves " << plan.leaves << '\n';
  for (std::size_t i = 0; i < plan.leaf_names.size(); ++i) out << "leaf " << i << ' ' << plan.leaf_names[i] << '\n';
  for (std::size_t level = 0; level < plan.levels.size(); ++level) {
    out << "\nlevel " << level << '\n';
    for (const auto& t : plan.levels[level]) out << t.left << ' ' << t.right << " -> " << t.output << '\n';
  }
  return out.str();
}

MergePlan parse_plan(std::string_view content) {
  MergePlan plan;
  std::size_t line_no = 0;
  bool have_header = false;
  for (auto line : text::split(content, '\n')) {
    ++line_no;
    auto f = fields_of(line);
    if (f.empty()) continue;
    if (f[0] == "leaves" && f.size() == 2) {
      plan.leaves = parse_number<std::int64_t>(f[1], line_no);
      have_header = true;
    } else if (f[0] == "leaf" && f.size() == 3) {
      auto id = parse_number<std::size_t>(f[1], line_no);
      if (id != plan.leaf_names.size()) throw ParseError(line_no, "leaf names must be listed in id order");
      plan.leaf_names.emplace_back(f[2]);
    } else if (f[0] == "level" && f.size() == 2) {
      auto level = parse_number<std::size_t>(f[1], line_no);
      if (level != plan.levels.size()) throw ParseError(line_no, "levels must be listed in order");
      plan.levels.emplace_back();
    } else if (f.size() == 4 && f[2] == "->") {
      if (plan.levels.empty()) throw ParseError(line_no, "task before the first level header");
      plan.levels.back().push_back({parse_number<std::int64_t>(f[0], line_no), parse_number<std::int64_t>(f[1], line_no),
                                    parse_number<std::int64_t>(f[3], line_no)});
    } else {
      throw ParseError(line_no, "unrecognized plan line");
    }
  }
  if (!have_header) throw ParseError(line_no, "missing 'leaves' header");
  if (!plan.leaf_names.empty() && static_cast<std::int64_t>(plan.leaf_names.size()) != plan.leaves) {
    throw ParseError(line_no, "leaf name count does not match 'leaves'");
  }
  validate_plan(plan);
  return plan;
}

void write_plan(const MergePlan& plan, const std::filesystem::path& path) {
  fs::write_text_atomically(path, to_plan_text(plan));
}

MergePlan read_plan(const std::filesystem::path& path) { return parse_plan(fs::read_text(path)); }

}  // namespace kgforge
