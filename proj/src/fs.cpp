#include "kgforge/fs.hpp"

#include <atomic>
#include <fstream>
#include <sstream>
#include <thread>

#include "kgforge/error.hpp"

namespace kgforge::fs {

namespace {

std::filesystem::path temp_sibling(const std::filesystem::path& path) {
  static std::atomic<unsigned long> counter{0};
  auto tid = std::hash<std::thread::id>{}(std::this_thread::get_id());
  auto name = path.filename().string() + ".tmp." + std::to_string(tid % 1000000) + "." + std::to_string(++counter);
  return path.parent_path() / name;
}

}  // namespace

void write_atomically(const std::filesystem::path& path, const std::function<void(std::ostream&)>& writer) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = temp_sibling(path);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    try {
      writer(out);
    } catch (...) {
      out.close();
      std::filesystem::remove(tmp);
      throw;
    }
    out.flush();
    if (!out) {
      out.close();
      std::filesystem::remove(tmp);
      throw Error("write failed for " + path.string());
    }
  }
  std::filesystem::rename(tmp, path);
}

void write_text_atomically(const std::filesystem::path& path, const std::string& contents) {
  write_atomically(path, [&](std::ostream& out) { out << contents; });
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace kgforge::fs
