#include "kgforge/tfidf.hpp"

#include <charconv>
#include <fstream>

#include "kgforge/error.hpp"
#include "kgforge/fs.hpp"
#include "kgforge/text.hpp"

namespace kgforge {

int TermDictionary::intern(const std::string& token) {
  auto [it, inserted] = ids_.try_emplace(token, static_cast<int>(terms_.size()));
  if (inserted) terms_.push_back(token);
  return it->second;
}

int TermDictionary::find(const std::string& token) const {
  auto it = ids_.find(token);
  return it == ids_.end() ? -1 : it->second;
}

void write_term_dictionary(const TermDictionary& dict, const std::filesystem::path& path) {
  fs::write_atomically(path, [&](std::ostream& out) {
    for (int i = 0; i < dict.size(); ++i) out << i << ' ' << dict.term(i) << '\n';
  });
}

TermDictionary read_term_dictionary(const std::filesystem::path& path) {
  TermDictionary dict;
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto space = line.find(' ');
    if (space == std::string::npos) throw ParseError(line_no, "expected 'termId token'");
    int id = -1;
    std::from_chars(line.data(), line.data() + space, id);
    auto token = line.substr(space + 1);
    if (id != dict.size() || dict.intern(token) != id) throw ParseError(line_no, "term ids must be dense and unique");
  }
  return dict;
}

void write_vector_file(const TfIdfVector<double>& v, const std::filesystem::path& path) {
  fs::write_atomically(path, [&](std::ostream& out) {
    for (Eigen::SparseVector<double>::InnerIterator it(v.weights); it; ++it) {
      out << it.index() << ' ' << text::format_double(it.value()) << '\n';
    }
  });
}

TfIdfVector<double> read_vector_file(const std::filesystem::path& path, Eigen::Index dimension) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  Eigen::SparseVector<double> w(dimension);
  std::string line;
  std::size_t line_no = 0;
  Eigen::Index last = -1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto space = line.find(' ');
    if (space == std::string::npos) throw ParseError(line_no, "expected 'termId weight'");
    long id = -1;
    double weight = 0;
    auto r1 = std::from_chars(line.data(), line.data() + space, id);
    auto r2 = std::from_chars(line.data() + space + 1, line.data() + line.size(), weight);
    if (r1.ec != std::errc{} || r2.ec != std::errc{} || id <= last || id >= dimension || weight < 0) {
      throw ParseError(line_no, "bad vector entry");
    }
    w.insertBack(id) = weight;
    last = id;
  }
  return TfIdfVector<double>(std::move(w));
}

}  // namespace kgforge
