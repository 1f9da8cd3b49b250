#include "kgforge/match.hpp"

#include <fcntl.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <condition_variable>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "kgforge/error.hpp"
#include "kgforge/text.hpp"

namespace kgforge {

std::string fragment_label(const Iri& iri) {
  return std::string(text::trim(text::normalize_label(text::percent_decode(iri.fragment()))));
}

LabelIndex::LabelIndex(std::span<const KnowledgeGraph> kgs) {
  for (const auto& kg : kgs) add(kg);
}

void LabelIndex::add(const KnowledgeGraph& kg) {
  const Iri label(std::string(vocab::kRdfsLabel));
  for (const Triple* t : kg.by_predicate(label)) {
    if (const Literal* lit = as_literal(t->object)) {
      std::string norm(text::trim(text::normalize_label(lit->lexical())));
      if (!norm.empty()) labels_[t->subject.str()].insert(std::move(norm));
    }
  }
}

std::vector<std::string> LabelIndex::labels(const Iri& iri) const {
  auto it = labels_.find(iri.str());
  if (it != labels_.end()) return {it->second.begin(), it->second.end()};
  auto f = fragment_label(iri);
  if (f.empty()) return {};
  return {std::move(f)};
}

void MatcherConfig::validate() const {
  if (!(jaccard_threshold >= 0.0 && jaccard_threshold <= 1.0)) {
    throw ValidationError("jaccard threshold must lie in [0, 1]");
  }
}

namespace {

struct Entity {
  const Iri* iri;
  EntityKind kind;
  std::vector<std::string> labels;
  std::vector<std::vector<std::string>> tokens;  // per label, sorted and distinct
};

std::vector<Entity> entities_of(const KnowledgeGraph& kg, const std::vector<Iri>& iris, const MatcherConfig& cfg,
                                const Tokenizer& tok) {
  LabelIndex index(kg);
  std::vector<Entity> out;
  for (const auto& iri : iris) {
    auto kind = cfg.ns.kind_of(iri);
    if (!cfg.kinds.contains(kind)) continue;
    Entity e{&iri, kind, index.labels(iri), {}};
    for (const auto& l : e.labels) {
      auto ts = tok(l);
      std::sort(ts.begin(), ts.end());
      ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
      e.tokens.push_back(std::move(ts));
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::string kind_key(EntityKind k, std::string_view s) {
  std::string key(1, static_cast<char>('0' + static_cast<int>(k)));
  key += s;
  return key;
}

}  // namespace

Alignment match_pair(const KnowledgeGraph& a, const KnowledgeGraph& b, const MatcherConfig& cfg) {
  cfg.validate();
  const Tokenizer tok = cfg.stopwords ? Tokenizer(*cfg.stopwords) : Tokenizer();
  const auto a_iris = a.iris();
  const auto b_iris = b.iris();
  const auto ea = entities_of(a, a_iris, cfg, tok);
  const auto eb = entities_of(b, b_iris, cfg, tok);

  std::unordered_map<std::string, std::vector<std::size_t>> exact;
  std::unordered_map<std::string, std::vector<std::pair<std::size_t, std::size_t>>> postings;
  for (std::size_t j = 0; j < eb.size(); ++j) {
    for (std::size_t l = 0; l < eb[j].labels.size(); ++l) {
      exact[kind_key(eb[j].kind, eb[j].labels[l])].push_back(j);
      for (const auto& t : eb[j].tokens[l]) postings[kind_key(eb[j].kind, t)].emplace_back(j, l);
    }
  }

  Alignment out;
  std::map<std::size_t, double> best;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> shared;
  for (const auto& e : ea) {
    best.clear();
    for (std::size_t l = 0; l < e.labels.size(); ++l) {
      if (auto it = exact.find(kind_key(e.kind, e.labels[l])); it != exact.end()) {
        for (auto j : it->second) best[j] = 1.0;
      }
      const auto& ts = e.tokens[l];
      if (ts.empty()) continue;
      shared.clear();
      for (const auto& t : ts) {
        if (auto it = postings.find(kind_key(e.kind, t)); it != postings.end()) {
          for (const auto& p : it->second) ++shared[p];
        }
      }
      for (const auto& [p, inter] : shared) {
        const auto& other = eb[p.first].tokens[p.second];
        const double jac = static_cast<double>(inter) / static_cast<double>(ts.size() + other.size() - inter);
        if (jac >= cfg.jaccard_threshold) {
          auto& slot = best[p.first];
          slot = std::max(slot, jac);
        }
      }
    }
    for (const auto& [j, conf] : best) {
      if (*e.iri == *eb[j].iri) continue;
      out.emplace_back(*e.iri, *eb[j].iri, conf);
    }
  }
  std::sort(out.begin(), out.end(), [](const Correspondence& x, const Correspondence& y) {
    return std::tie(x.source, x.target) < std::tie(y.source, y.target);
  });
  return out;
}

Alignment extract_one_to_one(const Alignment& al) {
  std::vector<const Correspondence*> order;
  order.reserve(al.size());
  for (const auto& c : al) order.push_back(&c);
  std::stable_sort(order.begin(), order.end(), [](const Correspondence* x, const Correspondence* y) {
    if (x->confidence != y->confidence) return x->confidence > y->confidence;
    return std::tie(x->source, x->target) < std::tie(y->source, y->target);
  });
  std::set<std::string_view> sources;
  std::set<std::string_view> targets;
  Alignment out;
  for (const Correspondence* c : order) {
    if (sources.contains(c->source.str()) || targets.contains(c->target.str())) continue;
    sources.insert(c->source.str());
    targets.insert(c->target.str());
    out.push_back(*c);
  }
  return out;
}

namespace {

class ProcessLimit {
 public:
  void set(unsigned limit) {
    std::lock_guard lock(mutex_);
    limit_ = std::max(1U, limit);
    cv_.notify_all();
  }
  void acquire() {
    std::unique_lock lock(mutex_);
    cv_.wait(lock, [&] { return running_ < limit_; });
    ++running_;
  }
  void release() {
    std::lock_guard lock(mutex_);
    --running_;
    cv_.notify_one();
  }

 private:
  std::mutex mutex_;
  std::condition_variable cv_;
  unsigned limit_ = 4;
  unsigned running_ = 0;
};

ProcessLimit& process_limit() {
  static ProcessLimit limit;
  return limit;
}

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out.push_back(c);
    }
  }
  out.push_back('\'');
  return out;
}

std::string substitute(std::string command, const std::string& key, const std::string& value) {
  for (auto pos = command.find(key); pos != std::string::npos; pos = command.find(key, pos + value.size())) {
    command.replace(pos, key.size(), value);
  }
  return command;
}

std::string tail_of(const std::filesystem::path& path, std::size_t max_bytes) {
  std::error_code ec;
  if (!std::filesystem::exists(path, ec)) return {};
  std::ifstream in(path, std::ios::binary);
  std::string s((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (s.size() > max_bytes) s = s.substr(s.size() - max_bytes);
  return std::string(text::trim(s));
}

}  // namespace

void set_external_matcher_limit(unsigned limit) { process_limit().set(limit); }

Alignment run_external_matcher(const ExternalMatcherConfig& cfg, const std::filesystem::path& a,
                               const std::filesystem::path& b, const std::filesystem::path& out) {
  if (cfg.command.find("{OUT}") == std::string::npos) {
    throw ExternalMatcherError("matcher command lacks the {OUT} placeholder");
  }
  std::string command = substitute(cfg.command, "{A}", shell_quote(a.string()));
  command = substitute(command, "{B}", shell_quote(b.string()));
  command = substitute(command, "{OUT}", shell_quote(out.string()));
  const auto diagnostics = std::filesystem::path(out.string() + ".stderr");
  std::filesystem::remove(out);

  process_limit().acquire();
  struct Release {
    ~Release() { process_limit().release(); }
  } release;

  const std::string diag = diagnostics.string();
  pid_t pid = fork();
  if (pid < 0) throw ExternalMatcherError("fork failed for matcher command");
  if (pid == 0) {
    setpgid(0, 0);
    int fd = open(diag.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
    if (fd >= 0) {
      dup2(fd, STDERR_FILENO);
      dup2(fd, STDOUT_FILENO);
      close(fd);
    }
    execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  setpgid(pid, pid);

  const auto deadline = std::chrono::steady_clock::now() + cfg.timeout;
  int status = 0;
  for (;;) {
    pid_t r = waitpid(pid, &status, WNOHANG);
    if (r == pid) break;
    if (r < 0 && errno != EINTR) throw ExternalMatcherError("waitpid failed for matcher command");
    if (std::chrono::steady_clock::now() >= deadline) {
      kill(-pid, SIGKILL);
      kill(pid, SIGKILL);
      waitpid(pid, &status, 0);
      std::filesystem::remove(diagnostics);
      throw ExternalMatcherError("matcher timed out after " + std::to_string(cfg.timeout.count()) + " ms: " + command);
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(5));
  }
  std::string captured = tail_of(diagnostics, 4096);
  std::filesystem::remove(diagnostics);
  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
    std::string why = WIFEXITED(status) ? "exit status " + std::to_string(WEXITSTATUS(status))
                                        : "signal " + std::to_string(WTERMSIG(status));
    throw ExternalMatcherError("matcher failed with " + why + (captured.empty() ? "" : ": " + captured));
  }
  if (!std::filesystem::exists(out)) throw ExternalMatcherError("matcher wrote no output file " + out.string());
  try {
    return extract_one_to_one(read_alignment_file(out));
  } catch (const ParseError& e) {
    throw ExternalMatcherError("unparseable matcher output " + out.string() + ": " + e.what());
  }
}

}  // namespace kgforge
