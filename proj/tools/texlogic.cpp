/* Copyright 2026 The texlogic Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

// texlogic command-line front end. Talks to the library through the C API only.

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "texlogic/texlogic.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitWarn = 1;
constexpr int kExitFail = 2;
constexpr int kExitUsage = 3;

struct RunConfig {
  std::string scope = "full";
  double threshold = 0.5;
  std::string affiliation = "thanks";
  bool aggressive = false;
  std::vector<std::string> paths;
  bool in_place = false;
  bool confirm = false;
  bool to_stdout = false;
  std::string format = "human";
  std::vector<std::uint64_t> seeds;
  std::vector<std::string> profile_sets;
  unsigned jobs = 1;
  std::string cache_dir;
  std::string out_dir;
  std::string arxiv_id;
  bool infer_id = false;
  bool offline = false;
  bool write = false;
  double title_threshold = 0.9;
  double author_threshold = 0.9;
  double abstract_threshold = 0.85;
};

struct Deleter {
  void operator()(tl_detection* p) const { tl_detection_free(p); }
  void operator()(tl_conversion* p) const { tl_conversion_free(p); }
  void operator()(tl_validation* p) const { tl_validation_free(p); }
  void operator()(tl_record* p) const { tl_record_free(p); }
  void operator()(tl_arxiv_client* p) const { tl_arxiv_client_free(p); }
  void operator()(char* p) const { tl_free(p); }
};

template <typename T>
using Owned = std::unique_ptr<T, Deleter>;

std::string take(char* p) {
  Owned<char> owned(p);
  return p ? std::string(p) : std::string();
}

std::string error_text(tl_status s) {
  std::string msg = tl_last_error();
  return msg.empty() ? tl_status_name(s) : msg;
}

tl_format format_of(const RunConfig& c) { return c.format == "machine" ? TL_FORMAT_MACHINE : TL_FORMAT_HUMAN; }

tl_policy policy_of(const RunConfig& c) {
  tl_policy p;
  tl_policy_default(&p);
  p.scope = c.scope == "metadata" ? TL_SCOPE_METADATA_ONLY : TL_SCOPE_FULL;
  p.affiliation_command = c.affiliation == "affiliation" ? TL_AFFILIATION_COMMAND : TL_AFFILIATION_THANKS;
  p.apply_threshold = c.threshold;
  p.aggressive = c.aggressive ? 1 : 0;
  return p;
}

tl_thresholds thresholds_of(const RunConfig& c) { return {c.title_threshold, c.author_threshold, c.abstract_threshold}; }

std::optional<std::string> read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream s;
  s << in.rdbuf();
  if (in.bad()) return std::nullopt;
  return s.str();
}

bool write_file(const fs::path& p, const std::string& data) {
  const fs::path tmp = p.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) return false;
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!out) return false;
  }
  std::error_code ec;
  fs::rename(tmp, p, ec);
  return !ec;
}

bool is_output_copy(const fs::path& p) {
  const std::string name = p.filename().string();
  return name.size() > 12 && name.compare(name.size() - 12, 12, ".logical.tex") == 0;
}

fs::path suffixed(const fs::path& p) {
  fs::path out = p;
  if (out.extension() == ".tex") out.replace_extension();
  out += ".logical.tex";
  return out;
}

// Files and directories (recursively, .tex only), sorted.
std::vector<fs::path> expand(const std::vector<std::string>& inputs, std::vector<std::string>& errors) {
  std::vector<fs::path> out;
  for (const std::string& in : inputs) {
    std::error_code ec;
    if (fs::is_directory(in, ec)) {
      for (const auto& e : fs::recursive_directory_iterator(in, ec)) {
        if (e.is_regular_file() && e.path().extension() == ".tex" && !is_output_copy(e.path())) out.push_back(e.path());
      }
      if (ec) errors.push_back(in + ": " + ec.message());
    } else if (fs::is_regular_file(in, ec)) {
      out.emplace_back(in);
    } else {
      errors.push_back(in + ": no such file or directory");
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Runs fn(i) for i in [0, n) on up to `jobs` threads.
void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn) {
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) fn(i);
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
}

int exit_of(tl_verdict v) {
  switch (v) {
    case TL_VERDICT_PASS: return kExitPass;
    case TL_VERDICT_WARN: return kExitWarn;
    case TL_VERDICT_FAIL: return kExitFail;
  }
  return kExitFail;
}

std::optional<std::string> infer_id(const fs::path& p) {
  std::string stem = p.stem().string();
  std::replace(stem.begin(), stem.end(), '_', '/');
  if (tl_arxiv_id_valid(stem.c_str())) return stem;
  return std::nullopt;
}

// Reference lookup shared by convert, validate and batch.
class References {
 public:
  explicit References(const RunConfig& c) : config_(c) {
    if (c.arxiv_id.empty() && !c.infer_id) return;
    tl_arxiv_client* raw = nullptr;
    const tl_status s =
        tl_arxiv_client_new(nullptr, c.cache_dir.empty() ? nullptr : c.cache_dir.c_str(), c.offline ? 1 : 0, -1, &raw);
    if (s != TL_OK) throw std::runtime_error("cannot create arXiv client: " + error_text(s));
    client_.reset(raw);
  }

  // Empty when no reference applies; `note` explains a failed lookup.
  Owned<tl_record> lookup(const fs::path& file, std::string& note) {
    if (!client_) return nullptr;
    std::string id = config_.arxiv_id;
    if (id.empty()) {
      auto inferred = infer_id(file);
      if (!inferred) return nullptr;
      id = *inferred;
    }
    tl_record* raw = nullptr;
    const tl_status s = tl_arxiv_fetch(client_.get(), id.c_str(), &raw);
    if (s != TL_OK) {
      note = "reference " + id + " unavailable: " + error_text(s);
      return nullptr;
    }
    return Owned<tl_record>(raw);
  }

 private:
  const RunConfig& config_;
  Owned<tl_arxiv_client> client_;
};

struct FileResult {
  std::string report;   // stdout
  std::string errors;   // stderr
  std::string output;   // converted text for --stdout
  int exit = kExitPass;
  tl_class cls = TL_CLASS_LOGICAL;
  double score = 0;
  std::size_t edits = 0;
  std::optional<tl_verdict> verdict;
  std::string error;
};

FileResult io_failure(const fs::path& p, const std::string& what) {
  FileResult r;
  r.exit = kExitUsage;
  r.error = what;
  r.errors = p.string() + ": " + what + "\n";
  return r;
}

FileResult detect_one(const fs::path& path, const RunConfig& c) {
  auto text = read_file(path);
  if (!text) return io_failure(path, "cannot read file");
  tl_detection* raw = nullptr;
  const tl_status s = tl_detect(text->data(), text->size(), &raw);
  if (s != TL_OK) return io_failure(path, error_text(s));
  Owned<tl_detection> d(raw);
  FileResult r;
  r.cls = tl_detection_class(d.get());
  r.score = tl_detection_score(d.get());
  char* rep = nullptr;
  if (tl_detection_report(d.get(), path.string().c_str(), format_of(c), &rep) == TL_OK) r.report = take(rep);
  return r;
}

// Validation of `converted` against `original`; adds the report to r.
void validate_into(FileResult& r, const fs::path& path, const std::string& original, const std::string& converted,
                   const RunConfig& c, References& refs) {
  std::string note;
  Owned<tl_record> ref = refs.lookup(path, note);
  if (!note.empty()) r.errors += path.string() + ": " + note + "\n";
  const tl_policy policy = policy_of(c);
  const tl_thresholds t = thresholds_of(c);
  tl_validation* raw = nullptr;
  const tl_status s = tl_validate(original.data(), original.size(), converted.data(), converted.size(), &policy,
                                  ref.get(), &t, &raw);
  if (s != TL_OK) {
    r.verdict = TL_VERDICT_FAIL;
    r.error = error_text(s);
    r.errors += path.string() + ": validation failed: " + r.error + "\n";
    r.exit = std::max(r.exit, kExitFail);
    return;
  }
  Owned<tl_validation> v(raw);
  tl_verdict verdict = tl_validation_verdict(v.get());
  if (!note.empty() && verdict == TL_VERDICT_PASS) verdict = TL_VERDICT_WARN;
  r.verdict = verdict;
  r.exit = std::max(r.exit, exit_of(verdict));
  char* rep = nullptr;
  if (tl_validation_report(v.get(), path.string().c_str(), format_of(c), &rep) == TL_OK) r.report += take(rep);
}

FileResult convert_one(const fs::path& path, const RunConfig& c, References& refs, bool write_output) {
  auto text = read_file(path);
  if (!text) return io_failure(path, "cannot read file");
  const tl_policy policy = policy_of(c);
  tl_conversion* raw = nullptr;
  const tl_status s = tl_convert(text->data(), text->size(), &policy, &raw);
  FileResult r;
  if (s != TL_OK) {
    r.exit = kExitFail;
    r.verdict = TL_VERDICT_FAIL;
    r.error = error_text(s);
    r.errors = path.string() + ": conversion failed: " + r.error + "\n";
    if (c.format == "machine") {
      r.report = json{{"record", "conversion"}, {"path", path.string()}, {"error", r.error}}.dump() + "\n";
    }
    return r;
  }
  Owned<tl_conversion> conv(raw);
  r.cls = tl_conversion_class_before(conv.get());
  r.edits = tl_conversion_edit_count(conv.get());
  std::size_t size = 0;
  const char* data = tl_conversion_output(conv.get(), &size);
  const std::string output(data, size);
  char* rep = nullptr;
  if (tl_conversion_report(conv.get(), path.string().c_str(), format_of(c), &rep) == TL_OK) r.report = take(rep);
  validate_into(r, path, *text, output, c, refs);
  if (!write_output) return r;
  if (c.to_stdout) {
    r.output = output;
  } else {
    const fs::path target = c.in_place ? path : suffixed(path);
    if (!write_file(target, output)) {
      r.errors += target.string() + ": cannot write output\n";
      r.exit = kExitUsage;
    }
  }
  return r;
}

void add_policy_options(CLI::App* cmd, RunConfig& c) {
  cmd->add_option("--scope,--policy", c.scope, "metadata or full")->check(CLI::IsMember({"metadata", "full"}))->capture_default_str();
  cmd->add_option("--threshold", c.threshold, "minimum confidence for an edit")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  cmd->add_option("--affiliation-command", c.affiliation, "thanks or affiliation")
      ->check(CLI::IsMember({"thanks", "affiliation"}))
      ->capture_default_str();
  cmd->add_flag("--aggressive", c.aggressive, "apply every detection, theorems included");
}

void add_common_options(CLI::App* cmd, RunConfig& c) {
  cmd->add_option("--format", c.format, "human or machine")->check(CLI::IsMember({"human", "machine"}))->capture_default_str();
  cmd->add_option("-j,--jobs", c.jobs, "files processed in parallel")->check(CLI::PositiveNumber)->capture_default_str();
}

void add_reference_options(CLI::App* cmd, RunConfig& c) {
  cmd->add_option("--arxiv-id", c.arxiv_id, "compare front matter with this arXiv record");
  cmd->add_flag("--infer-id", c.infer_id, "take the arXiv id from each file name");
  cmd->add_flag("--offline", c.offline, "use cached records only");
  cmd->add_option("--cache-dir", c.cache_dir, "record cache (default: $TEXLOGIC_CACHE_DIR)");
  cmd->add_option("--title-threshold", c.title_threshold)->check(CLI::Range(0.0, 1.0))->capture_default_str();
  cmd->add_option("--author-threshold", c.author_threshold)->check(CLI::Range(0.0, 1.0))->capture_default_str();
  cmd->add_option("--abstract-threshold", c.abstract_threshold)->check(CLI::Range(0.0, 1.0))->capture_default_str();
}

int finish(std::vector<FileResult>& results, const std::vector<std::string>& usage_errors, bool to_stdout) {
  int code = kExitPass;
  for (const std::string& e : usage_errors) {
    std::cerr << e << "\n";
    code = kExitUsage;
  }
  for (FileResult& r : results) {
    (to_stdout ? std::cerr : std::cout) << r.report;
    std::cerr << r.errors;
    if (to_stdout) std::cout << r.output;
    code = std::max(code, r.exit);
  }
  return code;
}

int run_detect(const RunConfig& c) {
  std::vector<std::string> errors;
  const auto files = expand(c.paths, errors);
  std::vector<FileResult> results(files.size());
  parallel_for(files.size(), c.jobs, [&](std::size_t i) { results[i] = detect_one(files[i], c); });
  return finish(results, errors, false);
}

int run_convert(const RunConfig& c) {
  std::vector<std::string> errors;
  const auto files = expand(c.paths, errors);
  References refs(c);
  std::vector<FileResult> results(files.size());
  parallel_for(files.size(), c.jobs, [&](std::size_t i) { results[i] = convert_one(files[i], c, refs, true); });
  return finish(results, errors, c.to_stdout);
}

int run_validate(const RunConfig& c) {
  const fs::path original = c.paths[0], converted = c.paths[1];
  auto before = read_file(original);
  auto after = read_file(converted);
  if (!before || !after) {
    std::cerr << (before ? converted : original).string() << ": cannot read file\n";
    return kExitUsage;
  }
  References refs(c);
  FileResult r;
  validate_into(r, original, *before, *after, c, refs);
  std::vector<FileResult> results{std::move(r)};
  return finish(results, {}, false);
}

int run_degrade(const RunConfig& c) {
  std::vector<std::string> sets = c.profile_sets;
  if (sets.empty()) sets.push_back("centerline-style,numbered-markers,bold-solitary-sections");
  std::vector<std::uint64_t> seeds = c.seeds;
  if (seeds.empty()) seeds.push_back(1);
  std::vector<const char*> set_ptrs;
  for (const std::string& s : sets) set_ptrs.push_back(s.c_str());
  std::size_t pairs = 0, skips = 0;
  const tl_status s = tl_emit_pairs(c.paths[0].c_str(), c.out_dir.c_str(), set_ptrs.data(), set_ptrs.size(),
                                    seeds.data(), seeds.size(), &pairs, &skips);
  if (s != TL_OK) {
    std::cerr << "degrade: " << error_text(s) << "\n";
    return s == TL_ERR_INVALID_ARGUMENT || s == TL_ERR_IO ? kExitUsage : kExitFail;
  }
  if (c.format == "machine") {
    std::cout << json{{"record", "degradation"}, {"corpus", c.paths[0]}, {"out", c.out_dir}, {"pairs", pairs}, {"skipped", skips}}
                     .dump()
              << "\n";
  } else {
    std::cout << c.paths[0] << ": " << pairs << " pairs written to " << c.out_dir << ", " << skips
              << " sources skipped (see manifest.jsonl)\n";
  }
  return skips ? kExitWarn : kExitPass;
}

int run_batch(const RunConfig& c) {
  std::vector<std::string> errors;
  const auto files = expand(c.paths, errors);
  References refs(c);
  std::vector<FileResult> results(files.size());
  parallel_for(files.size(), c.jobs, [&](std::size_t i) {
    FileResult d = detect_one(files[i], c);
    if (!d.error.empty()) {
      results[i] = std::move(d);
      return;
    }
    FileResult r = convert_one(files[i], c, refs, c.write);
    r.cls = d.cls;
    r.score = d.score;
    results[i] = std::move(r);
  });

  std::map<std::string, std::size_t> classes{{"Logical", 0}, {"Mixed", 0}, {"Visual", 0}};
  std::map<std::string, std::size_t> verdicts{{"Pass", 0}, {"Warn", 0}, {"Fail", 0}};
  std::size_t io_errors = errors.size();
  int code = errors.empty() ? kExitPass : kExitUsage;
  for (const std::string& e : errors) std::cerr << e << "\n";
  for (std::size_t i = 0; i < files.size(); ++i) {
    const FileResult& r = results[i];
    std::cerr << r.errors;
    code = std::max(code, r.exit);
    const bool readable = r.exit != kExitUsage || r.verdict;
    if (!readable) {
      ++io_errors;
      if (c.format == "machine") {
        std::cout << json{{"record", "batch_file"}, {"path", files[i].string()}, {"error", r.error}}.dump() << "\n";
      }
      continue;
    }
    ++classes[tl_class_name(r.cls)];
    if (r.verdict) ++verdicts[tl_verdict_name(*r.verdict)];
    if (c.format == "machine") {
      json j{{"record", "batch_file"}, {"path", files[i].string()}, {"class", tl_class_name(r.cls)}, {"score", r.score},
             {"edits", r.edits}, {"verdict", r.verdict ? json(tl_verdict_name(*r.verdict)) : json(nullptr)}};
      if (!r.error.empty()) j["error"] = r.error;
      std::cout << j.dump() << "\n";
    } else {
      char score[16];
      std::snprintf(score, sizeof score, "%.2f", r.score);
      std::cout << files[i].string() << "  " << tl_class_name(r.cls) << " " << score << "  " << r.edits << " edits  "
                << (r.verdict ? tl_verdict_name(*r.verdict) : "-") << "\n";
    }
  }
  const std::size_t analysed = classes["Logical"] + classes["Mixed"] + classes["Visual"];
  const double prevalence = analysed ? 100.0 * static_cast<double>(classes["Mixed"] + classes["Visual"]) / static_cast<double>(analysed) : 0.0;
  const double visual_share = analysed ? 100.0 * static_cast<double>(classes["Visual"]) / static_cast<double>(analysed) : 0.0;
  if (c.format == "machine") {
    std::cout << json{{"record", "batch_summary"}, {"files", analysed}, {"io_errors", io_errors}, {"classes", classes},
                      {"verdicts", verdicts}, {"prevalence_percent", prevalence}, {"visual_percent", visual_share}}
                     .dump()
              << "\n";
  } else {
    char line[160];
    std::snprintf(line, sizeof line, "prevalence of visual formatting: %.1f%% (Visual only: %.1f%%)\n", prevalence, visual_share);
    std::cout << "\n" << analysed << " files: " << classes["Logical"] << " Logical, " << classes["Mixed"] << " Mixed, "
              << classes["Visual"] << " Visual\n"
              << "conversions: " << verdicts["Pass"] << " Pass, " << verdicts["Warn"] << " Warn, " << verdicts["Fail"]
              << " Fail";
    if (io_errors) std::cout << ", " << io_errors << " unreadable";
    std::cout << "\n" << line;
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Detect and convert visually formatted LaTeX front matter and headers"};
  app.set_config("--config", "", "read options from a TOML or INI file");
  app.set_version_flag("--version", std::string(tl_version()));
  app.require_subcommand(1);
  RunConfig c;

  auto* detect = app.add_subcommand("detect", "list visual formatting and classify each file");
  detect->add_option("paths", c.paths, "files or directories")->required()->check(CLI::ExistingPath);
  add_common_options(detect, c);

  auto* convert = app.add_subcommand("convert", "rewrite visual formatting as logical commands");
  convert->add_option("paths", c.paths, "files or directories")->required()->check(CLI::ExistingPath);
  add_common_options(convert, c);
  add_policy_options(convert, c);
  add_reference_options(convert, c);
  auto* in_place = convert->add_flag("--in-place", c.in_place, "overwrite the input files (needs --yes)");
  auto* to_stdout = convert->add_flag("--stdout", c.to_stdout, "print converted sources; reports go to stderr");
  in_place->excludes(to_stdout);
  convert->add_flag("--yes", c.confirm, "confirm --in-place");

  auto* degrade = app.add_subcommand("degrade", "write visual/logical pairs with ground-truth sidecars");
  degrade->add_option("corpus", c.paths, "logical .tex file or directory")->required()->expected(1)->check(CLI::ExistingPath);
  degrade->add_option("-o,--out", c.out_dir, "output directory")->required();
  degrade->add_option("--profiles", c.profile_sets, "comma-separated profile set; repeatable");
  degrade->add_option("--seed", c.seeds, "seed; repeatable");
  degrade->add_option("--format", c.format)->check(CLI::IsMember({"human", "machine"}))->capture_default_str();
  degrade->footer([] {
    std::string s = "profiles:";
    for (std::size_t i = 0; i < tl_profile_count(); ++i) s += std::string(" ") + tl_profile_name(i);
    return s;
  }());

  auto* validate = app.add_subcommand("validate", "check a conversion against its original");
  validate->add_option("original", c.paths, "original and converted files")->required()->expected(2)->check(CLI::ExistingFile);
  validate->add_option("--format", c.format)->check(CLI::IsMember({"human", "machine"}))->capture_default_str();
  add_policy_options(validate, c);
  add_reference_options(validate, c);

  auto* batch = app.add_subcommand("batch", "classify, convert and validate a corpus");
  batch->add_option("corpus", c.paths, "files or directories")->required()->check(CLI::ExistingPath);
  add_common_options(batch, c);
  add_policy_options(batch, c);
  add_reference_options(batch, c);
  batch->add_flag("--write", c.write, "also write .logical.tex copies");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }
  if (c.in_place && !c.confirm) {
    std::cerr << "convert: --in-place overwrites sources; add --yes to confirm\n";
    return kExitUsage;
  }
  if (!c.arxiv_id.empty() && !tl_arxiv_id_valid(c.arxiv_id.c_str())) {
    std::cerr << "invalid arXiv identifier '" << c.arxiv_id << "'\n";
    return kExitUsage;
  }
  try {
    if (*detect) return run_detect(c);
    if (*convert) return run_convert(c);
    if (*degrade) return run_degrade(c);
    if (*validate) return run_validate(c);
    if (*batch) return run_batch(c);
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
