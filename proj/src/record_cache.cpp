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

#include <algorithm>
#include <fstream>
#include <sstream>
#include <system_error>

#include "json.hpp"
#include "texlogic/arxiv_client.hpp"

namespace texlogic {

namespace fs = std::filesystem;
using nlohmann::json;

std::string ArxivRecord::to_json() const {
  json j{{"id", id},           {"title", title},       {"authors", authors}, {"affiliations", affiliations},
         {"abstract", abstract}, {"fetched_at", fetched_at}};
  return j.dump(2) + "\n";
}

ArxivRecord ArxivRecord::from_json(const std::string& text) {
  const json j = json::parse(text);
  ArxivRecord r;
  r.id = j.at("id").get<std::string>();
  r.title = j.value("title", "");
  r.authors = j.value("authors", std::vector<std::string>{});
  r.affiliations = j.value("affiliations", std::vector<std::string>{});
  r.abstract = j.value("abstract", "");
  r.fetched_at = j.value("fetched_at", "");
  return r;
}

RecordCache::RecordCache(fs::path dir, std::size_t capacity) : dir_(std::move(dir)), capacity_(capacity) {}

fs::path RecordCache::path_for(std::string_view id) const {
  std::string name = canonical_arxiv_id(id);
  std::replace(name.begin(), name.end(), '/', '_');
  return dir_ / (name + ".json");
}

std::optional<ArxivRecord> RecordCache::get(std::string_view id) const {
  const fs::path p = path_for(id);
  std::error_code ec;
  if (!fs::exists(p, ec)) return std::nullopt;
  std::ifstream in(p, std::ios::binary);
  if (!in) throw ArxivError(ArxivErrorKind::Storage, "cannot read cache file " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return ArxivRecord::from_json(ss.str());
  } catch (const json::exception& e) {
    throw ArxivError(ArxivErrorKind::Storage, "corrupt cache file " + p.string() + ": " + e.what());
  }
}

void RecordCache::put(const ArxivRecord& record) {
  std::lock_guard<std::mutex> lock(write_);
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec) throw ArxivError(ArxivErrorKind::Storage, "cannot create cache directory " + dir_.string());
  const fs::path target = path_for(record.id);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << record.to_json();
    if (!out) throw ArxivError(ArxivErrorKind::Storage, "cannot write " + tmp.string());
  }
  fs::rename(tmp, target, ec);
  if (ec) throw ArxivError(ArxivErrorKind::Storage, "cannot move " + tmp.string() + ": " + ec.message());
  if (capacity_ == 0) return;
  std::vector<std::pair<fs::file_time_type, fs::path>> files;
  for (const auto& entry : fs::directory_iterator(dir_)) {
    if (entry.path().extension() == ".json") files.emplace_back(entry.last_write_time(), entry.path());
  }
  if (files.size() <= capacity_) return;
  std::sort(files.begin(), files.end());
  for (std::size_t i = 0; i + capacity_ < files.size(); ++i) {
    if (files[i].second == target) continue;
    fs::remove(files[i].second, ec);
    if (!ec) ++evictions_;
  }
}

std::size_t RecordCache::size() const {
  std::error_code ec;
  if (!fs::exists(dir_, ec)) return 0;
  std::size_t n = 0;
  for (const auto& entry : fs::directory_iterator(dir_)) n += entry.path().extension() == ".json";
  return n;
}

}  // namespace texlogic
