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

#ifndef TEXLOGIC_ARXIV_CLIENT_HPP
#define TEXLOGIC_ARXIV_CLIENT_HPP

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace texlogic {

struct ArxivRecord {
  std::string id;
  std::string title;
  std::vector<std::string> authors;
  std::vector<std::string> affiliations;  // stored, never scored
  std::string abstract;
  std::string fetched_at;  // ISO 8601 UTC

  std::string to_json() const;
  static ArxivRecord from_json(const std::string& text);
  bool operator==(const ArxivRecord&) const = default;
};

enum class ArxivErrorKind { InvalidId, NotFound, Transport, Parse, Storage };

const char* to_string(ArxivErrorKind kind);

class ArxivError : public std::runtime_error {
 public:
  ArxivError(ArxivErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ArxivErrorKind kind() const { return kind_; }

 private:
  ArxivErrorKind kind_;
};

/// New form 0704.0001 / 2101.12345 (optional vN), old form hep-th/9901001
/// or math.AG/0601001 (optional vN).
bool is_valid_arxiv_id(std::string_view id);

/// Id without a version suffix.
std::string canonical_arxiv_id(std::string_view id);

/// Parses an Atom query response. Throws ArxivError (NotFound, Parse).
ArxivRecord parse_atom(const std::string& xml, const std::string& id);

/// One JSON file per id. Writes are atomic; reads are lock-free.
class RecordCache {
 public:
  /// capacity 0 means unbounded; otherwise the oldest files are evicted.
  explicit RecordCache(std::filesystem::path dir, std::size_t capacity = 0);

  std::optional<ArxivRecord> get(std::string_view id) const;
  void put(const ArxivRecord& record);
  std::size_t size() const;
  std::size_t evictions() const { return evictions_; }
  const std::filesystem::path& directory() const { return dir_; }
  std::filesystem::path path_for(std::string_view id) const;

 private:
  std::filesystem::path dir_;
  std::size_t capacity_;
  std::size_t evictions_ = 0;
  mutable std::mutex write_;
};

struct ClientOptions {
  std::string base_url = "https://export.arxiv.org";
  std::filesystem::path cache_dir = ".texlogic-cache";
  std::chrono::milliseconds min_interval{3000};
  std::chrono::seconds timeout{30};
  std::size_t cache_capacity = 0;
  bool offline = false;  // cache only
};

/// Defaults overridden by TEXLOGIC_ARXIV_BASE_URL and TEXLOGIC_CACHE_DIR.
ClientOptions options_from_environment();

class ArxivClient {
 public:
  explicit ArxivClient(ClientOptions options = options_from_environment());

  /// Cache first; live requests are serialized and spaced by min_interval.
  ArxivRecord fetch(std::string_view id);

  std::size_t network_calls() const;
  RecordCache& cache() { return cache_; }
  const ClientOptions& options() const { return options_; }

 private:
  ClientOptions options_;
  RecordCache cache_;
  mutable std::mutex request_;
  std::optional<std::chrono::steady_clock::time_point> last_request_;
  std::size_t network_calls_ = 0;
};

}  // namespace texlogic

#endif  // TEXLOGIC_ARXIV_CLIENT_HPP
