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

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "texlogic/arxiv_client.hpp"

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <ctime>
#include <sstream>
#include <thread>

#include "httplib.h"
#include "texlogic/text.hpp"

namespace texlogic {

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

// Strips a trailing vN.
std::string_view without_version(std::string_view id) {
  const std::size_t v = id.rfind('v');
  if (v != std::string_view::npos && v + 1 < id.size() && all_digits(id.substr(v + 1))) return id.substr(0, v);
  return id;
}

std::string now_utc() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string clean(const std::string& s) { return text::collapse_whitespace(text::trim(s)); }

}  // namespace

const char* to_string(ArxivErrorKind kind) {
  switch (kind) {
    case ArxivErrorKind::InvalidId: return "InvalidId";
    case ArxivErrorKind::NotFound: return "NotFound";
    case ArxivErrorKind::Transport: return "TransportError";
    case ArxivErrorKind::Parse: return "ParseError";
    case ArxivErrorKind::Storage: return "StorageError";
  }
  return "?";
}

bool is_valid_arxiv_id(std::string_view id) {
  const std::string_view base = without_version(id);
  const std::size_t slash = base.find('/');
  if (slash == std::string_view::npos) {
    const std::size_t dot = base.find('.');
    if (dot != 4) return false;
    const std::string_view yymm = base.substr(0, 4), number = base.substr(5);
    if (!all_digits(yymm) || !all_digits(number) || (number.size() != 4 && number.size() != 5)) return false;
    const int month = (yymm[2] - '0') * 10 + (yymm[3] - '0');
    return month >= 1 && month <= 12;
  }
  std::string_view archive = base.substr(0, slash);
  const std::string_view number = base.substr(slash + 1);
  if (number.size() != 7 || !all_digits(number)) return false;
  const int month = (number[2] - '0') * 10 + (number[3] - '0');
  if (month < 1 || month > 12) return false;
  const std::size_t dot = archive.find('.');
  if (dot != std::string_view::npos) {
    const std::string_view subject = archive.substr(dot + 1);
    if (subject.size() != 2 || !std::isupper(static_cast<unsigned char>(subject[0])) ||
        !std::isupper(static_cast<unsigned char>(subject[1])))
      return false;
    archive = archive.substr(0, dot);
  }
  return !archive.empty() && std::all_of(archive.begin(), archive.end(), [](char c) {
    return std::islower(static_cast<unsigned char>(c)) || c == '-';
  });
}

std::string canonical_arxiv_id(std::string_view id) { return std::string(without_version(text::trim(id))); }

ArxivRecord parse_atom(const std::string& xml, const std::string& id) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    std::istringstream in(xml);
    pt::read_xml(in, tree);
  } catch (const pt::xml_parser_error& e) {
    throw ArxivError(ArxivErrorKind::Parse, std::string("malformed Atom feed: ") + e.what());
  }
  const auto feed = tree.get_child_optional("feed");
  if (!feed) throw ArxivError(ArxivErrorKind::Parse, "response has no Atom feed element");
  for (const auto& [tag, entry] : *feed) {
    if (tag != "entry") continue;
    const std::string entry_id = clean(entry.get<std::string>("id", ""));
    const std::string title = clean(entry.get<std::string>("title", ""));
    if (entry_id.find("/api/errors") != std::string::npos || title == "Error") {
      throw ArxivError(ArxivErrorKind::NotFound, "arXiv reports an error for " + id + ": " +
                                                     clean(entry.get<std::string>("summary", "")));
    }
    if (entry_id.empty()) continue;
    ArxivRecord r;
    r.id = canonical_arxiv_id(id);
    r.title = title;
    r.abstract = clean(entry.get<std::string>("summary", ""));
    for (const auto& [child, node] : entry) {
      if (child != "author") continue;
      r.authors.push_back(clean(node.get<std::string>("name", "")));
      for (const auto& [field, value] : node) {
        if (field == "arxiv:affiliation") r.affiliations.push_back(clean(value.data()));
      }
    }
    r.fetched_at = now_utc();
    return r;
  }
  throw ArxivError(ArxivErrorKind::NotFound, "no entry for " + id);
}

ClientOptions options_from_environment() {
  ClientOptions o;
  if (const char* url = std::getenv("TEXLOGIC_ARXIV_BASE_URL"); url && *url) o.base_url = url;
  if (const char* dir = std::getenv("TEXLOGIC_CACHE_DIR"); dir && *dir) o.cache_dir = dir;
  return o;
}

ArxivClient::ArxivClient(ClientOptions options)
    : options_(std::move(options)), cache_(options_.cache_dir, options_.cache_capacity) {}

std::size_t ArxivClient::network_calls() const {
  std::lock_guard<std::mutex> lock(request_);
  return network_calls_;
}

ArxivRecord ArxivClient::fetch(std::string_view raw_id) {
  const std::string id = canonical_arxiv_id(raw_id);
  if (!is_valid_arxiv_id(id)) throw ArxivError(ArxivErrorKind::InvalidId, "invalid arXiv identifier '" + std::string(raw_id) + "'");
  if (auto hit = cache_.get(id)) return *hit;
  if (options_.offline) throw ArxivError(ArxivErrorKind::NotFound, id + " is not cached and the client is offline");

  std::string body;
  {
    std::lock_guard<std::mutex> lock(request_);
    if (auto hit = cache_.get(id)) return *hit;
    if (last_request_) {
      const auto ready = *last_request_ + options_.min_interval;
      std::this_thread::sleep_until(ready);
    }
    std::string host = options_.base_url, prefix;
    const std::size_t scheme = host.find("://");
    const std::size_t slash = host.find('/', scheme == std::string::npos ? 0 : scheme + 3);
    if (slash != std::string::npos) {
      prefix = host.substr(slash);
      host.resize(slash);
      while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
    }
    httplib::Client client(host);
    client.set_connection_timeout(options_.timeout);
    client.set_read_timeout(options_.timeout);
    client.set_follow_location(true);
    ++network_calls_;
    auto result = client.Get(prefix + "/api/query?id_list=" + id);
    last_request_ = std::chrono::steady_clock::now();
    if (!result) {
      throw ArxivError(ArxivErrorKind::Transport, "request for " + id + " failed: " + httplib::to_string(result.error()));
    }
    if (result->status == 404) throw ArxivError(ArxivErrorKind::NotFound, id + " not found");
    if (result->status != 200) {
      throw ArxivError(ArxivErrorKind::Transport, "request for " + id + " returned HTTP " + std::to_string(result->status));
    }
    body = result->body;
  }
  ArxivRecord record = parse_atom(body, id);
  cache_.put(record);
  return record;
}

}  // namespace texlogic
