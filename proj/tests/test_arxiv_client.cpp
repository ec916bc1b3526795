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
#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "corpus.hpp"
#include "doctest.h"
#include "httplib.h"
#include "texlogic/arxiv_client.hpp"

using namespace texlogic;
namespace fs = std::filesystem;
using namespace std::chrono_literals;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / ("texlogic_arxiv_" + name)) {
    fs::remove_all(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string atom(const std::string& name) { return corpus::read(corpus::fixtures() / "atom" / name); }

ArxivRecord sample(const std::string& id) {
  ArxivRecord r;
  r.id = id;
  r.title = "Title of " + id;
  r.authors = {"Ana Silva", "Tomáš Novak"};
  r.abstract = "Abstract.";
  r.fetched_at = "2024-01-01T00:00:00Z";
  return r;
}

// Local stand-in for the query endpoint.
class FakeArxiv {
 public:
  FakeArxiv() {
    server_.Get("/api/query", [this](const httplib::Request& req, httplib::Response& res) {
      {
        std::lock_guard<std::mutex> lock(m_);
        arrivals_.push_back(std::chrono::steady_clock::now());
      }
      const std::string id = req.get_param_value("id_list");
      if (id == "2010.07788") {
        res.set_content(atom("ok.xml"), "application/atom+xml");
      } else if (id == "2001.00404") {
        res.status = 404;
      } else if (id == "2001.00500") {
        res.status = 500;
      } else if (id == "2001.00777") {
        res.set_content(atom("malformed.xml"), "application/atom+xml");
      } else {
        res.set_content(atom("error.xml"), "application/atom+xml");
      }
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~FakeArxiv() {
    server_.stop();
    thread_.join();
  }
  std::string url() const { return "http://127.0.0.1:" + std::to_string(port_); }
  std::vector<std::chrono::steady_clock::time_point> arrivals() {
    std::lock_guard<std::mutex> lock(m_);
    return arrivals_;
  }

 private:
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
  std::mutex m_;
  std::vector<std::chrono::steady_clock::time_point> arrivals_;
};

ClientOptions local(const std::string& url, const fs::path& cache) {
  ClientOptions o;
  o.base_url = url;
  o.cache_dir = cache;
  o.min_interval = 0ms;
  o.timeout = 5s;
  return o;
}

}  // namespace

TEST_CASE("identifier grammar") {
  for (const char* ok : {"0704.0001", "2101.12345", "2101.12345v3", "hep-th/9901001", "math.AG/0601001v2",
                         "cs/0703002"}) {
    CHECK_MESSAGE(is_valid_arxiv_id(ok), ok);
  }
  for (const char* bad : {"abc", "", "2113.00001", "21011.2345", "2101.123", "hep-th/990100", "HEP/9901001",
                          "math.ag/0601001", "2101.12345v", "2101.12345/x"}) {
    CHECK_FALSE_MESSAGE(is_valid_arxiv_id(bad), bad);
  }
  CHECK(canonical_arxiv_id("2101.12345v3") == "2101.12345");
  CHECK(canonical_arxiv_id("hep-th/9901001v2") == "hep-th/9901001");
}

TEST_CASE("an invalid id fails before any request") {
  TempDir cache("invalid");
  ArxivClient client(local("http://127.0.0.1:1", cache.path));
  try {
    client.fetch("abc");
    FAIL("expected InvalidId");
  } catch (const ArxivError& e) {
    CHECK(e.kind() == ArxivErrorKind::InvalidId);
  }
  CHECK(client.network_calls() == 0);
}

TEST_CASE("atom parsing") {
  const ArxivRecord r = parse_atom(atom("ok.xml"), "2010.07788v2");
  CHECK(r.id == "2010.07788");
  CHECK(r.title == "Odd Colorings of Sparse Planar Graphs");
  CHECK(r.authors == std::vector<std::string>{"Tomáš Novak", "Ulrike Schmidt"});
  CHECK(r.affiliations == std::vector<std::string>{"Charles University"});
  CHECK(r.abstract.starts_with("We show that every planar graph"));
  CHECK(r.abstract.find("Petruševski and Škrekovski.") != std::string::npos);
  CHECK(r.abstract.find('\n') == std::string::npos);
  CHECK_FALSE(r.fetched_at.empty());

  const auto kind_of = [](const std::string& file) {
    try {
      parse_atom(atom(file), "2001.00001");
    } catch (const ArxivError& e) {
      return e.kind();
    }
    return ArxivErrorKind::Storage;
  };
  CHECK(kind_of("error.xml") == ArxivErrorKind::NotFound);
  CHECK(kind_of("empty.xml") == ArxivErrorKind::NotFound);
  CHECK(kind_of("malformed.xml") == ArxivErrorKind::Parse);
  CHECK(std::string(to_string(ArxivErrorKind::Parse)) == "ParseError");
}

TEST_CASE("record json round trip") {
  const ArxivRecord r = sample("hep-th/9901001");
  CHECK(ArxivRecord::from_json(r.to_json()) == r);
}

TEST_CASE("cache put and get") {
  TempDir dir("cache");
  RecordCache cache(dir.path);
  CHECK(cache.size() == 0);
  CHECK_FALSE(cache.get("2101.00001"));
  const ArxivRecord r = sample("hep-th/9901001");
  cache.put(r);
  CHECK(cache.path_for("hep-th/9901001").filename() == "hep-th_9901001.json");
  REQUIRE(cache.get("hep-th/9901001"));
  CHECK(*cache.get("hep-th/9901001") == r);
  ArxivRecord changed = r;
  changed.title = "New";
  cache.put(changed);
  CHECK(cache.get("hep-th/9901001")->title == "New");
  CHECK(cache.size() == 1);
}

TEST_CASE("a thousand records stay cached") {
  TempDir dir("thousand");
  RecordCache cache(dir.path);
  for (int i = 0; i < 1000; ++i) {
    char id[16];
    std::snprintf(id, sizeof id, "2101.%05d", i);
    cache.put(sample(id));
  }
  CHECK(cache.size() == 1000);
  CHECK(cache.evictions() == 0);
  std::size_t hits = 0;
  for (int i = 0; i < 1000; ++i) {
    char id[16];
    std::snprintf(id, sizeof id, "2101.%05d", i);
    const auto r = cache.get(id);
    hits += r && r->title == std::string("Title of ") + id;
  }
  CHECK(hits == 1000);
}

TEST_CASE("a bounded cache evicts the oldest") {
  TempDir dir("bounded");
  RecordCache cache(dir.path, 3);
  for (int i = 0; i < 5; ++i) {
    cache.put(sample("2101.0000" + std::to_string(i)));
    std::this_thread::sleep_for(15ms);
  }
  CHECK(cache.size() == 3);
  CHECK(cache.evictions() == 2);
  CHECK_FALSE(cache.get("2101.00000"));
  CHECK_FALSE(cache.get("2101.00001"));
  CHECK(cache.get("2101.00004"));
}

TEST_CASE("concurrent readers see whole records") {
  TempDir dir("concurrent");
  RecordCache cache(dir.path);
  cache.put(sample("2101.00001"));
  std::atomic<bool> stop{false};
  std::atomic<int> bad{0};
  std::thread writer([&] {
    for (int i = 0; i < 200; ++i) {
      ArxivRecord r = sample("2101.00001");
      r.title = "Version " + std::to_string(i);
      cache.put(r);
    }
    stop = true;
  });
  std::thread reader([&] {
    while (!stop) {
      const auto r = cache.get("2101.00001");
      if (!r || r->authors.size() != 2) ++bad;
    }
  });
  writer.join();
  reader.join();
  CHECK(bad == 0);
}

TEST_CASE("environment overrides") {
  setenv("TEXLOGIC_ARXIV_BASE_URL", "http://127.0.0.1:9", 1);
  setenv("TEXLOGIC_CACHE_DIR", "/tmp/texlogic-env-cache", 1);
  const ClientOptions o = options_from_environment();
  CHECK(o.base_url == "http://127.0.0.1:9");
  CHECK(o.cache_dir == "/tmp/texlogic-env-cache");
  unsetenv("TEXLOGIC_ARXIV_BASE_URL");
  unsetenv("TEXLOGIC_CACHE_DIR");
  CHECK(options_from_environment().base_url == "https://export.arxiv.org");
}

TEST_CASE("fetch through a local server") {
  FakeArxiv server;
  TempDir dir("fetch");
  setenv("TEXLOGIC_ARXIV_BASE_URL", server.url().c_str(), 1);
  setenv("TEXLOGIC_CACHE_DIR", dir.path.c_str(), 1);
  ClientOptions o = options_from_environment();
  unsetenv("TEXLOGIC_ARXIV_BASE_URL");
  unsetenv("TEXLOGIC_CACHE_DIR");
  o.min_interval = 0ms;
  ArxivClient client(o);

  const ArxivRecord r = client.fetch("2010.07788v2");
  CHECK(r.title == "Odd Colorings of Sparse Planar Graphs");
  CHECK(client.network_calls() == 1);
  CHECK(client.fetch("2010.07788") == r);
  CHECK(client.network_calls() == 1);
  CHECK(fs::exists(dir.path / "2010.07788.json"));

  const auto kind_of = [&](const std::string& id) {
    try {
      client.fetch(id);
    } catch (const ArxivError& e) {
      return e.kind();
    }
    return ArxivErrorKind::Storage;
  };
  CHECK(kind_of("2001.00404") == ArxivErrorKind::NotFound);
  CHECK(kind_of("2001.00500") == ArxivErrorKind::Transport);
  CHECK(kind_of("2001.00777") == ArxivErrorKind::Parse);
  CHECK(kind_of("2001.00999") == ArxivErrorKind::NotFound);
  CHECK(client.network_calls() == 5);
  CHECK_FALSE(client.cache().get("2001.00404"));
}

TEST_CASE("a refused connection is a transport error") {
  int port = 0;
  {
    httplib::Server probe;
    port = probe.bind_to_any_port("127.0.0.1");
  }
  TempDir dir("refused");
  ClientOptions o = local("http://127.0.0.1:" + std::to_string(port), dir.path);
  o.timeout = 2s;
  ArxivClient client(o);
  try {
    client.fetch("2101.00001");
    FAIL("expected a transport error");
  } catch (const ArxivError& e) {
    CHECK(e.kind() == ArxivErrorKind::Transport);
  }
  CHECK(client.network_calls() == 1);
}

TEST_CASE("requests are spaced by the minimum interval") {
  FakeArxiv server;
  TempDir dir("spacing");
  ClientOptions o = local(server.url(), dir.path);
  o.min_interval = 150ms;
  ArxivClient client(o);
  std::vector<std::thread> threads;
  for (int i = 0; i < 4; ++i) {
    threads.emplace_back([&client, i] {
      try {
        client.fetch("2001.0090" + std::to_string(i));
      } catch (const ArxivError&) {
      }
    });
  }
  for (std::thread& t : threads) t.join();
  auto at = server.arrivals();
  REQUIRE(at.size() == 4);
  std::sort(at.begin(), at.end());
  for (std::size_t i = 1; i < at.size(); ++i) CHECK(at[i] - at[i - 1] >= 140ms);
  CHECK(client.network_calls() == 4);
}

TEST_CASE("offline clients read only the cache") {
  ClientOptions o;
  o.cache_dir = corpus::fixtures() / "records";
  o.offline = true;
  ArxivClient client(o);
  CHECK(client.fetch("hep-th/9901001v1").id == "hep-th/9901001");
  CHECK(client.fetch("2403.01234").authors.size() == 2);
  try {
    client.fetch("2101.00001");
    FAIL("expected NotFound");
  } catch (const ArxivError& e) {
    CHECK(e.kind() == ArxivErrorKind::NotFound);
  }
  CHECK(client.network_calls() == 0);
}
