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

#include "texlogic/texlogic.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <sstream>

#include "json.hpp"
#include "texlogic/arxiv_client.hpp"
#include "texlogic/converter.hpp"
#include "texlogic/degrader.hpp"
#include "texlogic/report.hpp"
#include "texlogic/validator.hpp"

struct tl_detection {
  texlogic::Analysis analysis;
  texlogic::FormattingClass cls;
};

struct tl_conversion {
  std::string source;
  std::string output;
  texlogic::ConversionReport report;
};

struct tl_record {
  texlogic::ArxivRecord record;
};

struct tl_arxiv_client {
  explicit tl_arxiv_client(texlogic::ClientOptions o) : client(std::move(o)) {}
  texlogic::ArxivClient client;
};

struct tl_validation {
  texlogic::ValidationReport report;
};

namespace {

thread_local std::string last_error;

tl_status fail(tl_status status, const std::string& message) {
  last_error = message;
  return status;
}

tl_status arxiv_status(texlogic::ArxivErrorKind kind) {
  switch (kind) {
    case texlogic::ArxivErrorKind::InvalidId: return TL_ERR_INVALID_ID;
    case texlogic::ArxivErrorKind::NotFound: return TL_ERR_NOT_FOUND;
    case texlogic::ArxivErrorKind::Transport: return TL_ERR_TRANSPORT;
    case texlogic::ArxivErrorKind::Parse: return TL_ERR_PARSE;
    case texlogic::ArxivErrorKind::Storage: return TL_ERR_STORAGE;
  }
  return TL_ERR_INTERNAL;
}

template <typename F>
tl_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return TL_OK;
  } catch (const texlogic::OverlapError& e) {
    return fail(TL_ERR_OVERLAP, e.what());
  } catch (const texlogic::PolicyViolation& e) {
    return fail(TL_ERR_POLICY, e.what());
  } catch (const texlogic::NotLogical& e) {
    return fail(TL_ERR_NOT_LOGICAL, e.what());
  } catch (const texlogic::ArxivError& e) {
    return fail(arxiv_status(e.kind()), e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(TL_ERR_PARSE, e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    return fail(TL_ERR_IO, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(TL_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(TL_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(TL_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(TL_ERR_INTERNAL, "unknown error");
  }
}

char* copy_out(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.data(), s.size());
  p[s.size()] = '\0';
  return p;
}

std::string bytes(const char* data, std::size_t size) {
  if (!data && size) throw std::invalid_argument("null source with nonzero size");
  return data ? std::string(data, size) : std::string();
}

tl_class class_of(texlogic::FormattingKind kind) {
  switch (kind) {
    case texlogic::FormattingKind::Logical: return TL_CLASS_LOGICAL;
    case texlogic::FormattingKind::Mixed: return TL_CLASS_MIXED;
    case texlogic::FormattingKind::Visual: return TL_CLASS_VISUAL;
  }
  return TL_CLASS_MIXED;
}

texlogic::ConversionPolicy policy_of(const tl_policy* p) {
  texlogic::ConversionPolicy policy;
  if (!p) return policy;
  if (p->scope != TL_SCOPE_METADATA_ONLY && p->scope != TL_SCOPE_FULL) throw std::invalid_argument("unknown scope");
  if (p->affiliation_command != TL_AFFILIATION_THANKS && p->affiliation_command != TL_AFFILIATION_COMMAND)
    throw std::invalid_argument("unknown affiliation command");
  if (!(p->apply_threshold >= 0.0 && p->apply_threshold <= 1.0))
    throw std::invalid_argument("apply threshold must lie in [0, 1]");
  policy.scope = p->scope == TL_SCOPE_FULL ? texlogic::Scope::Full : texlogic::Scope::MetadataOnly;
  policy.affiliation_command = p->affiliation_command == TL_AFFILIATION_THANKS ? texlogic::AffiliationCommand::Thanks
                                                                                : texlogic::AffiliationCommand::Affiliation;
  policy.apply_threshold = p->apply_threshold;
  policy.aggressive = p->aggressive != 0;
  return policy;
}

texlogic::ReportFormat format_of(tl_format f) {
  return f == TL_FORMAT_MACHINE ? texlogic::ReportFormat::Machine : texlogic::ReportFormat::Human;
}

std::vector<texlogic::Profile> profiles_of(const std::string& list) {
  std::vector<texlogic::Profile> out;
  std::stringstream in(list);
  std::string name;
  while (std::getline(in, name, ',')) {
    if (name.empty()) continue;
    auto p = texlogic::profile_from_string(name);
    if (!p) throw std::invalid_argument("unknown degradation profile '" + name + "'");
    out.push_back(*p);
  }
  return out;
}

template <typename T>
void require(T* p, const char* what) {
  if (!p) throw std::invalid_argument(std::string("null ") + what);
}

}  // namespace

extern "C" {

const char* tl_last_error(void) { return last_error.c_str(); }

const char* tl_version(void) { return TEXLOGIC_VERSION; }

const char* tl_status_name(tl_status status) {
  switch (status) {
    case TL_OK: return "ok";
    case TL_ERR_INVALID_ARGUMENT: return "invalid argument";
    case TL_ERR_IO: return "I/O error";
    case TL_ERR_OVERLAP: return "overlapping edits";
    case TL_ERR_POLICY: return "policy violation";
    case TL_ERR_NOT_LOGICAL: return "source is not logical";
    case TL_ERR_INVALID_ID: return "invalid arXiv identifier";
    case TL_ERR_NOT_FOUND: return "not found";
    case TL_ERR_TRANSPORT: return "transport error";
    case TL_ERR_PARSE: return "parse error";
    case TL_ERR_STORAGE: return "storage error";
    case TL_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* tl_class_name(tl_class cls) {
  switch (cls) {
    case TL_CLASS_LOGICAL: return "Logical";
    case TL_CLASS_MIXED: return "Mixed";
    case TL_CLASS_VISUAL: return "Visual";
  }
  return "?";
}

const char* tl_verdict_name(tl_verdict verdict) {
  switch (verdict) {
    case TL_VERDICT_PASS: return "Pass";
    case TL_VERDICT_WARN: return "Warn";
    case TL_VERDICT_FAIL: return "Fail";
  }
  return "?";
}

void tl_free(char* text) { std::free(text); }

void tl_policy_default(tl_policy* policy) {
  if (!policy) return;
  const texlogic::ConversionPolicy d;
  policy->scope = d.scope == texlogic::Scope::Full ? TL_SCOPE_FULL : TL_SCOPE_METADATA_ONLY;
  policy->affiliation_command =
      d.affiliation_command == texlogic::AffiliationCommand::Thanks ? TL_AFFILIATION_THANKS : TL_AFFILIATION_COMMAND;
  policy->apply_threshold = d.apply_threshold;
  policy->aggressive = d.aggressive ? 1 : 0;
}

void tl_thresholds_default(tl_thresholds* thresholds) {
  if (!thresholds) return;
  const texlogic::Thresholds d;
  thresholds->title = d.title;
  thresholds->authors = d.authors;
  thresholds->abstract = d.abstract;
}

tl_status tl_detect(const char* source, size_t size, tl_detection** out) {
  return guarded([&] {
    require(out, "output handle");
    *out = nullptr;
    const std::string text = bytes(source, size);
    auto d = std::make_unique<tl_detection>();
    d->analysis = texlogic::analyze(texlogic::parse(text));
    d->cls = texlogic::classify(d->analysis);
    *out = d.release();
  });
}

tl_class tl_detection_class(const tl_detection* d) { return d ? class_of(d->cls.kind) : TL_CLASS_LOGICAL; }
double tl_detection_score(const tl_detection* d) { return d ? d->cls.score : 0.0; }
size_t tl_detection_count(const tl_detection* d) { return d ? d->analysis.detections.size() : 0; }

tl_status tl_detection_report(const tl_detection* d, const char* path, tl_format format, char** out) {
  return guarded([&] {
    require(d, "detection");
    require(out, "output");
    *out = copy_out(texlogic::detection_report(path ? path : "-", d->analysis, d->cls, format_of(format)));
  });
}

void tl_detection_free(tl_detection* d) { delete d; }

tl_status tl_convert(const char* source, size_t size, const tl_policy* policy, tl_conversion** out) {
  return guarded([&] {
    require(out, "output handle");
    *out = nullptr;
    auto c = std::make_unique<tl_conversion>();
    c->source = bytes(source, size);
    auto [output, report] = texlogic::convert(c->source, policy_of(policy));
    c->output = std::move(output);
    c->report = std::move(report);
    *out = c.release();
  });
}

const char* tl_conversion_output(const tl_conversion* c, size_t* size) {
  if (!c) {
    if (size) *size = 0;
    return nullptr;
  }
  if (size) *size = c->output.size();
  return c->output.c_str();
}

size_t tl_conversion_edit_count(const tl_conversion* c) { return c ? c->report.plan.edits.size() : 0; }
size_t tl_conversion_applied_count(const tl_conversion* c) { return c ? c->report.applied.size() : 0; }
size_t tl_conversion_skipped_count(const tl_conversion* c) { return c ? c->report.skipped.size() : 0; }
tl_class tl_conversion_class_before(const tl_conversion* c) { return c ? class_of(c->report.before.kind) : TL_CLASS_LOGICAL; }
tl_class tl_conversion_class_after(const tl_conversion* c) { return c ? class_of(c->report.after.kind) : TL_CLASS_LOGICAL; }

tl_status tl_conversion_report(const tl_conversion* c, const char* path, tl_format format, char** out) {
  return guarded([&] {
    require(c, "conversion");
    require(out, "output");
    *out = copy_out(texlogic::conversion_report(path ? path : "-", c->source, c->output, c->report, format_of(format)));
  });
}

void tl_conversion_free(tl_conversion* c) { delete c; }

int tl_arxiv_id_valid(const char* id) { return id && texlogic::is_valid_arxiv_id(id) ? 1 : 0; }

tl_status tl_arxiv_id_canonical(const char* id, char** out) {
  return guarded([&] {
    require(id, "id");
    require(out, "output");
    if (!texlogic::is_valid_arxiv_id(id))
      throw texlogic::ArxivError(texlogic::ArxivErrorKind::InvalidId, std::string("invalid arXiv identifier '") + id + "'");
    *out = copy_out(texlogic::canonical_arxiv_id(id));
  });
}

tl_status tl_record_from_json(const char* json, tl_record** out) {
  return guarded([&] {
    require(json, "json");
    require(out, "output handle");
    *out = nullptr;
    auto r = std::make_unique<tl_record>();
    r->record = texlogic::ArxivRecord::from_json(json);
    *out = r.release();
  });
}

tl_status tl_record_to_json(const tl_record* record, char** out) {
  return guarded([&] {
    require(record, "record");
    require(out, "output");
    *out = copy_out(record->record.to_json());
  });
}

void tl_record_free(tl_record* record) { delete record; }

tl_status tl_arxiv_client_new(const char* base_url, const char* cache_dir, int offline, long min_interval_ms,
                              tl_arxiv_client** out) {
  return guarded([&] {
    require(out, "output handle");
    *out = nullptr;
    texlogic::ClientOptions o = texlogic::options_from_environment();
    if (base_url) o.base_url = base_url;
    if (cache_dir) o.cache_dir = cache_dir;
    if (min_interval_ms >= 0) o.min_interval = std::chrono::milliseconds(min_interval_ms);
    o.offline = offline != 0;
    *out = new tl_arxiv_client(std::move(o));
  });
}

tl_status tl_arxiv_fetch(tl_arxiv_client* client, const char* id, tl_record** out) {
  return guarded([&] {
    require(client, "client");
    require(id, "id");
    require(out, "output handle");
    *out = nullptr;
    auto r = std::make_unique<tl_record>();
    r->record = client->client.fetch(id);
    *out = r.release();
  });
}

size_t tl_arxiv_network_calls(const tl_arxiv_client* client) { return client ? client->client.network_calls() : 0; }

void tl_arxiv_client_free(tl_arxiv_client* client) { delete client; }

tl_status tl_validate(const char* original, size_t original_size, const char* converted, size_t converted_size,
                      const tl_policy* policy, const tl_record* reference, const tl_thresholds* thresholds,
                      tl_validation** out) {
  return guarded([&] {
    require(out, "output handle");
    *out = nullptr;
    const std::string before = bytes(original, original_size);
    const std::string after = bytes(converted, converted_size);
    texlogic::Thresholds t;
    if (thresholds) t = {thresholds->title, thresholds->authors, thresholds->abstract};
    const texlogic::RewritePlan plan = texlogic::convert(before, policy_of(policy)).second.plan;
    std::optional<texlogic::ArxivRecord> ref;
    if (reference) ref = reference->record;
    auto v = std::make_unique<tl_validation>();
    v->report = texlogic::validate(before, after, plan, ref, t);
    *out = v.release();
  });
}

tl_verdict tl_validation_verdict(const tl_validation* v) {
  if (!v) return TL_VERDICT_FAIL;
  switch (v->report.verdict) {
    case texlogic::Verdict::Pass: return TL_VERDICT_PASS;
    case texlogic::Verdict::Warn: return TL_VERDICT_WARN;
    case texlogic::Verdict::Fail: return TL_VERDICT_FAIL;
  }
  return TL_VERDICT_FAIL;
}

int tl_validation_body_preserved(const tl_validation* v) { return v && v->report.body_preserved ? 1 : 0; }
size_t tl_validation_structural_count(const tl_validation* v) { return v ? v->report.structural.size() : 0; }

tl_status tl_validation_report(const tl_validation* v, const char* path, tl_format format, char** out) {
  return guarded([&] {
    require(v, "validation");
    require(out, "output");
    *out = copy_out(texlogic::validation_report(path ? path : "-", v->report, format_of(format)));
  });
}

void tl_validation_free(tl_validation* v) { delete v; }

size_t tl_profile_count(void) { return texlogic::all_profiles().size(); }

const char* tl_profile_name(size_t index) {
  const auto& all = texlogic::all_profiles();
  return index < all.size() ? texlogic::to_string(all[index]) : nullptr;
}

tl_status tl_degrade(const char* source, size_t size, const char* const* profiles, size_t profile_count, uint64_t seed,
                     char** visual, char** truth_json) {
  return guarded([&] {
    require(visual, "visual output");
    *visual = nullptr;
    if (truth_json) *truth_json = nullptr;
    if (profile_count && !profiles) throw std::invalid_argument("null profile list");
    std::vector<texlogic::Profile> set;
    for (size_t i = 0; i < profile_count; ++i) {
      require(profiles[i], "profile name");
      for (texlogic::Profile p : profiles_of(profiles[i])) set.push_back(p);
    }
    const texlogic::Degraded d = texlogic::degrade(bytes(source, size), set, seed);
    char* v = copy_out(d.source);
    if (truth_json) {
      try {
        *truth_json = copy_out(d.truth.to_json());
      } catch (...) {
        std::free(v);
        throw;
      }
    }
    *visual = v;
  });
}

tl_status tl_emit_pairs(const char* corpus, const char* out_dir, const char* const* profile_sets, size_t set_count,
                        const uint64_t* seeds, size_t seed_count, size_t* pairs, size_t* skips) {
  return guarded([&] {
    require(corpus, "corpus");
    require(out_dir, "output directory");
    if (set_count && !profile_sets) throw std::invalid_argument("null profile sets");
    if (seed_count && !seeds) throw std::invalid_argument("null seeds");
    if (!std::filesystem::exists(corpus)) {
      throw std::filesystem::filesystem_error("corpus not found", corpus, std::make_error_code(std::errc::no_such_file_or_directory));
    }
    std::vector<std::vector<texlogic::Profile>> sets;
    for (size_t i = 0; i < set_count; ++i) {
      require(profile_sets[i], "profile set");
      sets.push_back(profiles_of(profile_sets[i]));
    }
    const std::vector<uint64_t> seed_list(seeds, seeds + seed_count);
    const texlogic::Manifest m = texlogic::emit_pairs(corpus, out_dir, sets, seed_list);
    if (pairs) *pairs = m.pairs();
    if (skips) *skips = m.skips();
  });
}

tl_status tl_unified_diff(const char* before, size_t before_size, const char* after, size_t after_size,
                          const char* label_before, const char* label_after, char** out) {
  return guarded([&] {
    require(out, "output");
    *out = copy_out(texlogic::unified_diff(bytes(before, before_size), bytes(after, after_size),
                                           label_before ? label_before : "a", label_after ? label_after : "b"));
  });
}

}  // extern "C"
