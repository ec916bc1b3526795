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

#ifndef TEXLOGIC_H
#define TEXLOGIC_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  ifdef TEXLOGIC_BUILDING_LIBRARY
#    define TL_API __declspec(dllexport)
#  else
#    define TL_API __declspec(dllimport)
#  endif
#else
#  define TL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tl_status {
  TL_OK = 0,
  TL_ERR_INVALID_ARGUMENT = 1,
  TL_ERR_IO = 2,
  TL_ERR_OVERLAP = 3,
  TL_ERR_POLICY = 4,
  TL_ERR_NOT_LOGICAL = 5,
  TL_ERR_INVALID_ID = 6,
  TL_ERR_NOT_FOUND = 7,
  TL_ERR_TRANSPORT = 8,
  TL_ERR_PARSE = 9,
  TL_ERR_STORAGE = 10,
  TL_ERR_INTERNAL = 11
} tl_status;

typedef enum tl_class { TL_CLASS_LOGICAL = 0, TL_CLASS_MIXED = 1, TL_CLASS_VISUAL = 2 } tl_class;
typedef enum tl_verdict { TL_VERDICT_PASS = 0, TL_VERDICT_WARN = 1, TL_VERDICT_FAIL = 2 } tl_verdict;
typedef enum tl_scope { TL_SCOPE_METADATA_ONLY = 0, TL_SCOPE_FULL = 1 } tl_scope;
typedef enum tl_affiliation_command { TL_AFFILIATION_THANKS = 0, TL_AFFILIATION_COMMAND = 1 } tl_affiliation_command;
typedef enum tl_format { TL_FORMAT_HUMAN = 0, TL_FORMAT_MACHINE = 1 } tl_format;

/* Message for the last failed call on this thread; "" after success. */
TL_API const char* tl_last_error(void);
TL_API const char* tl_version(void);
TL_API const char* tl_status_name(tl_status status);
TL_API const char* tl_class_name(tl_class cls);
TL_API const char* tl_verdict_name(tl_verdict verdict);

/* Strings returned through char** are owned by the caller. */
TL_API void tl_free(char* text);

typedef struct tl_policy {
  tl_scope scope;
  tl_affiliation_command affiliation_command;
  double apply_threshold;
  int aggressive;
} tl_policy;

TL_API void tl_policy_default(tl_policy* policy);

typedef struct tl_thresholds {
  double title;
  double authors;
  double abstract;
} tl_thresholds;

TL_API void tl_thresholds_default(tl_thresholds* thresholds);

/* detection */
typedef struct tl_detection tl_detection;

TL_API tl_status tl_detect(const char* source, size_t size, tl_detection** out);
TL_API tl_class tl_detection_class(const tl_detection* detection);
TL_API double tl_detection_score(const tl_detection* detection);
TL_API size_t tl_detection_count(const tl_detection* detection);
TL_API tl_status tl_detection_report(const tl_detection* detection, const char* path, tl_format format, char** out);
TL_API void tl_detection_free(tl_detection* detection);

/* conversion */
typedef struct tl_conversion tl_conversion;

TL_API tl_status tl_convert(const char* source, size_t size, const tl_policy* policy, tl_conversion** out);
/* Borrowed; valid until tl_conversion_free. */
TL_API const char* tl_conversion_output(const tl_conversion* conversion, size_t* size);
TL_API size_t tl_conversion_edit_count(const tl_conversion* conversion);
TL_API size_t tl_conversion_applied_count(const tl_conversion* conversion);
TL_API size_t tl_conversion_skipped_count(const tl_conversion* conversion);
TL_API tl_class tl_conversion_class_before(const tl_conversion* conversion);
TL_API tl_class tl_conversion_class_after(const tl_conversion* conversion);
TL_API tl_status tl_conversion_report(const tl_conversion* conversion, const char* path, tl_format format, char** out);
TL_API void tl_conversion_free(tl_conversion* conversion);

/* arXiv records and client */
typedef struct tl_record tl_record;
typedef struct tl_arxiv_client tl_arxiv_client;

TL_API int tl_arxiv_id_valid(const char* id);
TL_API tl_status tl_arxiv_id_canonical(const char* id, char** out);
TL_API tl_status tl_record_from_json(const char* json, tl_record** out);
TL_API tl_status tl_record_to_json(const tl_record* record, char** out);
TL_API void tl_record_free(tl_record* record);

/* NULL base_url or cache_dir falls back to the environment, then defaults.
   min_interval_ms < 0 keeps the default spacing. */
TL_API tl_status tl_arxiv_client_new(const char* base_url, const char* cache_dir, int offline, long min_interval_ms,
                                     tl_arxiv_client** out);
TL_API tl_status tl_arxiv_fetch(tl_arxiv_client* client, const char* id, tl_record** out);
TL_API size_t tl_arxiv_network_calls(const tl_arxiv_client* client);
TL_API void tl_arxiv_client_free(tl_arxiv_client* client);

/* validation; the plan is recomputed by converting `original` under `policy` */
typedef struct tl_validation tl_validation;

TL_API tl_status tl_validate(const char* original, size_t original_size, const char* converted, size_t converted_size,
                             const tl_policy* policy, const tl_record* reference, const tl_thresholds* thresholds,
                             tl_validation** out);
TL_API tl_verdict tl_validation_verdict(const tl_validation* validation);
TL_API int tl_validation_body_preserved(const tl_validation* validation);
TL_API size_t tl_validation_structural_count(const tl_validation* validation);
TL_API tl_status tl_validation_report(const tl_validation* validation, const char* path, tl_format format, char** out);
TL_API void tl_validation_free(tl_validation* validation);

/* degradation; profiles are names such as "centerline-style" */
TL_API size_t tl_profile_count(void);
TL_API const char* tl_profile_name(size_t index);
TL_API tl_status tl_degrade(const char* source, size_t size, const char* const* profiles, size_t profile_count,
                            uint64_t seed, char** visual, char** truth_json);
/* Each set is a comma-separated profile list. */
TL_API tl_status tl_emit_pairs(const char* corpus, const char* out_dir, const char* const* profile_sets,
                               size_t set_count, const uint64_t* seeds, size_t seed_count, size_t* pairs,
                               size_t* skips);

/* unified diff, empty when equal */
TL_API tl_status tl_unified_diff(const char* before, size_t before_size, const char* after, size_t after_size,
                                 const char* label_before, const char* label_after, char** out);

#ifdef __cplusplus
}
#endif

#endif /* TEXLOGIC_H */
