// Copyright 2026 The mimkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/* C interface to mimkit. Every fallible call returns a mim_status; on
 * failure mim_last_error() describes the problem for the calling thread.
 * Strings returned through char** are owned by the caller and released with
 * mim_string_free. Handles are opaque and released with their _free call. */
#ifndef MIM_MIM_H
#define MIM_MIM_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define MIM_API __declspec(dllexport)
#else
#define MIM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mim_status {
  MIM_OK = 0,
  MIM_E_VALIDATION = 1, /* malformed input data */
  MIM_E_CONFIG = 2,     /* inconsistent configuration */
  MIM_E_IO = 3,         /* file or network failure */
  MIM_E_RUNTIME = 4,    /* anything else */
  MIM_E_ARGUMENT = 5    /* null or out-of-range argument */
} mim_status;

typedef struct mim_corpus mim_corpus;
typedef struct mim_ruleset mim_ruleset;
typedef struct mim_markov mim_markov;
typedef struct mim_lexicon mim_lexicon;
typedef struct mim_origin mim_origin;
typedef struct mim_proxy mim_proxy;

MIM_API const char* mim_version(void);
MIM_API const char* mim_last_error(void);
MIM_API const char* mim_status_name(mim_status status);
MIM_API void mim_string_free(char* s);

/* Corpus: JSON Lines of tweet documents. */
MIM_API mim_status mim_corpus_load(const char* path, mim_corpus** out);
/* require_parents = 0 tolerates comments whose parent is absent. */
MIM_API mim_status mim_corpus_parse(const char* text, size_t len, int require_parents, mim_corpus** out);
MIM_API size_t mim_corpus_size(const mim_corpus* corpus);
MIM_API mim_status mim_corpus_serialize(const mim_corpus* corpus, char** out_jsonl);
MIM_API void mim_corpus_free(mim_corpus* corpus);

/* Rulesets: {"rules": [...]}. */
MIM_API mim_status mim_ruleset_load(const char* path, mim_ruleset** out);
MIM_API mim_status mim_ruleset_parse(const char* text, size_t len, mim_ruleset** out);
MIM_API size_t mim_ruleset_size(const mim_ruleset* rules);
MIM_API void mim_ruleset_free(mim_ruleset* rules);

/* Order-1 Markov replacement model. */
MIM_API mim_status mim_markov_train(const mim_corpus* corpus, double smoothing, mim_markov** out);
MIM_API mim_status mim_markov_load(const char* path, mim_markov** out);
MIM_API mim_status mim_markov_save(const mim_markov* model, const char* path);
MIM_API mim_status mim_markov_to_json(const mim_markov* model, char** out_json);
MIM_API void mim_markov_free(mim_markov* model);

/* Valence lexicon for the detector. */
MIM_API mim_status mim_lexicon_load(const char* path, mim_lexicon** out);
MIM_API void mim_lexicon_free(mim_lexicon* lexicon);

/* Rewrites a corpus thread by thread. out_jsonl receives the perturbed
 * corpus; out_log (nullable) a JSON array of {tweet_id, edits} for every
 * thread that changed. replacer may be null unless a rule uses "&markov". */
MIM_API mim_status mim_perturb(const mim_corpus* corpus, const mim_ruleset* rules, const mim_markov* replacer,
                               char** out_jsonl, char** out_log);

/* Pairs delivered documents with originals by id and emits a JSON array of
 * {id, report} detection reports. */
MIM_API mim_status mim_detect(const mim_corpus* original, const mim_corpus* delivered, const mim_lexicon* lexicon,
                              char** out_json);

/* Suggested response for text; candidates are JSONL, keywords a JSON file. */
MIM_API mim_status mim_recommend(const char* text, const char* candidates_path, const char* keywords_path,
                                 double epsilon, uint64_t seed, char** out_json);

/* Kruskal-Wallis over groups given as a JSON array of numeric arrays. */
MIM_API mim_status mim_kruskal_wallis_json(const char* groups_json, char** out_json);
/* values holds the groups back to back; sizes[i] is the length of group i. */
MIM_API mim_status mim_kruskal_wallis(const double* values, const size_t* sizes, size_t groups, double* out_h,
                                      int* out_df, double* out_p);
MIM_API mim_status mim_chi_square_sf(double x, int df, double* out_p);

typedef struct mim_scenario_config {
  const char* corpus;
  const char* rules;
  const char* lexicon;
  const char* keywords;
  const char* candidates;
  const char* output; /* directory for report.json and report.txt; null skips writing */
  const char* target; /* root document id; null picks the scenario default */
  uint64_t seed;
  int wire; /* nonzero routes the sample through a live origin and proxy */
} mim_scenario_config;

/* name is "pilot" or "study". Paths left null default to the bundled asset
 * layout under assets_dir. *out_passed is the round-trip verdict. */
MIM_API mim_status mim_run_scenario(const char* name, const char* assets_dir, const mim_scenario_config* config,
                                    char** out_json, char** out_text, int* out_passed);

/* Servers bind "host:port" (port 0 picks one) and serve on a background
 * thread until stopped. */
MIM_API mim_status mim_origin_start(const mim_corpus* corpus, const char* bind, mim_origin** out);
MIM_API int mim_origin_port(const mim_origin* origin);
MIM_API void mim_origin_stop(mim_origin* origin);
MIM_API void mim_origin_wait(mim_origin* origin);
MIM_API void mim_origin_free(mim_origin* origin);

/* audit_path may be null to disable auditing. */
MIM_API mim_status mim_proxy_start(const char* upstream, const mim_ruleset* rules, const mim_markov* replacer,
                                   const char* audit_path, const char* bind, mim_proxy** out);
MIM_API int mim_proxy_port(const mim_proxy* proxy);
MIM_API void mim_proxy_stop(mim_proxy* proxy);
MIM_API void mim_proxy_wait(mim_proxy* proxy);
MIM_API void mim_proxy_free(mim_proxy* proxy);

#ifdef __cplusplus
}
#endif

#endif /* MIM_MIM_H */
