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

#include "mim/mim.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>

#include <json.hpp>

#include "common/error.hpp"
#include "corpus/corpus_io.hpp"
#include "detect/detector.hpp"
#include "detect/lexicon.hpp"
#include "markov/model.hpp"
#include "perturb/engine.hpp"
#include "perturb/rule.hpp"
#include "recommend/recommender.hpp"
#include "scenario/scenario.hpp"
#include "stats/kruskal_wallis.hpp"
#include "wire/wire.hpp"

struct mim_corpus {
  mim::corpus::Corpus docs;
};
struct mim_ruleset {
  mim::perturb::RuleSet rules;
};
struct mim_markov {
  mim::markov::Model model;
};
struct mim_lexicon {
  mim::detect::ValenceLexicon lexicon;
};
struct mim_origin {
  std::unique_ptr<mim::wire::OriginServer> server;
};
struct mim_proxy {
  std::unique_ptr<mim::wire::ProxyServer> server;
};

namespace {

thread_local std::string g_last_error;

struct ArgumentError {
  std::string message;
};

mim_status status_for(mim::ErrorKind kind) {
  switch (kind) {
    case mim::ErrorKind::validation:
      return MIM_E_VALIDATION;
    case mim::ErrorKind::config:
      return MIM_E_CONFIG;
    case mim::ErrorKind::io:
      return MIM_E_IO;
    case mim::ErrorKind::runtime:
      return MIM_E_RUNTIME;
  }
  return MIM_E_RUNTIME;
}

template <class F>
mim_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return MIM_OK;
  } catch (const ArgumentError& e) {
    g_last_error = e.message;
    return MIM_E_ARGUMENT;
  } catch (const mim::Error& e) {
    g_last_error = e.what();
    return status_for(e.kind());
  } catch (const nlohmann::json::exception& e) {
    g_last_error = e.what();
    return MIM_E_VALIDATION;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return MIM_E_RUNTIME;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return MIM_E_RUNTIME;
  } catch (...) {
    g_last_error = "unknown error";
    return MIM_E_RUNTIME;
  }
}

template <class T>
void need(const T* p, const char* name) {
  if (!p) throw ArgumentError{std::string(name) + " must not be null"};
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size());
  out[s.size()] = '\0';
  return out;
}

}  // namespace

extern "C" {

const char* mim_version(void) { return "0.1.0"; }

const char* mim_last_error(void) { return g_last_error.c_str(); }

const char* mim_status_name(mim_status status) {
  switch (status) {
    case MIM_OK:
      return "ok";
    case MIM_E_VALIDATION:
      return "validation";
    case MIM_E_CONFIG:
      return "config";
    case MIM_E_IO:
      return "io";
    case MIM_E_RUNTIME:
      return "runtime";
    case MIM_E_ARGUMENT:
      return "argument";
  }
  return "unknown";
}

void mim_string_free(char* s) { std::free(s); }

mim_status mim_corpus_load(const char* path, mim_corpus** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = new mim_corpus{mim::corpus::load_corpus(path)};
  });
}

mim_status mim_corpus_parse(const char* text, size_t len, int require_parents, mim_corpus** out) {
  return guarded([&] {
    need(out, "out");
    if (!text && len) throw ArgumentError{"text must not be null"};
    mim::corpus::ParseOptions options;
    options.require_parents = require_parents != 0;
    *out = new mim_corpus{mim::corpus::parse_corpus(std::string_view(text ? text : "", len), options)};
  });
}

size_t mim_corpus_size(const mim_corpus* corpus) { return corpus ? corpus->docs.size() : 0; }

mim_status mim_corpus_serialize(const mim_corpus* corpus, char** out_jsonl) {
  return guarded([&] {
    need(corpus, "corpus");
    need(out_jsonl, "out_jsonl");
    *out_jsonl = dup(mim::corpus::serialize_corpus(corpus->docs));
  });
}

void mim_corpus_free(mim_corpus* corpus) { delete corpus; }

mim_status mim_ruleset_load(const char* path, mim_ruleset** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = new mim_ruleset{mim::perturb::load_ruleset(path)};
  });
}

mim_status mim_ruleset_parse(const char* text, size_t len, mim_ruleset** out) {
  return guarded([&] {
    need(text, "text");
    need(out, "out");
    *out = new mim_ruleset{mim::perturb::parse_ruleset(std::string_view(text, len))};
  });
}

size_t mim_ruleset_size(const mim_ruleset* rules) { return rules ? rules->rules.size() : 0; }

void mim_ruleset_free(mim_ruleset* rules) { delete rules; }

mim_status mim_markov_train(const mim_corpus* corpus, double smoothing, mim_markov** out) {
  return guarded([&] {
    need(corpus, "corpus");
    need(out, "out");
    *out = new mim_markov{mim::markov::Model::train(corpus->docs, smoothing)};
  });
}

mim_status mim_markov_load(const char* path, mim_markov** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    const std::string text = mim::corpus::read_file(path);
    try {
      *out = new mim_markov{mim::markov::Model::from_json(nlohmann::json::parse(text))};
    } catch (const nlohmann::json::parse_error& e) {
      throw mim::validation_error(std::string(path) + ": malformed JSON: " + e.what());
    } catch (const mim::Error& e) {
      throw mim::Error(e.kind(), std::string(path) + ": " + e.what());
    }
  });
}

mim_status mim_markov_save(const mim_markov* model, const char* path) {
  return guarded([&] {
    need(model, "model");
    need(path, "path");
    mim::corpus::write_file(path, model->model.to_json().dump(2) + "\n");
  });
}

mim_status mim_markov_to_json(const mim_markov* model, char** out_json) {
  return guarded([&] {
    need(model, "model");
    need(out_json, "out_json");
    *out_json = dup(model->model.to_json().dump());
  });
}

void mim_markov_free(mim_markov* model) { delete model; }

mim_status mim_lexicon_load(const char* path, mim_lexicon** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = new mim_lexicon{mim::detect::ValenceLexicon::load(path)};
  });
}

void mim_lexicon_free(mim_lexicon* lexicon) { delete lexicon; }

mim_status mim_perturb(const mim_corpus* corpus, const mim_ruleset* rules, const mim_markov* replacer,
                       char** out_jsonl, char** out_log) {
  return guarded([&] {
    need(corpus, "corpus");
    need(rules, "rules");
    need(out_jsonl, "out_jsonl");
    const mim::perturb::FeedRewrite rw =
        mim::perturb::apply_ruleset_to_feed(corpus->docs, rules->rules, replacer ? &replacer->model : nullptr);
    std::string log;
    if (out_log) {
      nlohmann::ordered_json entries = nlohmann::ordered_json::array();
      for (const mim::perturb::Rewrite& t : rw.threads) {
        if (t.log.empty()) continue;
        nlohmann::ordered_json e;
        e["tweet_id"] = t.thread.root.id;
        e["edits"] = mim::perturb::to_json(t.log);
        entries.push_back(e);
      }
      log = entries.dump();
    }
    char* jsonl = dup(mim::corpus::serialize_corpus(rw.docs));
    if (out_log) {
      try {
        *out_log = dup(log);
      } catch (...) {
        std::free(jsonl);
        throw;
      }
    }
    *out_jsonl = jsonl;
  });
}

mim_status mim_detect(const mim_corpus* original, const mim_corpus* delivered, const mim_lexicon* lexicon,
                      char** out_json) {
  return guarded([&] {
    need(original, "original");
    need(delivered, "delivered");
    need(lexicon, "lexicon");
    need(out_json, "out_json");
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (const mim::corpus::TweetDocument& d : delivered->docs) {
      const mim::corpus::TweetDocument* o = mim::corpus::find_document(original->docs, d.id);
      if (!o) throw mim::validation_error("delivered document '" + d.id + "' has no original");
      nlohmann::ordered_json row;
      row["id"] = d.id;
      row["report"] = mim::detect::to_json(mim::detect::detect(*o, d, lexicon->lexicon));
      out.push_back(row);
    }
    *out_json = dup(out.dump());
  });
}

mim_status mim_recommend(const char* text, const char* candidates_path, const char* keywords_path, double epsilon,
                         uint64_t seed, char** out_json) {
  return guarded([&] {
    need(text, "text");
    need(candidates_path, "candidates_path");
    need(keywords_path, "keywords_path");
    need(out_json, "out_json");
    const auto candidates = mim::recommend::load_candidates(candidates_path);
    const auto keywords = mim::recommend::load_keywords(keywords_path);
    const auto rec = mim::recommend::recommend(text, candidates, keywords, epsilon, seed);
    *out_json = dup(mim::recommend::to_json(rec, candidates).dump());
  });
}

mim_status mim_kruskal_wallis_json(const char* groups_json, char** out_json) {
  return guarded([&] {
    need(groups_json, "groups_json");
    need(out_json, "out_json");
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(groups_json);
    } catch (const nlohmann::json::parse_error& e) {
      throw mim::validation_error(std::string("groups: malformed JSON: ") + e.what());
    }
    const auto result = mim::stats::kruskal_wallis(mim::stats::groups_from_json(j));
    *out_json = dup(mim::stats::to_json(result).dump());
  });
}

mim_status mim_kruskal_wallis(const double* values, const size_t* sizes, size_t groups, double* out_h, int* out_df,
                              double* out_p) {
  return guarded([&] {
    need(sizes, "sizes");
    std::vector<std::vector<double>> data(groups);
    size_t offset = 0;
    for (size_t g = 0; g < groups; ++g) {
      if (sizes[g]) need(values, "values");
      data[g].assign(values + offset, values + offset + sizes[g]);
      offset += sizes[g];
    }
    const auto result = mim::stats::kruskal_wallis(data);
    if (out_h) *out_h = result.h;
    if (out_df) *out_df = result.df;
    if (out_p) *out_p = result.p;
  });
}

mim_status mim_chi_square_sf(double x, int df, double* out_p) {
  return guarded([&] {
    need(out_p, "out_p");
    *out_p = mim::stats::chi_square_sf(x, df);
  });
}

mim_status mim_run_scenario(const char* name, const char* assets_dir, const mim_scenario_config* config,
                            char** out_json, char** out_text, int* out_passed) {
  return guarded([&] {
    need(name, "name");
    const mim::scenario::Name which = mim::scenario::name_from_string(name);
    mim::scenario::ScenarioConfig c =
        mim::scenario::bundled_config(which, assets_dir ? std::filesystem::path(assets_dir) : std::filesystem::path());
    if (config) {
      if (config->corpus) c.corpus = config->corpus;
      if (config->rules) c.rules = config->rules;
      if (config->lexicon) c.lexicon = config->lexicon;
      if (config->keywords) c.keywords = config->keywords;
      if (config->candidates) c.candidates = config->candidates;
      if (config->output) c.output = config->output;
      if (config->target) c.target = config->target;
      c.seed = config->seed;
      c.wire = config->wire != 0;
    }
    const mim::scenario::ScenarioReport report = mim::scenario::run_scenario(which, c);
    char* json = out_json ? dup(report.json.dump(2) + "\n") : nullptr;
    char* text = nullptr;
    if (out_text) {
      try {
        text = dup(report.text);
      } catch (...) {
        std::free(json);
        throw;
      }
    }
    if (out_json) *out_json = json;
    if (out_text) *out_text = text;
    if (out_passed) *out_passed = report.round_trip ? 1 : 0;
  });
}

mim_status mim_origin_start(const mim_corpus* corpus, const char* bind, mim_origin** out) {
  return guarded([&] {
    need(corpus, "corpus");
    need(out, "out");
    auto handle = std::make_unique<mim_origin>();
    handle->server = std::make_unique<mim::wire::OriginServer>(corpus->docs);
    handle->server->start(bind ? mim::wire::Endpoint::parse(bind) : mim::wire::Endpoint{});
    *out = handle.release();
  });
}

int mim_origin_port(const mim_origin* origin) { return origin ? origin->server->port() : -1; }
void mim_origin_stop(mim_origin* origin) {
  if (origin) origin->server->stop();
}
void mim_origin_wait(mim_origin* origin) {
  if (origin) origin->server->wait();
}
void mim_origin_free(mim_origin* origin) { delete origin; }

mim_status mim_proxy_start(const char* upstream, const mim_ruleset* rules, const mim_markov* replacer,
                           const char* audit_path, const char* bind, mim_proxy** out) {
  return guarded([&] {
    need(upstream, "upstream");
    need(rules, "rules");
    need(out, "out");
    mim::wire::ProxyConfig config;
    config.upstream = mim::wire::Endpoint::parse(upstream);
    config.rules = rules->rules;
    if (replacer) config.replacer = replacer->model;
    if (audit_path) config.audit_path = audit_path;
    auto handle = std::make_unique<mim_proxy>();
    handle->server = std::make_unique<mim::wire::ProxyServer>(std::move(config));
    handle->server->start(bind ? mim::wire::Endpoint::parse(bind) : mim::wire::Endpoint{});
    *out = handle.release();
  });
}

int mim_proxy_port(const mim_proxy* proxy) { return proxy ? proxy->server->port() : -1; }
void mim_proxy_stop(mim_proxy* proxy) {
  if (proxy) proxy->server->stop();
}
void mim_proxy_wait(mim_proxy* proxy) {
  if (proxy) proxy->server->wait();
}
void mim_proxy_free(mim_proxy* proxy) { delete proxy; }

}  // extern "C"
