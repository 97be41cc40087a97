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

// mimkit command-line front end. Talks to the library through the C API only.
#include <csignal>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include <pthread.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "mim/mim.h"

#ifndef MIM_ASSET_DIR
#define MIM_ASSET_DIR "assets"
#endif

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

struct Failure {
  int code;
  std::string kind;
  std::string message;
};

int exit_code(mim_status s) {
  return s == MIM_E_VALIDATION || s == MIM_E_CONFIG || s == MIM_E_ARGUMENT ? kExitValidation : kExitRuntime;
}

void check(mim_status s) {
  if (s != MIM_OK) throw Failure{exit_code(s), mim_status_name(s), mim_last_error()};
}

void report_failure(const Failure& f) {
  nlohmann::ordered_json j;
  j["error"] = f.kind;
  j["message"] = f.message;
  std::cerr << j.dump() << std::endl;
}

struct CString {
  char* p = nullptr;
  ~CString() { mim_string_free(p); }
  std::string str() const { return p ? std::string(p) : std::string(); }
};

template <class T, void (*Free)(T*)>
struct Handle {
  T* p = nullptr;
  ~Handle() {
    if (p) Free(p);
  }
};
using Corpus = Handle<mim_corpus, mim_corpus_free>;
using Rules = Handle<mim_ruleset, mim_ruleset_free>;
using Markov = Handle<mim_markov, mim_markov_free>;
using Lexicon = Handle<mim_lexicon, mim_lexicon_free>;
using Origin = Handle<mim_origin, mim_origin_free>;
using Proxy = Handle<mim_proxy, mim_proxy_free>;

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kExitRuntime, "io", "cannot read '" + path + "'"};
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void emit(const std::string& data, const std::string& output) {
  if (output.empty()) {
    std::cout << data;
    std::cout.flush();
    return;
  }
  std::ofstream out(output, std::ios::binary | std::ios::trunc);
  out << data;
  if (!out) throw Failure{kExitRuntime, "io", "cannot write '" + output + "'"};
}

// Blocks SIGINT/SIGTERM in every thread so the main thread can sigwait.
sigset_t block_shutdown_signals() {
  sigset_t set;
  sigemptyset(&set);
  sigaddset(&set, SIGINT);
  sigaddset(&set, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &set, nullptr);
  return set;
}

void wait_for_signal(const sigset_t& set) {
  int sig = 0;
  sigwait(&set, &sig);
}

struct Globals {
  std::uint64_t seed = 0;
  std::string output;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mimkit: in-transit social media rewriting, detection and response toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Seed for seeded operations");
  app.add_option("--output", g.output, "Output file (directory for run-scenario)");

  std::function<void()> action;

  // perturb
  std::string p_corpus, p_rules, p_markov, p_log;
  auto* perturb = app.add_subcommand("perturb", "Rewrite a corpus with a ruleset");
  perturb->add_option("--corpus", p_corpus, "Input corpus (JSONL)")->required();
  perturb->add_option("--rules", p_rules, "Ruleset (JSON)")->required();
  perturb->add_option("--markov", p_markov, "Markov model for \"&markov\" rules");
  perturb->add_option("--log", p_log, "Write the ground-truth edit log here");
  perturb->callback([&] {
    action = [&] {
      Corpus c;
      Rules r;
      Markov m;
      check(mim_corpus_load(p_corpus.c_str(), &c.p));
      check(mim_ruleset_load(p_rules.c_str(), &r.p));
      if (!p_markov.empty()) check(mim_markov_load(p_markov.c_str(), &m.p));
      CString jsonl, log;
      check(mim_perturb(c.p, r.p, m.p, &jsonl.p, &log.p));
      emit(jsonl.str(), g.output);
      if (!p_log.empty()) emit(nlohmann::json::parse(log.str()).dump(2) + "\n", p_log);
    };
  });

  // detect
  std::string d_original, d_delivered, d_lexicon;
  auto* detect = app.add_subcommand("detect", "Recover edits between authentic and delivered documents");
  detect->add_option("--original", d_original, "Authentic corpus (JSONL)")->required();
  detect->add_option("--delivered", d_delivered, "Delivered corpus (JSONL)")->required();
  detect->add_option("--lexicon", d_lexicon, "Valence lexicon (JSON)")->required();
  detect->callback([&] {
    action = [&] {
      Corpus o, d;
      Lexicon l;
      check(mim_corpus_load(d_original.c_str(), &o.p));
      const std::string text = read_text(d_delivered);
      check(mim_corpus_parse(text.data(), text.size(), 0, &d.p));
      check(mim_lexicon_load(d_lexicon.c_str(), &l.p));
      CString out;
      check(mim_detect(o.p, d.p, l.p, &out.p));
      emit(nlohmann::json::parse(out.str()).dump(2) + "\n", g.output);
    };
  });

  // recommend
  std::string r_input, r_input_file, r_candidates, r_lexicons;
  double r_epsilon = 0.001;
  bool r_json = false;
  auto* recommend = app.add_subcommand("recommend", "Suggest a response to a post");
  auto* input_opt = recommend->add_option("--input", r_input, "Text to respond to");
  recommend->add_option("--input-file", r_input_file, "Read the text to respond to from a file")->excludes(input_opt);
  recommend->add_option("--candidates", r_candidates, "Response candidates (JSONL)")->required();
  recommend->add_option("--lexicons", r_lexicons, "Keyword lexicon (JSON)")->required();
  recommend->add_option("--epsilon", r_epsilon, "Jitter bound")->capture_default_str()->check(CLI::NonNegativeNumber);
  recommend->add_flag("--json", r_json, "Print the full result as JSON");
  recommend->callback([&] {
    action = [&] {
      std::string text = r_input_file.empty() ? r_input : read_text(r_input_file);
      CString out;
      check(mim_recommend(text.c_str(), r_candidates.c_str(), r_lexicons.c_str(), r_epsilon, g.seed, &out.p));
      const nlohmann::json j = nlohmann::json::parse(out.str());
      if (r_json) {
        emit(j.dump(2) + "\n", g.output);
        return;
      }
      std::ostringstream s;
      s << j["text"].get<std::string>() << "\n\n";
      char line[96];
      std::snprintf(line, sizeof line, "%-3s %-5s %-12s %10s %10s\n", "#", "stance", "rhetoric", "distance", "score");
      s << line;
      for (const auto& row : j["scores"]) {
        std::snprintf(line, sizeof line, "%-3zu %-5s %-12s %10.6f %10.6f%s\n", row["index"].get<std::size_t>(),
                      row["stance"].get<std::string>().c_str(), row["rhetoric"].get<std::string>().c_str(),
                      row["distance"].get<double>(), row["score"].get<double>(),
                      row["index"] == j["chosen"] ? "  <" : "");
        s << line;
      }
      emit(s.str(), g.output);
    };
  });

  // kw
  std::string k_groups;
  auto* kw = app.add_subcommand("kw", "Kruskal-Wallis H test");
  kw->add_option("--groups", k_groups, "JSON array of groups, inline or a file path")->required();
  kw->callback([&] {
    action = [&] {
      const std::string text = !k_groups.empty() && k_groups.front() == '[' ? k_groups : read_text(k_groups);
      CString out;
      check(mim_kruskal_wallis_json(text.c_str(), &out.p));
      emit(out.str() + "\n", g.output);
    };
  });

  // train-markov
  std::string t_corpus;
  double t_smoothing = 0.0;
  auto* train = app.add_subcommand("train-markov", "Train the replacement model");
  train->add_option("--corpus", t_corpus, "Training corpus (JSONL)")->required();
  train->add_option("--smoothing", t_smoothing, "Additive smoothing k")->capture_default_str();
  train->callback([&] {
    action = [&] {
      Corpus c;
      Markov m;
      check(mim_corpus_load(t_corpus.c_str(), &c.p));
      check(mim_markov_train(c.p, t_smoothing, &m.p));
      if (g.output.empty()) {
        CString out;
        check(mim_markov_to_json(m.p, &out.p));
        emit(nlohmann::json::parse(out.str()).dump(2) + "\n", "");
      } else {
        check(mim_markov_save(m.p, g.output.c_str()));
      }
    };
  });

  // serve
  std::string s_corpus, s_bind = "127.0.0.1:8080";
  auto* serve = app.add_subcommand("serve", "Run the authentic origin");
  serve->add_option("--corpus", s_corpus, "Corpus to serve (JSONL)")->required();
  serve->add_option("--bind", s_bind, "host:port")->capture_default_str();
  serve->callback([&] {
    action = [&] {
      const sigset_t set = block_shutdown_signals();
      Corpus c;
      Origin o;
      check(mim_corpus_load(s_corpus.c_str(), &c.p));
      check(mim_origin_start(c.p, s_bind.c_str(), &o.p));
      std::cout << "origin listening on port " << mim_origin_port(o.p) << std::endl;
      wait_for_signal(set);
      mim_origin_stop(o.p);
      mim_origin_wait(o.p);
    };
  });

  // proxy
  std::string x_upstream, x_rules, x_audit, x_markov, x_bind = "127.0.0.1:8081";
  auto* proxy = app.add_subcommand("proxy", "Run the rewriting proxy");
  proxy->add_option("--upstream", x_upstream, "Origin host:port")->envname("MIM_UPSTREAM")->required();
  proxy->add_option("--rules", x_rules, "Ruleset (JSON)")->required();
  proxy->add_option("--audit", x_audit, "Append audit entries (JSONL) here");
  proxy->add_option("--markov", x_markov, "Markov model for \"&markov\" rules");
  proxy->add_option("--bind", x_bind, "host:port")->capture_default_str();
  proxy->callback([&] {
    action = [&] {
      const sigset_t set = block_shutdown_signals();
      Rules r;
      Markov m;
      Proxy p;
      check(mim_ruleset_load(x_rules.c_str(), &r.p));
      if (!x_markov.empty()) check(mim_markov_load(x_markov.c_str(), &m.p));
      check(mim_proxy_start(x_upstream.c_str(), r.p, m.p, x_audit.empty() ? nullptr : x_audit.c_str(),
                            x_bind.c_str(), &p.p));
      std::cout << "proxy listening on port " << mim_proxy_port(p.p) << std::endl;
      wait_for_signal(set);
      mim_proxy_stop(p.p);
      mim_proxy_wait(p.p);
    };
  });

  // run-scenario
  std::string sc_name, sc_assets = MIM_ASSET_DIR, sc_corpus, sc_rules, sc_lexicon, sc_keywords, sc_candidates,
                       sc_target;
  bool sc_wire = false;
  auto* scenario = app.add_subcommand("run-scenario", "Run the pilot or study scenario end to end");
  scenario->add_option("name", sc_name, "pilot or study")->required()->check(CLI::IsMember({"pilot", "study"}));
  scenario->add_option("--assets", sc_assets, "Bundled asset directory")->envname("MIM_ASSETS")->capture_default_str();
  scenario->add_option("--corpus", sc_corpus, "Override the corpus");
  scenario->add_option("--rules", sc_rules, "Override the ruleset");
  scenario->add_option("--lexicon", sc_lexicon, "Override the valence lexicon");
  scenario->add_option("--keywords", sc_keywords, "Override the keyword lexicon");
  scenario->add_option("--candidates", sc_candidates, "Override the response candidates");
  scenario->add_option("--target", sc_target, "Root document id");
  scenario->add_flag("--wire", sc_wire, "Route the sample through a live origin and proxy");
  scenario->callback([&] {
    action = [&] {
      auto opt = [](const std::string& s) { return s.empty() ? nullptr : s.c_str(); };
      mim_scenario_config c{};
      c.corpus = opt(sc_corpus);
      c.rules = opt(sc_rules);
      c.lexicon = opt(sc_lexicon);
      c.keywords = opt(sc_keywords);
      c.candidates = opt(sc_candidates);
      c.output = opt(g.output);
      c.target = opt(sc_target);
      c.seed = g.seed;
      c.wire = sc_wire ? 1 : 0;
      CString json, text;
      int passed = 0;
      check(mim_run_scenario(sc_name.c_str(), sc_assets.c_str(), &c, &json.p, &text.p, &passed));
      std::cout << (g.output.empty() ? json.str() : text.str());
      std::cout.flush();
      if (!passed) throw Failure{kExitRuntime, "runtime", "scenario round trip failed"};
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    report_failure({kExitValidation, "usage", e.what()});
    return kExitValidation;
  }

  try {
    if (action) action();
  } catch (const Failure& f) {
    report_failure(f);
    return f.code;
  } catch (const std::exception& e) {
    report_failure({kExitRuntime, "runtime", e.what()});
    return kExitRuntime;
  }
  return kExitOk;
}
