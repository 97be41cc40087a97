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

#include "scenario/scenario.hpp"

#include <algorithm>
#include <sstream>

#include <httplib.h>

#include "common/error.hpp"
#include "corpus/corpus_io.hpp"
#include "detect/detector.hpp"
#include "detect/lexicon.hpp"
#include "markov/model.hpp"
#include "perturb/engine.hpp"
#include "recommend/recommender.hpp"
#include "wire/wire.hpp"

namespace mim::scenario {

namespace {

using ojson = nlohmann::ordered_json;

struct Inputs {
  corpus::Corpus corpus;
  perturb::RuleSet rules;
  detect::ValenceLexicon lexicon;
  recommend::KeywordLexicon keywords;
  std::vector<recommend::ResponseCandidate> candidates;
};

void require_file(const std::filesystem::path& path, const char* role) {
  if (path.empty()) throw validation_error(std::string(role) + " path is not set");
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) {
    throw io_error(std::string(role) + " file '" + path.string() + "' does not exist");
  }
}

Inputs load_inputs(const ScenarioConfig& config) {
  require_file(config.corpus, "corpus");
  require_file(config.rules, "rules");
  require_file(config.lexicon, "lexicon");
  require_file(config.keywords, "keywords");
  require_file(config.candidates, "candidates");
  Inputs in;
  in.corpus = corpus::load_corpus(config.corpus);
  in.rules = perturb::load_ruleset(config.rules);
  in.lexicon = detect::ValenceLexicon::load(config.lexicon);
  in.keywords = recommend::load_keywords(config.keywords);
  if (in.keywords.pro.empty() || in.keywords.anti.empty()) {
    throw config_error(config.keywords.string() + ": both pro and anti keyword lists must be non-empty");
  }
  in.candidates = recommend::load_candidates(config.candidates);
  if (in.candidates.empty()) throw validation_error(config.candidates.string() + ": no candidates");
  return in;
}

ojson survey_flow(Name name) {
  ojson j;
  j["simulated"] = false;
  if (name == Name::pilot) {
    j["design"] = "pilot";
    j["conditions"] = {"extension_off", "extension_on"};
    j["measures"] = {"perceived_stance", "noticed_modification"};
  } else {
    j["design"] = "between_subjects";
    j["conditions"] = {"authentic", "manipulated"};
    j["participant_grouping"] = {"attitude_certainty", "issue_importance"};
    j["measures"] = {"opinion_expression_strategy", "opinion_expression_action"};
  }
  return j;
}

std::string metrics_text(const corpus::Metrics& m) {
  return std::to_string(m.replies) + "/" + std::to_string(m.retweets) + "/" + std::to_string(m.likes);
}

std::string edit_text(const perturb::Edit& e) {
  std::ostringstream out;
  out << perturb::to_string(e.op);
  if (e.location.is_root()) {
    out << " root";
  } else {
    out << " comment " << e.location.comment_id;
  }
  out << " " << perturb::to_string(e.field);
  if (e.token_index) out << "[" << *e.token_index << "]";
  if (e.field == perturb::Field::metrics) {
    out << " " << metrics_text(std::get<corpus::Metrics>(e.original)) << " -> "
        << metrics_text(std::get<corpus::Metrics>(e.replacement));
  } else {
    const std::string& from = e.original_text();
    const std::string& to = e.replacement_text();
    if (!from.empty()) out << " '" << from << "'";
    if (!from.empty() && !to.empty()) out << " ->";
    if (!to.empty()) out << " '" << to << "'";
  }
  return out.str();
}

// Fetches the whole feed through a live proxy in front of a live origin.
corpus::Corpus fetch_over_wire(const Inputs& in, const std::filesystem::path& audit) {
  wire::OriginServer origin(in.corpus);
  origin.start({});
  wire::ProxyConfig pc;
  pc.upstream = {"127.0.0.1", origin.port()};
  pc.rules = in.rules;
  if (std::any_of(in.rules.begin(), in.rules.end(), [](const auto& r) { return r.uses_markov(); })) {
    pc.replacer = markov::Model::train(in.corpus);
  }
  pc.audit_path = audit;
  wire::ProxyServer proxy(std::move(pc));
  proxy.start({});

  corpus::Corpus delivered;
  std::string failure;
  std::thread client([&] {
    httplib::Client cli("127.0.0.1", proxy.port());
    httplib::Result res = cli.Get("/feed");
    if (!res) {
      failure = "proxy unreachable";
    } else if (res->status != 200) {
      failure = "proxy answered " + std::to_string(res->status);
    } else {
      try {
        delivered = corpus::parse_corpus(res->body);
      } catch (const Error& e) {
        failure = std::string("proxy payload: ") + e.what();
      }
    }
  });
  client.join();
  proxy.stop();
  origin.stop();
  proxy.wait();
  origin.wait();
  if (!failure.empty()) throw runtime_failure(failure);
  return delivered;
}

}  // namespace

const char* to_string(Name name) noexcept { return name == Name::pilot ? "pilot" : "study"; }

Name name_from_string(std::string_view text) {
  if (text == "pilot") return Name::pilot;
  if (text == "study") return Name::study;
  throw validation_error("unknown scenario '" + std::string(text) + "' (expected pilot or study)");
}

const char* default_target(Name name) noexcept { return name == Name::pilot ? "pilot-original" : "study-original"; }

ScenarioConfig bundled_config(Name name, const std::filesystem::path& assets) {
  ScenarioConfig c;
  c.corpus = assets / "corpus" / "sample.jsonl";
  c.rules = assets / "rules" / (std::string(to_string(name)) + ".json");
  c.lexicon = assets / "lexicon" / "valence.json";
  c.keywords = assets / "recommend" / "keywords.json";
  c.candidates = assets / "recommend" / "candidates.jsonl";
  return c;
}

ScenarioReport run_scenario(Name name, const ScenarioConfig& config) {
  const Inputs in = load_inputs(config);
  const std::string target = config.target.empty() ? default_target(name) : config.target;

  const perturb::ThreadIndex index = perturb::group_threads(in.corpus);
  auto found = std::find_if(index.threads.begin(), index.threads.end(),
                            [&](const perturb::Thread& t) { return t.root.id == target; });
  if (found == index.threads.end()) {
    throw validation_error(config.corpus.string() + ": no root document with id '" + target + "'");
  }
  const perturb::Thread& original = *found;

  std::optional<markov::Model> model;
  if (std::any_of(in.rules.begin(), in.rules.end(), [](const auto& r) { return r.uses_markov(); })) {
    model = markov::Model::train(in.corpus);
  }
  const perturb::Rewrite truth = perturb::apply_ruleset(original, in.rules, model ? &*model : nullptr);

  if (!config.output.empty()) std::filesystem::create_directories(config.output);
  perturb::Thread delivered = truth.thread;
  bool wire_consistent = true;
  if (config.wire) {
    const std::filesystem::path audit = config.output.empty() ? std::filesystem::path() : config.output / "audit.jsonl";
    if (!audit.empty()) std::filesystem::remove(audit);
    const corpus::Corpus fetched = fetch_over_wire(in, audit);
    auto take = [&](const corpus::TweetDocument& doc) {
      const corpus::TweetDocument* got = corpus::find_document(fetched, doc.id);
      if (!got) throw runtime_failure("proxy payload lacks document '" + doc.id + "'");
      return *got;
    };
    delivered.root = take(original.root);
    for (std::size_t i = 0; i < original.comments.size(); ++i) delivered.comments[i] = take(original.comments[i]);
    wire_consistent = delivered == truth.thread;
  }

  // Detector sees each rendered document next to its authentic source.
  const detect::DetectionReport root_report = detect::detect(original.root, delivered.root, in.lexicon);
  bool recovered_ok = perturb::replay(original.root, root_report.edits) == delivered.root;
  ojson comment_reports = ojson::array();
  for (std::size_t i = 0; i < original.comments.size(); ++i) {
    const detect::DetectionReport r = detect::detect(original.comments[i], delivered.comments[i], in.lexicon);
    recovered_ok = recovered_ok && perturb::replay(original.comments[i], r.edits) == delivered.comments[i];
    if (r.edits.empty()) continue;
    ojson entry;
    entry["id"] = original.comments[i].id;
    entry["detection"] = detect::to_json(r);
    comment_reports.push_back(entry);
  }
  bool truth_ok = false;
  try {
    truth_ok = perturb::replay(original, truth.log) == delivered;
  } catch (const Error&) {
    truth_ok = false;
  }
  const bool round_trip = truth_ok && recovered_ok && wire_consistent;

  const recommend::Recommendation rec =
      recommend::recommend(delivered.root.body, in.candidates, in.keywords, recommend::kDefaultEpsilon, config.seed);

  ScenarioReport report;
  ojson& j = report.json;
  j["scenario"] = to_string(name);
  j["seed"] = config.seed;
  j["transport"] = config.wire ? "wire" : "in_process";
  j["target"] = target;
  j["original"] = corpus::to_json(original.root);
  j["perturbed"] = corpus::to_json(delivered.root);
  j["ground_truth"] = perturb::to_json(truth.log);
  j["detection"] = detect::to_json(root_report);
  j["comment_detections"] = comment_reports;
  ojson rt;
  rt["ground_truth_replay"] = truth_ok;
  rt["recovered_replay"] = recovered_ok;
  if (config.wire) rt["wire_matches_in_process"] = wire_consistent;
  rt["verdict"] = round_trip ? "pass" : "fail";
  j["round_trip"] = rt;
  j["suggested_response"] = recommend::to_json(rec, in.candidates);
  j["survey_flow"] = survey_flow(name);
  report.round_trip = round_trip;

  std::ostringstream txt;
  txt << "scenario: " << to_string(name) << " (" << (config.wire ? "wire" : "in-process") << ", seed " << config.seed
      << ")\n";
  txt << "target:   " << target << " by " << original.root.author << "\n";
  txt << "original:  " << original.root.body << "\n";
  txt << "perturbed: " << delivered.root.body << "\n";
  auto join = [](const std::vector<std::string>& v) {
    std::string s;
    for (const std::string& x : v) s += (s.empty() ? "" : " ") + x;
    return s;
  };
  txt << "hashtags:  " << join(original.root.hashtags) << " -> " << join(delivered.root.hashtags) << "\n";
  txt << "metrics:   " << metrics_text(original.root.metrics) << " -> " << metrics_text(delivered.root.metrics)
      << " (replies/retweets/likes)\n";
  txt << "ground-truth edits (" << truth.log.size() << "):\n";
  for (const perturb::Edit& e : truth.log) txt << "  " << edit_text(e) << "\n";
  txt << "recovered edits (" << root_report.edits.size() << "):\n";
  for (const perturb::Edit& e : root_report.edits) txt << "  " << edit_text(e) << "\n";
  txt << "metric factor:     " << (root_report.metric_factor ? root_report.metric_factor->to_string() : "none") << "\n";
  txt << "hashtag flips:     " << root_report.hashtag_flips.size() << "\n";
  txt << "valence inversion: " << (root_report.valence_inversion ? "yes" : "no") << "\n";
  txt << "severity:          " << root_report.severity << "\n";
  txt << "round trip:        " << (round_trip ? "pass" : "fail") << "\n";
  txt << "suggested reply:   [" << recommend::to_string(in.candidates[rec.chosen].stance) << "/"
      << recommend::to_string(in.candidates[rec.chosen].rhetoric) << "] " << in.candidates[rec.chosen].text << "\n";
  report.text = txt.str();

  if (!config.output.empty()) {
    corpus::write_file(config.output / "report.json", j.dump(2) + "\n");
    corpus::write_file(config.output / "report.txt", report.text);
  }
  return report;
}

}  // namespace mim::scenario
