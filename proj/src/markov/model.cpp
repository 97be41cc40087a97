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

#include "markov/model.hpp"

#include <cmath>

#include "common/error.hpp"
#include "corpus/tokenizer.hpp"

namespace mim::markov {

Model Model::train(const corpus::Corpus& docs, double smoothing) {
  if (docs.empty()) throw validation_error("training corpus is empty");
  if (!std::isfinite(smoothing) || smoothing < 0) throw validation_error("smoothing must be a finite value ≥ 0");

  Model model;
  model.smoothing_ = smoothing;
  for (const corpus::TweetDocument& doc : docs) {
    std::string prev;
    bool have_prev = false;
    for (const corpus::Token& tok : corpus::tokenize(doc.body)) {
      if (!corpus::is_content(tok.kind)) continue;
      std::string folded = corpus::fold_case(tok.text);
      model.vocab_.insert(folded);
      if (have_prev) {
        ++model.counts_[prev][folded];
        ++model.totals_[prev];
      }
      prev = std::move(folded);
      have_prev = true;
    }
  }
  if (model.vocab_.empty()) throw validation_error("training corpus has no tokens");
  return model;
}

Model Model::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw validation_error("markov model must be a JSON object");
  Model model;
  if (auto it = j.find("order"); it == j.end() || !it->is_number_integer() || it->get<int>() != 1) {
    throw validation_error("markov model order must be 1");
  }
  if (auto it = j.find("smoothing"); it != j.end()) {
    if (!it->is_number() || it->get<double>() < 0) throw validation_error("smoothing must be a number ≥ 0");
    model.smoothing_ = it->get<double>();
  }
  auto counts = j.find("counts");
  if (counts == j.end() || !counts->is_object()) throw validation_error("counts must be an object");
  for (const auto& [prev, row] : counts->items()) {
    if (!row.is_object()) throw validation_error("counts." + prev + " must be an object");
    for (const auto& [next, c] : row.items()) {
      if (!c.is_number_unsigned() || c.get<std::uint64_t>() == 0) {
        throw validation_error("counts." + prev + "." + next + " must be a positive integer");
      }
      model.counts_[prev][next] = c.get<std::uint64_t>();
      model.totals_[prev] += c.get<std::uint64_t>();
    }
  }
  if (auto it = j.find("vocab"); it != j.end()) {
    if (!it->is_array()) throw validation_error("vocab must be an array of strings");
    for (const auto& v : *it) {
      if (!v.is_string()) throw validation_error("vocab must be an array of strings");
      model.vocab_.insert(v.get<std::string>());
    }
  } else {
    for (const auto& [prev, row] : model.counts_) {
      model.vocab_.insert(prev);
      for (const auto& [next, c] : row) model.vocab_.insert(next);
    }
  }
  model.check_invariants();
  return model;
}

nlohmann::ordered_json Model::to_json() const {
  nlohmann::ordered_json j;
  j["order"] = 1;
  j["smoothing"] = smoothing_;
  j["vocab"] = nlohmann::ordered_json::array();
  for (const std::string& v : vocab_) j["vocab"].push_back(v);
  j["counts"] = nlohmann::ordered_json::object();
  for (const auto& [prev, row] : counts_) {
    nlohmann::ordered_json r = nlohmann::ordered_json::object();
    for (const auto& [next, c] : row) r[next] = c;
    j["counts"][prev] = std::move(r);
  }
  return j;
}

void Model::check_invariants() const {
  for (const auto& [prev, row] : counts_) {
    if (!vocab_.count(prev)) throw validation_error("counts reference '" + prev + "' outside the vocabulary");
    for (const auto& [next, c] : row) {
      if (!vocab_.count(next)) throw validation_error("counts reference '" + next + "' outside the vocabulary");
    }
  }
}

std::uint64_t Model::count(std::string_view prev, std::string_view next) const {
  auto row = counts_.find(prev);
  if (row == counts_.end()) return 0;
  auto cell = row->second.find(next);
  return cell == row->second.end() ? 0 : cell->second;
}

std::uint64_t Model::total(std::string_view prev) const {
  auto it = totals_.find(prev);
  return it == totals_.end() ? 0 : it->second;
}

double Model::transition_prob(std::string_view prev, std::string_view next) const {
  const double numerator = static_cast<double>(count(prev, next)) + smoothing_;
  const double denominator = static_cast<double>(total(prev)) + smoothing_ * static_cast<double>(vocab_.size());
  if (denominator == 0) return 0.0;
  return numerator / denominator;
}

std::string Model::choose_replacement(std::string_view prev, std::span<const std::string> candidates,
                                      std::uint64_t /*seed*/) const {
  if (candidates.empty()) throw validation_error("replacement candidates must be non-empty");
  const std::string folded_prev = corpus::fold_case(prev);
  // For a fixed prev every probability shares one denominator, so comparing
  // raw counts ranks candidates exactly.
  const std::string* best = nullptr;
  std::uint64_t best_count = 0;
  for (const std::string& cand : candidates) {
    const std::uint64_t c = count(folded_prev, corpus::fold_case(cand));
    if (best == nullptr || c > best_count || (c == best_count && cand < *best)) {
      best = &cand;
      best_count = c;
    }
  }
  return *best;
}

}  // namespace mim::markov
