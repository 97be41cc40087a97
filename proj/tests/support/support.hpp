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

#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "corpus/document.hpp"
#include "perturb/rule.hpp"

namespace mim::testing {

std::filesystem::path asset(const std::string& relative);
std::filesystem::path mimkit_binary();

// Fresh empty directory under the system temp dir.
std::filesystem::path temp_dir(const std::string& tag);

struct CommandResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};
// Runs argv[0] with the remaining arguments; stdout and stderr captured.
CommandResult run_command(const std::vector<std::string>& argv);

// Seeded generator with the helpers the property tests need.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::uint64_t bits() { return rng_(); }
  int uniform(int lo, int hi);  // inclusive
  double real(double lo, double hi);
  bool coin(double p = 0.5);
  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(uniform(0, static_cast<int>(v.size()) - 1))];
  }

  std::string word();
  std::string hashtag();
  // Body of words, hashtags, mentions, numbers and punctuation joined by
  // varied whitespace.
  std::string body(int max_tokens);
  corpus::TweetDocument document(const std::string& id);
  // Root plus up to max_comments replies.
  corpus::Corpus thread(const std::string& prefix, int max_comments);
  perturb::PerturbationRule rule_for(const corpus::Corpus& docs);
  perturb::RuleSet ruleset_for(const corpus::Corpus& docs, int max_rules);

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace mim::testing
