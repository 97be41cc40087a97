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
#include <string>
#include <string_view>

#include <json.hpp>

namespace mim::scenario {

enum class Name { pilot, study };

const char* to_string(Name name) noexcept;
Name name_from_string(std::string_view text);  // Throws Error(validation).

struct ScenarioConfig {
  std::filesystem::path corpus;
  std::filesystem::path rules;
  std::filesystem::path lexicon;     // valence lexicon for the detector
  std::filesystem::path keywords;    // keyword lexicon for the recommender
  std::filesystem::path candidates;  // suggested responses
  std::uint64_t seed = 0;
  std::filesystem::path output;  // report.json and report.txt land here; empty skips writing
  bool wire = false;             // route the sample through a live origin and proxy
  std::string target;            // root document id; empty picks the scenario default
};

// Bundled assets for a scenario under an asset root laid out like assets/.
ScenarioConfig bundled_config(Name name, const std::filesystem::path& assets);

// Default root document for each scenario.
const char* default_target(Name name) noexcept;

struct ScenarioReport {
  nlohmann::ordered_json json;
  std::string text;
  bool round_trip = false;
};

// Validates every input file, perturbs the target thread, recovers the edits
// with the detector, checks both edit logs replay exactly, and picks a
// suggested response to the perturbed root.
ScenarioReport run_scenario(Name name, const ScenarioConfig& config);

}  // namespace mim::scenario
