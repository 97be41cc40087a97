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

#include <gtest/gtest.h>

#include <fcntl.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <fstream>
#include <sstream>

#include <httplib.h>
#include <json.hpp>

#include "support/support.hpp"

namespace {

using mim::testing::asset;
using mim::testing::CommandResult;

CommandResult mimkit(std::vector<std::string> args) {
  args.insert(args.begin(), mim::testing::mimkit_binary().string());
  return mim::testing::run_command(args);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void expect_json_error(const CommandResult& r, int code) {
  EXPECT_EQ(r.exit_code, code) << r.err;
  ASSERT_FALSE(r.err.empty());
  EXPECT_EQ(r.err.find('\n'), r.err.size() - 1) << r.err;
  const auto j = nlohmann::json::parse(r.err);
  EXPECT_TRUE(j.contains("error"));
  EXPECT_TRUE(j.contains("message"));
}

TEST(Cli, RunScenarioStudy) {
  const auto dir = mim::testing::temp_dir("cli");
  const CommandResult r = mimkit({"run-scenario", "study", "--seed", "4", "--output", dir.string()});
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_NE(r.out.find("32/160/548"), std::string::npos);
  const auto report = nlohmann::json::parse(slurp(dir / "report.json"));
  EXPECT_EQ(report["round_trip"]["verdict"], "pass");
  EXPECT_EQ(report["seed"], 4);
  EXPECT_EQ(slurp(dir / "report.txt"), r.out);
}

TEST(Cli, RunScenarioBadAsset) {
  const auto dir = mim::testing::temp_dir("cli");
  std::ofstream(dir / "corpus.jsonl") << R"({"id":"t1","author":"@a","verified":true,"body":"x","hashtags":[],"metrics":{"replies":0,"retweets":0,"likes":-1}})"
                                      << "\n";
  const CommandResult r = mimkit({"run-scenario", "study", "--corpus", (dir / "corpus.jsonl").string()});
  expect_json_error(r, 1);
  EXPECT_NE(r.err.find("corpus.jsonl"), std::string::npos);
  EXPECT_NE(r.err.find("metrics.likes"), std::string::npos);
}

TEST(Cli, PerturbAndDetect) {
  const auto dir = mim::testing::temp_dir("cli");
  const auto delivered = dir / "delivered.jsonl";
  CommandResult r = mimkit({"perturb", "--corpus", asset("corpus/sample.jsonl").string(), "--rules",
                            asset("rules/pilot.json").string(), "--log", (dir / "log.json").string(), "--output",
                            delivered.string()});
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_NE(slurp(delivered).find("People who don't think otherwise are right."), std::string::npos);
  const auto log = nlohmann::json::parse(slurp(dir / "log.json"));
  ASSERT_EQ(log.size(), 1u);
  EXPECT_EQ(log[0]["tweet_id"], "pilot-original");

  r = mimkit({"detect", "--original", asset("corpus/sample.jsonl").string(), "--delivered", delivered.string(),
              "--lexicon", asset("lexicon/valence.json").string()});
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const auto reports = nlohmann::json::parse(r.out);
  bool found = false;
  for (const auto& row : reports) {
    if (row["id"] == "pilot-original") {
      found = true;
      EXPECT_EQ(row["report"]["valence_inversion"], true);
      EXPECT_EQ(row["report"]["metric_factor"]["num"], 2);
    } else {
      EXPECT_EQ(row["report"]["severity"], 0.0);
    }
  }
  EXPECT_TRUE(found);
}

TEST(Cli, Recommend) {
  const CommandResult r = mimkit({"recommend", "--input", "Vaccines saved us", "--candidates",
                                  asset("recommend/candidates.jsonl").string(), "--lexicons",
                                  asset("recommend/keywords.json").string(), "--epsilon", "0"});
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("Vaccines saved us!\n", 0), 0u) << r.out;
  EXPECT_NE(r.out.find("distance"), std::string::npos);
  const CommandResult again = mimkit({"recommend", "--input", "Vaccines saved us", "--candidates",
                                      asset("recommend/candidates.jsonl").string(), "--lexicons",
                                      asset("recommend/keywords.json").string(), "--seed", "9"});
  const CommandResult twice = mimkit({"recommend", "--input", "Vaccines saved us", "--candidates",
                                      asset("recommend/candidates.jsonl").string(), "--lexicons",
                                      asset("recommend/keywords.json").string(), "--seed", "9"});
  EXPECT_EQ(again.out, twice.out);
}

TEST(Cli, KruskalWallis) {
  const CommandResult r = mimkit({"kw", "--groups", "[[1,2,3],[4,5,6]]"});
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j["h"].get<double>(), 3.857, 0.001);
  EXPECT_EQ(j["df"], 1);
  const auto dir = mim::testing::temp_dir("cli");
  std::ofstream(dir / "g.json") << "[[1,2],[3]]";
  EXPECT_EQ(mimkit({"kw", "--groups", (dir / "g.json").string()}).exit_code, 0);
  expect_json_error(mimkit({"kw", "--groups", "[[1,2,3]]"}), 1);
}

TEST(Cli, TrainMarkov) {
  const auto dir = mim::testing::temp_dir("cli");
  const CommandResult r =
      mimkit({"train-markov", "--corpus", asset("corpus/sample.jsonl").string(), "--output", (dir / "m.json").string()});
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const auto j = nlohmann::json::parse(slurp(dir / "m.json"));
  EXPECT_EQ(j["order"], 1);
  EXPECT_TRUE(j["counts"].contains("vaccines"));
}

TEST(Cli, ErrorsAreSingleJsonLines) {
  expect_json_error(mimkit({"perturb", "--corpus", "/nonexistent.jsonl", "--rules", asset("rules/study.json").string()}),
                    2);
  const auto dir = mim::testing::temp_dir("cli");
  std::ofstream(dir / "bad.json") << R"({"rules":[{"kind":"word_swap","match":"a"}]})";
  expect_json_error(mimkit({"perturb", "--corpus", asset("corpus/sample.jsonl").string(), "--rules",
                            (dir / "bad.json").string()}),
                    1);
  expect_json_error(mimkit({"frobnicate"}), 1);
  expect_json_error(mimkit({"run-scenario", "trial"}), 1);
}

// Starts a long-running subcommand and returns its pid and the port it prints.
struct Daemon {
  pid_t pid = -1;
  int port = -1;
};

Daemon spawn(const std::vector<std::string>& args) {
  int out[2];
  EXPECT_EQ(::pipe(out), 0);
  std::vector<std::string> argv = {mim::testing::mimkit_binary().string()};
  argv.insert(argv.end(), args.begin(), args.end());
  const pid_t pid = ::fork();
  if (pid == 0) {
    ::dup2(out[1], STDOUT_FILENO);
    ::close(out[0]);
    ::close(out[1]);
    std::vector<char*> cargs;
    for (auto& a : argv) cargs.push_back(a.data());
    cargs.push_back(nullptr);
    ::execv(cargs[0], cargs.data());
    ::_exit(127);
  }
  ::close(out[1]);
  std::string line;
  char ch;
  while (::read(out[0], &ch, 1) == 1 && ch != '\n') line += ch;
  ::close(out[0]);
  Daemon d;
  d.pid = pid;
  const auto pos = line.rfind(' ');
  if (pos != std::string::npos) d.port = std::stoi(line.substr(pos + 1));
  return d;
}

int terminate(const Daemon& d) {
  ::kill(d.pid, SIGTERM);
  int status = 0;
  ::waitpid(d.pid, &status, 0);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(Cli, ServeAndProxy) {
  const auto dir = mim::testing::temp_dir("cli");
  const Daemon origin = spawn({"serve", "--corpus", asset("corpus/sample.jsonl").string(), "--bind", "127.0.0.1:0"});
  ASSERT_GT(origin.port, 0);
  const Daemon proxy = spawn({"proxy", "--upstream", "127.0.0.1:" + std::to_string(origin.port), "--rules",
                              asset("rules/study.json").string(), "--audit", (dir / "audit.jsonl").string(),
                              "--bind", "127.0.0.1:0"});
  ASSERT_GT(proxy.port, 0);
  httplib::Client client("127.0.0.1", proxy.port);
  auto res = client.Get("/tweet/study-original");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_NE(res->body.find("#vaccinesdontwork"), std::string::npos);
  EXPECT_EQ(terminate(proxy), 0);
  EXPECT_EQ(terminate(origin), 0);
  EXPECT_NE(slurp(dir / "audit.jsonl").find("\"tweet_id\":\"study-original\""), std::string::npos);
}

}  // namespace
