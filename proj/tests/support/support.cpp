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

#include "support/support.hpp"

#include <fcntl.h>
#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <atomic>
#include <fstream>
#include <sstream>

#include "corpus/tokenizer.hpp"

namespace mim::testing {

namespace {

const std::vector<std::string> kWords = {"vaccines", "work", "Many", "studies", "show", "safe", "not", "do",
                                         "cause", "wrong", "right", "people", "think", "are", "the", "No",
                                         "don't", "never", "Effective", "family", "VACCINES", "it's", "café"};
const std::vector<std::string> kTags = {"#provax", "#antivax", "#vaccineswork", "#vaccinesdontwork", "#vaccines",
                                        "#health", "#Flu2024"};
const std::vector<std::string> kPunct = {".", ",", "!", "?", "-", ":", "(", ")", "\xe2\x80\x9c", "\xf0\x9f\x98\x80"};
const std::vector<std::string> kSpace = {" ", " ", " ", "  ", "\n", "\t", " \n "};

std::string read_fd(int fd) {
  std::string out;
  std::array<char, 4096> buf;
  ssize_t n;
  while ((n = ::read(fd, buf.data(), buf.size())) > 0) out.append(buf.data(), static_cast<std::size_t>(n));
  return out;
}

}  // namespace

std::filesystem::path asset(const std::string& relative) { return std::filesystem::path(MIM_ASSET_DIR) / relative; }

std::filesystem::path mimkit_binary() {
#ifdef MIMKIT_BIN
  return MIMKIT_BIN;
#else
  return "mimkit";
#endif
}

std::filesystem::path temp_dir(const std::string& tag) {
  static std::atomic<int> counter{0};
  const auto dir = std::filesystem::temp_directory_path() /
                   ("mimkit-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

CommandResult run_command(const std::vector<std::string>& argv) {
  // stderr goes to a temp file so neither pipe can fill up and block.
  const auto err_path = temp_dir("stderr") / "err.txt";
  int out_pipe[2];
  if (::pipe(out_pipe) != 0) return {};
  const pid_t pid = ::fork();
  if (pid == 0) {
    ::dup2(out_pipe[1], STDOUT_FILENO);
    const int err_fd = ::open(err_path.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
    ::dup2(err_fd, STDERR_FILENO);
    ::close(out_pipe[0]);
    ::close(out_pipe[1]);
    std::vector<char*> args;
    for (const std::string& a : argv) args.push_back(const_cast<char*>(a.c_str()));
    args.push_back(nullptr);
    ::execv(args[0], args.data());
    ::_exit(127);
  }
  ::close(out_pipe[1]);
  CommandResult result;
  result.out = read_fd(out_pipe[0]);
  ::close(out_pipe[0]);
  int status = 0;
  ::waitpid(pid, &status, 0);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream err(err_path);
  std::ostringstream s;
  s << err.rdbuf();
  result.err = s.str();
  std::filesystem::remove_all(err_path.parent_path());
  return result;
}

int Gen::uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

double Gen::real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

bool Gen::coin(double p) { return std::bernoulli_distribution(p)(rng_); }

std::string Gen::word() { return pick(kWords); }

std::string Gen::hashtag() { return pick(kTags); }

std::string Gen::body(int max_tokens) {
  const int n = uniform(0, max_tokens);
  std::string out;
  if (coin(0.2)) out += pick(kSpace);
  for (int i = 0; i < n; ++i) {
    if (i > 0 && coin(0.8)) out += pick(kSpace);
    const int kind = uniform(0, 9);
    if (kind <= 5) {
      out += word();
    } else if (kind == 6) {
      out += hashtag();
    } else if (kind == 7) {
      out += "@user" + std::to_string(uniform(1, 9));
    } else if (kind == 8) {
      out += std::to_string(uniform(0, 500));
    } else {
      out += pick(kPunct);
    }
  }
  if (coin(0.2)) out += pick(kSpace);
  return out;
}

corpus::TweetDocument Gen::document(const std::string& id) {
  corpus::TweetDocument d;
  d.id = id;
  d.author = "@author" + std::to_string(uniform(0, 5));
  d.verified = coin();
  d.body = body(14);
  const int tags = uniform(0, 3);
  for (int i = 0; i < tags; ++i) d.hashtags.push_back(hashtag());
  d.metrics = {uniform(0, 1000), uniform(0, 1000), uniform(0, 5000)};
  return d;
}

corpus::Corpus Gen::thread(const std::string& prefix, int max_comments) {
  corpus::Corpus docs;
  docs.push_back(document(prefix));
  const int n = uniform(0, max_comments);
  for (int i = 0; i < n; ++i) {
    corpus::TweetDocument c = document(prefix + "-c" + std::to_string(i));
    c.parent_id = prefix;
    docs.push_back(std::move(c));
  }
  return docs;
}

perturb::PerturbationRule Gen::rule_for(const corpus::Corpus& docs) {
  // Draw match tokens from the documents so rules usually fire.
  std::vector<std::string> words;
  std::vector<std::string> tags;
  for (const corpus::TweetDocument& d : docs) {
    for (const corpus::Token& t : corpus::tokenize(d.body)) {
      if (t.kind == corpus::TokenKind::word || t.kind == corpus::TokenKind::number) words.push_back(t.text);
      if (t.kind == corpus::TokenKind::hashtag) tags.push_back(t.text);
    }
    for (const std::string& h : d.hashtags) tags.push_back(h);
  }
  if (words.empty()) words = kWords;
  if (tags.empty()) tags = kTags;

  perturb::PerturbationRule r;
  const int kind = uniform(0, 4);
  r.kind = static_cast<perturb::RuleKind>(kind);
  r.case_sensitive = coin(0.7);
  const int scope = uniform(0, 5);
  r.scope = scope <= 3 ? perturb::Scope::all : scope == 4 ? perturb::Scope::first : perturb::Scope::comments_only;
  switch (r.kind) {
    case perturb::RuleKind::word_swap:
      r.match = coin(0.8) ? pick(words) : word();
      r.replacement = word();
      break;
    case perturb::RuleKind::word_remove:
      r.match = coin(0.8) ? pick(words) : word();
      break;
    case perturb::RuleKind::word_insert:
      r.insert_token = word();
      r.anchor = coin(0.8) ? pick(words) : word();
      r.side = coin() ? perturb::Side::before : perturb::Side::after;
      break;
    case perturb::RuleKind::hashtag_swap:
      r.match = coin(0.8) ? pick(tags) : hashtag();
      r.replacement = hashtag();
      break;
    case perturb::RuleKind::metric_scale: {
      static const std::vector<Rational> factors = {Rational::make(2, 1), Rational::make(4, 1), Rational::make(1, 2),
                                                    Rational::make(3, 2), Rational::make(5, 3), Rational::make(1, 1),
                                                    Rational::make(10, 1)};
      r.factor = pick(factors);
      break;
    }
  }
  if (coin(0.15)) {
    perturb::RulePredicate p;
    if (coin()) {
      p.hashtag_any = std::vector<std::string>{pick(tags)};
    } else {
      p.author_is = docs.front().author;
    }
    r.predicate = p;
  }
  return r;
}

perturb::RuleSet Gen::ruleset_for(const corpus::Corpus& docs, int max_rules) {
  perturb::RuleSet rules;
  const int n = uniform(1, max_rules);
  for (int i = 0; i < n; ++i) rules.push_back(rule_for(docs));
  return rules;
}

}  // namespace mim::testing
