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

#include "perturb/engine.hpp"

#include <algorithm>

#include "common/error.hpp"
#include "corpus/tokenizer.hpp"
#include "markov/model.hpp"
#include "perturb/body.hpp"

namespace mim::perturb {

using corpus::Token;
using corpus::TokenKind;
using corpus::TweetDocument;

namespace {

bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_lower(char c) { return c >= 'a' && c <= 'z'; }

bool same_text(std::string_view a, std::string_view b, bool case_sensitive) {
  if (case_sensitive) return a == b;
  return corpus::fold_case(a) == corpus::fold_case(b);
}

bool is_target_kind(const PerturbationRule& rule, TokenKind kind) {
  if (rule.kind == RuleKind::hashtag_swap) return kind == TokenKind::hashtag;
  return corpus::is_content(kind);
}

const std::string& target_of(const PerturbationRule& rule) {
  return rule.kind == RuleKind::word_insert ? rule.anchor : rule.match;
}

// Documents the scope allows, in render order, paired with their location.
std::vector<std::pair<Location, std::size_t>> eligible_slots(const Thread& thread, Scope scope) {
  std::vector<std::pair<Location, std::size_t>> slots;
  if (scope != Scope::comments_only) slots.emplace_back(Location::root(), 0);
  for (std::size_t i = 0; i < thread.comments.size(); ++i) {
    slots.emplace_back(Location::comment(thread.comments[i].id), i + 1);
  }
  return slots;
}

std::string previous_content_token(const LexedBody& body, std::size_t index) {
  for (std::size_t i = index; i-- > 0;) {
    if (corpus::is_content(body.tokens[i].kind)) return corpus::fold_case(body.tokens[i].text);
  }
  return {};
}

std::string markov_replacement(const markov::Model& model, const PerturbationRule& rule, const LexedBody& body,
                               std::size_t index) {
  std::vector<std::string> candidates = rule.candidates;
  if (candidates.empty()) {
    const std::string folded_match = corpus::fold_case(rule.match);
    for (const std::string& v : model.vocab()) {
      if (v != folded_match) candidates.push_back(v);
    }
    if (candidates.empty()) candidates.assign(model.vocab().begin(), model.vocab().end());
  }
  return model.choose_replacement(previous_content_token(body, index), candidates);
}

void require_replacer(const PerturbationRule& rule, const markov::Model* replacer) {
  if (rule.uses_markov() && replacer == nullptr) {
    throw config_error("rule replacing '" + rule.match + "' uses \"&markov\" but no Markov model is configured");
  }
}

class RuleRunner {
 public:
  RuleRunner(const Thread& thread, const PerturbationRule& rule, const markov::Model* replacer)
      : out_{thread, {}}, rule_(rule), replacer_(replacer) {}

  Rewrite run() && {
    if (!predicate_holds(out_.thread, rule_)) return std::move(out_);
    switch (rule_.kind) {
      case RuleKind::word_swap:
      case RuleKind::word_remove:
      case RuleKind::hashtag_swap: rewrite_tokens(); break;
      case RuleKind::word_insert: insert_beside_anchor(); break;
      case RuleKind::metric_scale: scale(); break;
    }
    return std::move(out_);
  }

 private:
  bool done() const { return rule_.scope == Scope::first && !out_.log.empty(); }

  void record(TweetDocument& doc, Edit edit) {
    apply_edit(doc, edit);
    out_.log.push_back(std::move(edit));
  }

  TweetDocument& doc_at(std::size_t slot) { return slot == 0 ? out_.thread.root : out_.thread.comments[slot - 1]; }

  void rewrite_tokens() {
    for (const auto& [where, slot] : eligible_slots(out_.thread, rule_.scope)) {
      rewrite_body(doc_at(slot), where);
      if (done()) return;
      if (rule_.kind == RuleKind::hashtag_swap) {
        rewrite_hashtag_list(doc_at(slot), where);
        if (done()) return;
      }
    }
  }

  void rewrite_body(TweetDocument& doc, const Location& where) {
    std::size_t cursor = 0;
    for (;;) {
      const LexedBody lexed = LexedBody::lex(doc.body);
      std::size_t i = cursor;
      while (i < lexed.size() && !(is_target_kind(rule_, lexed.tokens[i].kind) &&
                                   same_text(lexed.tokens[i].text, rule_.match, rule_.case_sensitive))) {
        ++i;
      }
      if (i >= lexed.size()) return;
      const std::string& found = lexed.tokens[i].text;

      Edit edit;
      edit.location = where;
      edit.field = Field::body;
      edit.token_index = i;
      edit.original = found;

      if (rule_.kind == RuleKind::word_remove) {
        edit.op = EditOp::erase;
        edit.replacement = std::string();
        edit.gap_before = joined_gap(lexed, i);
        record(doc, std::move(edit));
        cursor = i;
      } else {
        std::string replacement = rule_.kind == RuleKind::hashtag_swap ? rule_.replacement
                                  : rule_.uses_markov() ? markov_replacement(*replacer_, rule_, lexed, i)
                                                        : rule_.replacement;
        if (rule_.kind == RuleKind::word_swap && !rule_.case_sensitive) replacement = adapt_case(found, replacement);
        if (replacement == found) {
          cursor = i + 1;
          continue;
        }
        edit.op = rule_.kind == RuleKind::hashtag_swap ? EditOp::hashtag_swap : EditOp::substitute;
        edit.replacement = std::move(replacement);
        record(doc, std::move(edit));
        const std::size_t now = corpus::tokenize(doc.body).size();
        const std::ptrdiff_t grown = static_cast<std::ptrdiff_t>(now) - static_cast<std::ptrdiff_t>(lexed.size());
        cursor = i + static_cast<std::size_t>(std::max<std::ptrdiff_t>(1, grown + 1));
      }
      if (done()) return;
    }
  }

  void rewrite_hashtag_list(TweetDocument& doc, const Location& where) {
    for (std::size_t i = 0; i < doc.hashtags.size(); ++i) {
      if (!same_text(doc.hashtags[i], rule_.match, rule_.case_sensitive)) continue;
      if (doc.hashtags[i] == rule_.replacement) continue;
      Edit edit;
      edit.op = EditOp::hashtag_swap;
      edit.location = where;
      edit.field = Field::hashtags;
      edit.token_index = i;
      edit.original = doc.hashtags[i];
      edit.replacement = rule_.replacement;
      record(doc, std::move(edit));
      if (done()) return;
    }
  }

  void insert_beside_anchor() {
    for (const auto& [where, slot] : eligible_slots(out_.thread, rule_.scope)) {
      TweetDocument& doc = doc_at(slot);
      const LexedBody lexed = LexedBody::lex(doc.body);
      for (std::size_t i = 0; i < lexed.size(); ++i) {
        if (!corpus::is_content(lexed.tokens[i].kind) ||
            !same_text(lexed.tokens[i].text, rule_.anchor, rule_.case_sensitive)) {
          continue;
        }
        Edit edit;
        edit.op = EditOp::insert;
        edit.location = where;
        edit.field = Field::body;
        edit.original = std::string();
        edit.replacement = rule_.insert_token;
        if (rule_.side == Side::before) {
          edit.token_index = i;
          edit.gap_before = lexed.gaps[i];
          edit.gap_after = " ";
        } else {
          edit.token_index = i + 1;
          edit.gap_before = " ";
          edit.gap_after = lexed.gaps[i + 1];
        }
        record(doc, std::move(edit));
        return;
      }
    }
  }

  void scale() {
    auto slots = eligible_slots(out_.thread, rule_.scope);
    if (rule_.scope == Scope::first) slots.resize(1);
    for (const auto& [where, slot] : slots) {
      TweetDocument& doc = doc_at(slot);
      const corpus::Metrics scaled = scale_metrics(doc.metrics, rule_.factor);
      if (scaled == doc.metrics) continue;
      Edit edit;
      edit.op = EditOp::metric_scale;
      edit.location = where;
      edit.field = Field::metrics;
      edit.original = doc.metrics;
      edit.replacement = scaled;
      record(doc, std::move(edit));
    }
  }

  Rewrite out_;
  const PerturbationRule& rule_;
  const markov::Model* replacer_;
};

}  // namespace

corpus::Metrics scale_metrics(const corpus::Metrics& m, const Rational& factor) {
  if (factor.num <= 0 || factor.den <= 0) throw validation_error("factor must be > 0");
  return corpus::Metrics{scale_count(m.replies, factor), scale_count(m.retweets, factor),
                         scale_count(m.likes, factor)};
}

std::string adapt_case(std::string_view matched, std::string_view replacement) {
  std::size_t letters = 0;
  std::size_t upper = 0;
  for (char c : matched) {
    if (is_upper(c)) ++upper;
    if (is_upper(c) || is_lower(c)) ++letters;
  }
  std::string out(replacement);
  if (letters == 0) return out;
  if (letters > 1 && upper == letters) {
    for (char& c : out) {
      if (is_lower(c)) c = static_cast<char>(c - 'a' + 'A');
    }
    return out;
  }
  const auto first_letter = std::find_if(matched.begin(), matched.end(), [](char c) { return is_upper(c) || is_lower(c); });
  if (first_letter != matched.end() && is_upper(*first_letter)) {
    auto it = std::find_if(out.begin(), out.end(), [](char c) { return is_upper(c) || is_lower(c); });
    if (it != out.end() && is_lower(*it)) *it = static_cast<char>(*it - 'a' + 'A');
  }
  return out;
}

bool predicate_holds(const Thread& thread, const PerturbationRule& rule) {
  if (!rule.predicate) return true;
  const RulePredicate& p = *rule.predicate;
  const TweetDocument& root = thread.root;
  if (p.author_is && root.author != *p.author_is) return false;
  if (p.hashtag_any) {
    std::vector<std::string> carried;
    for (const std::string& t : root.hashtags) carried.push_back(corpus::fold_case(t));
    for (const Token& t : corpus::tokenize(root.body)) {
      if (t.kind == TokenKind::hashtag) carried.push_back(corpus::fold_case(t.text));
    }
    const bool any = std::any_of(p.hashtag_any->begin(), p.hashtag_any->end(), [&](const std::string& want) {
      return std::find(carried.begin(), carried.end(), corpus::fold_case(want)) != carried.end();
    });
    if (!any) return false;
  }
  return true;
}

std::vector<Match> find_matches(const Thread& thread, const PerturbationRule& rule) {
  validate(rule);
  std::vector<Match> out;
  if (rule.kind == RuleKind::metric_scale || !predicate_holds(thread, rule)) return out;
  const bool single = rule.scope == Scope::first || rule.kind == RuleKind::word_insert;
  const std::string& target = target_of(rule);

  for (const auto& [where, slot] : eligible_slots(thread, rule.scope)) {
    const TweetDocument& doc = slot == 0 ? thread.root : thread.comments[slot - 1];
    const auto tokens = corpus::tokenize(doc.body);
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      if (!is_target_kind(rule, tokens[i].kind) || !same_text(tokens[i].text, target, rule.case_sensitive)) continue;
      out.push_back(Match{i, tokens[i].text, where, Field::body});
      if (single) return out;
    }
    if (rule.kind == RuleKind::hashtag_swap) {
      for (std::size_t i = 0; i < doc.hashtags.size(); ++i) {
        if (!same_text(doc.hashtags[i], target, rule.case_sensitive)) continue;
        out.push_back(Match{i, doc.hashtags[i], where, Field::hashtags});
        if (single) return out;
      }
    }
  }
  return out;
}

Rewrite apply_rule(const Thread& thread, const PerturbationRule& rule, const markov::Model* replacer) {
  validate(rule);
  require_replacer(rule, replacer);
  return RuleRunner(thread, rule, replacer).run();
}

Rewrite apply_ruleset(const Thread& thread, const RuleSet& rules, const markov::Model* replacer) {
  for (const PerturbationRule& rule : rules) {
    validate(rule);
    require_replacer(rule, replacer);
  }
  Rewrite out{thread, {}};
  for (const PerturbationRule& rule : rules) {
    Rewrite step = RuleRunner(out.thread, rule, replacer).run();
    out.thread = std::move(step.thread);
    out.log.insert(out.log.end(), std::make_move_iterator(step.log.begin()), std::make_move_iterator(step.log.end()));
  }
  return out;
}

FeedRewrite apply_ruleset_to_feed(const corpus::Corpus& docs, const RuleSet& rules, const markov::Model* replacer) {
  FeedRewrite out;
  out.index = group_threads(docs);
  std::vector<Thread> rewritten;
  for (const Thread& t : out.index.threads) {
    out.threads.push_back(apply_ruleset(t, rules, replacer));
    rewritten.push_back(out.threads.back().thread);
  }
  out.docs = flatten(out.index, rewritten);
  return out;
}

}  // namespace mim::perturb
