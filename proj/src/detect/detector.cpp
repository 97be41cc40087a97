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

#include "detect/detector.hpp"

#include <algorithm>

#include "common/error.hpp"
#include "corpus/corpus_io.hpp"
#include "corpus/tokenizer.hpp"
#include "detect/align.hpp"
#include "perturb/body.hpp"

namespace mim::detect {

using perturb::Edit;
using perturb::EditLog;
using perturb::EditOp;
using perturb::Field;
using perturb::LexedBody;

std::optional<Rational> estimate_metric_factor(const corpus::Metrics& a, const corpus::Metrics& b) {
  if (a == b) return std::nullopt;
  auto fits = [&](const Rational& f) {
    return scale_count(a.replies, f) == b.replies && scale_count(a.retweets, f) == b.retweets &&
           scale_count(a.likes, f) == b.likes;
  };
  for (std::int64_t q = 1; q <= kMaxFactorTerm; ++q) {
    for (std::int64_t p = q + 1; p <= kMaxFactorTerm; ++p) {
      const Rational f{p, q};
      if (fits(f)) return Rational::make(p, q);
    }
    for (std::int64_t p = 1; p < q; ++p) {
      const Rational f{p, q};
      if (fits(f)) return Rational::make(p, q);
    }
  }
  return std::nullopt;
}

namespace {

std::vector<std::string> texts_of(const LexedBody& body) {
  std::vector<std::string> out;
  out.reserve(body.size());
  for (const corpus::Token& t : body.tokens) out.push_back(t.text);
  return out;
}

constexpr std::string_view kPlaceholder = "x";

// Replaces everything with one delete per original token and one insert
// per delivered token. Used only when the token-level script cannot be
// replayed exactly, which needs tokens that fuse across an empty gap.
EditLog rewrite_whole_body(const LexedBody& from, const LexedBody& to, const perturb::Location& where) {
  EditLog log;
  const std::string empty;
  for (std::size_t i = from.size(); i-- > 0;) {
    Edit e;
    e.op = EditOp::erase;
    e.location = where;
    e.field = Field::body;
    e.token_index = i;
    e.original = from.tokens[i].text;
    e.replacement = std::string();
    e.gap_before = i == 0 ? to.gaps.front() : std::string();
    log.push_back(std::move(e));
  }
  for (std::size_t j = 0; j < to.size(); ++j) {
    Edit e;
    e.op = EditOp::insert;
    e.location = where;
    e.field = Field::body;
    e.token_index = j;
    e.original = std::string();
    e.replacement = to.tokens[j].text;
    e.gap_before = to.gaps[j];
    e.gap_after = j + 1 == to.size() ? to.gaps.back() : std::string();
    log.push_back(std::move(e));
  }
  return log;
}

bool replays_to(const std::string& original, const EditLog& log, const std::string& delivered) {
  try {
    corpus::TweetDocument scratch;
    scratch.body = original;
    for (const Edit& e : log) perturb::apply_edit(scratch, e);
    return scratch.body == delivered;
  } catch (const Error&) {
    return false;
  }
}

}  // namespace

EditLog recover_body_edits(const std::string& original, const std::string& delivered, const perturb::Location& where) {
  if (original == delivered) return {};
  const LexedBody from = LexedBody::lex(original);
  const LexedBody to = LexedBody::lex(delivered);
  const std::vector<std::string> a = texts_of(from);
  const std::vector<std::string> b = texts_of(to);
  const std::vector<AlignStep> script = align(a, b);

  // Right to left: every edit sees the untouched original to its left and
  // the finished delivered text to its right, so original indices stay
  // valid and the surrounding gaps can be copied from the delivered body.
  EditLog log;
  corpus::TweetDocument scratch;
  scratch.body = original;
  for (auto it = script.rbegin(); it != script.rend(); ++it) {
    const std::size_t i = it->original_index;
    const std::size_t j = it->delivered_index;
    Edit e;
    e.location = where;
    e.field = Field::body;
    e.token_index = i;
    switch (it->op) {
      case AlignOp::substitute: {
        const bool hashtags = from.tokens[i].kind == corpus::TokenKind::hashtag &&
                              to.tokens[j].kind == corpus::TokenKind::hashtag;
        e.op = hashtags ? EditOp::hashtag_swap : EditOp::substitute;
        e.original = a[i];
        e.replacement = b[j];
        const LexedBody now = LexedBody::lex(scratch.body);
        if (i < now.size()) {
          if (now.gaps[i] != to.gaps[j]) e.gap_before = to.gaps[j];
          if (now.gaps[i + 1] != to.gaps[j + 1]) e.gap_after = to.gaps[j + 1];
        }
        break;
      }
      case AlignOp::erase:
        e.op = EditOp::erase;
        e.original = a[i];
        e.replacement = std::string();
        e.gap_before = to.gaps[j];
        break;
      case AlignOp::insert:
        e.op = EditOp::insert;
        e.original = std::string();
        e.replacement = b[j];
        e.gap_before = to.gaps[j];
        e.gap_after = to.gaps[j + 1];
        break;
    }
    try {
      perturb::apply_edit(scratch, e);
    } catch (const Error&) {
      return rewrite_whole_body(from, to, where);
    }
    log.push_back(std::move(e));
  }

  if (scratch.body != delivered) {
    // Only whitespace can still differ: every token is in place.
    const LexedBody now = LexedBody::lex(scratch.body);
    if (now.size() == to.size()) {
      for (std::size_t k = 0; k < now.gaps.size(); ++k) {
        if (now.gaps[k] == to.gaps[k]) continue;
        if (now.size() == 0) {
          // No token to carry the gap: insert a placeholder, then erase it
          // leaving the delivered whitespace behind.
          Edit add;
          add.op = EditOp::insert;
          add.location = where;
          add.field = Field::body;
          add.token_index = 0;
          add.original = std::string();
          add.replacement = std::string(kPlaceholder);
          add.gap_before = std::string();
          add.gap_after = std::string();
          Edit drop = add;
          drop.op = EditOp::erase;
          drop.original = std::string(kPlaceholder);
          drop.replacement = std::string();
          drop.gap_before = to.gaps[0];
          drop.gap_after.reset();
          perturb::apply_edit(scratch, add);
          perturb::apply_edit(scratch, drop);
          log.push_back(std::move(add));
          log.push_back(std::move(drop));
          break;
        }
        const std::size_t t = k < now.size() ? k : k - 1;
        Edit e;
        e.op = EditOp::substitute;
        e.location = where;
        e.field = Field::body;
        e.token_index = t;
        e.original = now.tokens[t].text;
        e.replacement = now.tokens[t].text;
        e.gap_before = to.gaps[t];
        e.gap_after = to.gaps[t + 1];
        perturb::apply_edit(scratch, e);
        log.push_back(std::move(e));
        break;
      }
    }
  }
  if (!replays_to(original, log, delivered)) return rewrite_whole_body(from, to, where);
  return log;
}

EditLog recover_hashtag_edits(const std::vector<std::string>& original, const std::vector<std::string>& delivered,
                              const perturb::Location& where) {
  EditLog log;
  if (original == delivered) return log;
  const std::vector<AlignStep> script = align(original, delivered);
  for (auto it = script.rbegin(); it != script.rend(); ++it) {
    Edit e;
    e.location = where;
    e.field = Field::hashtags;
    e.token_index = it->original_index;
    switch (it->op) {
      case AlignOp::substitute:
        e.op = EditOp::hashtag_swap;
        e.original = original[it->original_index];
        e.replacement = delivered[it->delivered_index];
        break;
      case AlignOp::erase:
        e.op = EditOp::erase;
        e.original = original[it->original_index];
        e.replacement = std::string();
        break;
      case AlignOp::insert:
        e.op = EditOp::insert;
        e.original = std::string();
        e.replacement = delivered[it->delivered_index];
        break;
    }
    log.push_back(std::move(e));
  }
  return log;
}

std::vector<HashtagFlip> hashtag_flips(const EditLog& edits) {
  std::vector<HashtagFlip> flips;
  // Edits are stored right to left; flips read left to right, body first.
  for (Field field : {Field::body, Field::hashtags}) {
    for (auto it = edits.rbegin(); it != edits.rend(); ++it) {
      if (it->op != EditOp::hashtag_swap || it->field != field) continue;
      HashtagFlip flip{it->original_text(), it->replacement_text()};
      if (std::find(flips.begin(), flips.end(), flip) == flips.end()) flips.push_back(std::move(flip));
    }
  }
  return flips;
}

DetectionReport classify(EditLog edits, std::vector<HashtagFlip> flips, std::optional<Rational> metric_factor,
                         const ValenceLexicon& lexicon) {
  DetectionReport report;
  for (const Edit& e : edits) {
    if (e.field == Field::metrics) continue;
    switch (e.op) {
      case EditOp::substitute:
      case EditOp::hashtag_swap: {
        auto opposite = lexicon.opposite(e.original_text());
        if (opposite && *opposite == corpus::fold_case(e.replacement_text())) report.valence_inversion = true;
        break;
      }
      case EditOp::erase:
        if (e.field == Field::body && lexicon.is_negator(e.original_text())) report.valence_inversion = true;
        break;
      case EditOp::insert:
        if (e.field == Field::body && lexicon.is_negator(e.replacement_text())) report.valence_inversion = true;
        break;
      case EditOp::metric_scale: break;
    }
  }
  const double edit_share = std::min(1.0, static_cast<double>(edits.size()) / 4.0);
  const double score = 0.25 * (report.valence_inversion ? 1 : 0) + 0.25 * (metric_factor ? 1 : 0) +
                       0.25 * (flips.empty() ? 0 : 1) + 0.25 * edit_share;
  report.severity = std::min(1.0, score);
  report.edits = std::move(edits);
  report.hashtag_flips = std::move(flips);
  report.metric_factor = metric_factor;
  return report;
}

DetectionReport detect(const corpus::TweetDocument& original, const corpus::TweetDocument& delivered,
                       const ValenceLexicon& lexicon) {
  if (original.id != delivered.id || original.author != delivered.author ||
      original.verified != delivered.verified || original.parent_id != delivered.parent_id) {
    throw validation_error("documents '" + original.id + "' and '" + delivered.id +
                           "' are not renderings of the same tweet");
  }
  const perturb::Location where =
      original.parent_id ? perturb::Location::comment(original.id) : perturb::Location::root();

  EditLog edits = recover_body_edits(original.body, delivered.body, where);
  EditLog tags = recover_hashtag_edits(original.hashtags, delivered.hashtags, where);
  edits.insert(edits.end(), tags.begin(), tags.end());

  std::optional<Rational> factor;
  if (original.metrics != delivered.metrics) {
    Edit e;
    e.op = EditOp::metric_scale;
    e.location = where;
    e.field = Field::metrics;
    e.original = original.metrics;
    e.replacement = delivered.metrics;
    edits.push_back(std::move(e));
    factor = estimate_metric_factor(original.metrics, delivered.metrics);
  }
  std::vector<HashtagFlip> flips = hashtag_flips(edits);
  return classify(std::move(edits), std::move(flips), factor, lexicon);
}

nlohmann::ordered_json to_json(const DetectionReport& report) {
  nlohmann::ordered_json j;
  j["edits"] = perturb::to_json(report.edits);
  if (report.metric_factor) {
    j["metric_factor"] = {{"num", report.metric_factor->num}, {"den", report.metric_factor->den}};
  } else {
    j["metric_factor"] = nullptr;
  }
  j["hashtag_flips"] = nlohmann::ordered_json::array();
  for (const HashtagFlip& f : report.hashtag_flips) {
    j["hashtag_flips"].push_back({{"original", f.original}, {"delivered", f.delivered}});
  }
  j["valence_inversion"] = report.valence_inversion;
  j["severity"] = report.severity;
  return j;
}

}  // namespace mim::detect
