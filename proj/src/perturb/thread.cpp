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

#include "perturb/thread.hpp"

#include <unordered_map>

#include "common/error.hpp"

namespace mim::perturb {

ThreadIndex group_threads(const corpus::Corpus& docs) {
  std::unordered_map<std::string, std::size_t> root_thread;
  for (const corpus::TweetDocument& doc : docs) {
    if (!doc.parent_id) root_thread.emplace(doc.id, 0);
  }

  ThreadIndex index;
  index.positions.resize(docs.size());
  // Roots first so that a comment listed before its parent still attaches.
  for (std::size_t i = 0; i < docs.size(); ++i) {
    const corpus::TweetDocument& doc = docs[i];
    const bool attaches = doc.parent_id && root_thread.count(*doc.parent_id);
    if (attaches) continue;
    if (!doc.parent_id) root_thread[doc.id] = index.threads.size();
    index.positions[i] = {index.threads.size(), 0};
    index.threads.push_back(Thread{doc, {}});
  }
  for (std::size_t i = 0; i < docs.size(); ++i) {
    const corpus::TweetDocument& doc = docs[i];
    if (!doc.parent_id) continue;
    auto it = root_thread.find(*doc.parent_id);
    if (it == root_thread.end()) continue;
    Thread& t = index.threads[it->second];
    t.comments.push_back(doc);
    index.positions[i] = {it->second, t.comments.size()};
  }
  return index;
}

corpus::Corpus flatten(const ThreadIndex& index, const std::vector<Thread>& threads) {
  corpus::Corpus out;
  out.reserve(index.positions.size());
  for (const auto& [t, slot] : index.positions) {
    out.push_back(slot == 0 ? threads.at(t).root : threads.at(t).comments.at(slot - 1));
  }
  return out;
}

corpus::TweetDocument& locate(Thread& thread, const Location& where) {
  if (where.is_root()) return thread.root;
  for (corpus::TweetDocument& c : thread.comments) {
    if (c.id == where.comment_id) return c;
  }
  throw validation_error("no comment '" + where.comment_id + "' in thread '" + thread.root.id + "'");
}

const corpus::TweetDocument& locate(const Thread& thread, const Location& where) {
  return locate(const_cast<Thread&>(thread), where);
}

}  // namespace mim::perturb
