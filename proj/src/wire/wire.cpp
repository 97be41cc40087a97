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

#include "wire/wire.hpp"

#include <charconv>
#include <cstdio>

#include <sys/socket.h>

#include <httplib.h>

#include "common/error.hpp"
#include "corpus/corpus_io.hpp"
#include "perturb/engine.hpp"

namespace mim::wire {

Endpoint Endpoint::parse(std::string_view text) {
  const auto colon = text.rfind(':');
  if (colon == std::string_view::npos) throw validation_error("address '" + std::string(text) + "' must be host:port");
  Endpoint ep;
  if (colon > 0) ep.host = std::string(text.substr(0, colon));
  std::string_view port = text.substr(colon + 1);
  auto [ptr, ec] = std::from_chars(port.data(), port.data() + port.size(), ep.port);
  if (ec != std::errc() || ptr != port.data() + port.size() || ep.port < 0 || ep.port > 65535) {
    throw validation_error("address '" + std::string(text) + "' has an invalid port");
  }
  return ep;
}

std::string Endpoint::to_string() const { return host + ":" + std::to_string(port); }

ServerThread::ServerThread() : server_(std::make_unique<httplib::Server>()) {
  // Address reuse only; a shared port would split traffic between servers.
  server_->set_socket_options([](socket_t sock) {
    int yes = 1;
    ::setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
  });
  server_->new_task_queue = [] { return new httplib::ThreadPool(kWorkers); };
}

ServerThread::~ServerThread() {
  stop();
  wait();
}

bool ServerThread::running() const noexcept { return server_->is_running(); }

void ServerThread::launch(const Endpoint& bind) {
  if (bind.port == 0) {
    port_ = server_->bind_to_any_port(bind.host);
    if (port_ < 0) throw io_error("cannot bind " + bind.host);
  } else {
    if (!server_->bind_to_port(bind.host, bind.port)) throw io_error("cannot bind " + bind.to_string());
    port_ = bind.port;
  }
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
}

void ServerThread::stop() { server_->stop(); }

void ServerThread::wait() {
  if (thread_.joinable()) thread_.join();
}

OriginServer::OriginServer(corpus::Corpus corpus) : corpus_(std::move(corpus)), feed_(corpus::serialize_corpus(corpus_)) {}

void OriginServer::start(const Endpoint& bind) {
  server().Get("/feed", [this](const httplib::Request&, httplib::Response& res) {
    res.set_content(feed_, kNdjson);
  });
  server().Get(R"(/tweet/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
    const std::string id = req.matches[1];
    if (const corpus::TweetDocument* doc = corpus::find_document(corpus_, id)) {
      res.set_content(corpus::serialize_document(*doc) + "\n", kNdjson);
    } else {
      res.status = 404;
      res.set_content("unknown tweet id\n", "text/plain");
    }
  });
  launch(bind);
}

AuditLog::AuditLog(const std::filesystem::path& path) {
  if (path.empty()) return;
  out_.open(path, std::ios::binary | std::ios::app);
  if (!out_) throw io_error("cannot open audit log '" + path.string() + "'");
}

void AuditLog::append(const nlohmann::ordered_json& entry) {
  const std::string line = entry.dump() + "\n";
  std::lock_guard<std::mutex> lock(mutex_);
  if (!out_.is_open()) return;
  out_.write(line.data(), static_cast<std::streamsize>(line.size()));
  out_.flush();
}

ProxyServer::ProxyServer(ProxyConfig config) : config_(std::move(config)), audit_(config_.audit_path) {
  for (const perturb::PerturbationRule& rule : config_.rules) {
    perturb::validate(rule);
    if (rule.uses_markov() && !config_.replacer) {
      throw config_error("rule replacing '" + rule.match + "' uses \"&markov\" but no Markov model is configured");
    }
  }
}

ProxyServer::Outcome ProxyServer::rewrite_payload(std::string_view upstream_body, const std::string& request_id,
                                                  const std::string& path) {
  std::vector<corpus::Record> records;
  try {
    records = corpus::parse_records(upstream_body, {.require_parents = false});
  } catch (const Error& e) {
    nlohmann::ordered_json note;
    note["request_id"] = request_id;
    note["path"] = path;
    note["error"] = std::string("malformed upstream payload: ") + e.what();
    audit_.append(note);
    return {502, "malformed upstream payload\n", "text/plain"};
  }

  corpus::Corpus docs;
  docs.reserve(records.size());
  for (const corpus::Record& r : records) docs.push_back(r.doc);
  const markov::Model* replacer = config_.replacer ? &*config_.replacer : nullptr;
  const perturb::FeedRewrite rewrite = perturb::apply_ruleset_to_feed(docs, config_.rules, replacer);

  for (const perturb::Rewrite& t : rewrite.threads) {
    if (t.log.empty()) continue;
    nlohmann::ordered_json entry;
    entry["request_id"] = request_id;
    entry["tweet_id"] = t.thread.root.id;
    entry["edits"] = perturb::to_json(t.log);
    audit_.append(entry);
  }

  // Rebuild the payload line by line so framing (blank lines, CRLF, final
  // newline) is exactly what the origin sent.
  std::vector<std::string> replaced(records.empty() ? 0 : records.back().line + 1);
  std::vector<bool> has(replaced.size(), false);
  for (std::size_t k = 0; k < records.size(); ++k) {
    if (rewrite.docs[k] == records[k].doc) continue;
    replaced[records[k].line] = corpus::serialize_document(rewrite.docs[k]);
    has[records[k].line] = true;
  }
  Outcome out;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < upstream_body.size()) {
    ++line_no;
    std::size_t eol = upstream_body.find('\n', pos);
    const bool newline = eol != std::string_view::npos;
    if (!newline) eol = upstream_body.size();
    std::string_view line = upstream_body.substr(pos, eol - pos);
    if (line_no < has.size() && has[line_no]) {
      const bool cr = !line.empty() && line.back() == '\r';
      out.body += replaced[line_no];
      if (cr) out.body += '\r';
    } else {
      out.body += line;
    }
    if (newline) out.body += '\n';
    pos = eol + 1;
  }
  return out;
}

void ProxyServer::start(const Endpoint& bind) {
  server().Get(R"(/.*)", [this](const httplib::Request& req, httplib::Response& res) {
    const std::uint64_t n = next_request_.fetch_add(1) + 1;
    char id[32];
    std::snprintf(id, sizeof id, "req-%06llu", static_cast<unsigned long long>(n));

    httplib::Client upstream(config_.upstream.host, config_.upstream.port);
    upstream.set_connection_timeout(5);
    upstream.set_read_timeout(30);
    httplib::Result got = upstream.Get(req.path);
    if (!got) {
      res.status = 502;
      res.set_content("upstream unreachable\n", "text/plain");
      return;
    }

    const bool rewritable = req.path == "/feed" || req.path.rfind("/tweet/", 0) == 0;
    if (got->status != 200 || !rewritable) {
      res.status = got->status;
      const std::string type = got->has_header("Content-Type") ? got->get_header_value("Content-Type") : "text/plain";
      res.set_content(got->body, type);
      return;
    }
    Outcome out = rewrite_payload(got->body, id, req.path);
    res.status = out.status;
    res.set_content(std::move(out.body), out.content_type);
  });
  launch(bind);
}

}  // namespace mim::wire
