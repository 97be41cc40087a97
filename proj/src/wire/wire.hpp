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

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <thread>

#include <json.hpp>

#include "corpus/document.hpp"
#include "markov/model.hpp"
#include "perturb/rule.hpp"

namespace httplib {
class Server;
}

namespace mim::wire {

inline constexpr const char* kNdjson = "application/x-ndjson";
// Request-handling threads per server.
inline constexpr std::size_t kWorkers = 32;

struct Endpoint {
  std::string host = "127.0.0.1";
  int port = 0;  // 0 picks a free port

  // "host:port" or ":port". Throws Error(validation).
  static Endpoint parse(std::string_view text);
  std::string to_string() const;
};

// Runs an httplib server on a background thread.
class ServerThread {
 public:
  ServerThread();
  ~ServerThread();
  ServerThread(const ServerThread&) = delete;
  ServerThread& operator=(const ServerThread&) = delete;

  int port() const noexcept { return port_; }
  bool running() const noexcept;
  void stop();
  void wait();

 protected:
  httplib::Server& server() { return *server_; }
  // Binds and starts listening; throws Error(io) when the address is taken.
  void launch(const Endpoint& bind);

 private:
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
  int port_ = 0;
};

// Authentic content origin: GET /feed and GET /tweet/{id}, JSON Lines.
class OriginServer : public ServerThread {
 public:
  explicit OriginServer(corpus::Corpus corpus);
  void start(const Endpoint& bind);

  const std::string& feed_payload() const noexcept { return feed_; }

 private:
  corpus::Corpus corpus_;
  std::string feed_;
};

// Append-only JSONL file; each line is written whole under a lock.
class AuditLog {
 public:
  explicit AuditLog(const std::filesystem::path& path);
  void append(const nlohmann::ordered_json& entry);

 private:
  std::mutex mutex_;
  std::ofstream out_;
};

struct ProxyConfig {
  Endpoint upstream;
  perturb::RuleSet rules;
  std::optional<markov::Model> replacer;
  std::filesystem::path audit_path;
};

// Man-in-the-middle: forwards to the origin and rewrites every document in
// the returned payload with the ruleset. Untouched lines pass through
// byte-identical; each rewritten thread adds one audit entry
// {request_id, tweet_id, edits}.
class ProxyServer : public ServerThread {
 public:
  explicit ProxyServer(ProxyConfig config);
  void start(const Endpoint& bind);

  std::uint64_t requests_handled() const noexcept { return next_request_.load(); }

  struct Outcome {
    int status = 200;
    std::string body;
    std::string content_type = kNdjson;
  };
  // The per-request pipeline, minus the socket: rewrite an upstream payload.
  Outcome rewrite_payload(std::string_view upstream_body, const std::string& request_id, const std::string& path);

 private:
  ProxyConfig config_;
  AuditLog audit_;
  std::atomic<std::uint64_t> next_request_{0};
};

}  // namespace mim::wire
