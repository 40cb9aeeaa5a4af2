// Copyright 2026 The mlime Authors.
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

// Line-oriented session service. Each request and response is one JSON
// object on one line.
//
//   {"op":"handshake"}
//     -> {"ok":true,"protocol":"v1","languages":[...]}
//   {"op":"open_session","languages":["en"],"user":"u1"}
//     -> {"ok":true,"session":"s1","layout":{...},"response":{...}}
//   {"op":"event","session":"s1","event":{"type":"tap","x":0.1,"y":0.2,"t":0}}
//     -> {"ok":true,"response":{...}}
//   {"op":"close_session","session":"s1"}
//     -> {"ok":true}
//
// Failures answer {"ok":false,"error":{"code":..,"element":..,"message":..}}
// and leave every session as it was. An "id" member on a request is echoed.

#pragma once

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <atomic>
#include <cerrno>
#include <cstring>
#include <functional>
#include <istream>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"
#include "mlime/assets.hpp"
#include "mlime/error.hpp"
#include "mlime/layout.hpp"
#include "mlime/session.hpp"

namespace mlime {

inline constexpr std::string_view kProtocolVersion = "v1";

struct ServiceConfig {
  std::filesystem::path data_dir = default_data_dir();
  std::optional<std::filesystem::path> personal_dir;  // in-memory when unset
  std::vector<std::string> preload;                   // fail fast on missing assets
  SessionOptions session;
};

inline nlohmann::json error_json(const std::string& code, const std::string& element,
                                 const std::string& message) {
  return {{"ok", false}, {"error", {{"code", code}, {"element", element}, {"message", message}}}};
}

class Service {
 public:
  explicit Service(ServiceConfig config)
      : config_(std::move(config)),
        assets_(std::make_shared<AssetStore>(config_.data_dir)),
        personal_(config_.personal_dir ? std::make_shared<PersonalStore>(*config_.personal_dir)
                                       : std::make_shared<PersonalStore>()) {
    for (const auto& tag : config_.preload) assets_->get(tag);
  }

  /// Answers one request line. Never throws.
  std::string handle_line(std::string_view line) {
    nlohmann::json reply;
    nlohmann::json id;
    try {
      nlohmann::json req;
      try {
        req = nlohmann::json::parse(line);
      } catch (const nlohmann::json::parse_error& e) {
        fail("MalformedMessage", "line", std::string("not JSON: ") + e.what());
      }
      if (!req.is_object()) fail("MalformedMessage", "line", "request must be an object");
      if (req.contains("id")) id = req["id"];
      reply = dispatch(req);
    } catch (const Error& e) {
      reply = error_json(e.code(), e.element(), e.what());
    } catch (const std::exception& e) {
      reply = error_json("InternalError", "", e.what());
    }
    if (!id.is_null()) reply["id"] = id;
    return reply.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
  }

  std::size_t session_count() const {
    std::lock_guard lock(mu_);
    return sessions_.size();
  }

 private:
  struct Slot {
    std::mutex mu;
    std::unique_ptr<Session> session;
  };

  nlohmann::json dispatch(const nlohmann::json& req) {
    if (!req.contains("op") || !req["op"].is_string()) {
      fail("MalformedMessage", "op", "request needs a string \"op\"");
    }
    const std::string op = req["op"].get<std::string>();
    if (op == "handshake") {
      return {{"ok", true}, {"protocol", kProtocolVersion}, {"languages", assets_->available()}};
    }
    if (op == "open_session") return open_session(req);
    if (op == "event") {
      auto slot = find(req);
      if (!req.contains("event")) fail("InvalidEvent", "event", "missing event");
      const SessionEvent e = event_from_json(req["event"]);
      std::lock_guard lock(slot->mu);
      return {{"ok", true}, {"response", response_to_json(slot->session->handle(e))}};
    }
    if (op == "close_session") {
      const std::string id = session_id(req);
      std::lock_guard lock(mu_);
      if (sessions_.erase(id) == 0) fail("UnknownSession", id);
      return {{"ok", true}};
    }
    fail("MalformedMessage", op, "unknown op " + op);
  }

  nlohmann::json open_session(const nlohmann::json& req) {
    std::vector<std::string> languages;
    std::string user = config_.session.user;
    try {
      languages = req.at("languages").get<std::vector<std::string>>();
      if (req.contains("user")) user = req["user"].get<std::string>();
    } catch (const nlohmann::json::exception& e) {
      fail("MalformedMessage", "languages", e.what());
    }
    SessionOptions options = config_.session;
    options.user = user;
    std::string id;
    {
      std::lock_guard lock(mu_);
      id = "s" + std::to_string(++next_id_);
    }
    auto slot = std::make_shared<Slot>();
    slot->session = std::make_unique<Session>(id, assets_, personal_, languages, options);
    SessionEvent hello;
    hello.type = EventType::kRequestSuggestions;
    const auto first = slot->session->handle(hello);
    nlohmann::json reply = {{"ok", true},
                            {"session", id},
                            {"layout", layout_to_json(slot->session->layout())},
                            {"response", response_to_json(first)}};
    std::lock_guard lock(mu_);
    sessions_[id] = std::move(slot);
    return reply;
  }

  static std::string session_id(const nlohmann::json& req) {
    if (!req.contains("session") || !req["session"].is_string()) {
      fail("MalformedMessage", "session", "request needs a string \"session\"");
    }
    return req["session"].get<std::string>();
  }

  std::shared_ptr<Slot> find(const nlohmann::json& req) {
    const std::string id = session_id(req);
    std::lock_guard lock(mu_);
    auto it = sessions_.find(id);
    if (it == sessions_.end()) fail("UnknownSession", id);
    return it->second;
  }

  ServiceConfig config_;
  std::shared_ptr<AssetStore> assets_;
  std::shared_ptr<PersonalStore> personal_;
  mutable std::mutex mu_;
  std::map<std::string, std::shared_ptr<Slot>> sessions_;
  std::uint64_t next_id_ = 0;
};

/// Serves requests from `in` until end of input.
inline void serve_stream(Service& service, std::istream& in, std::ostream& out) {
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    out << service.handle_line(line) << '\n' << std::flush;
  }
}

/// Listens on 127.0.0.1:`port` (0 picks a free port) with one thread per
/// connection. `on_listen` receives the bound port. Returns only on error or
/// when `stop` becomes true between accepts.
inline void serve_tcp(Service& service, int port, const std::function<void(int)>& on_listen,
                      const std::atomic<bool>* stop = nullptr) {
  const int fd = ::socket(AF_INET, SOCK_STREAM, 0);
  if (fd < 0) fail("IoError", "socket", std::strerror(errno));
  const int one = 1;
  ::setsockopt(fd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
  addr.sin_port = htons(static_cast<std::uint16_t>(port));
  if (::bind(fd, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0 || ::listen(fd, 16) != 0) {
    const std::string why = std::strerror(errno);
    ::close(fd);
    fail("IoError", "port " + std::to_string(port), "cannot listen: " + why);
  }
  socklen_t len = sizeof(addr);
  ::getsockname(fd, reinterpret_cast<sockaddr*>(&addr), &len);
  if (on_listen) on_listen(ntohs(addr.sin_port));
  while (stop == nullptr || !stop->load()) {
    const int client = ::accept(fd, nullptr, nullptr);
    if (client < 0) {
      if (errno == EINTR) continue;
      break;
    }
    std::thread([&service, client] {
      std::string buffer;
      char chunk[4096];
      while (true) {
        const ssize_t n = ::recv(client, chunk, sizeof(chunk), 0);
        if (n <= 0) break;
        buffer.append(chunk, static_cast<std::size_t>(n));
        std::size_t nl;
        while ((nl = buffer.find('\n')) != std::string::npos) {
          std::string line = buffer.substr(0, nl);
          buffer.erase(0, nl + 1);
          if (!line.empty() && line.back() == '\r') line.pop_back();
          if (line.empty()) continue;
          const std::string reply = service.handle_line(line) + "\n";
          std::size_t sent = 0;
          while (sent < reply.size()) {
            const ssize_t m = ::send(client, reply.data() + sent, reply.size() - sent, MSG_NOSIGNAL);
            if (m <= 0) break;
            sent += static_cast<std::size_t>(m);
          }
        }
      }
      ::close(client);
    }).detach();
  }
  ::close(fd);
}

}  // namespace mlime
