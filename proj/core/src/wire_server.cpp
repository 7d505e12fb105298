// Copyright 2026 The mtp2skill Authors
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


#include "mtp2skill/wire_server.hpp"

#include <deque>
#include <mutex>
#include <set>
#include <thread>

#include <boost/asio.hpp>
#include <json.hpp>

#include "mtp2skill/error.hpp"

namespace mtp2skill::sim {

namespace asio = boost::asio;
using asio::ip::tcp;
using nlohmann::json;

namespace {

json to_json(const Value& v) {
  if (auto* i = std::get_if<std::int64_t>(&v)) return *i;
  return std::get<double>(v);
}

json failure(std::string_view code, const std::string& message) {
  return {{"ok", false}, {"error", code}, {"message", message}};
}

class Session : public std::enable_shared_from_this<Session> {
 public:
  Session(tcp::socket socket, SimServer& sim, std::size_t limit)
      : socket_(std::move(socket)), sim_(sim), limit_(limit) {}

  void start() { read(); }

  void close() {
    std::vector<std::uint64_t> subs;
    {
      std::lock_guard lock(mu_);
      if (closed_) return;
      closed_ = true;
      subs.swap(subs_);
    }
    for (auto h : subs) sim_.unsubscribe(h);
    boost::system::error_code ec;
    socket_.shutdown(tcp::socket::shutdown_both, ec);
    socket_.close(ec);
  }

 private:
  void read() {
    auto self = shared_from_this();
    asio::async_read_until(socket_, buf_, '\n', [self](boost::system::error_code ec, std::size_t n) {
      if (ec) {
        self->close();
        return;
      }
      std::string line(asio::buffers_begin(self->buf_.data()),
                       asio::buffers_begin(self->buf_.data()) + static_cast<std::ptrdiff_t>(n));
      self->buf_.consume(n);
      while (!line.empty() && (line.back() == '\n' || line.back() == '\r')) line.pop_back();
      if (!line.empty()) self->handle(line);
      self->read();
    });
  }

  void handle(const std::string& line) {
    json req;
    try {
      req = json::parse(line);
    } catch (const json::exception& e) {
      enqueue(failure("BadRequest", e.what()).dump(), false);
      return;
    }
    try {
      std::string op = req.value("op", "");
      if (op == "list") {
        json nodes = json::array();
        for (const auto& [key, var] : sim_.nodes())
          nodes.push_back({{"ns", key.ns}, {"id", key.id}, {"value", to_json(var.value)},
                           {"writable", var.writable}});
        enqueue(json{{"ok", true}, {"nodes", nodes}}.dump(), false);
        return;
      }
      NodeKey key{req.at("ns").get<std::string>(), req.at("id").get<std::string>()};
      if (op == "read") {
        enqueue(json{{"ok", true}, {"value", to_json(sim_.read(key))}}.dump(), false);
      } else if (op == "write") {
        const auto& v = req.at("value");
        Value value;
        if (v.is_number_integer())
          value = v.get<std::int64_t>();
        else if (v.is_number())
          value = v.get<double>();
        else
          throw std::invalid_argument("value must be a number");
        sim_.write(key, value);
        enqueue(json{{"ok", true}}.dump(), false);
      } else if (op == "subscribe") {
        subscribe(key);
      } else {
        enqueue(failure("BadRequest", "unknown op '" + op + "'").dump(), false);
      }
    } catch (const Error& e) {
      enqueue(failure(to_string(e.code()), e.detail()).dump(), false);
    } catch (const std::exception& e) {
      enqueue(failure("BadRequest", e.what()).dump(), false);
    }
  }

  void subscribe(const NodeKey& key) {
    std::weak_ptr<Session> weak = shared_from_this();
    auto seq = std::make_shared<std::uint64_t>(0);
    // The subscription reply is produced by the initial callback so that it
    // is queued before any change event.
    auto handle = sim_.subscribe(key, [weak, seq](const NodeKey& k, const Value& v, bool initial) {
      auto self = weak.lock();
      if (!self) return;
      if (initial) {
        self->enqueue(json{{"ok", true}, {"value", to_json(v)}}.dump(), false);
      } else {
        json ev{{"event", "change"}, {"ns", k.ns}, {"id", k.id}, {"value", to_json(v)},
                {"seq", ++*seq}};
        self->enqueue(ev.dump(), true);
      }
    });
    std::lock_guard lock(mu_);
    if (closed_) {
      sim_.unsubscribe(handle);
      return;
    }
    subs_.push_back(handle);
  }

  void enqueue(std::string line, bool event) {
    {
      std::lock_guard lock(mu_);
      if (closed_) return;
      if (event && pendingEvents_ >= limit_) {
        // Never block the simulator on a slow reader: drop the oldest event.
        for (auto it = out_.begin() + (writing_ ? 1 : 0); it != out_.end(); ++it) {
          if (!it->second) continue;
          out_.erase(it);
          --pendingEvents_;
          ++dropped_;
          break;
        }
      }
      out_.emplace_back(std::move(line) + "\n", event);
      if (event) ++pendingEvents_;
    }
    auto self = shared_from_this();
    asio::post(socket_.get_executor(), [self] { self->flush(); });
  }

  void flush() {
    std::lock_guard lock(mu_);
    if (writing_ || out_.empty() || closed_) return;
    if (dropped_ > 0) {
      out_.emplace_front(json{{"event", "gap"}, {"dropped", dropped_}}.dump() + "\n", false);
      dropped_ = 0;
    }
    writing_ = true;
    auto self = shared_from_this();
    asio::async_write(socket_, asio::buffer(out_.front().first),
                      [self](boost::system::error_code ec, std::size_t) {
                        {
                          std::lock_guard lock(self->mu_);
                          if (self->out_.front().second) --self->pendingEvents_;
                          self->out_.pop_front();
                          self->writing_ = false;
                        }
                        if (ec) {
                          self->close();
                          return;
                        }
                        self->flush();
                      });
  }

  tcp::socket socket_;
  asio::streambuf buf_;
  SimServer& sim_;
  std::size_t limit_;

  std::mutex mu_;
  std::deque<std::pair<std::string, bool>> out_;  // line, is event
  std::size_t pendingEvents_ = 0;
  std::uint64_t dropped_ = 0;
  bool writing_ = false;
  bool closed_ = false;
  std::vector<std::uint64_t> subs_;
};

}  // namespace

struct WireServer::Impl {
  Impl(SimServer& s, WireOptions o) : sim(s), options(std::move(o)), acceptor(io), ticker(io) {}

  void accept() {
    acceptor.async_accept([this](boost::system::error_code ec, tcp::socket socket) {
      if (ec) return;
      auto session = std::make_shared<Session>(std::move(socket), sim, options.queueLimit);
      {
        std::lock_guard lock(mu);
        sessions.push_back(session);
      }
      session->start();
      accept();
    });
  }

  void tick() {
    if (!options.tick) return;
    ticker.expires_after(*options.tick);
    ticker.async_wait([this](boost::system::error_code ec) {
      if (ec) return;
      sim.advance(*options.tick);
      tick();
    });
  }

  SimServer& sim;
  WireOptions options;
  asio::io_context io;
  tcp::acceptor acceptor;
  asio::steady_timer ticker;
  std::thread thread;
  std::mutex mu;
  std::vector<std::weak_ptr<Session>> sessions;
  bool started = false;
};

WireServer::WireServer(SimServer& sim, WireOptions options)
    : impl_(std::make_unique<Impl>(sim, std::move(options))) {
  boost::system::error_code ec;
  auto address = asio::ip::make_address(impl_->options.host, ec);
  if (ec) throw Error(ErrorCode::Io, "bad listen address '" + impl_->options.host + "'");
  tcp::endpoint ep(address, impl_->options.port);
  impl_->acceptor.open(ep.protocol(), ec);
  if (!ec) impl_->acceptor.set_option(tcp::acceptor::reuse_address(true), ec);
  if (!ec) impl_->acceptor.bind(ep, ec);
  if (!ec) impl_->acceptor.listen(asio::socket_base::max_listen_connections, ec);
  if (ec)
    throw Error(ErrorCode::PortInUse, impl_->options.host + ":" +
                                          std::to_string(impl_->options.port) + ": " + ec.message());
}

WireServer::~WireServer() { stop(); }

std::uint16_t WireServer::port() const noexcept {
  boost::system::error_code ec;
  auto ep = impl_->acceptor.local_endpoint(ec);
  return ec ? 0 : ep.port();
}

void WireServer::start() {
  if (impl_->started) return;
  impl_->started = true;
  impl_->accept();
  impl_->tick();
  impl_->thread = std::thread([this] { impl_->io.run(); });
}

void WireServer::run() {
  if (impl_->started) return;
  impl_->started = true;
  impl_->accept();
  impl_->tick();
  impl_->io.run();
}

void WireServer::stop() {
  if (!impl_) return;
  asio::post(impl_->io, [this] {
    boost::system::error_code ec;
    impl_->acceptor.close(ec);
    impl_->ticker.cancel();
  });
  {
    std::lock_guard lock(impl_->mu);
    for (auto& w : impl_->sessions)
      if (auto s = w.lock()) asio::post(impl_->io, [s] { s->close(); });
    impl_->sessions.clear();
  }
  if (impl_->thread.joinable()) {
    impl_->thread.join();
  } else if (!impl_->started) {
    impl_->io.run();
  }
  impl_->io.stop();
}

}  // namespace mtp2skill::sim
