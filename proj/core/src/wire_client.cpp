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


#include "mtp2skill/wire_client.hpp"

#include <condition_variable>
#include <deque>
#include <map>
#include <mutex>
#include <thread>

#include <boost/asio.hpp>
#include <json.hpp>

#include "mtp2skill/error.hpp"

namespace mtp2skill::sim {

namespace asio = boost::asio;
using asio::ip::tcp;
using nlohmann::json;

namespace {

Value from_json(const json& v) {
  if (v.is_number_integer()) return v.get<std::int64_t>();
  if (v.is_number()) return v.get<double>();
  throw Error(ErrorCode::Io, "non-numeric value in reply: " + v.dump());
}

json to_json(const Value& v) {
  if (auto* i = std::get_if<std::int64_t>(&v)) return *i;
  return std::get<double>(v);
}

}  // namespace

struct WireClient::Impl {
  asio::io_context io;
  tcp::socket socket{io};
  std::chrono::milliseconds timeout;
  std::thread reader;

  std::mutex requestMu;  // one request in flight
  std::mutex mu;
  std::condition_variable cv;
  std::deque<json> replies;
  bool eof = false;
  std::multimap<NodeKey, EventHandler> handlers;

  void read_loop() {
    asio::streambuf buf;
    for (;;) {
      boost::system::error_code ec;
      std::size_t n = asio::read_until(socket, buf, '\n', ec);
      if (ec) break;
      std::string line(asio::buffers_begin(buf.data()),
                       asio::buffers_begin(buf.data()) + static_cast<std::ptrdiff_t>(n));
      buf.consume(n);
      json msg;
      try {
        msg = json::parse(line);
      } catch (const json::exception&) {
        continue;
      }
      if (msg.contains("event")) {
        if (msg["event"] != "change") continue;
        ChangeEvent ev{{msg.value("ns", ""), msg.value("id", "")},
                       from_json(msg.at("value")),
                       msg.value("seq", std::uint64_t{0})};
        std::vector<EventHandler> targets;
        {
          std::lock_guard lock(mu);
          auto [lo, hi] = handlers.equal_range(ev.node);
          for (auto it = lo; it != hi; ++it) targets.push_back(it->second);
        }
        for (auto& h : targets) h(ev);
        continue;
      }
      std::lock_guard lock(mu);
      replies.push_back(std::move(msg));
      cv.notify_all();
    }
    std::lock_guard lock(mu);
    eof = true;
    cv.notify_all();
  }

  json request(const json& req) {
    std::lock_guard serial(requestMu);
    std::string line = req.dump() + "\n";
    boost::system::error_code ec;
    asio::write(socket, asio::buffer(line), ec);
    if (ec) throw Error(ErrorCode::ConnectFailed, "send failed: " + ec.message());
    std::unique_lock lock(mu);
    if (!cv.wait_for(lock, timeout, [&] { return !replies.empty() || eof; }))
      throw Error(ErrorCode::Io, "no reply within " + std::to_string(timeout.count()) + " ms");
    if (replies.empty()) throw Error(ErrorCode::ConnectFailed, "connection closed by server");
    json reply = std::move(replies.front());
    replies.pop_front();
    lock.unlock();
    if (!reply.value("ok", false)) {
      auto name = reply.value("error", std::string("Io"));
      auto code = parse_error_code(name).value_or(ErrorCode::Io);
      throw Error(code, reply.value("message", name));
    }
    return reply;
  }
};

WireClient::WireClient(const std::string& host, std::uint16_t port,
                       std::chrono::milliseconds timeout)
    : impl_(std::make_unique<Impl>()) {
  impl_->timeout = timeout;
  std::string where = host + ":" + std::to_string(port);
  boost::system::error_code ec;
  tcp::resolver resolver(impl_->io);
  auto endpoints = resolver.resolve(host, std::to_string(port), ec);
  if (ec) throw Error(ErrorCode::ConnectFailed, where + ": " + ec.message());
  boost::system::error_code connectEc = asio::error::timed_out;
  asio::async_connect(impl_->socket, endpoints,
                      [&](boost::system::error_code e, const tcp::endpoint&) { connectEc = e; });
  impl_->io.run_for(timeout);
  if (connectEc) {
    impl_->socket.close(ec);
    throw Error(ErrorCode::ConnectFailed, where + ": " + connectEc.message());
  }
  impl_->socket.set_option(tcp::no_delay(true), ec);
  impl_->reader = std::thread([impl = impl_.get()] { impl->read_loop(); });
}

WireClient::~WireClient() { close(); }

void WireClient::close() {
  if (!impl_) return;
  boost::system::error_code ec;
  impl_->socket.shutdown(tcp::socket::shutdown_both, ec);
  if (impl_->reader.joinable()) impl_->reader.join();
  impl_->socket.close(ec);
}

bool WireClient::connected() const noexcept {
  std::lock_guard lock(impl_->mu);
  return impl_->socket.is_open() && !impl_->eof;
}

Value WireClient::read(const NodeKey& node) {
  return from_json(impl_->request({{"op", "read"}, {"ns", node.ns}, {"id", node.id}}).at("value"));
}

void WireClient::write(const NodeKey& node, const Value& value) {
  impl_->request({{"op", "write"}, {"ns", node.ns}, {"id", node.id}, {"value", to_json(value)}});
}

Value WireClient::subscribe(const NodeKey& node, EventHandler handler) {
  std::multimap<NodeKey, EventHandler>::iterator it;
  {
    std::lock_guard lock(impl_->mu);
    it = impl_->handlers.emplace(node, std::move(handler));
  }
  try {
    return from_json(
        impl_->request({{"op", "subscribe"}, {"ns", node.ns}, {"id", node.id}}).at("value"));
  } catch (...) {
    std::lock_guard lock(impl_->mu);
    impl_->handlers.erase(it);
    throw;
  }
}

std::vector<NodeInfo> WireClient::list() {
  std::vector<NodeInfo> out;
  json reply = impl_->request({{"op", "list"}});
  for (const auto& n : reply.at("nodes"))
    out.push_back({{n.at("ns").get<std::string>(), n.at("id").get<std::string>()},
                   from_json(n.at("value")),
                   n.value("writable", false)});
  return out;
}

}  // namespace mtp2skill::sim
