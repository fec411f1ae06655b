#include <boost/asio.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/websocket.hpp>
#include <chrono>
#include <deque>
#include <iostream>
#include <thread>

#include "animlab/harness/serve.hpp"

namespace animlab {

namespace asio = boost::asio;
namespace beast = boost::beast;
namespace websocket = beast::websocket;
using tcp = asio::ip::tcp;

namespace {

class Connection : public std::enable_shared_from_this<Connection> {
 public:
  Connection(tcp::socket socket, double rate)
      : ws_(std::move(socket)), timer_(ws_.get_executor()), session_(rate) {}

  void start() {
    ws_.async_accept([self = shared_from_this()](beast::error_code ec) {
      if (ec) return;
      self->started_ = std::chrono::steady_clock::now();
      self->read();
      self->schedule();
    });
  }

  void shutdown() {
    timer_.cancel();
    if (ws_.is_open()) {
      ws_.async_close(websocket::close_code::going_away, [self = shared_from_this()](beast::error_code) {});
    }
  }

 private:
  void read() {
    ws_.async_read(buffer_, [self = shared_from_this()](beast::error_code ec, std::size_t) {
      if (ec) {
        self->timer_.cancel();
        return;
      }
      const std::string message = beast::buffers_to_string(self->buffer_.data());
      self->buffer_.consume(self->buffer_.size());
      if (auto reply = self->session_.handle(message)) self->send(std::move(*reply));
      if (self->session_.closed()) {
        self->close();
        return;
      }
      self->read();
    });
  }

  // Deadlines are absolute, so frame timing does not drift.
  void schedule() {
    const auto at = started_ + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                   std::chrono::duration<double>(
                                       static_cast<double>(session_.ticks()) / session_.rate()));
    timer_.expires_at(at);
    timer_.async_wait([self = shared_from_this()](beast::error_code ec) {
      if (ec || self->session_.closed() || !self->ws_.is_open()) return;
      self->send(self->session_.tick());
      self->schedule();
    });
  }

  void send(std::string text) {
    outbox_.push_back(std::move(text));
    if (outbox_.size() == 1) write();
  }

  void write() {
    ws_.text(true);
    ws_.async_write(asio::buffer(outbox_.front()),
                    [self = shared_from_this()](beast::error_code ec, std::size_t) {
                      if (ec) {
                        self->timer_.cancel();
                        return;
                      }
                      self->outbox_.pop_front();
                      if (!self->outbox_.empty()) {
                        self->write();
                      } else if (self->closing_) {
                        self->close();
                      }
                    });
  }

  void close() {
    timer_.cancel();
    if (!outbox_.empty()) {
      closing_ = true;  // finish pending writes first
      return;
    }
    ws_.async_close(websocket::close_code::normal, [self = shared_from_this()](beast::error_code) {});
  }

  websocket::stream<tcp::socket> ws_;
  asio::steady_timer timer_;
  beast::flat_buffer buffer_;
  ServeSession session_;
  std::deque<std::string> outbox_;
  std::chrono::steady_clock::time_point started_;
  bool closing_ = false;
};

}  // namespace

struct Server::Impl {
  Impl(unsigned short port, double rate, const std::string& address)
      : acceptor(io, tcp::endpoint(asio::ip::make_address(address), port)), rate(rate) {
    ServeSession probe(rate);  // validates the rate
  }

  void accept() {
    acceptor.async_accept([this](beast::error_code ec, tcp::socket socket) {
      if (ec) return;
      auto c = std::make_shared<Connection>(std::move(socket), rate);
      connections.push_back(c);
      c->start();
      accept();
    });
  }

  asio::io_context io;
  tcp::acceptor acceptor;
  double rate;
  std::vector<std::weak_ptr<Connection>> connections;
  std::thread worker;
};

Server::Server(unsigned short port, double rate, const std::string& address)
    : impl_(std::make_unique<Impl>(port, rate, address)) {
  impl_->accept();
}

Server::~Server() { stop(); }

unsigned short Server::port() const { return impl_->acceptor.local_endpoint().port(); }

void Server::run() { impl_->io.run(); }

void Server::start() {
  impl_->worker = std::thread([this] { impl_->io.run(); });
}

void Server::stop() {
  asio::post(impl_->io, [impl = impl_.get()] {
    beast::error_code ignored;
    impl->acceptor.close(ignored);
    for (auto& w : impl->connections) {
      if (auto c = w.lock()) c->shutdown();
    }
  });
  // Give closing handshakes a moment, then stop regardless.
  auto guard = std::make_shared<asio::steady_timer>(impl_->io, std::chrono::milliseconds(200));
  guard->async_wait([guard, impl = impl_.get()](beast::error_code) { impl->io.stop(); });
  if (impl_->worker.joinable()) impl_->worker.join();
}

}  // namespace animlab
