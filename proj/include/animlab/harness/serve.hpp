#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "animlab/harness/engine.hpp"

namespace animlab {

/// Protocol state of one client session, independent of the transport.
///
/// Client messages (one JSON object each):
///   {"op":"create","channel":name,"x0":v,"engine":{...}}
///   {"op":"retarget","channel":name,"value":v}
///   {"op":"zoom","value":z}
///   {"op":"close"}
/// Retargets are applied at the next tick. Frames look like
///   {"t":s,"channels":{name:{"target":x,"output":y}}}
/// and, once a zoom has been set, also carry "zoom" and a per-channel
/// "height" = zoom * output.
class ServeSession {
 public:
  explicit ServeSession(double rate);

  /// Returns an error reply for malformed or invalid messages, nothing
  /// otherwise. The session stays usable after an error.
  std::optional<std::string> handle(const std::string& message);

  /// Applies pending retargets at the next tick time and renders its frame.
  std::string tick();

  bool closed() const { return closed_; }
  double rate() const { return rate_; }
  long long ticks() const { return ticks_; }

 private:
  struct Channel {
    std::string name;
    Engine engine;
    double target;
    std::optional<double> pending;
  };

  Channel* find(const std::string& name);

  double rate_;
  long long ticks_ = 0;
  std::vector<Channel> channels_;
  std::optional<double> zoom_;
  bool closed_ = false;
};

std::string error_reply(const std::string& message);

/// WebSocket endpoint: one ServeSession per connection, frames pushed at
/// `rate`. All sessions share one I/O thread.
class Server {
 public:
  /// Port 0 picks a free port; see port().
  Server(unsigned short port, double rate, const std::string& address = "127.0.0.1");
  ~Server();

  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  unsigned short port() const;
  /// Serves on the calling thread until stop().
  void run();
  /// Serves on a background thread.
  void start();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace animlab
