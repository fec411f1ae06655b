#include "animlab/harness/serve.hpp"

#include <cmath>
#include <stdexcept>

namespace animlab {

std::string error_reply(const std::string& message) { return Json{{"error", message}}.dump(); }

ServeSession::ServeSession(double rate) : rate_(rate) {
  if (!(rate > 0.0) || !std::isfinite(rate)) throw std::invalid_argument("rate must be positive");
}

ServeSession::Channel* ServeSession::find(const std::string& name) {
  for (auto& c : channels_) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

std::optional<std::string> ServeSession::handle(const std::string& message) {
  try {
    const Json j = Json::parse(message);
    if (!j.is_object() || !j.contains("op") || !j.at("op").is_string()) {
      return error_reply("message must be an object with a string 'op'");
    }
    const auto op = j.at("op").get<std::string>();
    if (op == "create") {
      const auto name = j.at("channel").get<std::string>();
      if (find(name)) return error_reply("channel '" + name + "' already exists");
      const double x0 = j.value("x0", 0.0);
      channels_.push_back({name, make_engine(j.at("engine"), x0, rate_), x0, std::nullopt});
      return std::nullopt;
    }
    if (op == "retarget") {
      const auto name = j.at("channel").get<std::string>();
      Channel* c = find(name);
      if (!c) return error_reply("unknown channel '" + name + "'");
      const double value = j.at("value").get<double>();
      if (!std::isfinite(value)) return error_reply("value must be finite");
      c->pending = value;
      return std::nullopt;
    }
    if (op == "zoom") {
      const double value = j.at("value").get<double>();
      if (!std::isfinite(value)) return error_reply("value must be finite");
      zoom_ = value;
      return std::nullopt;
    }
    if (op == "close") {
      closed_ = true;
      return std::nullopt;
    }
    return error_reply("unknown op '" + op + "'");
  } catch (const std::exception& e) {
    return error_reply(e.what());
  }
}

std::string ServeSession::tick() {
  const Time t = static_cast<double>(ticks_++) / rate_;
  Json frame;
  frame["t"] = t;
  if (zoom_) frame["zoom"] = *zoom_;
  Json channels = Json::object();
  for (auto& c : channels_) {
    if (c.pending) {
      c.engine.animator->retarget(t, *c.pending);
      c.target = *c.pending;
      c.pending.reset();
    }
    const double y = c.engine.animator->eval(t);
    Json ch{{"target", c.target}, {"output", y}};
    if (zoom_) ch["height"] = *zoom_ * y;
    channels[c.name] = std::move(ch);
  }
  frame["channels"] = std::move(channels);
  return frame.dump();
}

}  // namespace animlab
