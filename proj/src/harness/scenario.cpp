#include "animlab/harness/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "animlab/apps/histogram.hpp"
#include "animlab/apps/permutation.hpp"
#include "animlab/apps/textdoc.hpp"
#include "animlab/arc.hpp"

namespace animlab {

StepSignal parse_step_signal(const Json& j) {
  const double x0 = j.value("x0", 0.0);
  std::vector<StepEvent> events;
  if (j.contains("events")) {
    for (const auto& e : j.at("events")) {
      if (!e.is_array() || e.size() != 2) throw std::invalid_argument("event must be [t, value]");
      events.push_back({e[0].get<double>(), e[1].get<double>()});
    }
  }
  return StepSignal::from_events(x0, std::move(events));
}

Scenario parse_scenario(const Json& j) {
  Scenario s;
  s.span = j.at("span").get<double>();
  s.rate = j.at("rate").get<double>();
  if (!(s.span > 0.0) || !std::isfinite(s.span)) throw std::invalid_argument("span must be positive");
  if (!(s.rate >= 10.0) || !std::isfinite(s.rate)) throw std::invalid_argument("rate must be at least 10");
  if (j.contains("channels")) {
    for (const auto& [name, ch] : j.at("channels").items()) {
      try {
        ChannelSpec spec{name, parse_step_signal(ch), ch.at("engine")};
        make_engine(spec.engine, spec.signal.initial(), s.rate);
        s.channels.push_back(std::move(spec));
      } catch (const std::exception& e) {
        throw std::invalid_argument("channel '" + name + "': " + e.what());
      }
    }
  }
  if (j.contains("app")) s.app = j.at("app");
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario '" + path + "'");
  return parse_scenario(Json::parse(in));
}

const ChannelTrace& Trace::channel(const std::string& name) const {
  for (const auto& c : channels) {
    if (c.name == name) return c;
  }
  throw std::out_of_range("no channel '" + name + "' in trace");
}

const TraceColumn& Trace::column(const std::string& name) const {
  for (const auto& c : extra) {
    if (c.name == name) return c;
  }
  throw std::out_of_range("no column '" + name + "' in trace");
}

namespace {

void run_histogram(const Scenario& s, const Json& app, Trace& trace) {
  const StepSignal zoom = app.contains("zoom") ? parse_step_signal(app.at("zoom")) : StepSignal(1.0);
  const auto mode = app.value("mode", std::string("filter_count"));
  if (mode != "filter_count" && mode != "filter_height") {
    throw std::invalid_argument("unknown histogram mode '" + mode + "'");
  }
  std::vector<StepSignal> counts;
  std::vector<Json> engines;
  for (const auto& ch : s.channels) {
    counts.push_back(ch.signal);
    engines.push_back(ch.engine);
  }
  std::size_t next = 0;
  HistogramPipeline pipeline(
      counts, zoom,
      [&](double x0) { return make_engine(engines.at(next++), x0, s.rate).animator; },
      mode == "filter_count" ? HistogramPipeline::Mode::filter_count
                             : HistogramPipeline::Mode::filter_height);
  TraceColumn z{"zoom", {}};
  for (Time t : trace.t) z.values.push_back(zoom(t));
  trace.extra.push_back(std::move(z));
  for (std::size_t b = 0; b < s.channels.size(); ++b) {
    TraceColumn col{s.channels[b].name + ".height", {}};
    for (Time t : trace.t) col.values.push_back(pipeline.height(b, t));
    trace.extra.push_back(std::move(col));
  }
}

void run_permutation(const Scenario& s, const Json& app, Trace& trace) {
  const double d = app.value("d", 1.0);
  const Easing inner =
      app.contains("easing") ? parse_easing(app.at("easing"), d) : parse_easing(Json{{"kind", "one_pole_cascade"}}, d);
  ArcEasing kernel(app.value("aspect", kDefaultArcAspect), inner, d,
                   app.value("table_size", std::size_t{1024}));
  std::vector<StepSignal> slots;
  for (const auto& ch : s.channels) slots.push_back(ch.signal);
  PermutationScene scene(std::move(slots), std::move(kernel));
  for (std::size_t k = 0; k < s.channels.size(); ++k) {
    TraceColumn x{s.channels[k].name + ".x", {}};
    TraceColumn y{s.channels[k].name + ".y", {}};
    for (Time t : trace.t) {
      const auto p = scene.position(k, t);
      x.values.push_back(p.x());
      y.values.push_back(p.y());
    }
    trace.extra.push_back(std::move(x));
    trace.extra.push_back(std::move(y));
  }
}

DocumentHistory parse_history(const Json& app) {
  DocumentHistory h(app.value("initial", std::string()));
  if (app.contains("revisions")) {
    for (const auto& rev : app.at("revisions")) {
      std::vector<EditOp> ops;
      for (const auto& op : rev) {
        if (op.contains("insert")) {
          ops.push_back(EditOp::insert(op.at("insert")[0].get<std::size_t>(),
                                       op.at("insert")[1].get<std::string>()));
        } else if (op.contains("erase")) {
          ops.push_back(EditOp::erase(op.at("erase")[0].get<std::size_t>(),
                                      op.at("erase")[1].get<std::size_t>()));
        } else {
          throw std::invalid_argument("edit op needs 'insert' or 'erase'");
        }
      }
      h.commit(ops);
    }
  }
  return h;
}

void run_textdoc(const Json& app, Trace& trace) {
  TextSceneConfig config;
  if (app.contains("presence")) config.presence = parse_easing(app.at("presence"), 0.4);
  if (app.contains("position")) config.position = parse_easing(app.at("position"), 0.4);
  config.color_duration = app.value("color_d", config.color_duration);
  TextScene scene(parse_history(app), parse_step_signal(app.at("revision")), config);
  const std::size_t n = scene.order().size();
  std::vector<TraceColumn> cols(4 * n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::string id = "c" + std::to_string(scene.order()[k]);
    cols[4 * k] = {id + ".size", {}};
    cols[4 * k + 1] = {id + ".x", {}};
    cols[4 * k + 2] = {id + ".y", {}};
    cols[4 * k + 3] = {id + ".chi", {}};
  }
  for (Time t : trace.t) {
    const auto frame = scene.frame(t);
    for (std::size_t k = 0; k < n; ++k) {
      cols[4 * k].values.push_back(frame[k].size);
      cols[4 * k + 1].values.push_back(frame[k].position.x());
      cols[4 * k + 2].values.push_back(frame[k].position.y());
      cols[4 * k + 3].values.push_back(frame[k].chi);
    }
  }
  for (auto& c : cols) trace.extra.push_back(std::move(c));
}

}  // namespace

Trace run_scenario(const Scenario& s) {
  Trace trace;
  trace.rate = s.rate;
  const auto count = static_cast<std::size_t>(std::floor(s.span * s.rate + 1e-9)) + 1;
  trace.t.resize(count);
  for (std::size_t k = 0; k < count; ++k) trace.t[k] = static_cast<double>(k) / s.rate;

  for (const auto& ch : s.channels) {
    try {
      auto engine = make_engine(ch.engine, ch.signal.initial(), s.rate);
      ChannelTrace out{ch.name, {}, {}, {}, engine.velocity_method};
      out.target.reserve(count);
      out.output.reserve(count);
      out.velocity.reserve(count);
      const auto events = ch.signal.events();
      std::size_t next = 0;
      for (Time t : trace.t) {
        while (next < events.size() && events[next].t <= t) {
          engine.animator->retarget(events[next].t, events[next].value);
          ++next;
        }
        out.target.push_back(ch.signal(t));
        out.output.push_back(engine.animator->eval(t));
        out.velocity.push_back(engine.animator->velocity(t));
      }
      trace.channels.push_back(std::move(out));
    } catch (const std::exception& e) {
      throw std::runtime_error("channel '" + ch.name + "': " + e.what());
    }
  }

  if (s.app) {
    const auto kind = s.app->at("kind").get<std::string>();
    if (kind == "histogram") {
      run_histogram(s, *s.app, trace);
    } else if (kind == "permutation") {
      run_permutation(s, *s.app, trace);
    } else if (kind == "textdoc") {
      run_textdoc(*s.app, trace);
    } else {
      throw std::invalid_argument("unknown app kind '" + kind + "'");
    }
  }
  return trace;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(std::ostream& out, const Trace& trace) {
  out << "t";
  for (const auto& c : trace.channels) {
    out << ',' << c.name << ".target," << c.name << ".output," << c.name << ".velocity";
  }
  for (const auto& c : trace.extra) out << ',' << c.name;
  out << '\n';
  for (std::size_t k = 0; k < trace.t.size(); ++k) {
    out << format_double(trace.t[k]);
    for (const auto& c : trace.channels) {
      out << ',' << format_double(c.target[k]) << ',' << format_double(c.output[k]) << ','
          << format_double(c.velocity[k]);
    }
    for (const auto& c : trace.extra) out << ',' << format_double(c.values[k]);
    out << '\n';
  }
}

}  // namespace animlab
