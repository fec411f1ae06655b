#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "animlab/harness/engine.hpp"
#include "animlab/signal.hpp"

namespace animlab {

struct ChannelSpec {
  std::string name;
  StepSignal signal;
  Json engine;
};

struct Scenario {
  double span = 1.0;
  double rate = 60.0;
  std::vector<ChannelSpec> channels;
  std::optional<Json> app;
};

/// {"x0": v, "events": [[t, v], ...]}
StepSignal parse_step_signal(const Json& j);

/// Validates as it parses: span > 0, rate >= 10, every engine constructible.
Scenario parse_scenario(const Json& j);
Scenario load_scenario(const std::string& path);

struct ChannelTrace {
  std::string name;
  std::vector<double> target;
  std::vector<double> output;
  std::vector<double> velocity;
  VelocityMethod velocity_method;
};

struct TraceColumn {
  std::string name;
  std::vector<double> values;
};

/// One row per grid point t_k = k / rate, k = 0 .. floor(span * rate).
struct Trace {
  double rate = 0.0;
  std::vector<Time> t;
  std::vector<ChannelTrace> channels;
  /// App columns (histogram heights, arc positions, character attributes).
  std::vector<TraceColumn> extra;

  const ChannelTrace& channel(const std::string& name) const;
  const TraceColumn& column(const std::string& name) const;
};

Trace run_scenario(const Scenario& s);

/// Header t,<ch>.target,<ch>.output,<ch>.velocity,... then the extra
/// columns. Values use %.17g; lines end in LF.
void write_csv(std::ostream& out, const Trace& trace);
std::string format_double(double v);

}  // namespace animlab
