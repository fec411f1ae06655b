#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "animlab/fir.hpp"
#include "animlab/harness/experiments.hpp"
#include "animlab/harness/scenario.hpp"
#include "animlab/harness/serve.hpp"

using namespace animlab;

namespace {

struct EasingArgs {
  std::string kind = "smoothstep";
  double duration = 1.0;
  int order = 3;
  int stages = 4;
};

void add_easing_options(CLI::App* cmd, EasingArgs& e) {
  cmd->add_option("--easing", e.kind, "smoothstep | linear | bspline | one_pole_cascade")
      ->capture_default_str();
  cmd->add_option("--duration", e.duration, "easing duration in seconds")->capture_default_str();
  cmd->add_option("--order", e.order, "bspline order")->capture_default_str();
  cmd->add_option("--stages", e.stages, "one_pole_cascade stages")->capture_default_str();
}

Json easing_json(const EasingArgs& e) {
  return {{"kind", e.kind}, {"d", e.duration}, {"order", e.order}, {"stages", e.stages}};
}

void print_row(std::initializer_list<double> values) {
  bool first = true;
  for (double v : values) {
    std::cout << (first ? "" : ",") << format_double(v);
    first = false;
  }
  std::cout << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"animlab: interruptible animation signals"};
  app.require_subcommand(1);

  // simulate
  std::string scenario_path, out_path;
  auto* simulate = app.add_subcommand("simulate", "run a scenario file and write its trace as CSV");
  simulate->add_option("--scenario", scenario_path, "scenario JSON")->required();
  simulate->add_option("--out", out_path, "output CSV (stdout if omitted)");

  // respond
  EasingArgs respond_easing;
  std::string engine_kind = "fir", response_kind = "step", system_type = "spring",
              method = "bilinear";
  double respond_rate = 60.0, span = 0.0, pole = 4.0;
  auto* respond = app.add_subcommand("respond", "step or impulse response of an engine");
  respond->add_option("--engine", engine_kind, "simple | spline | fir | iir")->capture_default_str();
  add_easing_options(respond, respond_easing);
  respond->add_option("--rate", respond_rate, "samples per second")->capture_default_str();
  respond->add_option("--kind", response_kind, "step | impulse")->capture_default_str();
  respond->add_option("--span", span, "seconds to report (default 1.5 x duration)");
  respond->add_option("--system", system_type, "iir: spring | one_pole | one_pole_cascade")
      ->capture_default_str();
  respond->add_option("--pole", pole, "iir: pole rate a for one-pole systems")->capture_default_str();
  respond->add_option("--method", method, "iir: bilinear | impulse_invariant")->capture_default_str();
  bool discrete = false;
  respond->add_flag("--discrete", discrete, "fir: sampled convolution instead of continuous form");

  // coeffs
  EasingArgs coeff_easing;
  double coeff_rate = 60.0;
  auto* coeffs = app.add_subcommand("coeffs", "FIR taps for an easing at a sample rate");
  add_easing_options(coeffs, coeff_easing);
  coeffs->add_option("--rate", coeff_rate, "samples per second")->capture_default_str();

  // experiment
  std::string experiment;
  std::vector<int> n_values{1, 10, 100, 1000};
  EasingArgs exp_easing;
  double period = 0.05, duty = 0.5, d1 = 2.0, d2 = 0.2, interrupt = 0.1, exp_rate = 1000.0;
  auto* exp = app.add_subcommand("experiment", "reproduce an analytical claim");
  exp->add_option("name", experiment,
                  "interruption-limit | velocity-jumps | emergent-average | varying-easing | "
                  "spline-limit")
      ->required();
  add_easing_options(exp, exp_easing);
  exp->add_option("--n", n_values, "interruption-limit: interruption counts")->delimiter(',')->capture_default_str();
  exp->add_option("--period", period, "emergent-average: square wave period")->capture_default_str();
  exp->add_option("--duty", duty, "emergent-average: duty cycle")->capture_default_str();
  exp->add_option("--d1", d1, "varying-easing: first duration")->capture_default_str();
  exp->add_option("--d2", d2, "varying-easing: second duration")->capture_default_str();
  exp->add_option("--interrupt", interrupt, "varying-easing: interrupt time")->capture_default_str();
  exp->add_option("--rate", exp_rate, "sample rate")->capture_default_str();

  // serve
  unsigned short port = 8765;
  double serve_rate = 60.0;
  auto* serve = app.add_subcommand("serve", "push animator frames over a WebSocket");
  serve->add_option("--port", port, "TCP port (0 picks one)")->capture_default_str();
  serve->add_option("--rate", serve_rate, "frames per second")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*simulate) {
      const Trace trace = run_scenario(load_scenario(scenario_path));
      for (const auto& c : trace.channels) {
        std::cerr << c.name << ".velocity: " << to_string(c.velocity_method) << '\n';
      }
      if (out_path.empty()) {
        write_csv(std::cout, trace);
      } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write '" + out_path + "'");
        write_csv(out, trace);
      }
    } else if (*respond) {
      Json engine{{"kind", engine_kind}};
      if (engine_kind == "spline") {
        engine["d"] = respond_easing.duration;
      } else if (engine_kind == "iir") {
        Json sys{{"type", system_type}};
        if (system_type != "spring") sys["a"] = pole;
        engine["system"] = sys;
        engine["method"] = method;
      } else {
        engine["easing"] = easing_json(respond_easing);
        if (discrete) engine["discrete"] = true;
      }
      if (span <= 0.0) span = 1.5 * respond_easing.duration;
      Scenario s;
      s.span = span;
      s.rate = respond_rate;
      s.channels.push_back({"x", StepSignal::from_events(0.0, {{0.0, 1.0}}), engine});
      const Trace trace = run_scenario(s);
      const auto& ch = trace.channels.front();
      const bool sampled = ch.velocity_method == VelocityMethod::backward_difference;
      std::cout << "t," << response_kind << '\n';
      for (std::size_t k = 0; k < trace.t.size(); ++k) {
        double v = ch.output[k];
        if (response_kind == "impulse") {
          // Continuous engines: derivative of the step response. Sampled
          // engines: the discrete impulse response, h[k] = s[k] - s[k-1].
          v = sampled ? (k == 0 ? ch.output[0] : ch.output[k] - ch.output[k - 1]) : ch.velocity[k];
        } else if (response_kind != "step") {
          throw std::invalid_argument("unknown response kind '" + response_kind + "'");
        }
        print_row({trace.t[k], v});
      }
    } else if (*coeffs) {
      const auto c = fir_coeffs_from_easing(parse_easing(easing_json(coeff_easing)), coeff_rate);
      std::cout << "k,tap\n";
      for (std::size_t k = 0; k < c.taps.size(); ++k) {
        std::cout << k << ',' << format_double(c.taps[k]) << '\n';
      }
    } else if (*exp) {
      const Json easing = easing_json(exp_easing);
      if (experiment == "interruption-limit") {
        const auto r = experiment_interruption_limit(n_values, parse_easing(easing));
        if (r.warning) std::cerr << "warning: " << *r.warning << '\n';
        std::cout << "n,deviation\n";
        for (std::size_t i = 0; i < r.n.size(); ++i) {
          std::cout << r.n[i] << ',' << format_double(r.deviation[i]) << '\n';
        }
      } else if (experiment == "velocity-jumps") {
        std::cout << "engine,max_jump\n";
        for (const auto& j : experiment_velocity_jumps()) {
          std::cout << j.engine << ',' << format_double(j.max_jump) << '\n';
        }
      } else if (experiment == "emergent-average") {
        const auto r = experiment_emergent_average(
            period, Json{{"kind", "fir"}, {"easing", easing}}, duty, exp_rate);
        std::cout << "mean,peak_to_peak,min,max\n";
        print_row({r.mean, r.peak_to_peak, r.min, r.max});
      } else if (experiment == "varying-easing") {
        const auto r = experiment_varying_easing_overshoot(d1, d2, interrupt, 0.0, 1.0, exp_rate);
        std::cerr << "max excursion beyond [0, 1]: " << format_double(r.max_excursion) << '\n';
        std::cout << "t,y\n";
        for (std::size_t k = 0; k < r.t.size(); ++k) print_row({r.t[k], r.y[k]});
      } else if (experiment == "spline-limit") {
        const auto r = experiment_spline_limit({1e-2, 1e-3, 1e-4}, exp_rate);
        std::cout << "T,a11,a12,a21,a22,b1,b2\n";
        for (std::size_t i = 0; i < r.T.size(); ++i) {
          const auto& a = r.a_estimate[i];
          const auto& b = r.b_estimate[i];
          print_row({r.T[i], a(0, 0), a(0, 1), a(1, 0), a(1, 1), b(0), b(1)});
        }
        std::cerr << "step response: peak " << format_double(r.peak) << " at t = "
                  << format_double(r.peak_time) << ", final " << format_double(r.final_value)
                  << '\n';
      } else {
        throw std::invalid_argument("unknown experiment '" + experiment + "'");
      }
    } else if (*serve) {
      Server server(port, serve_rate);
      std::cerr << "serving on ws://127.0.0.1:" << server.port() << " at " << serve_rate
                << " frames/s\n";
      server.run();
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
