#include <random>
#include <sstream>

#include "animlab/harness/experiments.hpp"
#include "animlab/harness/scenario.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace animlab;

namespace {

Json smooth(double d) { return Json{{"kind", "smoothstep"}, {"d", d}}; }

Json channel(double x0, Json events, Json engine) {
  return Json{{"x0", x0}, {"events", std::move(events)}, {"engine", std::move(engine)}};
}

Json one_channel(Json engine, Json events = Json::array(), double span = 3.0, double rate = 100.0) {
  return Json{{"span", span},
              {"rate", rate},
              {"channels", {{"h0", channel(0.0, std::move(events), std::move(engine))}}}};
}

std::string csv(const Trace& t) {
  std::ostringstream out;
  write_csv(out, t);
  return out.str();
}

}  // namespace

TEST_CASE("run_scenario basics") {
  const auto constant = run_scenario(parse_scenario(
      Json{{"span", 2.0},
           {"rate", 50.0},
           {"channels", {{"c", channel(3.5, Json::array(), {{"kind", "fir"}, {"easing", smooth(0.4)}})}}}}));
  CHECK(constant.t.size() == 101);
  CHECK(constant.t.back() == 2.0);
  for (double y : constant.channel("c").output) CHECK(y == 3.5);

  const Json events = Json::array({Json::array({0.2, 1.0}), Json::array({1.5, -2.0})});
  Json both = one_channel({{"kind", "fir"}, {"easing", smooth(1.0)}}, events);
  both["channels"]["s"] = channel(0.0, events, {{"kind", "simple"}, {"easing", smooth(1.0)}});
  const auto trace = run_scenario(parse_scenario(both));
  const auto& f = trace.channel("h0");
  const auto& s = trace.channel("s");
  for (std::size_t k = 0; k < trace.t.size(); ++k) {
    CHECK(std::abs(f.output[k] - s.output[k]) <= 1e-12);
  }
  CHECK(f.velocity_method == VelocityMethod::analytic);
  CHECK(csv(trace) == csv(run_scenario(parse_scenario(both))));
  CHECK_THROWS(trace.channel("nope"));
  CHECK_THROWS(trace.column("nope"));
}

TEST_CASE("csv format") {
  const auto trace = run_scenario(parse_scenario(
      one_channel({{"kind", "fir"}, {"easing", smooth(0.5)}}, Json::array({Json::array({0.1, 1.0})}),
                  0.2, 10.0)));
  const auto text = csv(trace);
  CHECK(text.rfind("t,h0.target,h0.output,h0.velocity\n", 0) == 0);
  CHECK(text.find('\r') == std::string::npos);
  CHECK(std::count(text.begin(), text.end(), '\n') == 4);
  CHECK(text.find("\n0.10000000000000001,1,") != std::string::npos);
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02e23}) CHECK(std::stod(format_double(v)) == v);
}

TEST_CASE("scenario validation") {
  CHECK_THROWS(parse_scenario(one_channel({{"kind", "fir"}, {"easing", smooth(1.0)}}, Json::array(), 1.0, 9.0)));
  CHECK_NOTHROW(parse_scenario(one_channel({{"kind", "fir"}, {"easing", smooth(1.0)}}, Json::array(), 1.0, 10.0)));
  CHECK_THROWS(parse_scenario(one_channel({{"kind", "fir"}, {"easing", smooth(1.0)}}, Json::array(), 0.0)));
  try {
    parse_scenario(one_channel({{"kind", "fir"}, {"easing", {{"kind", "cubic"}}}}));
    FAIL("expected an error");
  } catch (const std::exception& e) {
    CHECK(std::string(e.what()).find("channel 'h0'") != std::string::npos);
  }
  try {
    parse_scenario(one_channel({{"kind", "iir"}, {"system", {{"type", "spring"}, {"damping", -1.0}}}}));
    FAIL("expected an error");
  } catch (const std::exception& e) {
    CHECK(std::string(e.what()).find("channel 'h0'") != std::string::npos);
  }
  CHECK_THROWS(parse_scenario(
      one_channel({{"kind", "fir"}, {"easing", smooth(1.0)}},
                  Json::array({Json::array({1.0, 1.0}), Json::array({0.5, 2.0})}))));
}

TEST_CASE("rate r and 2r agree") {
  const Json events = Json::array({Json::array({0.0, 1.0}), Json::array({2.5, -1.0}), Json::array({6.0, 0.5})});
  const Json fir = {{"kind", "fir"}, {"easing", smooth(1.0)}};
  const Json iir = {{"kind", "iir"}, {"system", {{"type", "spring"}}}};
  // bilinear leads by half a sample, so the gap between rates is O(1/rate)
  for (const auto& [engine, tol] : {std::pair{fir, 0.0}, std::pair{iir, 1e-3}}) {
    const auto a = run_scenario(parse_scenario(one_channel(engine, events, 10.0, 240.0)));
    const auto b = run_scenario(parse_scenario(one_channel(engine, events, 10.0, 480.0)));
    for (std::size_t k = 0; k < a.t.size(); ++k) {
      CHECK(std::abs(a.channel("h0").output[k] - b.channel("h0").output[2 * k]) <= tol);
    }
  }
}

TEST_CASE("sampled engines") {
  const Json events = Json::array({Json::array({0.5, 1.0})});
  const auto trace = run_scenario(parse_scenario(
      one_channel({{"kind", "fir"}, {"easing", smooth(0.5)}, {"discrete", true}}, events, 2.0, 100.0)));
  const auto& ch = trace.channel("h0");
  CHECK(ch.velocity_method == VelocityMethod::backward_difference);
  CHECK(to_string(ch.velocity_method) == "backward-difference");
  // ticks before the event hold x0
  for (std::size_t k = 0; k < 50; ++k) CHECK(ch.output[k] == 0.0);
  CHECK(ch.output.back() == doctest::Approx(1.0).epsilon(1e-12));
  for (std::size_t k = 1; k < ch.output.size(); ++k) {
    CHECK(ch.velocity[k] == doctest::Approx((ch.output[k] - ch.output[k - 1]) * 100.0));
  }
  // discrete FIR follows the continuous curve to O(1/rate)
  for (std::size_t k = 50; k < ch.output.size(); ++k) {
    const double u = std::min(1.0, (trace.t[k] - 0.5) / 0.5);
    CHECK(std::abs(ch.output[k] - oracle::smoothstep(u)) <= 0.05);
  }

  const auto iir = run_scenario(parse_scenario(
      one_channel({{"kind", "iir"}, {"system", {{"type", "one_pole"}, {"a", 4.0}}}}, events, 4.0, 100.0)));
  CHECK(iir.channel("h0").output.back() == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("app columns") {
  Json hist = one_channel({{"kind", "fir"}, {"easing", smooth(1.0)}},
                          Json::array({Json::array({0.0, 8.0})}), 2.0, 10.0);
  hist["channels"]["h0"]["x0"] = 4.0;
  hist["app"] = {{"kind", "histogram"}, {"zoom", {{"x0", 1.0}, {"events", Json::array({Json::array({1.5, 2.0})})}}}};
  const auto h = run_scenario(parse_scenario(hist));
  const auto& height = h.column("h0.height").values;
  CHECK(height[5] == doctest::Approx(6.0));
  CHECK(height[14] == 8.0);
  CHECK(height[15] == 16.0);
  CHECK(h.column("zoom").values[15] == 2.0);
  CHECK(csv(h).rfind("t,h0.target,h0.output,h0.velocity,zoom,h0.height\n", 0) == 0);

  Json perm = one_channel({{"kind", "fir"}, {"easing", smooth(1.0)}},
                          Json::array({Json::array({0.0, 1.0})}), 2.0, 10.0);
  perm["channels"]["o1"] = channel(1.0, Json::array({Json::array({0.0, 0.0})}), {{"kind", "fir"}, {"easing", smooth(1.0)}});
  perm["app"] = {{"kind", "permutation"}, {"aspect", 1.0}, {"d", 1.0}, {"easing", "linear"}};
  const auto p = run_scenario(parse_scenario(perm));
  CHECK(p.column("h0.x").values[5] == doctest::Approx(0.5));
  CHECK(p.column("h0.y").values[5] == doctest::Approx(-0.5).epsilon(1e-6));
  CHECK(p.column("o1.y").values[5] == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(p.column("o1.x").values.back() == 0.0);

  const Json text = {
      {"span", 2.0},
      {"rate", 10.0},
      {"app",
       {{"kind", "textdoc"},
        {"initial", "ab"},
        {"revisions", Json::array({Json::array({{{"insert", Json::array({1, "c"})}}})})},
        {"revision", {{"x0", 0}, {"events", Json::array({Json::array({0.5, 1})})}}}}}};
  const auto d = run_scenario(parse_scenario(text));
  CHECK(d.column("c2.size").values.front() == 0.0);
  CHECK(d.column("c2.size").values.back() == 1.0);
  CHECK(d.column("c2.x").values.back() == 1.0);
  CHECK(d.column("c1.x").values.back() == 2.0);
  CHECK(d.column("c2.chi").values[7] > 0.0);

  Json bad = hist;
  bad["app"]["kind"] = "pie";
  CHECK_THROWS(run_scenario(parse_scenario(bad)));
}

TEST_CASE("experiment: interruption limit") {
  const auto r = experiment_interruption_limit({1, 10, 100, 1000});
  CHECK_FALSE(r.warning);
  CHECK(r.deviation[0] == doctest::Approx(1.0));
  CHECK(r.deviation[1] > r.deviation[2]);
  CHECK(r.deviation[2] > r.deviation[3]);
  CHECK(r.deviation[3] < 0.01);

  // independent recurrence
  for (int n : {10, 100}) {
    const double s = oracle::smoothstep(1.0 / n);
    double y = 0.0, sup = 0.0;
    for (int i = 1; i <= n; ++i) {
      y += s * ((i % 2 == 1 ? 1.0 : 0.0) - y);
      sup = std::max(sup, std::abs(y));
    }
    CHECK(r.deviation[n == 10 ? 1 : 2] == doctest::Approx(sup).epsilon(1e-12));
  }

  const auto lin = experiment_interruption_limit({1000}, make_linear(1.0));
  CHECK(lin.warning);
  CHECK(lin.deviation[0] > 0.2);
}

TEST_CASE("experiment: velocity jumps") {
  const auto jumps = experiment_velocity_jumps();
  REQUIRE(jumps.size() == 3);
  for (const auto& j : jumps) {
    if (j.engine == "simple") CHECK(j.max_jump == doctest::Approx(1.5).epsilon(1e-12));
    else CHECK(j.max_jump <= 1e-9);
  }
}

TEST_CASE("experiment: emergent average") {
  const Json fir = {{"kind", "fir"}, {"easing", smooth(1.0)}};
  const auto fast = experiment_emergent_average(0.05, fir);
  CHECK(std::abs(fast.mean - 0.5) <= 0.03);
  CHECK(fast.peak_to_peak < 0.05);

  // direct superposition of the square wave's deltas
  double lo = 1e9, hi = -1e9, sum = 0.0;
  int count = 0;
  for (int k = 15000; k <= 20000; ++k) {
    const double t = k / 1000.0;
    double y = 0.0;
    for (int e = 0; 0.025 * e <= t; ++e) {
      const double delta = e % 2 == 0 ? 1.0 : -1.0;
      y += delta * oracle::smoothstep(std::min(1.0, t - 0.025 * e));
    }
    lo = std::min(lo, y);
    hi = std::max(hi, y);
    sum += y;
    ++count;
  }
  CHECK(fast.mean == doctest::Approx(sum / count).epsilon(1e-9));
  CHECK(fast.peak_to_peak == doctest::Approx(hi - lo).epsilon(1e-6));

  const auto slow = experiment_emergent_average(2.0, fir);
  CHECK(slow.min <= 1e-12);
  CHECK(slow.max >= 1.0 - 1e-12);

  const auto quarter = experiment_emergent_average(0.05, fir, 0.25);
  CHECK(std::abs(quarter.mean - 0.25) <= 0.03);
}

TEST_CASE("experiment: varying easing") {
  const auto r = experiment_varying_easing_overshoot();
  CHECK(r.max_excursion > 0.1);
  // hand evaluation at t = 0.3: s1(0.3) - s2(0.2)
  const auto it = std::find_if(r.t.begin(), r.t.end(), [](double t) { return std::abs(t - 0.3) < 1e-9; });
  REQUIRE(it != r.t.end());
  CHECK(r.y[it - r.t.begin()] == doctest::Approx(oracle::smoothstep(0.15) - 1.0));

  std::mt19937_64 rng(91);
  std::uniform_real_distribution<double> dur(0.05, 3.0), frac(0.0, 1.0), val(-5.0, 5.0);
  for (int i = 0; i < 50; ++i) {
    const double d = dur(rng);
    const auto eq = experiment_varying_easing_overshoot(d, d, frac(rng) * d, val(rng), val(rng));
    CHECK(eq.max_excursion <= 1e-9);
  }
}

TEST_CASE("experiment: spline limit") {
  const auto r = experiment_spline_limit();
  Eigen::Matrix2d a_limit;
  a_limit << 0, 1, -6, -4;
  const Eigen::Vector2d b_limit(0, 6);
  std::vector<double> err;
  for (std::size_t i = 0; i < r.T.size(); ++i) {
    err.push_back((r.a_estimate[i] - a_limit).norm() + (r.b_estimate[i] - b_limit).norm());
  }
  for (std::size_t i = 1; i < err.size(); ++i) {
    const double ratio = err[i - 1] / err[i];
    CHECK(ratio == doctest::Approx(r.T[i - 1] / r.T[i]).epsilon(0.1));
  }
  CHECK(std::abs(r.final_value - 1.0) <= 1e-3);
  CHECK(std::abs(r.peak - oracle::second_order_peak(6.0, 4.0)) <= 1e-3);
  CHECK(std::abs(r.peak - 1.0117) <= 1e-3);
}
