#include <doctest.h>

#include <cmath>
#include <sstream>

#include "netresp/report.hpp"
#include "netresp/rng.hpp"
#include "netresp/scenario.hpp"
#include "netresp/sweep.hpp"

using namespace netresp;

namespace {

ScenarioSpec random_spec(Xoshiro256& rng) {
  ScenarioSpec spec;
  spec.label = "rand-" + std::to_string(rng.next() % 100000);
  spec.params.weight = -10.0 + 20.0 * rng.uniform01();
  spec.params.branching = 1.0 + 9.0 * rng.uniform01();
  spec.params.attenuation = 0.05 + 0.95 * rng.uniform01();
  spec.params.compliance = rng.uniform01();
  spec.params.depth = 1 + static_cast<int>(rng.uniform01() * 12);
  if (rng.bernoulli(0.4)) {
    const std::size_t hops = static_cast<std::size_t>(spec.params.depth - 1);
    for (std::size_t i = 0; i < hops; ++i) {
      spec.attenuation_schedule.push_back(0.05 + 0.9 * rng.uniform01());
      spec.compliance_schedule.push_back(rng.uniform01());
    }
  }
  return spec;
}

}  // namespace

TEST_SUITE("scenario") {

TEST_CASE("parses the pandemic preset text") {
  const ScenarioSpec spec = parse_scenario(preset_text("pandemic"));
  CHECK(spec.label == "pandemic");
  CHECK(spec.params.weight == 1.0);
  CHECK(spec.params.branching == 8.0);
  CHECK(spec.params.attenuation == 0.7);
  CHECK(spec.params.compliance == 0.6);
  CHECK(spec.params.depth == 5);
  CHECK(effective_ratio(spec.params) == 3.36);
}

TEST_CASE("domain violations name the offending key") {
  CHECK_THROWS_WITH_AS(
      parse_scenario("w = 1\nb = 5\nalpha = 1.5\nq = 0.5\nd = 3\n"),
      doctest::Contains("alpha"), ValidationError);
  CHECK_THROWS_WITH_AS(
      parse_scenario("w = 1\nb = 0.5\nalpha = 0.5\nq = 0.5\nd = 3\n"),
      doctest::Contains("b must be"), ValidationError);
}

TEST_CASE("schedules of length d-1 are accepted") {
  const ScenarioSpec spec = parse_scenario(
      "w = 1\nb = 5\nalpha = 0.7\nq = 0.6\nd = 5\n"
      "alpha_schedule = 0.7,0.6,0.5,0.4\n");
  CHECK(spec.attenuation_schedule.size() == 4);
  CHECK(spec.has_schedules());
  const DepthSchedule sched = spec.schedule();
  CHECK(sched.compliance == std::vector<double>(4, 0.6));
}

TEST_CASE("parse errors carry line numbers") {
  CHECK_THROWS_WITH_AS(parse_scenario("w = 1\nb = 5\nwut = 9\n"),
                       doctest::Contains("line 3"), ParseError);
  CHECK_THROWS_WITH_AS(parse_scenario("w = 1\nw = 2\n"),
                       doctest::Contains("duplicate key 'w'"), ParseError);
  CHECK_THROWS_WITH_AS(parse_scenario("w = abc\n"),
                       doctest::Contains("malformed number"), ParseError);
  CHECK_THROWS_WITH_AS(parse_scenario("no equals sign\n"),
                       doctest::Contains("line 1"), ParseError);
  CHECK_THROWS_WITH_AS(parse_scenario("w = 1\nb = 2\nalpha = 1\nq = 1\n"),
                       doctest::Contains("missing required key 'd'"),
                       ParseError);
  CHECK_THROWS_WITH_AS(
      parse_scenario("w = 1\nb = 2\nalpha = 1\nq = 1\nd = 2\nseed_node = 0\n"),
      doctest::Contains("seed_node"), ValidationError);
}

TEST_CASE("comments and blank lines are ignored") {
  const ScenarioSpec spec = parse_scenario(
      "# full file comment\n"
      "\n"
      "label = demo   # trailing comment\n"
      "w = 1\nb = 2\nalpha = 0.5\nq = 0.5\nd = 3\n");
  CHECK(spec.label == "demo");
}

TEST_CASE("property: write/parse round-trip is the identity") {
  Xoshiro256 rng(321);
  for (int i = 0; i < 100; ++i) {
    const ScenarioSpec spec = random_spec(rng);
    const ScenarioSpec back = parse_scenario(write_scenario(spec));
    CHECK(back == spec);
  }
}

TEST_CASE("presets are all valid and carry the advertised ratios") {
  const auto names = preset_names();
  REQUIRE(names.size() == 4);
  for (const auto& name : names) {
    const ScenarioSpec spec = load_preset(name);
    CHECK(spec.label == name);
  }
  CHECK(effective_ratio(load_preset("worked-example").params) == 2.5);
  CHECK(effective_ratio(load_preset("pandemic").params) == 3.36);
  CHECK(effective_ratio(load_preset("vaccination-friction").params) == 0.6);
  CHECK_THROWS_AS(preset_text("nope"), ValidationError);
}

TEST_CASE("run_scenario assembles the full report") {
  SUBCASE("vaccination") {
    const ScenarioReport rep = run_scenario(load_preset("vaccination"));
    CHECK(std::abs(rep.total.value - 385.30) / 385.30 < 5e-4);
    CHECK(std::abs(rep.multiplier.value - 77.06) / 77.06 < 5e-4);
    CHECK(rep.regime.regime == Regime::Supercritical);
    CHECK(rep.horizon_divergent);
    CHECK(rep.hops.layers.size() == 6);
    CHECK(rep.capture_shares.size() == 3);  // K = 1, 3, 5
    const std::string text = render_report(rep);
    CHECK(text.find("supercritical") != std::string::npos);
  }
  SUBCASE("vaccination-friction hits the infinite-horizon values exactly") {
    const ScenarioReport rep = run_scenario(load_preset("vaccination-friction"));
    CHECK(rep.regime.regime == Regime::Subcritical);
    CHECK_FALSE(rep.horizon_divergent);
    CHECK(rep.infinite_multiplier == 2.5);
    CHECK(rep.infinite_total == 12.5);
  }
  SUBCASE("worked example") {
    const ScenarioReport rep = run_scenario(load_preset("worked-example"));
    CHECK(rep.total.value == 2031.171875);
    CHECK(rep.multiplier.value == 406.234375);
    CHECK(rep.dyad == 5.0);
  }
}

TEST_CASE("run_scenario evaluates depth schedules when present") {
  const ScenarioSpec spec = parse_scenario(
      "w = 1\nb = 2\nalpha = 0.9\nq = 1\nd = 3\n"
      "alpha_schedule = 0.5,0.25\n");
  const ScenarioReport rep = run_scenario(spec);
  CHECK(rep.scheduled);
  // 2 + 4*0.5 + 8*0.125 = 5, constant q = 1 filled in
  CHECK(rep.scheduled_total.value == doctest::Approx(5.0).epsilon(1e-14));
  CHECK(render_report(rep).find("T_sched") != std::string::npos);
}

TEST_CASE("scenario round-trip keeps graph references") {
  ScenarioSpec spec;
  spec.label = "with-graph";
  spec.params = {1, 3, 0.5, 0.5, 4};
  spec.graph_path = "contacts.txt";
  spec.seed_node = 7;
  const ScenarioSpec back = parse_scenario(write_scenario(spec));
  CHECK(back == spec);
}

TEST_CASE("sweep grids") {
  SUBCASE("row-major order and the worked pandemic cell") {
    SweepSpec spec;
    spec.base = load_preset("pandemic");
    spec.axes.push_back({"b", {4, 8}});
    spec.axes.push_back({"q", {0.3, 0.6}});
    std::ostringstream out;
    sweep_grid(spec, out);

    std::istringstream lines(out.str());
    std::string line;
    std::getline(lines, line);
    CHECK(line == "label,w,b,alpha,q,d,r,regime,T,M,overflow");
    std::vector<std::string> rows;
    while (std::getline(lines, line)) rows.push_back(line);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].find("pandemic,1,4,0.7,0.3,5,") == 0);
    CHECK(rows[1].find("pandemic,1,4,0.7,0.6,5,") == 0);
    CHECK(rows[2].find("pandemic,1,8,0.7,0.3,5,") == 0);
    CHECK(rows[3].find("pandemic,1,8,0.7,0.6,5,") == 0);
    // the (8, 0.6) cell is the pandemic scenario itself
    CHECK(rows[3].find(",3.36,supercritical,") != std::string::npos);
    CHECK(rows[3].find("1448.30") != std::string::npos);
  }
  SUBCASE("d = 1 sweeps to the dyadic baseline") {
    SweepSpec spec;
    spec.base = load_preset("worked-example");
    spec.axes.push_back({"d", {1}});
    std::ostringstream out;
    sweep_grid(spec, out);
    CHECK(out.str().find(",5,406.234375") == std::string::npos);
    CHECK(out.str().find("worked-example,1,5,0.5,1,1,2.5,supercritical,5,1,") !=
          std::string::npos);
  }
  SUBCASE("regime flips between q = 0.4 and q = 0.5 with b=5, alpha=0.5") {
    SweepSpec spec;
    spec.base = parse_scenario("w = 1\nb = 5\nalpha = 0.5\nq = 1\nd = 4\n");
    spec.axes.push_back({"q", linear_grid(0.0, 1.0, 11)});
    std::ostringstream out;
    sweep_grid(spec, out);
    std::istringstream lines(out.str());
    std::string line;
    std::getline(lines, line);  // header
    std::vector<std::string> regimes;
    while (std::getline(lines, line)) {
      std::size_t pos = 0;
      for (int c = 0; c < 7; ++c) pos = line.find(',', pos) + 1;
      regimes.push_back(line.substr(pos, line.find(',', pos) - pos));
    }
    REQUIRE(regimes.size() == 11);
    for (int i = 0; i <= 3; ++i) CHECK(regimes[i] == "subcritical");
    CHECK(regimes[4] == "critical");  // 2.5 * 0.4 lands on 1 exactly
    for (int i = 5; i <= 10; ++i) CHECK(regimes[i] == "supercritical");
  }
  SUBCASE("axis domain violations are rejected up front") {
    SweepSpec spec;
    spec.base = load_preset("pandemic");
    spec.axes.push_back({"alpha", {0.5, 1.5}});
    std::ostringstream out;
    CHECK_THROWS_WITH_AS(sweep_grid(spec, out), doctest::Contains("alpha"),
                         ValidationError);
    spec.axes = {{"d", {2.5}}};
    CHECK_THROWS_AS(sweep_grid(spec, out), ValidationError);
    spec.axes = {{"x", {1.0}}};
    CHECK_THROWS_AS(sweep_grid(spec, out), ValidationError);
  }
  SUBCASE("row cap") {
    SweepSpec spec;
    spec.base = load_preset("pandemic");
    spec.max_rows = 10;
    spec.axes.push_back({"q", linear_grid(0.0, 1.0, 11)});
    std::ostringstream out;
    CHECK_THROWS_AS(sweep_grid(spec, out), GridCapExceeded);
  }
  SUBCASE("byte-identical across runs and execution policies") {
    SweepSpec spec;
    spec.base = load_preset("vaccination");
    spec.axes.push_back({"alpha", linear_grid(0.05, 1.0, 24)});
    spec.axes.push_back({"d", {1, 2, 3, 8, 30}});
    std::ostringstream a, b, c;
    sweep_grid(spec, a, Exec::Parallel);
    sweep_grid(spec, b, Exec::Parallel);
    sweep_grid(spec, c, Exec::Serial);
    CHECK(a.str() == b.str());
    CHECK(a.str() == c.str());
  }
  SUBCASE("overflow rows keep the CSV finite") {
    SweepSpec spec;
    spec.base = parse_scenario("w = 1\nb = 10\nalpha = 1\nq = 1\nd = 400\n");
    spec.axes.push_back({"d", {1, 400}});
    std::ostringstream out;
    sweep_grid(spec, out);
    CHECK(out.str().find("inf") == std::string::npos);
    CHECK(out.str().find("nan") == std::string::npos);
    std::istringstream lines(out.str());
    std::string header, row1, row2;
    std::getline(lines, header);
    std::getline(lines, row1);
    std::getline(lines, row2);
    // d = 400 overflows: T and M empty, the overflow column carries d*ln(r)
    CHECK(row2.find(",supercritical,,,") != std::string::npos);
    const double log_mag = std::stod(row2.substr(row2.rfind(',') + 1));
    CHECK(log_mag == doctest::Approx(400 * std::log(10.0)).epsilon(1e-12));
  }
}

TEST_CASE("lever report") {
  SUBCASE("pandemic targets") {
    const LeverReport rep = lever_report(load_preset("pandemic"));
    CHECK_FALSE(rep.already_subcritical);
    CHECK(rep.compliance.target == doctest::Approx(1.0 / 5.6).epsilon(1e-12));
    CHECK(rep.compliance.feasible);
    CHECK(rep.attenuation.target == doctest::Approx(1.0 / 4.8).epsilon(1e-12));
    CHECK(rep.attenuation.feasible);
    CHECK(rep.branching.target == doctest::Approx(1.0 / 0.42).epsilon(1e-12));
    CHECK(rep.branching.feasible);
  }
  SUBCASE("budgeted depth cap on the pandemic preset") {
    const LeverReport rep = lever_report(load_preset("pandemic"), 10.0);
    CHECK(rep.has_budget);
    CHECK(rep.cap_exists);
    CHECK_FALSE(rep.cap_unbounded);
    CHECK(rep.depth_cap == 2);  // M_2 = 4.36 <= 10 < M_3 = 15.6496
    CHECK(rep.multiplier_at_cap == doctest::Approx(4.36).epsilon(1e-12));
  }
  SUBCASE("already subcritical") {
    const LeverReport rep = lever_report(load_preset("vaccination-friction"));
    CHECK(rep.already_subcritical);
    const std::string text = render_lever_report(rep);
    CHECK(text.find("already subcritical") != std::string::npos);
  }
  SUBCASE("subcritical with a budget above M_inf is unbounded") {
    const LeverReport rep = lever_report(load_preset("vaccination-friction"), 10.0);
    CHECK(rep.cap_unbounded);
  }
  SUBCASE("budget below 1 leaves no feasible cap") {
    const LeverReport rep = lever_report(load_preset("pandemic"), 0.5);
    CHECK_FALSE(rep.cap_exists);
  }
}

TEST_CASE("analyze CSV row matches the sweep schema") {
  std::ostringstream out;
  write_csv_header(out);
  write_csv_row(out, "worked-example", load_preset("worked-example").params,
                kDefaultRegimeTol);
  const std::string csv = out.str();
  CHECK(csv.find("label,w,b,alpha,q,d,r,regime,T,M,overflow\n") == 0);
  CHECK(csv.find("worked-example,1,5,0.5,1,7,2.5,supercritical,2031.171875,"
                 "406.234375,\n") != std::string::npos);
}

}  // TEST_SUITE
