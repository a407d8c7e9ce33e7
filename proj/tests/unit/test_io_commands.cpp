// SPDX-License-Identifier: Apache-2.0
#include <filesystem>
#include <string>

#include "commands.hpp"
#include "io.hpp"
#include "json_schema.hpp"
#include "simulation.hpp"
#include "support.hpp"
#include "svg.hpp"

using namespace glsreg;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("glsreg_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string error_text(const std::string& text, const std::string& source) {
  try {
    load_config(text, source);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kConfigError);
    return e.what();
  }
  return {};
}

std::vector<std::string> names(const CommandResult& r) {
  std::vector<std::string> out;
  for (const auto& a : r.artifacts) out.push_back(a.name);
  return out;
}

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("shortest round-trip doubles") {
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(1.0) == "1");
    for (double x : {1.0 / 3.0, 2.2133638394006432, 1e-300, 6.02e23}) {
      CHECK(std::stod(format_double(x)) == x);
    }
  }

  TEST_CASE("csv round trips") {
    const std::vector<MomentPoint> m{{1.0, 1.5, 0.01}, {2.5, 1.0 / 3.0, 0.0}};
    const auto back = moments_from_csv(moments_to_csv(m));
    REQUIRE(back.size() == 2);
    CHECK(back[1].p == 2.5);
    CHECK(back[1].value == 1.0 / 3.0);
    CHECK(moments_to_csv(m).rfind("p,value,half_width\n", 0) == 0);
    const std::vector<TailPoint> t{{3.0, 0.25, 0.001}};
    CHECK(tails_from_csv(tails_to_csv(t))[0].value == 0.25);
    CHECK_ERROR(moments_from_csv("p,value\n1,2\n"), kIoError);
    CHECK_ERROR(moments_from_csv("p,value,half_width\n1,x,0\n"), kIoError);
  }

  TEST_CASE("eta and batch files") {
    SimulationPlan plan;
    plan.trajectories = 50;
    plan.truncation = Truncation::fixed(30);
    const auto run = simulate_eta(plan);
    CHECK(eta_from_csv(eta_to_csv(run)) == run.values());
    const auto side = eta_sidecar(run, plan);
    CHECK(side.at("seed") == 42);
    CHECK(side.at("N") == 30);
    const auto batch = simulate_batch(plan.model, 4, 6, 1, 1);
    const auto back = batch_from_csv(batch_to_csv(batch), batch_sidecar(batch));
    CHECK(back.values == batch.values);
    CHECK(back.index_start == batch.index_start);
    CHECK(sidecar_path("a/eta.csv") == fs::path("a/eta.csv.json"));
  }

  TEST_CASE("atomic writes") {
    const auto dir = scratch_dir("io");
    write_file_atomic(dir / "x.txt", "one");
    write_file_atomic(dir / "x.txt", "two");
    CHECK(read_file(dir / "x.txt") == "two");
    std::size_t entries = 0;
    for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir)) ++entries;
    CHECK(entries == 1);
    CHECK_ERROR(write_file_atomic(dir / "missing" / "x.txt", "z"), kIoError);
    CHECK_ERROR(read_file(dir / "nope"), kIoError);
    fs::remove_all(dir);
  }

  TEST_CASE("svg") {
    PlotSpec p{"t", "x", "y", true, true, {{"a", {1.0, 10.0, 0.0}, {1.0, 0.1, 5.0}}}};
    const auto s = render_svg(p);
    CHECK(s.find("<svg") != std::string::npos);
    CHECK(s.find("<metadata>") != std::string::npos);
    CHECK(render_svg(p) == s);
  }
}

TEST_SUITE("schema") {
  TEST_CASE("positions") {
    const auto pos = json_positions("{\n  \"a\": [1,\n    2]\n}");
    CHECK(pos.at("").line == 1);
    CHECK(pos.at("/a").line == 2);
    CHECK(pos.at("/a").column == 8);
    CHECK(pos.at("/a/1").line == 3);
    CHECK(pos.at("/a/1").column == 5);
  }

  TEST_CASE("line-precise violations in source order") {
    const std::string text =
        "{\n  \"schema_version\": 1,\n  \"norm\": {\n    \"moments\": {\"form\": \"exponential\"},\n"
        "    \"psi\": {\"form\": \"power_root\", \"m\": -2, \"extra\": 1}\n  }\n}\n";
    const auto msg = error_text(text, "bad.json");
    const auto a = msg.find("bad.json:5:40: /norm/psi/m:");
    const auto b = msg.find("bad.json:5:53: /norm/psi/extra:");
    CHECK(a != std::string::npos);
    CHECK(b != std::string::npos);
    CHECK(a < b);
  }

  TEST_CASE("parse errors carry a position") {
    const auto msg = error_text("{\n  \"schema_version\": 1,\n  \"norm\": }\n", "broken.json");
    CHECK(msg.find("broken.json:3:") != std::string::npos);
  }

  TEST_CASE("rejections") {
    CHECK_FALSE(error_text(R"({"schema_version": 2, "verify": {}})", "c").empty());
    CHECK_FALSE(error_text(R"({"verify": {}})", "c").empty());
    CHECK_FALSE(error_text(R"({"schema_version": 1, "verify": {"criteria": [11]}})", "c").empty());
    CHECK_FALSE(error_text(R"({"schema_version": 1, "verify": {"threads": -1}})", "c").empty());
    CHECK_FALSE(error_text(R"({"schema_version": 1, "norm": {"moments": {"form": "exponential"}}})", "c").empty());
    CHECK(error_text(R"({"schema_version": 1, "verify": {"criteria": [1, 4]}})", "c").empty());
  }

  TEST_CASE("the published schema is valid JSON") {
    const auto s = json::parse(config_schema_text());
    CHECK(s.contains("$defs"));
  }
}

TEST_SUITE("commands") {
  TEST_CASE("norm") {
    const auto cfg = load_config(
        R"({"schema_version": 1, "norm": {"moments": {"form": "constant", "c": 1}, "psi": {"form": "extremal", "r": 2}}})");
    const auto r = run_command("norm", cfg, {});
    CHECK(r.report.at("result").at("value") == 1.0);
    CHECK_FALSE(r.failed);
    CHECK(names(r) == std::vector<std::string>{"norm_report.json", "norm_curve.csv"});
    CHECK(names(run_command("norm", cfg, {std::nullopt, std::nullopt, OutputFormat::kJson})) ==
          std::vector<std::string>{"norm_report.json"});
    CHECK(names(run_command("norm", cfg, {std::nullopt, std::nullopt, OutputFormat::kSvg})) ==
          std::vector<std::string>{"norm_report.json", "norm_curve.svg"});
    const auto natural = load_config(
        R"({"schema_version": 1, "norm": {"moments": {"form": "exponential"}, "psi": {"form": "natural", "of": {"form": "exponential"}}}})");
    CHECK(run_command("norm", natural).report.at("result").at("value").get<double>() ==
          doctest::Approx(1.0).epsilon(1e-12));
  }

  TEST_CASE("conjugate self-test and bound") {
    const auto c = load_config(
        R"({"schema_version": 1, "conjugate": {"psi": {"form": "power_root", "m": 1}, "v_grid": [1, 2, 3]}})");
    const auto r = run_command("conjugate", c);
    CHECK_FALSE(r.failed);
    CHECK(r.report.at("result").at("conjugate")[1].at("h_star").get<double>() ==
          doctest::Approx(std::exp(1.0)).epsilon(1e-9));
    const auto b = load_config(R"({"schema_version": 1, "bound": {"p_grid": [1, 2, 5],
      "sigma": {"pair": {"eps": {"form": "geometric", "q": 0.25}, "beta": {"form": "geometric", "Q": 0.5}}}}})");
    const auto br = run_command("bound", b);
    CHECK(br.artifacts[1].name == "bound.csv");
    CHECK(br.artifacts[1].content.find("1.1547005383792515") != std::string::npos);
  }

  TEST_CASE("simulate seed override and provenance") {
    const auto cfg = load_config(R"({"schema_version": 1, "simulate": {"model": {"kind": "exponential_power", "alpha": 1},
      "eps": 0.5, "trajectories": 200, "seed": 7, "threads": 3, "u_grid": [1, 2]}})");
    const auto a = run_command("simulate", cfg);
    const auto b = run_command("simulate", cfg, {std::nullopt, 1, OutputFormat::kCsv});
    CHECK(a.artifacts[1].content == b.artifacts[1].content);
    CHECK(a.report.at("provenance").at("config_sha256") == b.report.at("provenance").at("config_sha256"));
    CHECK_FALSE(a.report.at("provenance").at("config").at("simulate").contains("threads"));
    const auto c = run_command("simulate", cfg, {std::uint64_t{8}, std::nullopt, OutputFormat::kCsv});
    CHECK(c.artifacts[1].content != a.artifacts[1].content);
    CHECK(c.report.at("provenance").at("config").at("simulate").at("seed") == 8);
  }

  TEST_CASE("config hash ignores key order") {
    CHECK(config_hash(json::parse(R"({"a": 1, "b": [1, 2]})")) ==
          config_hash(json::parse(R"({"b": [1, 2], "a": 1})")));
    CHECK(config_hash(json::parse(R"({"a": 1})")).size() == 64);
  }

  TEST_CASE("helpers") {
    const auto g = grid_from_json(json::parse(R"({"from": 1, "to": 100, "count": 3, "spacing": "log"})"));
    REQUIRE(g.size() == 3);
    CHECK(g[1] == doctest::Approx(10.0).epsilon(1e-14));
    CHECK(moments_from_json(json::parse(R"({"form": "uniform", "scale": 2})")).value(1.0) ==
          doctest::Approx(1.0).epsilon(1e-14));
    CHECK_ERROR(parse_format("xml"), kConfigError);
    CHECK(is_command("verify"));
    CHECK_FALSE(is_command("schema"));
  }
}
