// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "glsreg/glsreg.h"

namespace {

gls_generating* psi(const char* spec) {
  gls_generating* g = nullptr;
  REQUIRE(gls_generating_from_json(spec, &g) == GLS_OK);
  return g;
}

gls_moments* moments(const char* spec) {
  gls_moments* m = nullptr;
  REQUIRE(gls_moments_from_json(spec, &m) == GLS_OK);
  return m;
}

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::strcmp(gls_version(), "0.1.0") == 0);
  CHECK(std::strcmp(gls_status_name(GLS_OK), "Ok") == 0);
  CHECK(std::strcmp(gls_status_name(GLS_CONFIG_ERROR), "ConfigError") == 0);
}

TEST_CASE("generating functions and norms") {
  gls_generating* g = psi(R"({"form":"power_root","m":1})");
  double v = 0.0;
  CHECK(gls_generating_value(g, 4.0, &v) == GLS_OK);
  CHECK(v == 4.0);
  char* text = nullptr;
  CHECK(gls_generating_describe(g, &text) == GLS_OK);
  CHECK(std::strlen(text) > 0);
  gls_string_free(text);

  gls_moments* m = moments(R"({"form":"exponential"})");
  double arg = 0.0;
  CHECK(gls_norm(m, g, &v, &arg) == GLS_OK);
  CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
  gls_generating* nat = nullptr;
  CHECK(gls_natural_function(m, &nat) == GLS_OK);
  CHECK(gls_norm(m, nat, &v, nullptr) == GLS_OK);
  CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(gls_young_fenchel(g, 2.0, &v, nullptr) == GLS_OK);
  CHECK(v == doctest::Approx(std::exp(1.0)).epsilon(1e-9));
  CHECK(gls_tail_bound(g, std::exp(1.0), &v) == GLS_OK);
  CHECK(v == doctest::Approx(0.36787944117144232).epsilon(1e-12));
  CHECK(gls_tail_bound(g, 1.0, &v) == GLS_DOMAIN_ERROR);
  CHECK(std::strlen(gls_last_error()) > 0);
  CHECK(gls_grand_norm(m, 1.0, &v) == GLS_EMPTY_DOMAIN);
  gls_generating_free(nat);
  gls_moments_free(m);
  gls_generating_free(g);
}

TEST_CASE("bounds") {
  gls_generating* k = psi(R"({"form":"constant","c":1})");
  double v = 0.0;
  CHECK(gls_kloeden_bound(k, 1.0, 0.5, 3.0, &v) == GLS_OK);
  CHECK(v == doctest::Approx(1.2599210498948732).epsilon(1e-14));
  CHECK(gls_kloeden_bound(k, 1.0, 1.0, 3.0, &v) == GLS_INVALID_EPSILON);
  gls_pair* pair = nullptr;
  REQUIRE(gls_pair_from_json(R"({"eps":{"form":"geometric","q":0.25},"beta":{"form":"geometric","Q":0.5}})", &pair) ==
          GLS_OK);
  CHECK(gls_sigma(pair, 2.0, 1e-12, &v) == GLS_OK);
  CHECK(v == doctest::Approx(1.1547005383792515).epsilon(1e-15));
  gls_generating* pr = psi(R"({"form":"power_root","m":1})");
  CHECK(gls_generalized_bound(pr, pair, 3.0, 1e-12, &v) == GLS_OK);
  CHECK(v == doctest::Approx(3.1365477514482613).epsilon(1e-14));
  gls_pair_free(pair);
  gls_generating_free(pr);
  gls_generating_free(k);
}

TEST_CASE("exact model quantities") {
  double v = 0.0;
  CHECK(gls_exact_eta_tail(1.0, 0.5, 1.0, 1e-15, 1, &v) == GLS_OK);
  CHECK(v == doctest::Approx(0.84184403356789631).epsilon(1e-13));
  CHECK(gls_exact_eta_moment(1.0, 0.5, 2.0, 1e-12, 1, &v) == GLS_MOMENT_INFINITE);
}

TEST_CASE("simulation is reproducible") {
  const char* plan = R"({"model":{"kind":"exponential_power","alpha":1},"eps":0.5,"trajectories":100,
                         "truncation":{"horizon":50},"seed":3})";
  gls_result* a = nullptr;
  gls_result* b = nullptr;
  REQUIRE(gls_simulate_eta(plan, &a) == GLS_OK);
  REQUIRE(gls_simulate_eta(plan, &b) == GLS_OK);
  REQUIRE(gls_result_value_count(a) == 100);
  CHECK(std::memcmp(gls_result_values(a), gls_result_values(b), 100 * sizeof(double)) == 0);
  gls_result_free(a);
  gls_result_free(b);
}

TEST_CASE("commands and config errors") {
  const char* cfg = R"({"schema_version": 1, "norm": {"moments": {"form": "constant", "c": 1}, "psi": {"form": "extremal", "r": 2}}})";
  CHECK(gls_validate_config(cfg, "n.json") == GLS_OK);
  gls_result* r = nullptr;
  REQUIRE(gls_run_command("norm", cfg, "n.json", nullptr, nullptr, GLS_FORMAT_CSV, &r) == GLS_OK);
  CHECK(gls_result_failed(r) == 0);
  REQUIRE(gls_result_artifact_count(r) == 2);
  CHECK(std::strcmp(gls_result_artifact_name(r, 0), "norm_report.json") == 0);
  std::size_t size = 0;
  const char* data = gls_result_artifact_data(r, 1, &size);
  CHECK(std::string(data, size).rfind("p,", 0) == 0);
  gls_result_free(r);

  CHECK(gls_validate_config(R"({"schema_version": 1, "norm": {"moments": 3}})", "x.json") == GLS_CONFIG_ERROR);
  CHECK(std::string(gls_last_error()).find("x.json:1:") != std::string::npos);
  CHECK(gls_run_command("dance", cfg, "n.json", nullptr, nullptr, GLS_FORMAT_CSV, &r) == GLS_CONFIG_ERROR);
  CHECK(gls_generating_from_json("{", nullptr) != GLS_OK);
  CHECK(std::strlen(gls_config_schema()) > 100);
}

TEST_CASE("atomic file write") {
  const auto path = std::filesystem::temp_directory_path() / "glsreg_capi_write.txt";
  CHECK(gls_write_file_atomic(path.c_str(), "abc", 3) == GLS_OK);
  std::ifstream in(path);
  std::string s;
  in >> s;
  CHECK(s == "abc");
  std::filesystem::remove(path);
  CHECK(gls_write_file_atomic("/nonexistent_dir_glsreg/x", "a", 1) == GLS_IO_ERROR);
}
