// SPDX-License-Identifier: Apache-2.0
// glsreg command-line front end; talks to the library only through glsreg.h.
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "glsreg/glsreg.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

struct Options {
  std::string config;
  std::string out = ".";
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  std::string format = "csv";
};

int error(const std::string& msg) {
  std::cerr << "glsreg: error: " << msg << "\n";
  return kExitConfig;
}

int run(const std::string& command, const Options& o) {
  std::ifstream in(o.config, std::ios::binary);
  if (!in) return error("cannot read config '" + o.config + "'");
  std::ostringstream text;
  text << in.rdbuf();

  const gls_format format = o.format == "json" ? GLS_FORMAT_JSON : o.format == "svg" ? GLS_FORMAT_SVG : GLS_FORMAT_CSV;
  gls_result* res = nullptr;
  const gls_status st = gls_run_command(command.c_str(), text.str().c_str(), o.config.c_str(),
                                        o.seed ? &*o.seed : nullptr, o.threads ? &*o.threads : nullptr, format, &res);
  if (st != GLS_OK) return error(std::string(gls_status_name(st)) + "\n" + gls_last_error());

  std::error_code ec;
  std::filesystem::create_directories(o.out, ec);
  if (ec) {
    gls_result_free(res);
    return error("cannot create output directory '" + o.out + "': " + ec.message());
  }
  for (std::size_t i = 0; i < gls_result_artifact_count(res); ++i) {
    const std::string name = gls_result_artifact_name(res, i);
    std::size_t size = 0;
    const char* data = gls_result_artifact_data(res, i, &size);
    const std::string path = (std::filesystem::path(o.out) / name).string();
    if (gls_write_file_atomic(path.c_str(), data, size) != GLS_OK) {
      const std::string msg = gls_last_error();
      gls_result_free(res);
      return error(msg);
    }
    if (name == "verify_report.txt") std::cout << std::string(data, size);
    std::cerr << "wrote " << path << "\n";
  }
  const bool failed = gls_result_failed(res) != 0;
  gls_result_free(res);
  return failed ? kExitFail : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Grand Lebesgue space norms, regulator bounds and simulation experiments"};
  app.set_version_flag("--version", gls_version());
  app.require_subcommand(1);

  Options o;
  std::string selected;
  const char* commands[][2] = {
      {"norm", "GLS or classical grand norm of a moment curve"},
      {"conjugate", "Young-Fenchel conjugate and exponential tail bound over grids"},
      {"bound", "regulator moment bounds and sigma(p) over a p-grid"},
      {"simulate", "simulate regulator samples to CSV with a metadata sidecar"},
      {"verify", "run the verification suite; exit 1 on any FAIL"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", o.config, "experiment config (JSON)")->required();
    sub->add_option("--out", o.out, "output directory")->capture_default_str();
    sub->add_option("--seed", o.seed, "seed override (simulate, verify)");
    sub->add_option("--threads", o.threads, "worker threads; never changes results")->check(CLI::Range(0, 1024));
    sub->add_option("--format", o.format, "json | csv | svg")
        ->check(CLI::IsMember({"json", "csv", "svg"}))
        ->capture_default_str();
    sub->callback([&selected, name = std::string(name)] { selected = name; });
  }
  CLI::App* schema = app.add_subcommand("schema", "print the config JSON schema");
  schema->callback([&selected] { selected = "schema"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }
  if (selected == "schema") {
    std::cout << gls_config_schema();
    return kExitOk;
  }
  return run(selected, o);
}
