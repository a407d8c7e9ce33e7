// SPDX-License-Identifier: Apache-2.0
#include "glsreg/glsreg.h"

#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include "commands.hpp"
#include "error.hpp"
#include "generating_function.hpp"
#include "io.hpp"
#include "norms.hpp"
#include "regulator_bounds.hpp"
#include "sequence.hpp"
#include "simulation.hpp"

struct gls_generating {
  glsreg::GeneratingFunction f;
};
struct gls_moments {
  glsreg::MomentFunction m;
};
struct gls_pair {
  glsreg::DecaySequencePair pair;
};
struct gls_result {
  std::string report;
  std::vector<glsreg::Artifact> artifacts;
  std::vector<double> values;
  bool failed = false;
};

namespace {

thread_local std::string g_last_error;

template <typename F>
gls_status guard(F&& f) {
  try {
    g_last_error.clear();
    f();
    return GLS_OK;
  } catch (const glsreg::Error& e) {
    g_last_error = e.what();
    return static_cast<gls_status>(e.code());
  } catch (const nlohmann::json::exception& e) {
    g_last_error = e.what();
    return GLS_CONFIG_ERROR;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return GLS_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return GLS_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) glsreg::fail(glsreg::ErrorCode::kInvalidArgument, what);
}

nlohmann::json parse(const char* text) {
  require(text != nullptr, "null JSON text");
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    glsreg::fail(glsreg::ErrorCode::kConfigError, e.what());
  }
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* gls_version(void) { return GLSREG_VERSION; }

const char* gls_status_name(gls_status status) {
  return glsreg::error_code_name(static_cast<glsreg::ErrorCode>(status));
}

const char* gls_last_error(void) { return g_last_error.c_str(); }

void gls_string_free(char* s) { std::free(s); }

gls_status gls_generating_from_json(const char* json, gls_generating** out) {
  return guard([&] {
    require(out != nullptr, "null output");
    *out = new gls_generating{glsreg::psi_from_json(parse(json))};
  });
}

void gls_generating_free(gls_generating* psi) { delete psi; }

gls_status gls_generating_value(const gls_generating* psi, double p, double* out) {
  return guard([&] {
    require(psi && out, "null argument");
    *out = psi->f.evaluate(p);
  });
}

gls_status gls_generating_describe(const gls_generating* psi, char** out) {
  return guard([&] {
    require(psi && out, "null argument");
    *out = dup(psi->f.describe());
  });
}

gls_status gls_moments_from_json(const char* json, gls_moments** out) {
  return guard([&] {
    require(out != nullptr, "null output");
    *out = new gls_moments{glsreg::moments_from_json(parse(json))};
  });
}

void gls_moments_free(gls_moments* m) { delete m; }

gls_status gls_moments_value(const gls_moments* m, double p, double* out) {
  return guard([&] {
    require(m && out, "null argument");
    *out = m->m.value(p);
  });
}

gls_status gls_pair_from_json(const char* json, gls_pair** out) {
  return guard([&] {
    require(out != nullptr, "null output");
    *out = new gls_pair{glsreg::DecaySequencePair::from_json(parse(json))};
  });
}

void gls_pair_free(gls_pair* pair) { delete pair; }

gls_status gls_norm(const gls_moments* m, const gls_generating* psi, double* value, double* argmax) {
  return guard([&] {
    require(m && psi && value, "null argument");
    const auto r = glsreg::gls_norm(m->m, psi->f);
    *value = r.value;
    if (argmax) *argmax = r.argmax;
  });
}

gls_status gls_grand_norm(const gls_moments* m, double q, double* value) {
  return guard([&] {
    require(m && value, "null argument");
    *value = glsreg::classical_grand_norm(m->m, q).value;
  });
}

gls_status gls_natural_function(const gls_moments* m, gls_generating** out) {
  return guard([&] {
    require(m && out, "null argument");
    *out = new gls_generating{glsreg::natural_function(m->m)};
  });
}

gls_status gls_young_fenchel(const gls_generating* psi, double v, double* value, double* argmax) {
  return guard([&] {
    require(psi && value, "null argument");
    const auto r = glsreg::young_fenchel(psi->f, v);
    *value = r.value;
    if (argmax) *argmax = r.argmax;
  });
}

gls_status gls_tail_bound(const gls_generating* psi, double t, double* out) {
  return guard([&] {
    require(psi && out, "null argument");
    *out = glsreg::exponential_tail_bound(psi->f, t);
  });
}

gls_status gls_kloeden_bound(const gls_generating* K, double alpha, double eps, double p, double* out) {
  return guard([&] {
    require(K && out, "null argument");
    const glsreg::MomentEnvelope env{K->f, alpha, 1};
    glsreg::validate_envelope(env);
    *out = glsreg::kloeden_lp_bound(env, eps, p);
  });
}

gls_status gls_sigma(const gls_pair* pair, double p, double rel_tol, double* out) {
  return guard([&] {
    require(pair && out, "null argument");
    *out = glsreg::sigma_function(pair->pair, p, rel_tol).value;
  });
}

gls_status gls_generalized_bound(const gls_generating* psi, const gls_pair* pair, double p, double rel_tol,
                                 double* out) {
  return guard([&] {
    require(psi && pair && out, "null argument");
    *out = glsreg::generalized_bound(psi->f, pair->pair, p, rel_tol);
  });
}

gls_status gls_exact_eta_tail(double alpha, double eps, double u, double abs_tol, int64_t index_start,
                              double* out) {
  return guard([&] {
    require(out != nullptr, "null output");
    *out = glsreg::exact_eta_tail(alpha, eps, u, abs_tol, index_start);
  });
}

gls_status gls_exact_eta_moment(double alpha, double eps, double p, double rel_tol, int64_t index_start,
                                double* out) {
  return guard([&] {
    require(out != nullptr, "null output");
    *out = glsreg::exact_eta_moment(alpha, eps, p, rel_tol, index_start);
  });
}

gls_status gls_simulate_eta(const char* plan_json, gls_result** out) {
  return guard([&] {
    require(out != nullptr, "null output");
    const auto plan = glsreg::SimulationPlan::from_json(parse(plan_json));
    const auto run = glsreg::simulate_eta(plan);
    auto r = std::make_unique<gls_result>();
    r->values = run.values();
    r->report = glsreg::eta_sidecar(run, plan).dump(2);
    *out = r.release();
  });
}

gls_status gls_run_command(const char* command, const char* config_text, const char* source_name,
                           const uint64_t* seed, const int* threads, gls_format format, gls_result** out) {
  return guard([&] {
    require(command && config_text && out, "null argument");
    const auto cfg = glsreg::load_config(config_text, source_name ? source_name : "config");
    glsreg::CommandOptions opt;
    if (seed) opt.seed = *seed;
    if (threads) opt.threads = *threads;
    require(format >= GLS_FORMAT_JSON && format <= GLS_FORMAT_SVG, "unknown format");
    opt.format = static_cast<glsreg::OutputFormat>(format);
    auto res = glsreg::run_command(command, cfg, opt);
    auto r = std::make_unique<gls_result>();
    r->report = res.report.dump(2);
    r->artifacts = std::move(res.artifacts);
    r->failed = res.failed;
    *out = r.release();
  });
}

gls_status gls_validate_config(const char* config_text, const char* source_name) {
  return guard([&] {
    require(config_text != nullptr, "null config");
    glsreg::load_config(config_text, source_name ? source_name : "config");
  });
}

const char* gls_config_schema(void) { return glsreg::config_schema_text().c_str(); }

void gls_result_free(gls_result* r) { delete r; }

const char* gls_result_report(const gls_result* r) { return r ? r->report.c_str() : ""; }

int gls_result_failed(const gls_result* r) { return r && r->failed ? 1 : 0; }

size_t gls_result_artifact_count(const gls_result* r) { return r ? r->artifacts.size() : 0; }

const char* gls_result_artifact_name(const gls_result* r, size_t i) {
  return r && i < r->artifacts.size() ? r->artifacts[i].name.c_str() : nullptr;
}

const char* gls_result_artifact_data(const gls_result* r, size_t i, size_t* size) {
  if (!r || i >= r->artifacts.size()) {
    if (size) *size = 0;
    return nullptr;
  }
  if (size) *size = r->artifacts[i].content.size();
  return r->artifacts[i].content.data();
}

size_t gls_result_value_count(const gls_result* r) { return r ? r->values.size() : 0; }

const double* gls_result_values(const gls_result* r) { return r ? r->values.data() : nullptr; }

gls_status gls_write_file_atomic(const char* path, const char* data, size_t size) {
  return guard([&] {
    require(path && (data || size == 0), "null argument");
    glsreg::write_file_atomic(path, std::string(data ? data : "", size));
  });
}

}  // extern "C"
