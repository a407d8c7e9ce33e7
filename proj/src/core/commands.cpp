// SPDX-License-Identifier: Apache-2.0
#include "commands.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "error.hpp"
#include "io.hpp"
#include "json_schema.hpp"
#include "norms.hpp"
#include "regulator_bounds.hpp"
#include "simulation.hpp"
#include "svg.hpp"
#include "verification.hpp"

#ifndef GLSREG_VERSION
#define GLSREG_VERSION "0.0.0"
#endif

namespace glsreg {
namespace {

using json = nlohmann::json;

json number(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return nullptr;
  return x > 0 ? "inf" : "-inf";
}

std::string cell(double x) { return std::isnan(x) ? "" : format_double(x); }

double field(const json& j, const char* key, double fallback) {
  return j.contains(key) ? j.at(key).get<double>() : fallback;
}

std::string report_text(const json& report) { return report.dump(2) + "\n"; }

json provenance(const std::string& command, const json& effective) {
  return {{"tool", "glsreg"},
          {"version", GLSREG_VERSION},
          {"command", command},
          {"config_sha256", config_hash(effective)},
          {"config", effective}};
}

// Applies --seed/--threads. Threads never change results, so they are
// dropped from the hashed config.
json effective_config(const std::string& command, const json& config, const CommandOptions& opt) {
  json eff = config;
  json& block = eff[command];
  if (block.is_null()) block = json::object();
  if (opt.seed && (command == "simulate" || command == "verify")) block["seed"] = *opt.seed;
  block.erase("threads");
  return eff;
}

int thread_count(const json& block, const CommandOptions& opt) {
  if (opt.threads) return *opt.threads;
  return block.contains("threads") ? block.at("threads").get<int>() : 0;
}

std::string join_rows(const std::string& header, const std::vector<std::vector<double>>& rows) {
  std::string out = header + "\n";
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) out += (i ? "," : "") + cell(r[i]);
    out += "\n";
  }
  return out;
}

CommandResult cmd_norm(const json& cfg, const CommandOptions& opt) {
  const json& b = cfg.at("norm");
  if (b.contains("psi") == b.contains("grand_q")) {
    fail(ErrorCode::kConfigError, "norm needs exactly one of 'psi' or 'grand_q'");
  }
  const MomentFunction m = moments_from_json(b.at("moments"));
  const bool grand = b.contains("grand_q");
  NormResult r;
  json result;
  if (grand) {
    const double q = b.at("grand_q").get<double>();
    r = classical_grand_norm(m, q);
    result = {{"kind", "classical_grand"}, {"q", q}};
  } else {
    const GeneratingFunction psi = psi_from_json(b.at("psi"));
    check_standing_positivity(psi);
    r = gls_norm(m, psi);
    result = {{"kind", "gls"}, {"psi", psi.describe()}};
  }
  result["moments"] = m.label();
  result["value"] = number(r.value);
  result["argmax"] = number(r.argmax);
  result["unbounded"] = r.unbounded;
  result["boundary_limit"] = r.boundary_limit;

  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < r.scan.grid.size(); ++i) rows.push_back({r.scan.grid[i], r.scan.values[i]});
  if (rows.empty() && std::isfinite(r.argmax)) rows.push_back({r.argmax, r.value});
  result["curve_points"] = rows.size();

  CommandResult out;
  out.report = {{"result", result}, {"provenance", provenance("norm", effective_config("norm", cfg, opt))}};
  out.artifacts.push_back({"norm_report.json", report_text(out.report)});
  const std::string x = grand ? "e" : "p";
  if (opt.format == OutputFormat::kCsv) out.artifacts.push_back({"norm_curve.csv", join_rows(x + ",ratio", rows)});
  if (opt.format == OutputFormat::kSvg) {
    PlotSeries s{"ratio", {}, {}};
    for (const auto& row : rows) {
      s.x.push_back(row[0]);
      s.y.push_back(row[1]);
    }
    out.artifacts.push_back({"norm_curve.svg", render_svg({grand ? "grand norm objective" : "||f||_p / psi(p)", x,
                                                           "ratio", !grand, false, {s}})});
  }
  return out;
}

CommandResult cmd_conjugate(const json& cfg, const CommandOptions& opt) {
  const json& b = cfg.at("conjugate");
  const GeneratingFunction psi = psi_from_json(b.at("psi"));
  check_standing_positivity(psi);
  const std::vector<double> vs =
      grid_from_json(b.contains("v_grid") ? b.at("v_grid") : json{{"from", 1}, {"to", 5}, {"count", 41}});
  const std::vector<double> ts = grid_from_json(
      b.contains("t_grid") ? b.at("t_grid")
                           : json{{"from", std::numbers::e}, {"to", 100}, {"count", 40}, {"spacing", "log"}});
  for (double t : ts) {
    if (!(t >= std::numbers::e)) fail(ErrorCode::kConfigError, "t_grid values must be >= e, got " + format_double(t));
  }

  std::vector<std::vector<double>> vrows;
  json vj = json::array();
  for (double v : vs) {
    const ConjugateResult c = young_fenchel(psi, v);
    vrows.push_back({v, c.value, c.argmax});
    vj.push_back({{"v", v}, {"h_star", number(c.value)}, {"argmax", number(c.argmax)}, {"unbounded", c.unbounded}});
  }
  std::vector<std::vector<double>> trows;
  json tj = json::array();
  for (double t : ts) {
    const double bound = exponential_tail_bound(psi, t);
    const double inf = markov_infimum(psi, t);
    trows.push_back({t, bound, inf});
    tj.push_back({{"t", t}, {"tail_bound", number(bound)}, {"markov_infimum", number(inf)}});
  }
  json result = {{"psi", psi.describe()}, {"conjugate", vj}, {"tail", tj}};

  CommandResult out;
  const json& ps = b.at("psi");
  if (ps.value("form", "") == "power_root" && ps.at("m").get<double>() == 1.0) {
    constexpr double kTol = 1e-6;
    double worst = 0.0;
    for (const auto& row : vrows) {
      if (row[0] >= 1.0) worst = std::max(worst, std::abs(row[1] - std::exp(row[0] - 1.0)));
    }
    result["self_test"] = {{"closed_form", "h*(v) = exp(v - 1) for v >= 1"},
                           {"max_abs_error", worst},
                           {"tolerance", kTol},
                           {"passed", worst <= kTol}};
    out.failed = !(worst <= kTol);
  }
  out.report = {{"result", result},
                {"provenance", provenance("conjugate", effective_config("conjugate", cfg, opt))}};
  out.artifacts.push_back({"conjugate_report.json", report_text(out.report)});
  if (opt.format == OutputFormat::kCsv) {
    out.artifacts.push_back({"conjugate.csv", join_rows("v,h_star,argmax", vrows)});
    out.artifacts.push_back({"tail_bound.csv", join_rows("t,tail_bound,markov_infimum", trows)});
  }
  if (opt.format == OutputFormat::kSvg) {
    PlotSeries h{"h*(v)", {}, {}};
    for (const auto& r : vrows) h.x.push_back(r[0]), h.y.push_back(r[1]);
    PlotSeries t{"exp(-h*(ln t))", {}, {}};
    for (const auto& r : trows) t.x.push_back(r[0]), t.y.push_back(r[1]);
    out.artifacts.push_back({"conjugate.svg", render_svg({"Young-Fenchel conjugate", "v", "h*(v)", false, false, {h}})});
    out.artifacts.push_back({"tail_bound.svg", render_svg({"exponential tail bound", "t", "bound", true, true, {t}})});
  }
  return out;
}

// Runs f, turning library errors into a null cell tagged with the error name.
template <typename F>
json guarded(F&& f, double& csv_value) {
  try {
    csv_value = f();
    return number(csv_value);
  } catch (const Error& e) {
    csv_value = std::nan("");
    return {{"error", error_code_name(e.code())}, {"message", e.what()}};
  }
}

CommandResult cmd_bound(const json& cfg, const CommandOptions& opt) {
  const json& b = cfg.at("bound");
  if (!b.contains("kloeden") && !b.contains("sigma") && !b.contains("generalized")) {
    fail(ErrorCode::kConfigError, "bound needs at least one of 'kloeden', 'sigma', 'generalized'");
  }
  const std::vector<double> ps = grid_from_json(b.at("p_grid"));
  std::optional<MomentEnvelope> env;
  double eps = 0.0;
  std::optional<RegulatorNormBound> kappa;
  if (b.contains("kloeden")) {
    const json& k = b.at("kloeden");
    env = MomentEnvelope{psi_from_json(k.at("K")), k.at("alpha").get<double>(),
                         k.contains("index_start") ? k.at("index_start").get<std::int64_t>() : 1};
    validate_envelope(*env);
    eps = k.at("eps").get<double>();
    kappa = gls_regulator_norm_bound(*env, eps);
  }
  std::optional<DecaySequencePair> sigma_pair;
  double sigma_tol = 1e-12;
  if (b.contains("sigma")) {
    sigma_pair = DecaySequencePair::from_json(b.at("sigma").at("pair"));
    sigma_tol = field(b.at("sigma"), "rel_tol", 1e-12);
  }
  std::optional<DecaySequencePair> gen_pair;
  std::optional<GeneratingFunction> gen_psi;
  double gen_tol = 1e-12;
  if (b.contains("generalized")) {
    gen_pair = DecaySequencePair::from_json(b.at("generalized").at("pair"));
    gen_psi = psi_from_json(b.at("generalized").at("psi"));
    gen_tol = field(b.at("generalized"), "rel_tol", 1e-12);
  }

  const double none = std::nan("");
  std::vector<std::vector<double>> rows;
  json table = json::array();
  for (double p : ps) {
    json row = {{"p", p}};
    double kl = none, ka = none, sg = none, sc = none, gb = none;
    if (env) {
      row["kloeden"] = guarded([&] { return kloeden_lp_bound(*env, eps, p); }, kl);
      ka = kappa->kappa.evaluate(p);
      row["kappa"] = number(ka);
    }
    if (sigma_pair) {
      row["sigma"] = guarded([&] { return sigma_function(*sigma_pair, p, sigma_tol).value; }, sg);
      if (sigma_pair->geometric_pair()) {
        row["sigma_closed_form"] = guarded([&] { return sigma_closed_form(*sigma_pair, p); }, sc);
      }
    }
    if (gen_pair) row["generalized"] = guarded([&] { return generalized_bound(*gen_psi, *gen_pair, p, gen_tol); }, gb);
    rows.push_back({p, kl, ka, sg, sc, gb});
    table.push_back(row);
  }
  json result = {{"rows", table}};
  if (env) {
    result["kloeden"] = {{"K", env->K.describe()}, {"alpha", env->alpha}, {"eps", eps},
                         {"index_start", env->index_start}, {"regulator_norm_bound", kappa->bound}};
  }
  if (sigma_pair) result["sigma"] = {{"pair", sigma_pair->to_json()}, {"rel_tol", sigma_tol}};
  if (gen_pair) result["generalized"] = {{"psi", gen_psi->describe()}, {"pair", gen_pair->to_json()}, {"rel_tol", gen_tol}};

  CommandResult out;
  out.report = {{"result", result}, {"provenance", provenance("bound", effective_config("bound", cfg, opt))}};
  out.artifacts.push_back({"bound_report.json", report_text(out.report)});
  if (opt.format == OutputFormat::kCsv) {
    out.artifacts.push_back({"bound.csv", join_rows("p,kloeden,kappa,sigma,sigma_closed_form,generalized", rows)});
  }
  if (opt.format == OutputFormat::kSvg) {
    static const char* kNames[] = {"", "kloeden", "kappa", "sigma", "sigma closed form", "generalized"};
    std::vector<PlotSeries> series;
    for (int c = 1; c <= 5; ++c) {
      PlotSeries s{kNames[c], {}, {}};
      for (const auto& r : rows) {
        if (!std::isnan(r[c])) s.x.push_back(r[0]), s.y.push_back(r[c]);
      }
      if (!s.x.empty()) series.push_back(std::move(s));
    }
    out.artifacts.push_back({"bound.svg", render_svg({"bounds over p", "p", "value", false, true, series})});
  }
  return out;
}

CommandResult cmd_simulate(const json& cfg, const CommandOptions& opt) {
  const json& b = cfg.at("simulate");
  SimulationPlan plan = SimulationPlan::from_json(b);
  if (opt.seed) plan.seed = *opt.seed;
  plan.threads = thread_count(b, opt);
  const EtaRun run = simulate_eta(plan);
  const std::vector<double> eta = run.values();

  double sum = 0.0;
  double mx = 0.0;
  for (double v : eta) sum += v, mx = std::max(mx, v);
  json result = {{"model", plan.model.to_json()},
                 {"eps", plan.eps},
                 {"trajectories", plan.trajectories},
                 {"seed", plan.seed},
                 {"horizon", run.horizon},
                 {"rho", run.rho},
                 {"u_min", run.u_min},
                 {"truncation_bound", run.truncation_bound},
                 {"mean", sum / static_cast<double>(eta.size())},
                 {"max", mx}};
  std::vector<MomentPoint> moments;
  if (!plan.p_grid.empty()) moments = empirical_moments(eta, plan.p_grid).table();
  std::vector<TailPoint> tails;
  if (!plan.u_grid.empty()) tails = TailFunction::empirical(eta).tabulate(plan.u_grid);
  json mj = json::array();
  for (const auto& m : moments) mj.push_back({{"p", m.p}, {"value", number(m.value)}, {"half_width", number(m.half_width)}});
  json tj = json::array();
  for (const auto& t : tails) {
    json row = {{"u", t.t}, {"value", t.value}, {"half_width", t.half_width},
                {"truncation_bound", discarded_tail_bound(plan.model, plan.eps, run.horizon, t.t)}};
    tj.push_back(row);
  }
  result["moments"] = mj;
  result["tails"] = tj;

  CommandResult out;
  out.report = {{"result", result},
                {"provenance", provenance("simulate", effective_config("simulate", cfg, opt))}};
  out.artifacts.push_back({"simulate_report.json", report_text(out.report)});
  out.artifacts.push_back({"eta.csv", eta_to_csv(run)});
  out.artifacts.push_back({"eta.csv.json", eta_sidecar(run, plan).dump(2) + "\n"});
  if (opt.format == OutputFormat::kCsv) {
    if (!moments.empty()) out.artifacts.push_back({"moments.csv", moments_to_csv(moments)});
    if (!tails.empty()) out.artifacts.push_back({"tails.csv", tails_to_csv(tails)});
  }
  if (opt.format == OutputFormat::kSvg) {
    std::vector<double> us = plan.u_grid;
    if (us.empty()) us = geometric_grid(std::min(1.0, std::max(mx, 1e-3)), std::max(mx, 1.0), 40);
    PlotSeries emp{"empirical", us, {}};
    const TailFunction tf = TailFunction::empirical(eta);
    for (double u : us) emp.y.push_back(tf(u).value);
    std::vector<PlotSeries> series{emp};
    if (plan.model.kind() == ModelKind::kExponentialPower) {
      PlotSeries ex{"exact", us, {}};
      for (double u : us) ex.y.push_back(exact_eta_tail(plan.model.alpha(), plan.eps, u, 1e-15, plan.model.index_start()));
      series.push_back(std::move(ex));
    }
    out.artifacts.push_back({"eta_tail.svg", render_svg({"P(eta_N >= u)", "u", "probability", true, true, series})});
  }
  return out;
}

CommandResult cmd_verify(const json& cfg, const CommandOptions& opt) {
  const json block = cfg.contains("verify") ? cfg.at("verify") : json::object();
  SuiteConfig suite = SuiteConfig::from_json(block);
  if (opt.seed) suite.seed = *opt.seed;
  suite.threads = thread_count(block, opt);
  const VerificationReport rep = run_verification(suite);

  CommandResult out;
  out.report = rep.to_json();
  out.report["provenance"]["tool"] = "glsreg";
  out.report["provenance"]["command"] = "verify";
  const json eff = effective_config("verify", cfg, opt);
  out.report["provenance"]["config_sha256"] = config_hash(eff);
  out.report["provenance"]["config"] = eff;
  out.failed = rep.any_fail();
  out.artifacts.push_back({"verify_report.json", report_text(out.report)});
  out.artifacts.push_back({"verify_report.txt", rep.to_text()});
  if (opt.format == OutputFormat::kCsv) {
    std::string csv = "check_id,criterion,relation,theoretical,estimate,half_width,truncation_bound,uncertainty,verdict\n";
    for (const auto& c : rep.checks) {
      csv += c.check_id + "," + std::to_string(c.criterion) + "," + c.relation + "," + cell(c.theoretical) + "," +
             cell(c.estimate) + "," + cell(c.half_width) + "," + cell(c.truncation_bound) + "," +
             cell(c.uncertainty) + "," + verdict_name(c.verdict) + "\n";
    }
    out.artifacts.push_back({"verify_checks.csv", csv});
  }
  if (opt.format == OutputFormat::kSvg) {
    PlotSeries used{"seconds", {}, {}};
    PlotSeries budget{"budget", {}, {}};
    for (const auto& c : rep.criteria) {
      used.x.push_back(c.id), used.y.push_back(c.seconds);
      budget.x.push_back(c.id), budget.y.push_back(c.budget_seconds);
    }
    out.artifacts.push_back({"verify_runtime.svg",
                             render_svg({"criterion runtime", "criterion", "seconds", false, true, {used, budget}})});
  }
  return out;
}

}  // namespace

OutputFormat parse_format(const std::string& name) {
  if (name == "json") return OutputFormat::kJson;
  if (name == "csv") return OutputFormat::kCsv;
  if (name == "svg") return OutputFormat::kSvg;
  fail(ErrorCode::kConfigError, "unknown format '" + name + "' (expected json, csv or svg)");
}

bool is_command(const std::string& name) {
  return name == "norm" || name == "conjugate" || name == "bound" || name == "simulate" || name == "verify";
}

json load_config(const std::string& text, const std::string& source_name) {
  static const json schema = json::parse(config_schema_text());
  return parse_and_validate(text, schema, source_name);
}

CommandResult run_command(const std::string& command, const json& config, const CommandOptions& options) {
  if (!is_command(command)) fail(ErrorCode::kConfigError, "unknown command '" + command + "'");
  if (command != "verify" && !config.contains(command)) {
    fail(ErrorCode::kConfigError, "config has no '" + command + "' block");
  }
  if (command == "norm") return cmd_norm(config, options);
  if (command == "conjugate") return cmd_conjugate(config, options);
  if (command == "bound") return cmd_bound(config, options);
  if (command == "simulate") return cmd_simulate(config, options);
  return cmd_verify(config, options);
}

std::string config_hash(const json& config) {
  const std::string text = config.dump();
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(text.data(), text.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    fail(ErrorCode::kInternal, "sha256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 15];
  }
  return out;
}

MomentFunction moments_from_json(const json& spec) {
  if (!spec.is_object() || !spec.contains("form")) fail(ErrorCode::kConfigError, "moment spec needs a 'form'");
  const std::string form = spec.at("form").get<std::string>();
  const double scale = field(spec, "scale", 1.0);
  if (form == "exponential") return MomentFunction::standard_exponential().scaled(scale);
  if (form == "normal") return MomentFunction::standard_normal().scaled(scale);
  if (form == "uniform") {
    return MomentFunction::analytic(
        ExponentInterval::from_one(), [scale](double p) { return scale * std::pow(p + 1.0, -1.0 / p); }, "uniform");
  }
  if (form == "constant") return MomentFunction::constant(spec.at("c").get<double>());
  if (form == "table") {
    std::vector<MomentPoint> pts;
    for (const auto& row : spec.at("points")) pts.push_back({row[0].get<double>(), row[1].get<double>(), 0.0});
    try {
      return MomentFunction::tabulated(std::move(pts), MomentSource::kAnalytic, 0);
    } catch (const Error& e) {
      fail(ErrorCode::kConfigError, std::string("invalid moment table: ") + e.what());
    }
  }
  if (form == "samples") {
    const auto values = spec.at("values").get<std::vector<double>>();
    const auto grid = spec.at("p_grid").get<std::vector<double>>();
    try {
      return empirical_moments(values, grid);
    } catch (const Error& e) {
      fail(ErrorCode::kConfigError, std::string("invalid samples: ") + e.what());
    }
  }
  fail(ErrorCode::kConfigError, "unknown moment form '" + form + "'");
}

GeneratingFunction psi_from_json(const json& spec) {
  if (spec.is_object() && spec.value("form", "") == "natural") {
    if (!spec.contains("of")) fail(ErrorCode::kConfigError, "natural needs 'of'");
    return natural_function(moments_from_json(spec.at("of")));
  }
  return generating_from_json(spec);
}

std::vector<double> grid_from_json(const json& spec) {
  if (spec.is_array()) {
    std::vector<double> out;
    for (const auto& v : spec) {
      if (!v.is_number()) fail(ErrorCode::kConfigError, "grid entries must be numbers");
      out.push_back(v.get<double>());
    }
    if (out.empty()) fail(ErrorCode::kConfigError, "grid must not be empty");
    return out;
  }
  if (!spec.is_object() || !spec.contains("from") || !spec.contains("to") || !spec.contains("count")) {
    fail(ErrorCode::kConfigError, "grid needs 'from', 'to' and 'count'");
  }
  const double a = spec.at("from").get<double>();
  const double b = spec.at("to").get<double>();
  const int n = spec.at("count").get<int>();
  const bool log = spec.value("spacing", "linear") == "log";
  if (n < 1) fail(ErrorCode::kConfigError, "grid count must be >= 1");
  if (log && !(a > 0.0 && b > 0.0)) fail(ErrorCode::kConfigError, "log grid needs positive ends");
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double f = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
    out[static_cast<std::size_t>(i)] = log ? a * std::pow(b / a, f) : a + (b - a) * f;
  }
  out.back() = n == 1 ? a : b;
  return out;
}

}  // namespace glsreg
