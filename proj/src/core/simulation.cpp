// SPDX-License-Identifier: Apache-2.0
#include "simulation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "error.hpp"
#include "parallel.hpp"

namespace glsreg {
namespace {

constexpr std::int64_t kMaxHorizon = 10'000'000;
// Below this log-product the tail equals 1 in double precision, and it only
// decreases further as factors are added.
constexpr double kSaturatedLogProduct = -40.0;

void check_eps(double alpha, double eps) {
  if (!(eps > 0.0 && eps < std::min(1.0, alpha))) {
    fail(ErrorCode::kInvalidEpsilon, "eps must lie in (0, min(1, alpha))");
  }
}

struct CompensatedSum {
  double sum = 0.0;
  double comp = 0.0;
  void add(double x) {
    const double t = sum + x;
    comp += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

// Smallest N >= start - 1 with exponential_sum_tail(u, eps, N) <= tol.
std::int64_t exponential_cutoff(double u, double eps, std::int64_t start, double tol) {
  std::int64_t lo = std::max<std::int64_t>(start - 1, 0);
  if (exponential_sum_tail(u, eps, lo) <= tol) return lo;
  std::int64_t hi = std::max<std::int64_t>(lo, 1);
  constexpr std::int64_t kSearchCap = std::int64_t{1} << 50;
  while (exponential_sum_tail(u, eps, hi) > tol) {
    lo = hi;
    if (hi >= kSearchCap) return hi;
    hi *= 2;
  }
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (exponential_sum_tail(u, eps, mid) <= tol) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

double num(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    fail(ErrorCode::kConfigError, std::string("field '") + key + "' must be a number");
  }
  return j.at(key).get<double>();
}

std::int64_t integer(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_integer()) {
    fail(ErrorCode::kConfigError, std::string("field '") + key + "' must be an integer");
  }
  return j.at(key).get<std::int64_t>();
}

std::vector<double> number_list(const nlohmann::json& j, const char* key) {
  std::vector<double> out;
  if (!j.contains(key)) return out;
  if (!j.at(key).is_array()) fail(ErrorCode::kConfigError, std::string("field '") + key + "' must be an array");
  for (const auto& v : j.at(key)) {
    if (!v.is_number()) fail(ErrorCode::kConfigError, std::string("'") + key + "' entries must be numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

// p values past 1/eps tried when optimising a Tchebychev tail sum.
std::vector<double> tchebychev_p_grid(double eps) {
  std::vector<double> g;
  for (int i = 1; i <= 64; ++i) g.push_back((1.0 / eps) * std::pow(50.0, i / 64.0));
  return g;
}

}  // namespace

// ---- SequenceModel ----------------------------------------------------------

SequenceModel SequenceModel::exponential_power(double alpha, std::int64_t index_start) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) fail(ErrorCode::kInvalidArgument, "alpha must be positive");
  if (index_start < 1) fail(ErrorCode::kInvalidArgument, "index_start must be >= 1");
  SequenceModel m;
  m.kind_ = ModelKind::kExponentialPower;
  m.alpha_ = alpha;
  m.index_start_ = index_start;
  return m;
}

SequenceModel SequenceModel::gaussian_power(double alpha, std::int64_t index_start) {
  SequenceModel m = exponential_power(alpha, index_start);
  m.kind_ = ModelKind::kGaussianPower;
  return m;
}

SequenceModel SequenceModel::envelope_only(MomentEnvelope env) {
  validate_envelope(env);
  SequenceModel m;
  m.kind_ = ModelKind::kEnvelopeOnly;
  m.alpha_ = env.alpha;
  m.index_start_ = env.index_start;
  m.env_ = std::move(env);
  return m;
}

SequenceModel SequenceModel::from_json(const nlohmann::json& spec) {
  if (!spec.is_object() || !spec.contains("kind") || !spec.at("kind").is_string()) {
    fail(ErrorCode::kConfigError, "model needs a string 'kind'");
  }
  const std::string kind = spec.at("kind").get<std::string>();
  for (const auto& [k, _] : spec.items()) {
    if (k != "kind" && k != "alpha" && k != "index_start" && !(k == "K" && kind == "envelope_only")) {
      fail(ErrorCode::kConfigError, "unknown model field '" + k + "'");
    }
  }
  const double alpha = num(spec, "alpha");
  const std::int64_t start = spec.contains("index_start") ? integer(spec, "index_start") : 1;
  try {
    if (kind == "exponential_power") return exponential_power(alpha, start);
    if (kind == "gaussian_power") return gaussian_power(alpha, start);
    if (kind == "envelope_only") {
      if (!spec.contains("K")) fail(ErrorCode::kConfigError, "envelope_only needs 'K'");
      return envelope_only({generating_from_json(spec.at("K")), alpha, start});
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kConfigError) throw;
    fail(ErrorCode::kConfigError, std::string("invalid model: ") + e.what());
  }
  fail(ErrorCode::kConfigError, "unknown model kind '" + kind + "'");
}

nlohmann::json SequenceModel::to_json() const {
  nlohmann::json j = {{"kind", name()}, {"alpha", alpha_}, {"index_start", index_start_}};
  if (env_) j["K"] = env_->K.describe();
  return j;
}

std::string SequenceModel::name() const {
  switch (kind_) {
    case ModelKind::kExponentialPower: return "exponential_power";
    case ModelKind::kGaussianPower: return "gaussian_power";
    case ModelKind::kEnvelopeOnly: return "envelope_only";
  }
  return "unknown";
}

MomentEnvelope SequenceModel::envelope() const {
  switch (kind_) {
    case ModelKind::kExponentialPower:
      return {natural_function(MomentFunction::standard_exponential()), alpha_, index_start_};
    case ModelKind::kGaussianPower:
      return {natural_function(MomentFunction::standard_normal()), alpha_, index_start_};
    case ModelKind::kEnvelopeOnly:
      break;
  }
  return *env_;
}

double SequenceModel::innovation(const DrawStream& s, std::uint64_t trajectory, std::int64_t n) const {
  const auto idx = static_cast<std::uint64_t>(n);
  switch (kind_) {
    case ModelKind::kExponentialPower: return s.exponential(trajectory, idx);
    case ModelKind::kGaussianPower: return std::abs(s.normal(trajectory, idx));
    case ModelKind::kEnvelopeOnly: break;
  }
  fail(ErrorCode::kInvalidArgument, "envelope-only models have no generator");
}

// ---- SimulationPlan ---------------------------------------------------------

void SimulationPlan::validate() const {
  check_eps(model.alpha(), eps);
  if (trajectories < 1) fail(ErrorCode::kInvalidArgument, "trajectories must be >= 1");
  if (truncation.horizon && *truncation.horizon < model.index_start()) {
    fail(ErrorCode::kInvalidArgument, "fixed horizon must be >= index_start");
  }
  if (!truncation.horizon && !(truncation.u_min > 0.0)) {
    fail(ErrorCode::kInvalidArgument, "u_min must be positive");
  }
  for (double p : p_grid) {
    if (!(p >= 1.0) || !std::isfinite(p)) fail(ErrorCode::kInvalidArgument, "p_grid entries must be >= 1");
  }
  for (double u : u_grid) {
    if (!(u >= 0.0) || !std::isfinite(u)) fail(ErrorCode::kInvalidArgument, "u_grid entries must be >= 0");
  }
}

double SimulationPlan::effective_rho() const {
  return truncation.rho > 0.0 ? truncation.rho : 1e-3 / static_cast<double>(trajectories);
}

SimulationPlan SimulationPlan::from_json(const nlohmann::json& spec) {
  if (!spec.is_object()) fail(ErrorCode::kConfigError, "simulation plan must be an object");
  static const char* kKeys[] = {"model", "eps", "trajectories", "truncation", "seed",
                                "p_grid", "u_grid", "threads"};
  for (const auto& [k, _] : spec.items()) {
    if (std::find(std::begin(kKeys), std::end(kKeys), k) == std::end(kKeys)) {
      fail(ErrorCode::kConfigError, "unknown plan field '" + k + "'");
    }
  }
  SimulationPlan plan;
  if (!spec.contains("model")) fail(ErrorCode::kConfigError, "plan needs 'model'");
  plan.model = SequenceModel::from_json(spec.at("model"));
  plan.eps = num(spec, "eps");
  plan.trajectories = integer(spec, "trajectories");
  if (spec.contains("seed")) {
    if (!spec.at("seed").is_number_unsigned()) fail(ErrorCode::kConfigError, "'seed' must be a nonnegative integer");
    plan.seed = spec.at("seed").get<std::uint64_t>();
  }
  if (spec.contains("threads")) plan.threads = static_cast<int>(integer(spec, "threads"));
  plan.p_grid = number_list(spec, "p_grid");
  plan.u_grid = number_list(spec, "u_grid");
  if (spec.contains("truncation")) {
    const auto& t = spec.at("truncation");
    if (!t.is_object()) fail(ErrorCode::kConfigError, "'truncation' must be an object");
    for (const auto& [k, _] : t.items()) {
      if (k != "horizon" && k != "rho" && k != "u_min") {
        fail(ErrorCode::kConfigError, "unknown truncation field '" + k + "'");
      }
    }
    if (t.contains("horizon")) {
      if (t.contains("rho")) fail(ErrorCode::kConfigError, "truncation takes 'horizon' or 'rho', not both");
      plan.truncation = Truncation::fixed(integer(t, "horizon"));
    } else {
      plan.truncation.rho = t.contains("rho") ? num(t, "rho") : 0.0;
    }
    if (t.contains("u_min")) plan.truncation.u_min = num(t, "u_min");
  }
  try {
    plan.validate();
  } catch (const Error& e) {
    fail(ErrorCode::kConfigError, std::string("invalid plan: ") + e.what());
  }
  return plan;
}

nlohmann::json SimulationPlan::to_json() const {
  nlohmann::json t = nlohmann::json::object();
  if (truncation.horizon) {
    t["horizon"] = *truncation.horizon;
  } else {
    t["rho"] = effective_rho();
  }
  t["u_min"] = truncation.u_min;
  return {{"model", model.to_json()}, {"eps", eps},          {"trajectories", trajectories},
          {"truncation", t},          {"seed", seed},        {"p_grid", p_grid},
          {"u_grid", u_grid}};
}

std::vector<double> EtaRun::values() const {
  std::vector<double> v;
  v.reserve(samples.size());
  for (const auto& s : samples) v.push_back(s.value);
  return v;
}

// ---- truncation -------------------------------------------------------------

double exponential_sum_tail(double u, double eps, std::int64_t N) {
  if (!(u > 0.0)) return std::numeric_limits<double>::infinity();
  const double a = 1.0 / eps;
  const double x = u * std::pow(static_cast<double>(std::max<std::int64_t>(N, 0)), eps);
  const double v = boost::math::tgamma(a, x) / (eps * std::pow(u, a));
  return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
}

std::int64_t choose_horizon(const SequenceModel& model, double eps, double rho, double u_min) {
  check_eps(model.alpha(), eps);
  if (!(rho > 0.0)) fail(ErrorCode::kInvalidArgument, "rho must be positive");
  if (!(u_min > 0.0)) fail(ErrorCode::kInvalidArgument, "u_min must be positive");
  const std::int64_t start = model.index_start();
  if (model.kind() == ModelKind::kExponentialPower) {
    // Exact tail sums, accumulated backwards from a point where the integral
    // bound alone is far below rho.
    const std::int64_t far = exponential_cutoff(u_min, eps, start, rho * 1e-3);
    if (far > kMaxHorizon) {
      if (exponential_sum_tail(u_min, eps, kMaxHorizon) > rho) {
        fail(ErrorCode::kTruncationInfeasible, "no horizon up to 1e7 meets the truncation target");
      }
    }
    const std::int64_t top = std::min(far, kMaxHorizon);
    double tail = exponential_sum_tail(u_min, eps, top);
    std::int64_t n = top;
    while (n > start) {
      const double next = tail + std::exp(-u_min * std::pow(static_cast<double>(n), eps));
      if (next > rho) break;
      tail = next;
      --n;
    }
    if (tail > rho) fail(ErrorCode::kTruncationInfeasible, "no horizon up to 1e7 meets the truncation target");
    return std::max(n, start);
  }
  const MomentEnvelope env = model.envelope();
  double best = std::numeric_limits<double>::infinity();
  for (double p : tchebychev_p_grid(eps)) {
    const double k = env.K.evaluate(p);
    if (!std::isfinite(k)) continue;
    const double x = p * eps;
    const double log_n =
        (std::log(rho) + std::log(x - 1.0) + p * std::log(u_min) - p * std::log(k)) / (1.0 - x);
    best = std::min(best, std::ceil(std::exp(log_n)));
  }
  if (!(best <= static_cast<double>(kMaxHorizon))) {
    fail(ErrorCode::kTruncationInfeasible, "no horizon up to 1e7 meets the truncation target");
  }
  return std::max<std::int64_t>(static_cast<std::int64_t>(best), start);
}

double discarded_tail_bound(const SequenceModel& model, double eps, std::int64_t horizon, double u) {
  if (!(u > 0.0)) return 1.0;
  if (model.kind() == ModelKind::kExponentialPower) {
    return std::clamp(exponential_sum_tail(u, eps, horizon), 0.0, 1.0);
  }
  const MomentEnvelope env = model.envelope();
  double best = 1.0;
  for (double p : tchebychev_p_grid(eps)) {
    const double v = tchebychev_tail_sum(env, eps, p, u, std::max<std::int64_t>(horizon, 1));
    if (std::isfinite(v)) best = std::min(best, v);
  }
  return best;
}

// ---- simulation -------------------------------------------------------------

SequenceSpec regulator_weights(double alpha, double eps) {
  return SequenceSpec::power_log(alpha - eps, 0.0);
}

namespace {

struct Columns {
  std::vector<double> n_alpha;  // n^alpha
  std::vector<double> weight;   // n^-(alpha - eps)
};

Columns make_columns(const SequenceModel& model, std::int64_t horizon, const SequenceSpec* weights) {
  Columns c;
  for (std::int64_t n = model.index_start(); n <= horizon; ++n) {
    c.n_alpha.push_back(std::pow(static_cast<double>(n), model.alpha()));
    if (weights) c.weight.push_back(weights->value(n));
  }
  return c;
}

}  // namespace

EtaRun simulate_eta(const SimulationPlan& plan) {
  plan.validate();
  const SequenceModel& model = plan.model;
  if (!model.generative()) fail(ErrorCode::kInvalidArgument, "model has no generator");
  EtaRun run;
  run.u_min = plan.truncation.u_min;
  if (plan.truncation.horizon) {
    run.horizon = *plan.truncation.horizon;
    run.rho = 0.0;
  } else {
    run.rho = plan.effective_rho();
    run.horizon = choose_horizon(model, plan.eps, run.rho, run.u_min);
  }
  run.truncation_bound = discarded_tail_bound(model, plan.eps, run.horizon, run.u_min);

  const SequenceSpec weights = regulator_weights(model.alpha(), plan.eps);
  const Columns cols = make_columns(model, run.horizon, &weights);
  const DrawStream stream(plan.seed);
  const std::int64_t start = model.index_start();
  run.samples.resize(static_cast<std::size_t>(plan.trajectories));
  parallel_for(run.samples.size(), plan.threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      double eta = 0.0;
      for (std::size_t j = 0; j < cols.n_alpha.size(); ++j) {
        const double z = model.innovation(stream, i, start + static_cast<std::int64_t>(j)) / cols.n_alpha[j];
        eta = std::max(eta, regulator_ratio(z, cols.weight[j]));
      }
      run.samples[i] = {eta, discarded_tail_bound(model, plan.eps, run.horizon, eta)};
    }
  });
  return run;
}

TrajectoryBatch simulate_batch(const SequenceModel& model, std::int64_t trajectories,
                               std::int64_t horizon, std::uint64_t seed, int threads) {
  if (!model.generative()) fail(ErrorCode::kInvalidArgument, "model has no generator");
  if (trajectories < 1) fail(ErrorCode::kInvalidArgument, "trajectories must be >= 1");
  if (horizon < model.index_start()) fail(ErrorCode::kInvalidArgument, "horizon must be >= index_start");
  const Columns cols = make_columns(model, horizon, nullptr);
  const auto width = static_cast<std::int64_t>(cols.n_alpha.size());
  std::vector<double> values(static_cast<std::size_t>(trajectories * width));
  const DrawStream stream(seed);
  const std::int64_t start = model.index_start();
  parallel_for(static_cast<std::size_t>(trajectories), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      double* row = values.data() + i * static_cast<std::size_t>(width);
      for (std::int64_t j = 0; j < width; ++j) {
        row[j] = model.innovation(stream, i, start + j) / cols.n_alpha[static_cast<std::size_t>(j)];
      }
    }
  });
  TrajectoryBatch b = TrajectoryBatch::make(trajectories, width, start, std::move(values));
  b.seed = seed;
  b.provenance = {{"model", model.to_json()}, {"seed", seed}, {"horizon", horizon}};
  return b;
}

// ---- exact oracles ----------------------------------------------------------

double exact_eta_tail(double alpha, double eps, double u, double abs_tol, std::int64_t index_start) {
  check_eps(alpha, eps);
  if (!(u > 0.0)) fail(ErrorCode::kDomainError, "the tail is evaluated at u > 0");
  if (!(abs_tol > 0.0)) fail(ErrorCode::kInvalidArgument, "abs_tol must be positive");
  if (index_start < 1) fail(ErrorCode::kInvalidArgument, "index_start must be >= 1");
  // Dropping factors past N moves 1 - prod by at most sum_{n > N} x_n.
  const std::int64_t N = exponential_cutoff(u, eps, index_start, abs_tol);
  double log_product = 0.0;
  for (std::int64_t n = index_start; n <= N; ++n) {
    log_product += std::log1p(-std::exp(-u * std::pow(static_cast<double>(n), eps)));
    if (log_product < kSaturatedLogProduct) return 1.0;
  }
  return -std::expm1(log_product);
}

BonferroniSums bonferroni_sums(double eps, double u, double abs_tol, std::int64_t index_start) {
  if (!(eps > 0.0 && eps < 1.0)) fail(ErrorCode::kDomainError, "eps must lie in (0, 1)");
  if (!(u > 0.0)) fail(ErrorCode::kDomainError, "the sums are evaluated at u > 0");
  if (!(abs_tol > 0.0)) fail(ErrorCode::kInvalidArgument, "abs_tol must be positive");
  if (index_start < 1) fail(ErrorCode::kInvalidArgument, "index_start must be >= 1");
  const std::int64_t N = exponential_cutoff(u, eps, index_start, abs_tol);
  // sigma2 = (sigma1^2 - sum x^2) / 2 = sum_m x_m (x_start + ... + x_(m-1)),
  // which has no cancellation.
  CompensatedSum s1;
  CompensatedSum s2;
  for (std::int64_t n = index_start; n <= N; ++n) {
    const double x = std::exp(-u * std::pow(static_cast<double>(n), eps));
    s2.add(x * s1.value());
    s1.add(x);
  }
  BonferroniSums out;
  out.sigma1 = s1.value();
  out.sigma2 = s2.value();
  out.remainder = exponential_sum_tail(u, eps, N);
  out.terms = N - index_start + 1;
  return out;
}

double asymptotic_tail_constant(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) fail(ErrorCode::kDomainError, "eps must lie in (0, 1)");
  return std::exp(std::lgamma(1.0 + 1.0 / eps));
}

double exact_eta_moment(double alpha, double eps, double p, double rel_tol, std::int64_t index_start) {
  check_eps(alpha, eps);
  if (!(p >= 1.0) || !std::isfinite(p)) fail(ErrorCode::kInvalidExponent, "moments need p >= 1");
  if (p >= 1.0 / eps) fail(ErrorCode::kMomentInfinite, "moment declared infinite for p >= 1/eps");
  if (!(rel_tol > 0.0)) fail(ErrorCode::kInvalidArgument, "rel_tol must be positive");
  if (index_start < 1) fail(ErrorCode::kInvalidArgument, "index_start must be >= 1");

  const auto integrand = [&](double u) {
    if (!(u > 0.0)) return p == 1.0 ? 1.0 : 0.0;
    return p * std::pow(u, p - 1.0) * exact_eta_tail(alpha, eps, u, 1e-18, index_start);
  };
  const double quad_tol = std::max(rel_tol * 1e-2, 1e-14);
  // For u >= U: sum_n e^(-u n^eps) <= Sigma1(U) e^(-(u - U) s0), s0 = start^eps.
  const double s0 = std::pow(static_cast<double>(index_start), eps);
  const auto remainder = [&](double U) {
    const BonferroniSums b = bonferroni_sums(eps, U, std::exp(-U * s0) * 1e-6, index_start);
    const double x = U * s0;
    return (b.sigma1 + b.remainder) * std::exp(x) * p * boost::math::tgamma(p, x) / std::pow(s0, p);
  };

  CompensatedSum total;
  double a = 0.0;
  double b = 0.25;
  double rem = std::numeric_limits<double>::infinity();
  while (true) {
    double err = 0.0;
    total.add(boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, a, b, 15,
                                                                             quad_tol, &err));
    if (b >= 4.0) {
      rem = remainder(b);
      if (rem <= 0.5 * rel_tol * total.value()) break;
    }
    if (b * s0 > 600.0) break;
    a = b;
    b *= 2.0;
  }
  return std::pow(total.value() + 0.5 * rem, 1.0 / p);
}

double criterion_remainder_bound(const SequenceModel& model, std::int64_t horizon) {
  if (model.kind() != ModelKind::kExponentialPower) return std::numeric_limits<double>::quiet_NaN();
  const double a = model.alpha();
  const double n_a = std::pow(static_cast<double>(std::max<std::int64_t>(horizon, 1)), a);
  // E sup f = int_0^1 P(sup f > s) ds with f(x) = x/(1+x), and
  // P(sup_{m>N} xi_m > x) <= Gamma(1/a, x N^a) / (a x^(1/a)).
  const auto f = [&](double s) {
    if (s <= 0.0) return 1.0;
    if (s >= 1.0) return 0.0;
    const double x = s / (1.0 - s);
    const double v = boost::math::tgamma(1.0 / a, x * n_a) / (a * std::pow(x, 1.0 / a));
    return std::isfinite(v) ? std::min(1.0, v) : 1.0;
  };
  double err = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, 0.0, 1.0, 20, 1e-10, &err);
}

}  // namespace glsreg
