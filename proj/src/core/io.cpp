// SPDX-License-Identifier: Apache-2.0
#include "io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

#include "error.hpp"

namespace glsreg {
namespace {

std::vector<std::vector<std::string>> parse_csv(const std::string& text, const std::string& header) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1) {
      if (line != header) {
        fail(ErrorCode::kIoError, "expected CSV header '" + header + "', found '" + line + "'");
      }
      continue;
    }
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(std::move(cells));
  }
  if (line_no == 0) fail(ErrorCode::kIoError, "empty CSV input");
  return rows;
}

double parse_double(const std::string& s, std::size_t row) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    fail(ErrorCode::kIoError, "row " + std::to_string(row) + ": '" + s + "' is not a number");
  }
  return v;
}

std::int64_t parse_int(const std::string& s, std::size_t row) {
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    fail(ErrorCode::kIoError, "row " + std::to_string(row) + ": '" + s + "' is not an integer");
  }
  return v;
}

void expect_width(const std::vector<std::string>& row, std::size_t n, std::size_t index) {
  if (row.size() != n) {
    fail(ErrorCode::kIoError, "row " + std::to_string(index) + " has " + std::to_string(row.size()) +
                                  " fields, expected " + std::to_string(n));
  }
}

template <typename Point>
std::string triples_to_csv(const std::vector<Point>& pts, const char* header, double Point::*key) {
  std::string out = std::string(header) + "\n";
  for (const auto& p : pts) {
    out += format_double(p.*key) + "," + format_double(p.value) + "," + format_double(p.half_width) + "\n";
  }
  return out;
}

}  // namespace

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorCode::kIoError, "cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) fail(ErrorCode::kIoError, "write to " + tmp.string() + " failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    fail(ErrorCode::kIoError, "cannot move output into place at " + path.string());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIoError, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string format_double(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) fail(ErrorCode::kInternal, "number formatting failed");
  return std::string(buf, ptr);
}

std::string moments_to_csv(const std::vector<MomentPoint>& points) {
  return triples_to_csv(points, "p,value,half_width", &MomentPoint::p);
}

std::vector<MomentPoint> moments_from_csv(const std::string& text) {
  std::vector<MomentPoint> out;
  std::size_t i = 1;
  for (const auto& row : parse_csv(text, "p,value,half_width")) {
    ++i;
    expect_width(row, 3, i);
    out.push_back({parse_double(row[0], i), parse_double(row[1], i), parse_double(row[2], i)});
  }
  return out;
}

std::string tails_to_csv(const std::vector<TailPoint>& points) {
  return triples_to_csv(points, "t,value,half_width", &TailPoint::t);
}

std::vector<TailPoint> tails_from_csv(const std::string& text) {
  std::vector<TailPoint> out;
  std::size_t i = 1;
  for (const auto& row : parse_csv(text, "t,value,half_width")) {
    ++i;
    expect_width(row, 3, i);
    out.push_back({parse_double(row[0], i), parse_double(row[1], i), parse_double(row[2], i)});
  }
  return out;
}

std::string eta_to_csv(const EtaRun& run) {
  std::string out = "trajectory_id,eta_value\n";
  for (std::size_t i = 0; i < run.samples.size(); ++i) {
    out += std::to_string(i) + "," + format_double(run.samples[i].value) + "\n";
  }
  return out;
}

nlohmann::json eta_sidecar(const EtaRun& run, const SimulationPlan& plan) {
  return {{"seed", plan.seed},
          {"N", run.horizon},
          {"rho", run.rho},
          {"u_min", run.u_min},
          {"truncation_bound", run.truncation_bound},
          {"model", plan.model.to_json()},
          {"eps", plan.eps},
          {"trajectories", plan.trajectories}};
}

std::vector<double> eta_from_csv(const std::string& text) {
  std::vector<double> out;
  std::size_t i = 1;
  for (const auto& row : parse_csv(text, "trajectory_id,eta_value")) {
    ++i;
    expect_width(row, 2, i);
    if (parse_int(row[0], i) != static_cast<std::int64_t>(out.size())) {
      fail(ErrorCode::kIoError, "row " + std::to_string(i) + ": trajectory ids must be consecutive");
    }
    out.push_back(parse_double(row[1], i));
  }
  return out;
}

std::string batch_to_csv(const TrajectoryBatch& batch) {
  std::string out = "trajectory_id,n,value\n";
  for (std::int64_t i = 0; i < batch.trajectories; ++i) {
    for (std::int64_t j = 0; j < batch.length; ++j) {
      out += std::to_string(i) + "," + std::to_string(batch.index_start + j) + "," +
             format_double(batch.at(i, j)) + "\n";
    }
  }
  return out;
}

nlohmann::json batch_sidecar(const TrajectoryBatch& batch) {
  return {{"trajectories", batch.trajectories},
          {"length", batch.length},
          {"index_start", batch.index_start},
          {"seed", batch.seed},
          {"provenance", batch.provenance}};
}

TrajectoryBatch batch_from_csv(const std::string& text, const nlohmann::json& sidecar) {
  std::int64_t m = 0;
  std::int64_t len = 0;
  std::int64_t start = 1;
  try {
    m = sidecar.at("trajectories").get<std::int64_t>();
    len = sidecar.at("length").get<std::int64_t>();
    start = sidecar.at("index_start").get<std::int64_t>();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kIoError, std::string("batch sidecar is incomplete: ") + e.what());
  }
  if (m < 1 || len < 1) fail(ErrorCode::kIoError, "batch sidecar has an empty shape");
  std::vector<double> values(static_cast<std::size_t>(m * len));
  std::vector<bool> seen(values.size(), false);
  std::size_t i = 1;
  for (const auto& row : parse_csv(text, "trajectory_id,n,value")) {
    ++i;
    expect_width(row, 3, i);
    const std::int64_t t = parse_int(row[0], i);
    const std::int64_t n = parse_int(row[1], i);
    if (t < 0 || t >= m || n < start || n >= start + len) {
      fail(ErrorCode::kIoError, "row " + std::to_string(i) + " lies outside the batch shape");
    }
    const auto k = static_cast<std::size_t>(t * len + (n - start));
    values[k] = parse_double(row[2], i);
    seen[k] = true;
  }
  for (bool s : seen) {
    if (!s) fail(ErrorCode::kIoError, "batch CSV is missing entries");
  }
  TrajectoryBatch b = TrajectoryBatch::make(m, len, start, std::move(values));
  if (sidecar.contains("seed")) b.seed = sidecar.at("seed").get<std::uint64_t>();
  if (sidecar.contains("provenance")) b.provenance = sidecar.at("provenance");
  return b;
}

std::filesystem::path sidecar_path(const std::filesystem::path& path) {
  std::filesystem::path p = path;
  p += ".json";
  return p;
}

}  // namespace glsreg
