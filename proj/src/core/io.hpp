// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "batch.hpp"
#include "json.hpp"
#include "moment_function.hpp"
#include "simulation.hpp"

namespace glsreg {

/// Writes through a sibling temp file and a rename, so readers never see a
/// partial file. Errors: kIoError.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);
std::string read_file(const std::filesystem::path& path);

/// Shortest decimal text that reads back to the same double.
std::string format_double(double x);

/// CSV with header p,value,half_width.
std::string moments_to_csv(const std::vector<MomentPoint>& points);
std::vector<MomentPoint> moments_from_csv(const std::string& text);

/// CSV with header t,value,half_width.
std::string tails_to_csv(const std::vector<TailPoint>& points);
std::vector<TailPoint> tails_from_csv(const std::string& text);

/// CSV with header trajectory_id,eta_value.
std::string eta_to_csv(const EtaRun& run);
/// Sidecar: seed, N, rho, model, plus the plan.
nlohmann::json eta_sidecar(const EtaRun& run, const SimulationPlan& plan);
std::vector<double> eta_from_csv(const std::string& text);

/// Long-format CSV with header trajectory_id,n,value.
std::string batch_to_csv(const TrajectoryBatch& batch);
nlohmann::json batch_sidecar(const TrajectoryBatch& batch);
/// Rebuilds a batch from its CSV and sidecar.
TrajectoryBatch batch_from_csv(const std::string& text, const nlohmann::json& sidecar);

/// `path` with ".json" appended.
std::filesystem::path sidecar_path(const std::filesystem::path& path);

}  // namespace glsreg
