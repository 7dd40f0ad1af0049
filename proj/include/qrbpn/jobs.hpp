#pragma once

#include <json.hpp>

#include "qrbpn/config.hpp"
#include "qrbpn/sweep_file.hpp"

namespace qrbpn {

/// Hardware-ready job list for a sampled config.
///
/// Gate jobs list the five native gates in execution order. Anneal jobs carry
/// the negated field (annealers minimize h * sigma) together with num_reads,
/// the batch count, annealing_time_us and flux_drift_compensation = false.
nlohmann::json export_jobs(const RunConfig& config);

/// Executes a job bundle on the local simulator and returns a result bundle
/// in the same shape real hardware glue is expected to produce.
nlohmann::json run_jobs(const nlohmann::json& jobs);

/// Validates `results` against `jobs` and normalizes them into a sweep file.
/// Throws DataIntegrityError listing unknown, missing or miscounted cells.
SweepFile import_results(const nlohmann::json& jobs, const nlohmann::json& results);

}  // namespace qrbpn
