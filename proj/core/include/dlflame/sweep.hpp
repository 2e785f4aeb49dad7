#pragma once

#include "dlflame/config.hpp"

#include <filesystem>
#include <functional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace dlflame {

struct SweepRecord {
    SweepPoint point;
    RunMode mode = RunMode::full;
    double velocity = 0.0;        ///< U_w/U_f - 1
    double velocity_no_dl = 0.0;  ///< oscillating-response part alone
    double residual_norm = 0.0;
    long iterations = 0;
    bool converged = false;
    double wall_time = 0.0;  ///< seconds; reported in the manifest only
    std::string error;       ///< empty on success

    [[nodiscard]] bool ok() const { return error.empty(); }
};

/// Runs one point in the configured mode. Numerical failures are recorded in
/// `error` rather than thrown.
[[nodiscard]] SweepRecord run_point(const RunConfig& config, const SweepPoint& point);

/// Runs every point of the sweep on `workers` threads (0 = hardware
/// concurrency). Records come back in point order whatever the completion
/// order. `on_done` is called from worker threads, serialized.
[[nodiscard]] std::vector<SweepRecord> run_sweep(
    const RunConfig& config, unsigned workers,
    const std::function<void(const SweepRecord&)>& on_done = {});

/// One row per record. wall_time is left out so reruns are byte-identical.
void write_records_csv(std::ostream& out, std::span<const SweepRecord> records);

/// Writes `<output>.manifest.json` with the rendered config, seeds,
/// tolerances, per-point timing and the library version.
void write_manifest(const std::filesystem::path& output, const RunConfig& config,
                    std::span<const SweepRecord> records, const std::string& description = {});

[[nodiscard]] const char* library_version();

}  // namespace dlflame
