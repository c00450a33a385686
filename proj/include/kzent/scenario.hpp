#pragma once

// Scenario configuration and execution for the command-line runner.

#include "kzent/dia_dynamics.hpp"
#include "kzent/kzm_scaling.hpp"
#include "kzent/para_dynamics.hpp"
#include "kzent/time_grid.hpp"
#include "kzent/trace_io.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace kzent {

std::string_view version();

enum class Mode { para, dia, compare, sweep_g, oracle_check };

std::string_view to_string(Mode m);
Mode mode_from_string(std::string_view s);  ///< throws ConfigError

/// One quench run: schedule plus start offset t0 - t_bar >= 0.
struct DiaRun {
    std::string label;
    QuenchSchedule schedule;
    double t0_offset = 0.0;
};

struct MagnetizationSettings {
    int n_ref = 14;
    /// The reference ring is diagonalized at field_scale * h, mapping the
    /// schedule's critical field hc onto the ring's own critical point.
    double field_scale = 0.5;
};

struct ScenarioConfig {
    std::string name = "scenario";
    Mode mode = Mode::compare;
    int N = 0;
    double g = 0.0;
    std::optional<double> para_h;
    std::vector<DiaRun> dia_runs;
    TimeGrid grid;
    std::optional<TimeGrid> g_grid;  ///< sweep-g only; reuses start/stop/points for g
    std::uint64_t seed = 1;
    int realizations = 1;
    MagnetizationSettings magnetization;
    WeakCouplingGuard guard;
    std::string out_dir = ".";
    std::string stem;  ///< output file stem; defaults to name

    /// Structural and physical checks of everything that can be verified before
    /// sampling: weak-coupling guard, quench window, domain partition. Throws
    /// ConfigError with the offending field named.
    void validate() const;
};

/// Strict parser: unknown keys are rejected. Throws ConfigError.
ScenarioConfig parse_config(const nlohmann::json& j);
ScenarioConfig parse_config_text(std::string_view text);
nlohmann::json to_json(const ScenarioConfig& cfg);

/// Everything needed to evaluate one quench run, after sampling.
struct PreparedDiaRun {
    DiaRun run;
    double t_bar = 0.0;
    double t0 = 0.0;
    DomainPartition partition;
    double m0z = 0.0;
    double mdz = 0.0;
    std::vector<DiaConfig> realizations;  ///< one per ensemble realization
    std::vector<std::string> warnings;
};

PreparedDiaRun prepare_dia_run(const ScenarioConfig& cfg, const DiaRun& run);

struct ScenarioResult {
    ScenarioConfig config;
    std::vector<Trace> traces;
    PlotKind plot = PlotKind::lines;
    std::vector<std::string> warnings;
    bool checks_passed = true;  ///< oracle-check outcome; always true for other modes
};

/// Deterministic for a fixed config: grid points and realizations run
/// concurrently, but every value lands in a fixed slot.
ScenarioResult run_scenario(const ScenarioConfig& cfg);

/// Writes <stem>[_<trace>].csv and <stem>.gp under dir; returns the paths.
std::vector<std::filesystem::path> write_outputs(const ScenarioResult& result, const std::filesystem::path& dir);

}  // namespace kzent
