#pragma once

// Scenario configuration and runners behind the command-line tool.
//
// A scenario is a single JSON document:
//
//   {
//     "scenario": "pulse",                       // rabi | pulse | sampled
//     "params":   {"e0": 1, "f0": 0.1, "n_period": 1},
//     "grid":     {"t_start": 0, "periods": 1, "steps": 2000},
//     "mode":     "analytic",                    // analytic | numeric | verify
//     "output":   {"path": "fig1.csv", "format": "csv"}
//   }
//
// Unknown keys anywhere are rejected. Parameter blocks:
//   rabi:    e_g, e_e, omega0, coupling (number or {"re":..,"im":..})
//   pulse:   e0, f0, n_period
//   sampled: samples = [{"t":.., "h":[[re,im],[re,im],[re,im],[re,im]]}, ...]
// The grid takes either "t_end" or "periods" (multiples of the natural
// period: pi/Omega for rabi, T for pulse); sampled drives default to the
// last sample time. "steps" falls back to the caller-supplied default.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "qdrive/liouville.hpp"

namespace qdrive {

enum class Scenario { Rabi, Pulse, Sampled };
enum class Mode { Analytic, Numeric, Verify };
enum class OutputFormat { Csv, Json };

inline constexpr std::size_t kBuiltinDefaultSteps = 4096;

// Verification thresholds applied by verify mode.
inline constexpr double kVerifyEntryThreshold = 1e-6;
inline constexpr double kVerifyTraceThreshold = 1e-9;

struct GridSpec {
    double t_start = 0.0;
    std::optional<double> t_end;
    std::optional<double> periods;
    std::size_t steps = kBuiltinDefaultSteps;
};

struct ScenarioConfig {
    Scenario scenario = Scenario::Rabi;
    DriveHamiltonian drive = RabiParams{};
    GridSpec grid;
    Mode mode = Mode::Analytic;
    std::optional<std::string> output_path;
    OutputFormat format = OutputFormat::Csv;
};

std::string_view to_string(Scenario s) noexcept;
std::string_view to_string(Mode m) noexcept;

ScenarioConfig parse_config(const nlohmann::json& doc, std::size_t default_steps = kBuiltinDefaultSteps);
ScenarioConfig load_config(const std::string& path, std::size_t default_steps = kBuiltinDefaultSteps);

// Natural period of the drive; empty for sampled drives.
std::optional<double> natural_period(const DriveHamiltonian& drive);

TimeGrid resolve_grid(const ScenarioConfig& cfg);

// Closed-form density matrix at t; ConfigInvalid for sampled drives.
DensityMatrix analytic_density(const DriveHamiltonian& drive, double t);

TimeSeries analytic_series(const DriveHamiltonian& drive, const TimeGrid& grid);

struct VerifyReport {
    double max_entry_error = 0.0;
    double max_trace_drift = 0.0;
    double max_purity_drift = 0.0;

    bool passed() const noexcept {
        return max_entry_error <= kVerifyEntryThreshold && max_trace_drift <= kVerifyTraceThreshold;
    }
};

VerifyReport compare_series(const TimeSeries& numeric, const DriveHamiltonian& drive);

struct ScenarioResult {
    TimeSeries series;
    std::optional<VerifyReport> report;
};

// analytic: closed form on the grid; numeric: RK4 from the ground state;
// verify: both, series is the numeric one and `report` is filled.
ScenarioResult run_scenario(const ScenarioConfig& cfg);

enum class SweepParam { F0, CouplingMagnitude, Omega0 };

SweepParam parse_sweep_param(std::string_view name);
std::string_view to_string(SweepParam p) noexcept;

struct SweepRow {
    double value = 0.0;
    std::optional<std::string> error;
    double max_c_l1 = 0.0;
    double min_purity = 0.0;
    double max_purity = 0.0;
    double period_return_error = 0.0;
};

// One row per value, in input order. Rows run concurrently. Library errors
// raised by a row are recorded in that row's `error` and do not stop the
// sweep; an invalid parameter/scenario pairing throws ConfigInvalid.
//
// Analytic rows refine the l1 maximum on the closed form around the best
// grid sample; numeric rows report the grid maximum.
std::vector<SweepRow> run_sweep(const ScenarioConfig& base, SweepParam param, const std::vector<double>& values);

inline constexpr std::string_view kSweepHeader = "value,max_c_l1,min_purity,max_purity,period_return_error,error";

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);

}  // namespace qdrive
