// qdrive: closed-form and numerically integrated dynamics of periodically
// driven two-level systems.
//
// Exit status: 0 success, 1 verification failure, 2 configuration error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qdrive/coherence.hpp"
#include "qdrive/io.hpp"
#include "qdrive/scenario.hpp"

namespace {

using nlohmann::json;
using namespace qdrive;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitConfig = 2;

struct Flags {
    // rabi
    std::optional<double> e_g, e_e, omega0, coupling, coupling_im;
    // pulse
    std::optional<double> e0, f0;
    std::optional<long long> n_period;
    // grid
    std::optional<double> t_start, t_end, periods;
    std::optional<long long> steps;
    // run
    std::optional<std::string> mode, output, format, config, scenario;
    // integrate / coherence / sweep
    std::string drive, input, param, values;
};

void add_rabi_flags(CLI::App* app, Flags& f) {
    app->add_option("--e-g", f.e_g, "ground-state energy E_g (default 0)");
    app->add_option("--e-e", f.e_e, "excited-state energy E_e (default 1)");
    app->add_option("--omega0", f.omega0, "drive angular frequency (default 1)");
    app->add_option("--coupling", f.coupling, "real part of the coupling (default 0.5)");
    app->add_option("--coupling-im", f.coupling_im, "imaginary part of the coupling (default 0)");
}

void add_pulse_flags(CLI::App* app, Flags& f) {
    app->add_option("--e0", f.e0, "static field energy E0 (default 1)");
    app->add_option("--f0", f.f0, "square-pulse amplitude f0 (default 1)");
    app->add_option("--n", f.n_period, "period index N (default 1)");
}

void add_grid_flags(CLI::App* app, Flags& f) {
    app->add_option("--t-start", f.t_start, "grid start time (default 0)");
    app->add_option("--t-end", f.t_end, "grid end time");
    app->add_option("--periods", f.periods, "grid length in natural periods (default 1)");
    app->add_option("--steps", f.steps, "grid steps (default $QDRIVE_STEPS_DEFAULT or 4096)");
}

void add_output_flags(CLI::App* app, Flags& f) {
    app->add_option("-o,--output", f.output, "output file (default stdout)");
    app->add_option("--format", f.format, "csv or json (default csv)");
}

void add_config_flag(CLI::App* app, Flags& f) {
    app->add_option("--config", f.config, "JSON scenario file; its values override flags");
}

json scenario_from_flags(const std::string& scenario, const Flags& f, bool fill_defaults) {
    json doc = json::object();
    doc["scenario"] = scenario;
    json params = json::object();
    if (scenario == "rabi") {
        if (f.e_g || fill_defaults) params["e_g"] = f.e_g.value_or(0.0);
        if (f.e_e || fill_defaults) params["e_e"] = f.e_e.value_or(1.0);
        if (f.omega0 || fill_defaults) params["omega0"] = f.omega0.value_or(1.0);
        if (f.coupling || f.coupling_im || fill_defaults)
            params["coupling"] = {{"re", f.coupling.value_or(f.coupling_im ? 0.0 : 0.5)},
                                  {"im", f.coupling_im.value_or(0.0)}};
    } else if (scenario == "pulse") {
        if (f.e0 || fill_defaults) params["e0"] = f.e0.value_or(1.0);
        if (f.f0 || fill_defaults) params["f0"] = f.f0.value_or(1.0);
        if (f.n_period || fill_defaults) params["n_period"] = f.n_period.value_or(1);
    }
    if (!params.empty()) doc["params"] = params;

    json grid = json::object();
    if (f.t_start) grid["t_start"] = *f.t_start;
    if (f.t_end) grid["t_end"] = *f.t_end;
    if (f.periods) grid["periods"] = *f.periods;
    if (f.steps) grid["steps"] = *f.steps;
    if (!grid.empty()) doc["grid"] = grid;

    if (f.mode) doc["mode"] = *f.mode;
    json output = json::object();
    if (f.output) output["path"] = *f.output;
    if (f.format) output["format"] = *f.format;
    if (!output.empty()) doc["output"] = output;
    return doc;
}

json read_json_file(const std::string& path, const std::string& what) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::ConfigInvalid, what + ": cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::ConfigInvalid, what + ": malformed JSON: " + e.what());
    }
}

std::size_t default_steps_from_env() {
    const char* env = std::getenv("QDRIVE_STEPS_DEFAULT");
    if (!env) return kBuiltinDefaultSteps;
    const std::string s(env);
    char* end = nullptr;
    const long long v = std::strtoll(s.c_str(), &end, 10);
    if (s.empty() || end != s.c_str() + s.size() || v < 1)
        throw Error(ErrorKind::ConfigInvalid, "QDRIVE_STEPS_DEFAULT must be a positive integer, got '" + s + "'");
    return static_cast<std::size_t>(v);
}

// Flags first, then the config file on top. `scenario` may be empty when the
// subcommand does not fix it (verify, sweep); the config or --scenario must.
ScenarioConfig build_config(std::string scenario, const Flags& f) {
    const std::size_t default_steps = default_steps_from_env();
    std::optional<json> file;
    if (f.config) file = read_json_file(*f.config, "--config");
    if (scenario.empty()) {
        if (f.scenario)
            scenario = *f.scenario;
        else if (file && file->contains("scenario") && file->at("scenario").is_string())
            scenario = file->at("scenario").get<std::string>();
        else
            throw Error(ErrorKind::ConfigInvalid, "scenario: give --scenario or a --config with \"scenario\"");
    }
    json doc = scenario_from_flags(scenario, f, !file.has_value());
    if (file) {
        if (file->contains("scenario") && file->at("scenario") != scenario)
            throw Error(ErrorKind::ConfigInvalid, "scenario: config file says " + file->at("scenario").dump() +
                                                      " but the command expects \"" + scenario + "\"");
        doc.merge_patch(*file);
    }
    return parse_config(doc, default_steps);
}

void emit(const ScenarioConfig& cfg, const TimeSeries& series) {
    const auto write = [&](std::ostream& os) {
        if (cfg.format == OutputFormat::Json)
            io::write_json(os, series);
        else
            io::write_csv(os, series);
    };
    if (cfg.output_path) {
        std::ofstream out(*cfg.output_path, std::ios::binary);
        if (!out) throw Error(ErrorKind::ConfigInvalid, "output.path: cannot write '" + *cfg.output_path + "'");
        write(out);
    } else {
        write(std::cout);
    }
}

int run(const ScenarioConfig& cfg) {
    const ScenarioResult result = run_scenario(cfg);
    emit(cfg, result.series);
    if (!result.report) return kExitOk;
    const VerifyReport& r = *result.report;
    std::cerr << "verify " << to_string(cfg.scenario) << ": samples=" << result.series.size()
              << " max_entry_error=" << io::format_double(r.max_entry_error)
              << " max_trace_drift=" << io::format_double(r.max_trace_drift)
              << " max_purity_drift=" << io::format_double(r.max_purity_drift) << " (limits "
              << kVerifyEntryThreshold << ", " << kVerifyTraceThreshold << "): "
              << (r.passed() ? "PASS" : "FAIL") << '\n';
    return r.passed() ? kExitOk : kExitVerifyFailed;
}

std::vector<double> parse_values(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item.erase(0, item.find_first_not_of(" \t"));
        item.erase(item.find_last_not_of(" \t") + 1);
        if (item.empty()) continue;
        char* end = nullptr;
        const double v = std::strtod(item.c_str(), &end);
        if (end != item.c_str() + item.size())
            throw Error(ErrorKind::ConfigInvalid, "--values: cannot parse '" + item + "'");
        out.push_back(v);
    }
    return out;
}

int run_coherence(const Flags& f) {
    std::ifstream in(f.input);
    if (!in) throw Error(ErrorKind::ConfigInvalid, "--input: cannot open '" + f.input + "'");
    TimeSeries series;
    try {
        series = io::read_csv(in);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::ConfigInvalid) throw;
        throw Error(ErrorKind::ConfigInvalid, std::string("--input: ") + e.what());
    }
    ScenarioConfig cfg;
    cfg.output_path = f.output;
    if (f.format && *f.format == "json")
        cfg.format = OutputFormat::Json;
    else if (f.format && *f.format != "csv")
        throw Error(ErrorKind::ConfigInvalid, "--format: expected csv or json");
    emit(cfg, series);
    return kExitOk;
}

int run_sweep_cmd(const Flags& f) {
    ScenarioConfig base = build_config("", f);
    const SweepParam param = parse_sweep_param(f.param);
    const auto rows = run_sweep(base, param, parse_values(f.values));
    if (base.output_path) {
        std::ofstream out(*base.output_path, std::ios::binary);
        if (!out) throw Error(ErrorKind::ConfigInvalid, "output.path: cannot write '" + *base.output_path + "'");
        write_sweep_csv(out, rows);
    } else {
        write_sweep_csv(std::cout, rows);
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Density-matrix dynamics of periodically driven two-level systems"};
    app.require_subcommand(1);
    Flags f;

    auto* rabi = app.add_subcommand("rabi", "rotating-wave Rabi drive");
    add_rabi_flags(rabi, f);
    add_grid_flags(rabi, f);
    rabi->add_option("--mode", f.mode, "analytic, numeric or verify (default analytic)");
    add_output_flags(rabi, f);
    add_config_flag(rabi, f);

    auto* pulse = app.add_subcommand("pulse", "square-pulse magnetic drive");
    add_pulse_flags(pulse, f);
    add_grid_flags(pulse, f);
    pulse->add_option("--mode", f.mode, "analytic, numeric or verify (default analytic)");
    add_output_flags(pulse, f);
    add_config_flag(pulse, f);

    auto* integrate = app.add_subcommand("integrate", "propagate a tabulated Hamiltonian");
    integrate->add_option("--drive", f.drive, "JSON file {\"samples\": [{\"t\":..,\"h\":[..4 complex..]}]}")
        ->required();
    add_grid_flags(integrate, f);
    add_output_flags(integrate, f);

    auto* coherence = app.add_subcommand("coherence", "recompute purity and coherence for a CSV of states");
    coherence->add_option("-i,--input", f.input, "CSV with t and density-matrix columns")->required();
    add_output_flags(coherence, f);

    auto* verify = app.add_subcommand("verify", "compare RK4 propagation with the closed form");
    verify->add_option("--scenario", f.scenario, "rabi or pulse");
    add_rabi_flags(verify, f);
    add_pulse_flags(verify, f);
    add_grid_flags(verify, f);
    add_output_flags(verify, f);
    add_config_flag(verify, f);

    auto* sweep = app.add_subcommand("sweep", "summary table over one parameter");
    sweep->add_option("--scenario", f.scenario, "rabi or pulse");
    sweep->add_option("--param", f.param, "f0, coupling-magnitude or omega0")->required();
    sweep->add_option("--values", f.values, "comma-separated values (may be empty)")->required();
    sweep->add_option("--mode", f.mode, "analytic or numeric (default analytic)");
    add_rabi_flags(sweep, f);
    add_pulse_flags(sweep, f);
    add_grid_flags(sweep, f);
    sweep->add_option("-o,--output", f.output, "output file (default stdout)");
    add_config_flag(sweep, f);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (rabi->parsed()) return run(build_config("rabi", f));
        if (pulse->parsed()) return run(build_config("pulse", f));
        if (integrate->parsed()) {
            Flags g = f;
            g.mode = "numeric";
            json doc = scenario_from_flags("sampled", g, false);
            doc["params"] = read_json_file(f.drive, "--drive");
            return run(parse_config(doc, default_steps_from_env()));
        }
        if (coherence->parsed()) return run_coherence(f);
        if (verify->parsed()) {
            Flags g = f;
            g.mode = "verify";
            ScenarioConfig cfg = build_config("", g);
            cfg.mode = Mode::Verify;
            if (cfg.scenario == Scenario::Sampled)
                throw Error(ErrorKind::ConfigInvalid, "scenario: verify needs a closed form (rabi or pulse)");
            return run(cfg);
        }
        if (sweep->parsed()) return run_sweep_cmd(f);
    } catch (const Error& e) {
        std::cerr << "qdrive: " << e.what() << '\n';
        return e.kind() == ErrorKind::InvariantDrift ? kExitVerifyFailed : kExitConfig;
    }
    return kExitConfig;
}
