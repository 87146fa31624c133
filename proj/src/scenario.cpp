#include "qdrive/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <ostream>
#include <thread>

#include <boost/math/tools/minima.hpp>

#include "qdrive/coherence.hpp"
#include "qdrive/io.hpp"

namespace qdrive {

using nlohmann::json;

namespace {

[[noreturn]] void invalid(const std::string& field, const std::string& msg) {
    throw Error(ErrorKind::ConfigInvalid, field + ": " + msg);
}

void require_keys(const json& obj, const std::string& path, std::initializer_list<std::string_view> allowed) {
    if (!obj.is_object()) invalid(path, "expected an object");
    for (const auto& [key, _] : obj.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            invalid(path.empty() ? key : path + "." + key, "unknown key");
    }
}

double number(const json& obj, const std::string& key, const std::string& path) {
    const std::string field = path + "." + key;
    if (!obj.contains(key)) invalid(field, "missing");
    const json& v = obj.at(key);
    if (!v.is_number()) invalid(field, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) invalid(field, "must be finite");
    return d;
}

std::optional<double> opt_number(const json& obj, const std::string& key, const std::string& path) {
    if (!obj.contains(key)) return std::nullopt;
    return number(obj, key, path);
}

long long integer(const json& obj, const std::string& key, const std::string& path) {
    const std::string field = path + "." + key;
    const json& v = obj.at(key);
    if (!v.is_number_integer()) invalid(field, "expected an integer");
    return v.get<long long>();
}

std::string string_field(const json& obj, const std::string& key, const std::string& path) {
    const json& v = obj.at(key);
    if (!v.is_string()) invalid(path + "." + key, "expected a string");
    return v.get<std::string>();
}

Complex parse_complex(const json& v, const std::string& field) {
    if (v.is_number()) return {v.get<double>(), 0.0};
    if (v.is_object()) {
        require_keys(v, field, {"re", "im"});
        return {opt_number(v, "re", field).value_or(0.0), opt_number(v, "im", field).value_or(0.0)};
    }
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
        return {v[0].get<double>(), v[1].get<double>()};
    invalid(field, "expected a number, [re, im] or {\"re\", \"im\"}");
}

// Re-raise library validation errors as config errors naming the block.
template <class F>
auto as_config(const std::string& field, F&& f) {
    try {
        return f();
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::ConfigInvalid) throw;
        invalid(field, e.what());
    }
}

RabiParams parse_rabi(const json& p) {
    require_keys(p, "params", {"e_g", "e_e", "omega0", "coupling"});
    if (!p.contains("coupling")) invalid("params.coupling", "missing");
    const Complex g = parse_complex(p.at("coupling"), "params.coupling");
    return as_config("params", [&] {
        return RabiParams::make(number(p, "e_g", "params"), number(p, "e_e", "params"),
                                number(p, "omega0", "params"), g);
    });
}

PulseParams parse_pulse(const json& p) {
    require_keys(p, "params", {"e0", "f0", "n_period"});
    if (!p.contains("n_period")) invalid("params.n_period", "missing");
    const long long n = integer(p, "n_period", "params");
    if (n < 1 || n > std::numeric_limits<int>::max()) invalid("params.n_period", "must be a positive integer");
    return as_config("params", [&] {
        return PulseParams::make(number(p, "e0", "params"), number(p, "f0", "params"), static_cast<int>(n));
    });
}

SampledDrive parse_sampled(const json& p) {
    require_keys(p, "params", {"samples"});
    if (!p.contains("samples") || !p.at("samples").is_array()) invalid("params.samples", "expected an array");
    std::vector<std::pair<double, Mat2>> samples;
    std::size_t i = 0;
    for (const auto& s : p.at("samples")) {
        const std::string field = "params.samples[" + std::to_string(i++) + "]";
        require_keys(s, field, {"t", "h"});
        if (!s.contains("h") || !s.at("h").is_array() || s.at("h").size() != 4)
            invalid(field + ".h", "expected four complex entries [h00, h01, h10, h11]");
        const json& h = s.at("h");
        samples.emplace_back(number(s, "t", field),
                             Mat2{parse_complex(h[0], field + ".h[0]"), parse_complex(h[1], field + ".h[1]"),
                                  parse_complex(h[2], field + ".h[2]"), parse_complex(h[3], field + ".h[3]")});
    }
    return as_config("params.samples", [&] { return SampledDrive::make(std::move(samples)); });
}

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

std::string_view to_string(Scenario s) noexcept {
    switch (s) {
        case Scenario::Rabi: return "rabi";
        case Scenario::Pulse: return "pulse";
        case Scenario::Sampled: return "sampled";
    }
    return "?";
}

std::string_view to_string(Mode m) noexcept {
    switch (m) {
        case Mode::Analytic: return "analytic";
        case Mode::Numeric: return "numeric";
        case Mode::Verify: return "verify";
    }
    return "?";
}

ScenarioConfig parse_config(const json& doc, std::size_t default_steps) {
    require_keys(doc, "", {"scenario", "params", "grid", "mode", "output"});
    ScenarioConfig cfg;

    if (!doc.contains("scenario")) invalid("scenario", "missing");
    const std::string scenario = string_field(doc, "scenario", "");
    if (!doc.contains("params")) invalid("params", "missing");
    const json& params = doc.at("params");
    if (scenario == "rabi") {
        cfg.scenario = Scenario::Rabi;
        cfg.drive = parse_rabi(params);
    } else if (scenario == "pulse") {
        cfg.scenario = Scenario::Pulse;
        cfg.drive = parse_pulse(params);
    } else if (scenario == "sampled") {
        cfg.scenario = Scenario::Sampled;
        cfg.drive = parse_sampled(params);
    } else {
        invalid("scenario", "expected rabi, pulse or sampled, got '" + scenario + "'");
    }

    cfg.grid.steps = default_steps;
    if (doc.contains("grid")) {
        const json& g = doc.at("grid");
        require_keys(g, "grid", {"t_start", "t_end", "periods", "steps"});
        cfg.grid.t_start = opt_number(g, "t_start", "grid").value_or(0.0);
        cfg.grid.t_end = opt_number(g, "t_end", "grid");
        cfg.grid.periods = opt_number(g, "periods", "grid");
        if (cfg.grid.t_end && cfg.grid.periods) invalid("grid", "give either t_end or periods, not both");
        if (cfg.grid.periods && !(*cfg.grid.periods > 0.0)) invalid("grid.periods", "must be positive");
        if (g.contains("steps")) {
            const long long steps = integer(g, "steps", "grid");
            if (steps < 1) invalid("grid.steps", "must be >= 1");
            cfg.grid.steps = static_cast<std::size_t>(steps);
        }
    }
    if (cfg.scenario == Scenario::Sampled && cfg.grid.periods)
        invalid("grid.periods", "sampled drives have no natural period; use t_end");

    if (doc.contains("mode")) {
        const std::string mode = string_field(doc, "mode", "");
        if (mode == "analytic")
            cfg.mode = Mode::Analytic;
        else if (mode == "numeric")
            cfg.mode = Mode::Numeric;
        else if (mode == "verify")
            cfg.mode = Mode::Verify;
        else
            invalid("mode", "expected analytic, numeric or verify, got '" + mode + "'");
    }
    if (cfg.scenario == Scenario::Sampled && cfg.mode != Mode::Numeric)
        invalid("mode", "sampled drives have no closed form; only numeric mode is available");

    if (doc.contains("output")) {
        const json& o = doc.at("output");
        require_keys(o, "output", {"path", "format"});
        if (o.contains("path")) cfg.output_path = string_field(o, "path", "output");
        if (o.contains("format")) {
            const std::string fmt = string_field(o, "format", "output");
            if (fmt == "csv")
                cfg.format = OutputFormat::Csv;
            else if (fmt == "json")
                cfg.format = OutputFormat::Json;
            else
                invalid("output.format", "expected csv or json, got '" + fmt + "'");
        }
    }

    // Fail early on grids that put a square-pulse switch inside a step.
    if (const auto* p = std::get_if<PulseParams>(&cfg.drive); p && cfg.mode != Mode::Analytic) {
        const TimeGrid grid = resolve_grid(cfg);
        as_config("grid", [&] {
            check_pulse_grid(*p, grid);
            return 0;
        });
    }
    return cfg;
}

ScenarioConfig load_config(const std::string& path, std::size_t default_steps) {
    std::ifstream in(path);
    if (!in) invalid("--config", "cannot open '" + path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        invalid("--config", std::string("malformed JSON: ") + e.what());
    }
    return parse_config(doc, default_steps);
}

std::optional<double> natural_period(const DriveHamiltonian& drive) {
    return std::visit(overloaded{
                          [](const RabiParams& p) -> std::optional<double> { return p.rabi_period(); },
                          [](const PulseParams& p) -> std::optional<double> { return p.period(); },
                          [](const SampledDrive&) -> std::optional<double> { return std::nullopt; },
                      },
                      drive);
}

TimeGrid resolve_grid(const ScenarioConfig& cfg) {
    double t_end = 0.0;
    if (cfg.grid.t_end) {
        t_end = *cfg.grid.t_end;
    } else if (const auto* s = std::get_if<SampledDrive>(&cfg.drive)) {
        t_end = s->t_last();
    } else {
        t_end = cfg.grid.t_start + cfg.grid.periods.value_or(1.0) * *natural_period(cfg.drive);
    }
    return as_config("grid", [&] { return TimeGrid::make(cfg.grid.t_start, t_end, cfg.grid.steps); });
}

DensityMatrix analytic_density(const DriveHamiltonian& drive, double t) {
    return std::visit(overloaded{
                          [t](const RabiParams& p) { return rabi_density(p, t); },
                          [t](const PulseParams& p) { return pulse_density(p, t); },
                          [](const SampledDrive&) -> DensityMatrix {
                              throw Error(ErrorKind::ConfigInvalid, "sampled drives have no closed form");
                          },
                      },
                      drive);
}

TimeSeries analytic_series(const DriveHamiltonian& drive, const TimeGrid& grid) {
    TimeSeries out;
    for (std::size_t i = 0; i <= grid.steps; ++i) {
        const double t = grid.at(i);
        out.push(t, analytic_density(drive, t));
    }
    return out;
}

VerifyReport compare_series(const TimeSeries& numeric, const DriveHamiltonian& drive) {
    VerifyReport r;
    if (numeric.empty()) return r;
    const double purity0 = numeric[0].purity;
    for (const auto& s : numeric) {
        const Mat2& m = s.rho.matrix();
        r.max_entry_error = std::max(r.max_entry_error, max_abs_diff(m, analytic_density(drive, s.t).matrix()));
        r.max_trace_drift = std::max(r.max_trace_drift, std::abs(m.trace() - 1.0));
        r.max_purity_drift = std::max(r.max_purity_drift, std::abs(s.purity - purity0));
    }
    return r;
}

ScenarioResult run_scenario(const ScenarioConfig& cfg) {
    const TimeGrid grid = resolve_grid(cfg);
    if (cfg.mode == Mode::Analytic) return {analytic_series(cfg.drive, grid), std::nullopt};
    TimeSeries numeric = propagate(cfg.drive, dm_new(Mat2::diag(1.0, 0.0)), grid);
    if (cfg.mode == Mode::Numeric) return {std::move(numeric), std::nullopt};
    VerifyReport report = compare_series(numeric, cfg.drive);
    return {std::move(numeric), report};
}

SweepParam parse_sweep_param(std::string_view name) {
    if (name == "f0") return SweepParam::F0;
    if (name == "coupling-magnitude") return SweepParam::CouplingMagnitude;
    if (name == "omega0") return SweepParam::Omega0;
    invalid("--param", "expected f0, coupling-magnitude or omega0, got '" + std::string(name) + "'");
}

std::string_view to_string(SweepParam p) noexcept {
    switch (p) {
        case SweepParam::F0: return "f0";
        case SweepParam::CouplingMagnitude: return "coupling-magnitude";
        case SweepParam::Omega0: return "omega0";
    }
    return "?";
}

namespace {

DriveHamiltonian with_value(const DriveHamiltonian& base, SweepParam param, double v) {
    if (const auto* p = std::get_if<PulseParams>(&base)) return PulseParams::make(p->e0, v, p->n_period);
    const auto& r = std::get<RabiParams>(base);
    if (param == SweepParam::Omega0) return RabiParams::make(r.e_g, r.e_e, v, r.coupling);
    const double arg = std::abs(r.coupling) > 0.0 ? std::arg(r.coupling) : 0.0;
    return RabiParams::make(r.e_g, r.e_e, r.omega0, std::polar(v, arg));
}

double l1_closed_form(const DriveHamiltonian& drive, double t) {
    if (const auto* p = std::get_if<PulseParams>(&drive)) return l1_pulse_closed_form(*p, t);
    return l1_coherence(rabi_density(std::get<RabiParams>(drive), t));
}

SweepRow sweep_row(const ScenarioConfig& base, SweepParam param, double value) {
    SweepRow row;
    row.value = value;
    try {
        ScenarioConfig cfg = base;
        cfg.drive = with_value(base.drive, param, value);
        const bool numeric = base.mode == Mode::Numeric;
        cfg.mode = numeric ? Mode::Numeric : Mode::Analytic;
        const TimeGrid grid = resolve_grid(cfg);
        const TimeSeries series = run_scenario(cfg).series;

        std::size_t best = 0;
        row.min_purity = std::numeric_limits<double>::infinity();
        row.max_purity = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < series.size(); ++i) {
            if (series[i].c_l1 > series[best].c_l1) best = i;
            row.min_purity = std::min(row.min_purity, series[i].purity);
            row.max_purity = std::max(row.max_purity, series[i].purity);
        }
        row.max_c_l1 = series[best].c_l1;
        if (!numeric) {
            const double lo = series[best == 0 ? 0 : best - 1].t;
            const double hi = series[std::min(best + 1, series.size() - 1)].t;
            const auto [t_star, neg] = boost::math::tools::brent_find_minima(
                [&](double t) { return -l1_closed_form(cfg.drive, t); }, lo, hi,
                std::numeric_limits<double>::digits / 2);
            (void)t_star;
            row.max_c_l1 = std::max(row.max_c_l1, -neg);
        }

        const double period = *natural_period(cfg.drive);
        const Mat2 start = Mat2::diag(1.0, 0.0);
        if (numeric) {
            const TimeSeries one = propagate(cfg.drive, dm_new(start), TimeGrid::make(0.0, period, grid.steps));
            row.period_return_error = max_abs_diff(one.back().rho.matrix(), start);
        } else {
            row.period_return_error = max_abs_diff(analytic_density(cfg.drive, period).matrix(), start);
        }
    } catch (const Error& e) {
        row.error = e.what();
    }
    return row;
}

}  // namespace

std::vector<SweepRow> run_sweep(const ScenarioConfig& base, SweepParam param, const std::vector<double>& values) {
    const bool pulse = base.scenario == Scenario::Pulse;
    const bool rabi = base.scenario == Scenario::Rabi;
    if (param == SweepParam::F0 && !pulse) invalid("--param", "f0 sweeps need a pulse scenario");
    if (param != SweepParam::F0 && !rabi)
        invalid("--param", std::string(to_string(param)) + " sweeps need a rabi scenario");

    std::vector<SweepRow> rows(values.size());
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t i = next++; i < values.size(); i = next++) rows[i] = sweep_row(base, param, values[i]);
    };
    const std::size_t n_threads =
        std::min<std::size_t>(values.size(), std::max(1u, std::thread::hardware_concurrency()));
    std::vector<std::jthread> pool;
    for (std::size_t i = 1; i < n_threads; ++i) pool.emplace_back(worker);
    if (n_threads > 0) worker();
    return rows;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
    os << kSweepHeader << '\n';
    for (const auto& r : rows) {
        os << io::format_double(r.value) << ',';
        if (r.error) {
            std::string msg = *r.error;
            std::replace(msg.begin(), msg.end(), ',', ';');
            std::replace(msg.begin(), msg.end(), '\n', ' ');
            os << ",,,," << msg << '\n';
        } else {
            os << io::format_double(r.max_c_l1) << ',' << io::format_double(r.min_purity) << ','
               << io::format_double(r.max_purity) << ',' << io::format_double(r.period_return_error) << ",\n";
        }
    }
}

}  // namespace qdrive
