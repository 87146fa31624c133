#include "doctest.h"

#include <cmath>
#include <cstring>
#include <random>
#include <sstream>

#include "qdrive/io.hpp"
#include "qdrive/scenario.hpp"

using namespace qdrive;
using nlohmann::json;

namespace {

ErrorKind kind_of(const auto& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected qdrive::Error");
    return ErrorKind::BadParam;
}

bool bit_equal(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

json pulse_doc() {
    return {{"scenario", "pulse"},
            {"params", {{"e0", 1.0}, {"f0", 0.1}, {"n_period", 1}}},
            {"grid", {{"t_start", 0.0}, {"periods", 1.0}, {"steps", 2000}}},
            {"mode", "analytic"}};
}

json rabi_doc() {
    return {{"scenario", "rabi"},
            {"params", {{"e_g", 0.0}, {"e_e", 1.0}, {"omega0", 1.0}, {"coupling", 0.5}}},
            {"grid", {{"periods", 1.0}, {"steps", 500}}},
            {"mode", "analytic"}};
}

}  // namespace

TEST_CASE("format_double keeps 17 significant digits") {
    CHECK(io::format_double(0.1) == "0.10000000000000001");
    CHECK(io::format_double(1.0) == "1");
    CHECK(io::format_double(1.0 / 3.0) == "0.33333333333333331");
    CHECK(io::format_double(-2.5e-300) == "-2.5e-300");
}

TEST_CASE("CSV header and line endings") {
    TimeSeries ts;
    ts.push(0.0, dm_new(Mat2::diag(1.0, 0.0)));
    std::ostringstream os;
    io::write_csv(os, ts);
    const std::string out = os.str();
    CHECK(out.substr(0, out.find('\n')) == io::kCsvHeader);
    CHECK(out.find('\r') == std::string::npos);
    CHECK(out == std::string(io::kCsvHeader) + "\n0,1,0,0,0,0,0,0,0,1,0,1\n");
}

TEST_CASE("CSV round trip is bit-equal") {
    const auto p = RabiParams::make(0.1, 1.3, 0.9, Complex{0.4, -0.2});
    const auto ts = analytic_series(p, TimeGrid::make(0.0, 7.0, 777));
    std::stringstream ss;
    io::write_csv(ss, ts);

    const auto rows = io::read_csv_rows(ss);
    REQUIRE(rows.size() == ts.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& s = ts[i];
        const auto& r = rows[i];
        CHECK(bit_equal(r.t, s.t));
        const Mat2& m = s.rho.matrix();
        for (auto [a, b] : {std::pair{r.rho.a00, m.a00}, {r.rho.a01, m.a01}, {r.rho.a10, m.a10}, {r.rho.a11, m.a11}}) {
            CHECK(bit_equal(a.real(), b.real()));
            CHECK(bit_equal(a.imag(), b.imag()));
        }
        CHECK(bit_equal(r.purity, s.purity));
        CHECK(bit_equal(r.c_l1, s.c_l1));
        CHECK(bit_equal(r.c_frob, s.c_frob));
    }

    std::stringstream again;
    io::write_csv(again, ts);
    const auto back = io::read_csv(again);
    std::ostringstream a, b;
    io::write_csv(a, ts);
    io::write_csv(b, back);
    CHECK(a.str() == b.str());
}

TEST_CASE("CSV reader accepts the matrix-only prefix and rejects junk") {
    std::istringstream nine("t,rho00_re,rho00_im,rho01_re,rho01_im,rho10_re,rho10_im,rho11_re,rho11_im\n"
                            "0.5,0.5,0,0.5,0,0.5,0,0.5,0\n");
    const auto rows = io::read_csv_rows(nine);
    REQUIRE(rows.size() == 1);
    CHECK(std::isnan(rows[0].purity));
    std::istringstream again(std::string("t,rho00_re,rho00_im,rho01_re,rho01_im,rho10_re,rho10_im,rho11_re,rho11_im\n") +
                             "0.5,0.5,0,0.5,0,0.5,0,0.5,0\n");
    CHECK(io::read_csv(again)[0].c_l1 == 1.0);

    std::istringstream bad_header("time,x\n1,2\n");
    CHECK(kind_of([&] { io::read_csv_rows(bad_header); }) == ErrorKind::ConfigInvalid);
    std::istringstream bad_value(std::string(io::kCsvHeader) + "\n0,abc,0,0,0,0,0,0,0,1,0,1\n");
    CHECK(kind_of([&] { io::read_csv_rows(bad_value); }) == ErrorKind::ConfigInvalid);
}

TEST_CASE("JSON export uses the CSV field names") {
    TimeSeries ts;
    ts.push(0.25, dm_new(Mat2::diag(0.75, 0.25)));
    std::ostringstream os;
    io::write_json(os, ts);
    const json doc = json::parse(os.str());
    REQUIRE(doc.is_array());
    REQUIRE(doc.size() == 1);
    CHECK(doc[0].size() == 12);
    CHECK(doc[0].at("t") == 0.25);
    CHECK(doc[0].at("rho00_re") == 0.75);
    CHECK(doc[0].at("purity") == 0.625);
    CHECK(doc[0].at("c_frobenius") == 0.5);
}

TEST_CASE("parse_config accepts the documented shapes") {
    auto cfg = parse_config(pulse_doc());
    CHECK(cfg.scenario == Scenario::Pulse);
    CHECK(std::get<PulseParams>(cfg.drive).f0 == 0.1);
    CHECK(resolve_grid(cfg).steps == 2000);
    CHECK(resolve_grid(cfg).t_end == doctest::Approx(std::get<PulseParams>(cfg.drive).period()));

    json r = rabi_doc();
    r["params"]["coupling"] = {{"re", 0.3}, {"im", 0.4}};
    r["output"] = {{"path", "x.json"}, {"format", "json"}};
    cfg = parse_config(r);
    CHECK(std::get<RabiParams>(cfg.drive).coupling == Complex{0.3, 0.4});
    CHECK(cfg.format == OutputFormat::Json);
    CHECK(*cfg.output_path == "x.json");

    json s = {{"scenario", "sampled"},
              {"mode", "numeric"},
              {"params", {{"samples", {{{"t", 0.0}, {"h", {1, 0, 0, -1}}}, {{"t", 2.0}, {"h", {1, 0, 0, -1}}}}}}}};
    cfg = parse_config(s, 64);
    CHECK(resolve_grid(cfg).t_end == 2.0);
    CHECK(resolve_grid(cfg).steps == 64);
}

TEST_CASE("parse_config is strict") {
    const auto bad = [](json doc) { return kind_of([&] { parse_config(doc); }); };
    json d = pulse_doc();
    d["extra"] = 1;
    CHECK(bad(d) == ErrorKind::ConfigInvalid);
    d = pulse_doc();
    d["params"]["coupling"] = 0.5;
    CHECK(bad(d) == ErrorKind::ConfigInvalid);
    d = pulse_doc();
    d["params"].erase("f0");
    CHECK(bad(d) == ErrorKind::ConfigInvalid);
    d = pulse_doc();
    d["params"]["f0"] = -1.0;
    CHECK(bad(d) == ErrorKind::ConfigInvalid);
    d = pulse_doc();
    d["grid"]["t_end"] = 3.0;
    CHECK(bad(d) == ErrorKind::ConfigInvalid);
    d = pulse_doc();
    d["grid"]["steps"] = 0;
    CHECK(bad(d) == ErrorKind::ConfigInvalid);
    d = pulse_doc();
    d["mode"] = "fast";
    CHECK(bad(d) == ErrorKind::ConfigInvalid);
    d = pulse_doc();
    d["mode"] = "numeric";
    d["grid"]["steps"] = 2001;
    CHECK(bad(d) == ErrorKind::ConfigInvalid);
    d = pulse_doc();
    d["scenario"] = "laser";
    CHECK(bad(d) == ErrorKind::ConfigInvalid);
    d = rabi_doc();
    d["params"]["omega0"] = "1";
    CHECK(bad(d) == ErrorKind::ConfigInvalid);

    try {
        d = pulse_doc();
        d["grid"]["stepz"] = 3;
        parse_config(d);
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("grid.stepz") != std::string::npos);
    }
}

TEST_CASE("run_scenario modes") {
    auto cfg = parse_config(rabi_doc());
    const auto analytic = run_scenario(cfg);
    CHECK(analytic.series.size() == 501);
    CHECK(!analytic.report);

    json v = rabi_doc();
    v["mode"] = "verify";
    v["grid"]["steps"] = 5000;
    const auto verified = run_scenario(parse_config(v));
    REQUIRE(verified.report);
    CHECK(verified.report->passed());
    CHECK(verified.report->max_entry_error <= 1e-6);

    v["grid"]["steps"] = 50;
    const auto coarse = run_scenario(parse_config(v));
    CHECK(coarse.report->max_entry_error > 1e-6);
    CHECK(!coarse.report->passed());
}

TEST_CASE("verify verdict depends only on the maxima") {
    VerifyReport r;
    CHECK(r.passed());
    r.max_entry_error = 1e-6;
    r.max_trace_drift = 1e-9;
    CHECK(r.passed());
    r.max_purity_drift = 1.0;
    CHECK(r.passed());
    r.max_entry_error = 1.1e-6;
    CHECK(!r.passed());
    r.max_entry_error = 0.0;
    r.max_trace_drift = 1.1e-9;
    CHECK(!r.passed());
}

TEST_CASE("f0 sweep") {
    const auto cfg = parse_config(pulse_doc());
    const std::vector<double> values{0.1, 0.5, 1.0, 2.0, 4.5};
    const auto rows = run_sweep(cfg, SweepParam::F0, values);
    REQUIRE(rows.size() == values.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const double f0 = values[i];
        const double want = f0 <= 1.0 ? 2.0 * f0 / (1.0 + f0 * f0) : 1.0;
        CHECK(rows[i].value == f0);
        CHECK(!rows[i].error);
        CHECK(std::abs(rows[i].max_c_l1 - want) <= 1e-6);
        CHECK(rows[i].min_purity == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(rows[i].period_return_error <= 1e-12);
    }
    CHECK(std::abs(rows[0].max_c_l1 - 0.198) <= 1e-3);
    CHECK(std::abs(rows[1].max_c_l1 - 0.8) <= 1e-6);

    CHECK(run_sweep(cfg, SweepParam::F0, {}).empty());
    std::ostringstream os;
    write_sweep_csv(os, {});
    CHECK(os.str() == std::string(kSweepHeader) + "\n");

    CHECK(kind_of([&] { run_sweep(cfg, SweepParam::Omega0, {1.0}); }) == ErrorKind::ConfigInvalid);
}

TEST_CASE("numeric f0 sweep agrees with the analytic one") {
    json d = pulse_doc();
    d["mode"] = "numeric";
    const auto rows = run_sweep(parse_config(d), SweepParam::F0, {0.5, 4.5});
    REQUIRE(rows.size() == 2);
    CHECK(!rows[0].error);
    CHECK(std::abs(rows[0].max_c_l1 - 0.8) <= 1e-5);
    CHECK(rows[0].period_return_error <= 1e-8);
    CHECK(rows[1].max_c_l1 <= 1.0 + 1e-9);
    CHECK(rows[1].max_c_l1 >= 0.999);
}

TEST_CASE("degenerate sweep rows are reported, not fatal") {
    const auto cfg = parse_config(rabi_doc());
    const auto rows = run_sweep(cfg, SweepParam::CouplingMagnitude, {0.0, 0.5});
    REQUIRE(rows.size() == 2);
    REQUIRE(rows[0].error);
    CHECK(rows[0].error->find("DegenerateDrive") != std::string::npos);
    CHECK(!rows[1].error);
    CHECK(rows[1].max_c_l1 == doctest::Approx(1.0).epsilon(1e-9));

    std::ostringstream os;
    write_sweep_csv(os, rows);
    const std::string out = os.str();
    CHECK(out.find("\n0,,,,,DegenerateDrive") != std::string::npos);

    const auto omegas = run_sweep(cfg, SweepParam::Omega0, {0.5, 1.0, 1.5});
    for (const auto& r : omegas) CHECK(!r.error);
    CHECK(omegas[1].max_c_l1 > omegas[0].max_c_l1);
}

TEST_CASE("sweep rows come back in input order") {
    const auto cfg = parse_config(pulse_doc());
    std::vector<double> values;
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(0.05, 5.0);
    for (int i = 0; i < 40; ++i) values.push_back(u(rng));
    const auto rows = run_sweep(cfg, SweepParam::F0, values);
    for (std::size_t i = 0; i < values.size(); ++i) CHECK(rows[i].value == values[i]);
}
