#include "doctest.h"

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "qdrive/liouville.hpp"

using namespace qdrive;
using std::numbers::pi;

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

const DensityMatrix kGround = dm_new(Mat2::diag(1.0, 0.0));

double max_error_vs(const TimeSeries& ts, const auto& closed_form) {
    double err = 0.0;
    for (const auto& s : ts) err = std::max(err, max_abs_diff(s.rho.matrix(), closed_form(s.t)));
    return err;
}

double rabi_error(const RabiParams& p, std::size_t steps) {
    const auto ts = propagate(p, kGround, TimeGrid::make(0.0, p.rabi_period(), steps));
    return max_error_vs(ts, [&](double t) { return oracle::rabi_rho(p, t); });
}

}  // namespace

TEST_CASE("hamiltonian_at dispatches on the drive") {
    const auto r = RabiParams::make(0.0, 1.0, 1.0, 0.5);
    CHECK(max_abs_diff(hamiltonian_at(r, 0.0), Mat2{0.0, 0.5, 0.5, 1.0}) == 0.0);

    const auto p = PulseParams::make(1.0, 0.5, 1);
    CHECK(max_abs_diff(hamiltonian_at(p, 0.0), Mat2{-1.0, -0.5, -0.5, 1.0}) == 0.0);
    CHECK(max_abs_diff(hamiltonian_at(p, 0.5 * p.period()), Mat2{-1.0, 0.5, 0.5, 1.0}) == 0.0);

    const auto s = SampledDrive::make({{0.0, pauli::x}, {1.0, pauli::z}, {2.0, pauli::y}});
    CHECK(hamiltonian_at(s, 0.5) == pauli::x);
    CHECK(hamiltonian_at(s, 1.0) == pauli::z);
    CHECK(hamiltonian_at(s, 2.0) == pauli::y);
    CHECK(kind_of([&] { hamiltonian_at(s, 2.5); }) == ErrorKind::OutOfRange);
    CHECK(kind_of([&] { hamiltonian_at(s, -0.1); }) == ErrorKind::OutOfRange);
}

TEST_CASE("SampledDrive validation") {
    CHECK(kind_of([] { SampledDrive::make({}); }) == ErrorKind::BadParam);
    CHECK(kind_of([] { SampledDrive::make({{0.0, pauli::x}, {0.0, pauli::z}}); }) == ErrorKind::BadParam);
    CHECK(kind_of([] { SampledDrive::make({{0.0, Mat2{0.0, 1.0, 0.0, 0.0}}}); }) == ErrorKind::NotHermitian);
    CHECK(kind_of([] { SampledDrive::make({{NAN, pauli::x}}); }) == ErrorKind::NonFinite);
}

TEST_CASE("liouville_rhs") {
    const SampledDrive zero = SampledDrive::make({{0.0, Mat2::zero()}, {1.0, Mat2::zero()}});
    CHECK(max_abs(liouville_rhs(zero, 0.5, Mat2{0.5, 0.5, 0.5, 0.5})) == 0.0);

    // -i [sigma_z, |0><0|] = 0 and -i [sigma_x, |0><0|] = -i (|1><0| - |0><1|)
    const SampledDrive zx = SampledDrive::make({{0.0, pauli::z}, {1.0, pauli::x}});
    CHECK(max_abs(liouville_rhs(zx, 0.5, Mat2::diag(1.0, 0.0))) == 0.0);
    CHECK(max_abs_diff(liouville_rhs(zx, 1.0, Mat2::diag(1.0, 0.0)), Mat2{0.0, kI, -kI, 0.0}) == 0.0);
}

TEST_CASE("zero Hamiltonian leaves the state unchanged") {
    const SampledDrive zero = SampledDrive::make({{0.0, Mat2::zero()}, {3.0, Mat2::zero()}});
    const auto rho0 = dm_new({0.7, Complex{0.1, 0.2}, Complex{0.1, -0.2}, 0.3});
    const auto ts = propagate(zero, rho0, TimeGrid::make(0.0, 3.0, 30));
    REQUIRE(ts.size() == 31);
    CHECK(ts.back().t == 3.0);
    for (const auto& s : ts) CHECK(s.rho.matrix() == rho0.matrix());
}

TEST_CASE("Rabi propagation matches the closed form") {
    const auto p = RabiParams::make(0.0, 1.5, 1.0, Complex{0.4, 0.3});
    const auto ts = propagate(p, kGround, TimeGrid::make(0.0, p.rabi_period(), 5000));
    CHECK(max_error_vs(ts, [&](double t) { return rabi_density(p, t).matrix(); }) <= 1e-8);
    for (const auto& s : ts) {
        CHECK(std::abs(s.rho.matrix().trace() - 1.0) <= 1e-9);
        CHECK(hermiticity_defect(s.rho.matrix()) <= 1e-9);
        CHECK(std::abs(s.purity - 1.0) <= 1e-8);
    }
}

TEST_CASE("RK4 converges at fourth order") {
    const auto p = RabiParams::make(0.0, 1.5, 1.0, Complex{0.4, 0.3});
    const double ratio = rabi_error(p, 100) / rabi_error(p, 200);
    CHECK(ratio >= 8.0);
    CHECK(ratio <= 32.0);
}

TEST_CASE("square-pulse propagation matches the piecewise closed form") {
    for (auto [f0, n] : {std::pair{0.1, 1}, {1.0, 1}, {4.5, 1}, {1.0, 3}}) {
        const auto p = PulseParams::make(1.0, f0, n);
        const auto ts = propagate(p, kGround, TimeGrid::make(0.0, p.period(), 8192));
        CHECK(max_error_vs(ts, [&](double t) { return pulse_density(p, t).matrix(); }) <= 1e-8);
        CHECK(max_error_vs(ts, [&](double t) { return oracle::pulse_rho(p, t); }) <= 1e-8);
    }
}

TEST_CASE("switching times must be grid nodes") {
    const auto p = PulseParams::make(1.0, 1.0, 1);
    CHECK(kind_of([&] { propagate(p, kGround, TimeGrid::make(0.0, p.period(), 1001)); }) ==
          ErrorKind::StepSpansDiscontinuity);
    CHECK_NOTHROW(propagate(p, kGround, TimeGrid::make(0.0, p.period(), 1000)));
    // switch outside the interval: any step count
    CHECK_NOTHROW(propagate(p, kGround, TimeGrid::make(0.0, 0.3 * p.period(), 7)));
    // end exactly on a switch
    CHECK_NOTHROW(propagate(p, kGround, TimeGrid::make(0.0, 0.5 * p.period(), 7)));
    CHECK(kind_of([&] { propagate(p, kGround, TimeGrid::make(-1.0, 1.0, 10)); }) == ErrorKind::BadParam);
}

TEST_CASE("sampled drive grid must stay inside the samples") {
    const auto s = SampledDrive::make({{0.0, pauli::x}, {1.0, pauli::x}});
    CHECK(kind_of([&] { propagate(s, kGround, TimeGrid::make(0.0, 2.0, 10)); }) == ErrorKind::OutOfRange);
    // constant sigma_x: rho00(t) = cos^2 t
    const auto ts = propagate(s, kGround, TimeGrid::make(0.0, 1.0, 1000));
    CHECK(std::abs(ts.back().rho.rho00() - std::cos(1.0) * std::cos(1.0)) <= 1e-12);
}

TEST_CASE("blow-up is reported as InvariantDrift") {
    const auto s = SampledDrive::make({{0.0, Complex{100.0} * pauli::x}, {10.0, Complex{100.0} * pauli::x}});
    CHECK(kind_of([&] { propagate(s, kGround, TimeGrid::make(0.0, 10.0, 10)); }) == ErrorKind::InvariantDrift);
}
