#include "qdrive/pulse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace qdrive {

double periodicity_T(double e0, double f0, int n) {
    if (!(e0 > 0.0) || !std::isfinite(e0)) throw Error(ErrorKind::BadParam, "e0 must be positive");
    if (!(f0 >= 0.0) || !std::isfinite(f0)) throw Error(ErrorKind::BadParam, "f0 must be non-negative");
    if (n < 1) throw Error(ErrorKind::BadParam, "period index n must be >= 1");
    return 2.0 * static_cast<double>(n) * std::numbers::pi / (e0 * std::sqrt(1.0 + f0 * f0));
}

PulseParams PulseParams::make(double e0, double f0, int n_period) {
    if (!(f0 > 0.0)) throw Error(ErrorKind::BadParam, "f0 must be positive");
    periodicity_T(e0, f0, n_period);
    return PulseParams{e0, f0, n_period};
}

double PulseParams::eps0() const noexcept { return e0 * std::sqrt(1.0 + f0 * f0); }

double PulseParams::period() const noexcept {
    return 2.0 * static_cast<double>(n_period) * std::numbers::pi / eps0();
}

PulsePhase pulse_phase(const PulseParams& p, double t) {
    if (!(t >= 0.0) || !std::isfinite(t))
        throw Error(ErrorKind::BadParam, "pulse time must be finite and >= 0, got " + std::to_string(t));
    const double period = p.period();
    double tau = std::fmod(t, period);
    // snap ulp-level misses of kT and kT + T/2
    const double snap = 8.0 * std::numeric_limits<double>::epsilon() * std::max(t, period);
    if (period - tau <= snap) tau = 0.0;
    if (std::abs(tau - 0.5 * period) <= snap) tau = 0.5 * period;
    return {tau, tau < 0.5 * period ? 1 : -1};
}

double pulse_f(const PulseParams& p, double t) { return pulse_phase(p, t).sign * p.f0; }

Mat2 pulse_hamiltonian(const PulseParams& p, double t) {
    const double f = pulse_f(p, t);
    return Complex{-p.e0} * (pauli::z + Complex{f} * pauli::x);
}

DensityMatrix pulse_density(const PulseParams& p, double t) {
    const auto [tau, sign] = pulse_phase(p, t);
    const double f0 = p.f0;
    const double f2 = f0 * f0;
    const double arg = 2.0 * p.eps0() * tau;
    const double rho00 = f2 / (2.0 * (1.0 + f2)) * std::cos(arg) + (2.0 + f2) / (2.0 * (1.0 + f2));
    const double s = std::sin(p.eps0() * tau);
    const double rho11 = f2 / (1.0 + f2) * s * s;
    const Complex rho01 =
        static_cast<double>(sign) * Complex{f0 / (2.0 * (1.0 + f2)) * (1.0 - std::cos(arg)),
                                            -f0 / (2.0 * std::sqrt(1.0 + f2)) * std::sin(arg)};
    return dm_new({rho00, rho01, std::conj(rho01), rho11});
}

StateVector pulse_state(const PulseParams& p, double t) {
    const auto [tau, sign] = pulse_phase(p, t);
    const double root = std::sqrt(1.0 + p.f0 * p.f0);
    const double s = std::sin(p.eps0() * tau);
    const Complex c0{std::cos(p.eps0() * tau), s / root};
    const Complex c1{0.0, static_cast<double>(sign) * p.f0 / root * s};
    return StateVector::make(c0, c1);
}

double pulse_lewis_phase(const PulseParams& p, double t) {
    pulse_phase(p, t);
    return 0.0;
}

}  // namespace qdrive
