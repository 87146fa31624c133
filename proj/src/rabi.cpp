#include "qdrive/rabi.hpp"

#include <cmath>
#include <numbers>

namespace qdrive {

namespace {

double require_omega(const RabiParams& p) {
    const double om = p.omega_rabi();
    if (!(om > 0.0))
        throw Error(ErrorKind::DegenerateDrive, "Rabi frequency is zero (zero coupling at resonance)");
    return om;
}

}  // namespace

RabiParams RabiParams::make(double e_g, double e_e, double omega0, Complex coupling) {
    if (!std::isfinite(e_g) || !std::isfinite(e_e) || !std::isfinite(omega0) || !is_finite(coupling))
        throw Error(ErrorKind::NonFinite, "Rabi parameters must be finite");
    return RabiParams{e_g, e_e, omega0, coupling};
}

double RabiParams::omega_rabi() const noexcept {
    const double th = theta();
    return std::sqrt(0.25 * th * th + std::norm(coupling));
}

double RabiParams::rabi_period() const { return std::numbers::pi / require_omega(*this); }

Mat2 rabi_hamiltonian(const RabiParams& p, double t) noexcept {
    const Complex phase = std::polar(1.0, p.omega0 * t);
    return {p.e_g, std::conj(p.coupling) * phase, p.coupling * std::conj(phase), p.e_e};
}

DensityMatrix rabi_density(const RabiParams& p, double t) {
    const double om = require_omega(p);
    const double th = p.theta();
    const double s = std::sin(om * t);
    const double c = std::cos(om * t);
    const double g2 = std::norm(p.coupling);
    const double four_om2 = 4.0 * om * om;

    const double rho_gg = c * c + th * th / four_om2 * s * s;
    const double rho_ee = g2 / (om * om) * s * s;
    const Complex rho_ge = std::conj(p.coupling) * std::polar(1.0, p.omega0 * t) / four_om2 *
                           Complex{th * std::cos(2.0 * om * t) - th, 2.0 * om * std::sin(2.0 * om * t)};
    return dm_new({rho_gg, rho_ge, std::conj(rho_ge), rho_ee});
}

StateVector rabi_state(const RabiParams& p, double t) {
    const double om = require_omega(p);
    const double s = std::sin(om * t);
    const Complex c0{std::cos(om * t), p.theta() / (2.0 * om) * s};
    const Complex c1 = -kI * p.coupling / om * std::polar(1.0, -p.omega0 * t) * s;
    return StateVector::make(c0, c1);
}

double floquet_quasienergy(const RabiParams& p) noexcept {
    return 0.5 * (p.omega0 - p.e_e - p.e_g);
}

StateVector floquet_solution(const RabiParams& p, double t) {
    const StateVector phi = rabi_state(p, t);
    const Complex phase = std::polar(1.0, floquet_quasienergy(p) * t);
    return StateVector::make(phase * phi.c0, phase * phi.c1);
}

}  // namespace qdrive
