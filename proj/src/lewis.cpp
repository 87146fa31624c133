#include "qdrive/lewis.hpp"

#include <cmath>

namespace qdrive {

namespace {

double require_omega(const RabiParams& p) {
    const double om = p.omega_rabi();
    if (!(om > 0.0)) throw Error(ErrorKind::DegenerateDrive, "Rabi frequency is zero");
    return om;
}

}  // namespace

double xi_squared(const RabiParams& p, double t, double c_const) {
    const double om = require_omega(p);
    const double g2 = std::norm(p.coupling);
    const double th = p.theta();
    return (2.0 - c_const) * g2 / (2.0 * om * om) * std::cos(2.0 * om * t) +
           (th * th + 2.0 * c_const * g2) / (4.0 * om * om);
}

double xi_xidot(const RabiParams& p, double t, double c_const) {
    const double om = require_omega(p);
    const double g2 = std::norm(p.coupling);
    return -(2.0 - c_const) * g2 / (2.0 * om) * std::sin(2.0 * om * t);
}

InvariantCoefficients invariant_coefficients(const RabiParams& p, double t, double c_const) {
    require_omega(p);
    if (std::abs(p.coupling) == 0.0)
        throw Error(ErrorKind::ZeroCoupling, "invariant coefficient gamma1 divides by the coupling");
    const double xi2 = xi_squared(p, t, c_const);
    const Complex phase = std::polar(1.0, p.omega0 * t);
    const Complex gamma1 = p.theta() / (2.0 * p.coupling) * phase * (xi2 - 1.0) -
                           kI * xi_xidot(p, t, c_const) * phase / p.coupling;
    return {xi2, c_const - xi2, gamma1, std::conj(gamma1), c_const};
}

Mat2 invariant_operator(const RabiParams& p, double t, double c_const) {
    const auto k = invariant_coefficients(p, t, c_const);
    return {k.delta1, k.gamma1, k.gamma2, k.delta2};
}

double invariance_residual(const RabiParams& p, double t, double h, double c_const) {
    if (!(h > 0.0)) throw Error(ErrorKind::BadParam, "finite-difference step must be positive");
    const Mat2 didt = Complex{1.0 / (2.0 * h)} *
                      (invariant_operator(p, t + h, c_const) - invariant_operator(p, t - h, c_const));
    const Mat2 total = didt - kI * commutator(invariant_operator(p, t, c_const), rabi_hamiltonian(p, t));
    return max_abs(total);
}

double ermakov_pinney_residual(const RabiParams& p, double t, double h, double c_const) {
    if (!(h > 0.0)) throw Error(ErrorKind::BadParam, "finite-difference step must be positive");
    const double u = xi_squared(p, t, c_const);
    if (!(u > 0.0)) throw Error(ErrorKind::BadParam, "xi^2 must be positive where the residual is taken");
    const double xi = std::sqrt(u);
    const double xi_p = std::sqrt(xi_squared(p, t + h, c_const));
    const double xi_m = std::sqrt(xi_squared(p, t - h, c_const));
    const double d1 = (xi_p - xi_m) / (2.0 * h);
    const double d2 = (xi_p - 2.0 * xi + xi_m) / (h * h);
    const double om = p.omega_rabi();
    const double th = p.theta();
    const double rhs = (0.5 * th * th + c_const * std::norm(p.coupling)) / u;
    return d2 / xi + d1 * d1 / u + 2.0 * om * om - rhs;
}

double lewis_phase(const RabiParams& p, double t) noexcept {
    return floquet_quasienergy(p) * t;
}

}  // namespace qdrive
