#include "qdrive/coherence.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qdrive {

double l1_coherence(const DensityMatrix& rho) noexcept {
    return std::abs(rho.rho01()) + std::abs(rho.rho10());
}

double frobenius_coherence(const DensityMatrix& rho) {
    const double r = 1.0 + 4.0 * std::norm(rho.rho01()) - 4.0 * rho.rho00() * rho.rho11();
    if (r < -kTolPositive)
        throw Error(ErrorKind::DiscriminantNegative, "Frobenius radicand " + std::to_string(r));
    return std::sqrt(std::clamp(r, 0.0, 1.0));
}

double frobenius_coherence_spectral(const DensityMatrix& rho) {
    const auto [lp, lm] = dm_eigenvalues(rho);
    return std::sqrt(2.0 * ((lp - 0.5) * (lp - 0.5) + (lm - 0.5) * (lm - 0.5)));
}

double l1_pulse_closed_form(const PulseParams& p, double t) {
    const double tau = pulse_phase(p, t).tau;
    const double f2 = p.f0 * p.f0;
    const double s = std::sin(p.eps0() * tau);
    const double c = std::cos(p.eps0() * tau);
    return 2.0 * p.f0 / (1.0 + f2) * std::sqrt(s * s * (1.0 + f2 * c * c));
}

}  // namespace qdrive
