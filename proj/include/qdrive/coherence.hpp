#pragma once

// Coherence measures for qubit density matrices in the computational basis.

#include "qdrive/core.hpp"
#include "qdrive/pulse.hpp"

namespace qdrive {

// Sum of off-diagonal magnitudes, |rho01| + |rho10|.
double l1_coherence(const DensityMatrix& rho) noexcept;

// Frobenius distance from the maximally mixed state, normalized so pure
// states give 1: sqrt(1 + 4|rho01|^2 - 4 rho00 rho11).
//
// Throws DiscriminantNegative if the radicand is below -1e-12; rounding-level
// excursions outside [0, 1] are clamped.
double frobenius_coherence(const DensityMatrix& rho);

// Same measure through the spectrum: sqrt(2 * sum_i (lambda_i - 1/2)^2).
double frobenius_coherence_spectral(const DensityMatrix& rho);

// l1 coherence of pulse_density(p, t) in closed form.
double l1_pulse_closed_form(const PulseParams& p, double t);

}  // namespace qdrive
