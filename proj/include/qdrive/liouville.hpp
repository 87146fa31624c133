#pragma once

// Fixed-step RK4 integration of the Liouville-von Neumann equation
// d rho/dt = -i [H(t), rho] for the drives the library knows about.

#include <utility>
#include <variant>
#include <vector>

#include "qdrive/core.hpp"
#include "qdrive/pulse.hpp"
#include "qdrive/rabi.hpp"

namespace qdrive {

// Tabulated Hamiltonian, piecewise constant from the left: H(t) = H_k for
// t_k <= t < t_{k+1}, and the last sample holds at t = t_last.
class SampledDrive {
public:
    static SampledDrive make(std::vector<std::pair<double, Mat2>> samples);

    const std::vector<std::pair<double, Mat2>>& samples() const noexcept { return samples_; }
    double t_first() const noexcept { return samples_.front().first; }
    double t_last() const noexcept { return samples_.back().first; }
    Mat2 at(double t) const;

private:
    std::vector<std::pair<double, Mat2>> samples_;
};

using DriveHamiltonian = std::variant<RabiParams, PulseParams, SampledDrive>;

Mat2 hamiltonian_at(const DriveHamiltonian& drive, double t);

Mat2 liouville_rhs(const DriveHamiltonian& drive, double t, const Mat2& rho);

// Throws StepSpansDiscontinuity unless every switching time k T/2 strictly
// inside the grid is a grid node (relative tolerance 1e-9 in step units).
void check_pulse_grid(const PulseParams& p, const TimeGrid& grid);

// Drift gate applied to every propagated sample (trace and hermiticity).
inline constexpr double kDriftLimit = 1e-6;
// Positivity tolerance used when re-wrapping propagated samples.
inline constexpr double kPropagatedTolerance = 1e-8;

// Integrates from rho0 over the grid and returns steps + 1 samples (grid
// nodes, t_start included). For square-pulse drives every switching time
// k T/2 strictly inside the grid must coincide with a node; otherwise
// StepSpansDiscontinuity. Samples whose trace or hermiticity drift exceeds
// kDriftLimit, or that lose positivity beyond kPropagatedTolerance, raise
// InvariantDrift. Nothing is renormalized.
TimeSeries propagate(const DriveHamiltonian& drive, const DensityMatrix& rho0, const TimeGrid& grid);

}  // namespace qdrive
