#pragma once

// Two-level system in a static z field plus a square-wave x field,
//
//   H(t) = -E0 (sigma_z + f(t) sigma_x),   f = +f0 on the first half period,
//                                          f = -f0 on the second,
//
// with the period fixed by the self-consistency condition
// T = 2 N pi / (E0 sqrt(1 + f0^2)). Only such commensurate periods admit the
// closed forms below; arbitrary square drives go through the numeric
// propagator instead.

#include "qdrive/core.hpp"

namespace qdrive {

// 2 n pi / (e0 sqrt(1 + f0^2))
double periodicity_T(double e0, double f0, int n);

struct PulseParams {
    double e0 = 1.0;
    double f0 = 1.0;
    int n_period = 1;

    static PulseParams make(double e0, double f0, int n_period);

    double period() const noexcept;
    // eps0 = e0 sqrt(1 + f0^2)
    double eps0() const noexcept;
};

// Position inside the current period. `sign` is +1 on [0, T/2) and -1 on
// [T/2, T); exact switching times take the second-half (right-limit) branch.
struct PulsePhase {
    double tau;
    int sign;
};

PulsePhase pulse_phase(const PulseParams& p, double t);

double pulse_f(const PulseParams& p, double t);

Mat2 pulse_hamiltonian(const PulseParams& p, double t);

DensityMatrix pulse_density(const PulseParams& p, double t);

StateVector pulse_state(const PulseParams& p, double t);

// The dynamical phase accumulated by pulse_state is zero, so the Lewis phase
// stays at its initial value, taken as 0.
double pulse_lewis_phase(const PulseParams& p, double t);

}  // namespace qdrive
