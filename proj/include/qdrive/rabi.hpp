#pragma once

// Closed-form dynamics of a two-level atom under a rotating-wave drive
//
//   H_R(t) = [[E_g, conj(g) e^{i w0 t}], [g e^{-i w0 t}, E_e]]
//
// started in the ground state. `g` is the complex coupling (field amplitude
// times transition matrix element); only that product enters the dynamics.

#include "qdrive/core.hpp"

namespace qdrive {

struct RabiParams {
    double e_g = 0.0;
    double e_e = 1.0;
    double omega0 = 1.0;
    Complex coupling{0.5, 0.0};

    // Rejects non-finite values. A degenerate drive (Omega == 0) is accepted
    // here and rejected by the operations that divide by Omega.
    static RabiParams make(double e_g, double e_e, double omega0, Complex coupling);

    // Detuning E_e - E_g - w0.
    double theta() const noexcept { return e_e - e_g - omega0; }
    // Rabi frequency sqrt(theta^2/4 + |g|^2).
    double omega_rabi() const noexcept;
    // Population period pi / Omega.
    double rabi_period() const;
};

DensityMatrix rabi_density(const RabiParams& p, double t);

StateVector rabi_state(const RabiParams& p, double t);

// (w0 - E_e - E_g) / 2
double floquet_quasienergy(const RabiParams& p) noexcept;

// e^{i zeta t} times rabi_state(p, t); a solution of i d/dt psi = H_R psi.
StateVector floquet_solution(const RabiParams& p, double t);

Mat2 rabi_hamiltonian(const RabiParams& p, double t) noexcept;

}  // namespace qdrive
