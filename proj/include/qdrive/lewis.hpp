#pragma once

// Lewis-Riesenfeld invariant of the rotating-wave Rabi Hamiltonian.
//
// The (eigenvalue-rescaled) invariant is parametrized as
//
//   I(t) = [[xi^2, gamma1], [conj(gamma1), C - xi^2]]
//
// where xi solves an Ermakov-Pinney equation and C is an integration
// constant. With C = 1 the invariant coincides with the density matrix
// returned by rabi_density; other C give (2 - C) rho(t) + (C - 1) 1.

#include "qdrive/core.hpp"
#include "qdrive/rabi.hpp"

namespace qdrive {

struct InvariantCoefficients {
    double delta1;   // xi^2
    double delta2;   // C - xi^2
    Complex gamma1;  // |g><e| coefficient
    Complex gamma2;  // conj(gamma1)
    double c_const;
};

double xi_squared(const RabiParams& p, double t, double c_const = 1.0);

// xi * d(xi)/dt, i.e. half the analytic time derivative of xi_squared.
double xi_xidot(const RabiParams& p, double t, double c_const = 1.0);

InvariantCoefficients invariant_coefficients(const RabiParams& p, double t, double c_const = 1.0);

Mat2 invariant_operator(const RabiParams& p, double t, double c_const = 1.0);

// max entrywise |dI/dt + (1/i)[I, H_R]| with dI/dt from a central difference
// of step h. Zero (up to O(h^2)) for an exact invariant.
double invariance_residual(const RabiParams& p, double t, double h, double c_const = 1.0);

// Residual of the Ermakov-Pinney equation
//
//   xi''/xi + (xi'/xi)^2 + 2 Omega^2 = (theta^2/2 + C |g|^2) / xi^2
//
// with xi = sqrt(xi_squared) and derivatives by central differences of step
// h. Requires xi_squared(t) > 0.
double ermakov_pinney_residual(const RabiParams& p, double t, double h, double c_const = 1.0);

// (t/2)(w0 - E_e - E_g); equal to floquet_quasienergy(p) * t.
double lewis_phase(const RabiParams& p, double t) noexcept;

}  // namespace qdrive
