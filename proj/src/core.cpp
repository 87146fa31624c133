#include "qdrive/core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qdrive/coherence.hpp"

namespace qdrive {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::NonFinite: return "NonFinite";
        case ErrorKind::NotHermitian: return "NotHermitian";
        case ErrorKind::TraceNotOne: return "TraceNotOne";
        case ErrorKind::NotPositive: return "NotPositive";
        case ErrorKind::NotNormalized: return "NotNormalized";
        case ErrorKind::DiscriminantNegative: return "DiscriminantNegative";
        case ErrorKind::BadParam: return "BadParam";
        case ErrorKind::DegenerateDrive: return "DegenerateDrive";
        case ErrorKind::ZeroCoupling: return "ZeroCoupling";
        case ErrorKind::OutOfRange: return "OutOfRange";
        case ErrorKind::StepSpansDiscontinuity: return "StepSpansDiscontinuity";
        case ErrorKind::InvariantDrift: return "InvariantDrift";
        case ErrorKind::ConfigInvalid: return "ConfigInvalid";
    }
    return "Unknown";
}

bool is_finite(Complex z) noexcept {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

Mat2& Mat2::operator+=(const Mat2& o) noexcept {
    a00 += o.a00;
    a01 += o.a01;
    a10 += o.a10;
    a11 += o.a11;
    return *this;
}

Mat2& Mat2::operator-=(const Mat2& o) noexcept {
    a00 -= o.a00;
    a01 -= o.a01;
    a10 -= o.a10;
    a11 -= o.a11;
    return *this;
}

Mat2& Mat2::operator*=(Complex s) noexcept {
    a00 *= s;
    a01 *= s;
    a10 *= s;
    a11 *= s;
    return *this;
}

Mat2 Mat2::adjoint() const noexcept {
    return {std::conj(a00), std::conj(a10), std::conj(a01), std::conj(a11)};
}

bool Mat2::finite() const noexcept {
    return is_finite(a00) && is_finite(a01) && is_finite(a10) && is_finite(a11);
}

Mat2 operator+(Mat2 a, const Mat2& b) noexcept { return a += b; }
Mat2 operator-(Mat2 a, const Mat2& b) noexcept { return a -= b; }
Mat2 operator-(const Mat2& a) noexcept { return {-a.a00, -a.a01, -a.a10, -a.a11}; }
Mat2 operator*(Complex s, Mat2 a) noexcept { return a *= s; }
Mat2 operator*(Mat2 a, Complex s) noexcept { return a *= s; }

Mat2 operator*(const Mat2& a, const Mat2& b) noexcept {
    return {a.a00 * b.a00 + a.a01 * b.a10, a.a00 * b.a01 + a.a01 * b.a11,
            a.a10 * b.a00 + a.a11 * b.a10, a.a10 * b.a01 + a.a11 * b.a11};
}

Mat2 commutator(const Mat2& a, const Mat2& b) noexcept { return a * b - b * a; }

double max_abs(const Mat2& a) noexcept {
    return std::max({std::abs(a.a00), std::abs(a.a01), std::abs(a.a10), std::abs(a.a11)});
}

double max_abs_diff(const Mat2& a, const Mat2& b) noexcept { return max_abs(a - b); }

double hermiticity_defect(const Mat2& a) noexcept {
    return std::max({std::abs(a.a00.imag()), std::abs(a.a11.imag()),
                     std::abs(a.a01 - std::conj(a.a10))});
}

namespace {

std::string fmt_mag(double v) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << v;
    return os.str();
}

// Radicand of the 2x2 eigenvalue formula, 1/4 + |rho01|^2 - rho00*rho11.
// Uses the Hermitian part so it is well defined on slightly drifted input.
double eigen_radicand(const Mat2& m) noexcept {
    const double p = m.a00.real();
    const double q = m.a11.real();
    const Complex off = 0.5 * (m.a01 + std::conj(m.a10));
    return 0.25 + std::norm(off) - p * q;
}

}  // namespace

DensityMatrix dm_new_relaxed(const Mat2& m, double tol, double tol_positive) {
    if (!m.finite()) throw Error(ErrorKind::NonFinite, "density matrix has non-finite entries");
    const double herm = hermiticity_defect(m);
    if (herm > tol) throw Error(ErrorKind::NotHermitian, "hermiticity defect " + fmt_mag(herm));
    const double trace_err = std::abs(m.a00.real() + m.a11.real() - 1.0);
    if (trace_err > tol) throw Error(ErrorKind::TraceNotOne, "|tr - 1| = " + fmt_mag(trace_err));
    // Smallest eigenvalue of the Hermitian part: tr/2 - sqrt((p-q)^2/4 + |off|^2).
    const double p = m.a00.real();
    const double q = m.a11.real();
    const Complex off = 0.5 * (m.a01 + std::conj(m.a10));
    const double lam_min = 0.5 * (p + q) - std::sqrt(0.25 * (p - q) * (p - q) + std::norm(off));
    if (lam_min < -tol_positive)
        throw Error(ErrorKind::NotPositive, "smallest eigenvalue " + fmt_mag(lam_min));
    return DensityMatrix(m);
}

DensityMatrix dm_new(const Mat2& m) {
    static_assert(kTolHermitian == kTolTrace);
    return dm_new_relaxed(m, kTolHermitian, kTolPositive);
}

double dm_purity(const DensityMatrix& rho) noexcept {
    const Mat2& m = rho.matrix();
    return (m * m).trace().real();
}

std::pair<double, double> dm_eigenvalues(const DensityMatrix& rho) {
    const double r = eigen_radicand(rho.matrix());
    if (r < -kTolPositive)
        throw Error(ErrorKind::DiscriminantNegative, "eigenvalue radicand " + fmt_mag(r));
    const double s = std::sqrt(std::max(r, 0.0));
    return {0.5 + s, 0.5 - s};
}

StateVector StateVector::make(Complex c0, Complex c1) {
    if (!is_finite(c0) || !is_finite(c1))
        throw Error(ErrorKind::NonFinite, "state amplitudes are not finite");
    const double n = std::norm(c0) + std::norm(c1);
    if (std::abs(n - 1.0) > kTolNorm)
        throw Error(ErrorKind::NotNormalized, "|c0|^2 + |c1|^2 - 1 = " + fmt_mag(n - 1.0));
    return StateVector{c0, c1};
}

Mat2 StateVector::outer() const noexcept {
    return {c0 * std::conj(c0), c0 * std::conj(c1), c1 * std::conj(c0), c1 * std::conj(c1)};
}

Complex inner(const StateVector& a, const StateVector& b) noexcept {
    return std::conj(a.c0) * b.c0 + std::conj(a.c1) * b.c1;
}

Vec2 apply(const Mat2& m, Complex c0, Complex c1) noexcept {
    return {m.a00 * c0 + m.a01 * c1, m.a10 * c0 + m.a11 * c1};
}

TimeGrid TimeGrid::make(double t_start, double t_end, std::size_t steps) {
    if (!std::isfinite(t_start) || !std::isfinite(t_end))
        throw Error(ErrorKind::BadParam, "time grid bounds must be finite");
    if (!(t_end > t_start)) throw Error(ErrorKind::BadParam, "time grid requires t_end > t_start");
    if (steps < 1) throw Error(ErrorKind::BadParam, "time grid requires steps >= 1");
    return TimeGrid{t_start, t_end, steps};
}

double TimeGrid::at(std::size_t i) const noexcept {
    if (i >= steps) return t_end;
    return t_start + static_cast<double>(i) * step();
}

void TimeSeries::push(double t, const DensityMatrix& rho) {
    push(Sample{t, rho, dm_purity(rho), l1_coherence(rho), frobenius_coherence(rho)});
}

void TimeSeries::push(Sample s) {
    if (!samples_.empty() && !(s.t > samples_.back().t))
        throw Error(ErrorKind::OutOfRange, "time series samples must be strictly increasing in t");
    samples_.push_back(std::move(s));
}

}  // namespace qdrive
