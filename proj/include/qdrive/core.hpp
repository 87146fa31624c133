#pragma once

// Small fixed-size complex linear algebra and the validated state types
// shared by every solver in the library.

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "qdrive/error.hpp"

namespace qdrive {

using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};

// Tolerances applied when a DensityMatrix or StateVector is built from user data.
inline constexpr double kTolHermitian = 1e-12;
inline constexpr double kTolTrace = 1e-12;
inline constexpr double kTolPositive = 1e-12;
inline constexpr double kTolNorm = 1e-12;

bool is_finite(Complex z) noexcept;

// 2x2 complex matrix, row-major entries a00 a01 / a10 a11.
struct Mat2 {
    Complex a00{}, a01{}, a10{}, a11{};

    static constexpr Mat2 zero() noexcept { return {}; }
    static constexpr Mat2 identity() noexcept { return {1.0, 0.0, 0.0, 1.0}; }
    static constexpr Mat2 diag(double d0, double d1) noexcept { return {d0, 0.0, 0.0, d1}; }

    Mat2& operator+=(const Mat2& o) noexcept;
    Mat2& operator-=(const Mat2& o) noexcept;
    Mat2& operator*=(Complex s) noexcept;

    Complex trace() const noexcept { return a00 + a11; }
    Complex det() const noexcept { return a00 * a11 - a01 * a10; }
    Mat2 adjoint() const noexcept;
    bool finite() const noexcept;

    friend bool operator==(const Mat2&, const Mat2&) = default;
};

Mat2 operator+(Mat2 a, const Mat2& b) noexcept;
Mat2 operator-(Mat2 a, const Mat2& b) noexcept;
Mat2 operator-(const Mat2& a) noexcept;
Mat2 operator*(const Mat2& a, const Mat2& b) noexcept;
Mat2 operator*(Complex s, Mat2 a) noexcept;
Mat2 operator*(Mat2 a, Complex s) noexcept;

Mat2 commutator(const Mat2& a, const Mat2& b) noexcept;

// Largest entrywise modulus of a - b.
double max_abs_diff(const Mat2& a, const Mat2& b) noexcept;
double max_abs(const Mat2& a) noexcept;

// Largest departure from a = a^dagger.
double hermiticity_defect(const Mat2& a) noexcept;

namespace pauli {
inline constexpr Mat2 x{0.0, 1.0, 1.0, 0.0};
inline constexpr Mat2 y{0.0, Complex{0.0, -1.0}, Complex{0.0, 1.0}, 0.0};
inline constexpr Mat2 z{1.0, 0.0, 0.0, -1.0};
}  // namespace pauli

struct StateVector;

// Hermitian, unit-trace, positive-semidefinite 2x2 matrix. Immutable once built.
class DensityMatrix {
public:
    const Mat2& matrix() const noexcept { return m_; }
    double rho00() const noexcept { return m_.a00.real(); }
    double rho11() const noexcept { return m_.a11.real(); }
    Complex rho01() const noexcept { return m_.a01; }
    Complex rho10() const noexcept { return m_.a10; }

    friend DensityMatrix dm_new(const Mat2& m);
    friend DensityMatrix dm_new_relaxed(const Mat2& m, double tol, double tol_positive);

private:
    explicit DensityMatrix(const Mat2& m) : m_(m) {}
    Mat2 m_;
};

// Validates against the fixed 1e-12 construction tolerances.
DensityMatrix dm_new(const Mat2& m);

// Same checks with caller-chosen tolerances (hermiticity and trace share
// `tol`); used for integrator output, which carries truncation error well
// above 1e-12.
DensityMatrix dm_new_relaxed(const Mat2& m, double tol, double tol_positive);

double dm_purity(const DensityMatrix& rho) noexcept;

// (lambda_plus, lambda_minus), lambda_plus >= lambda_minus.
std::pair<double, double> dm_eigenvalues(const DensityMatrix& rho);

// Normalized two-component state; amplitudes on |0> (ground) and |1> (excited).
struct StateVector {
    Complex c0{1.0}, c1{};

    static StateVector make(Complex c0, Complex c1);

    double norm_squared() const noexcept { return std::norm(c0) + std::norm(c1); }
    Mat2 outer() const noexcept;
    DensityMatrix density() const { return dm_new(outer()); }
};

// <a|b>
Complex inner(const StateVector& a, const StateVector& b) noexcept;

// Plain two-component vector arithmetic for residual computations, where
// intermediate values are not normalized states.
struct Vec2 {
    Complex v0{}, v1{};
};
Vec2 apply(const Mat2& m, Complex c0, Complex c1) noexcept;

struct TimeGrid {
    double t_start = 0.0;
    double t_end = 1.0;
    std::size_t steps = 1;

    static TimeGrid make(double t_start, double t_end, std::size_t steps);

    double step() const noexcept { return (t_end - t_start) / static_cast<double>(steps); }
    double at(std::size_t i) const noexcept;
};

struct Sample {
    double t;
    DensityMatrix rho;
    double purity = 0.0;
    double c_l1 = 0.0;
    double c_frob = 0.0;
};

// Ordered samples, times strictly increasing.
class TimeSeries {
public:
    void push(double t, const DensityMatrix& rho);
    void push(Sample s);

    const std::vector<Sample>& samples() const noexcept { return samples_; }
    std::size_t size() const noexcept { return samples_.size(); }
    bool empty() const noexcept { return samples_.empty(); }
    const Sample& operator[](std::size_t i) const { return samples_[i]; }
    const Sample& back() const { return samples_.back(); }
    auto begin() const noexcept { return samples_.begin(); }
    auto end() const noexcept { return samples_.end(); }

private:
    std::vector<Sample> samples_;
};

}  // namespace qdrive
