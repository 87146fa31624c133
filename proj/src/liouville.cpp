#include "qdrive/liouville.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qdrive {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string sci(double v) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << v;
    return os.str();
}

Mat2 rhs(const Mat2& h, const Mat2& rho) { return -kI * commutator(h, rho); }

}  // namespace

void check_pulse_grid(const PulseParams& p, const TimeGrid& grid) {
    if (grid.t_start < 0.0) throw Error(ErrorKind::BadParam, "square-pulse grids must start at t >= 0");
    const double half = 0.5 * p.period();
    const double h = grid.step();
    const auto k_first = static_cast<long long>(std::floor(grid.t_start / half)) + 1;
    for (long long k = k_first;; ++k) {
        const double ts = static_cast<double>(k) * half;
        if (ts >= grid.t_end) break;
        if (ts <= grid.t_start) continue;
        const double x = (ts - grid.t_start) / h;
        const double miss = std::abs(x - std::round(x));
        if (miss > 1e-9 * std::max(1.0, x))
            throw Error(ErrorKind::StepSpansDiscontinuity,
                        "switching time " + sci(ts) + " falls inside a step (offset " + sci(miss) +
                            " steps); choose steps so nodes land on multiples of T/2");
    }
}

SampledDrive SampledDrive::make(std::vector<std::pair<double, Mat2>> samples) {
    if (samples.empty()) throw Error(ErrorKind::BadParam, "sampled drive needs at least one sample");
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto& [t, m] = samples[i];
        if (!std::isfinite(t) || !m.finite())
            throw Error(ErrorKind::NonFinite, "sampled drive entry " + std::to_string(i) + " is not finite");
        if (hermiticity_defect(m) > kTolHermitian)
            throw Error(ErrorKind::NotHermitian, "sampled drive matrix " + std::to_string(i) +
                                                     " hermiticity defect " + sci(hermiticity_defect(m)));
        if (i > 0 && !(t > samples[i - 1].first))
            throw Error(ErrorKind::BadParam, "sampled drive times must be strictly increasing");
    }
    SampledDrive d;
    d.samples_ = std::move(samples);
    return d;
}

Mat2 SampledDrive::at(double t) const {
    if (t < t_first() || t > t_last())
        throw Error(ErrorKind::OutOfRange, "t = " + sci(t) + " outside sampled range [" + sci(t_first()) +
                                               ", " + sci(t_last()) + "]");
    auto it = std::upper_bound(samples_.begin(), samples_.end(), t,
                               [](double v, const auto& s) { return v < s.first; });
    return std::prev(it)->second;
}

Mat2 hamiltonian_at(const DriveHamiltonian& drive, double t) {
    return std::visit(overloaded{
                          [t](const RabiParams& p) { return rabi_hamiltonian(p, t); },
                          [t](const PulseParams& p) { return pulse_hamiltonian(p, t); },
                          [t](const SampledDrive& s) { return s.at(t); },
                      },
                      drive);
}

Mat2 liouville_rhs(const DriveHamiltonian& drive, double t, const Mat2& rho) {
    return rhs(hamiltonian_at(drive, t), rho);
}

TimeSeries propagate(const DriveHamiltonian& drive, const DensityMatrix& rho0, const TimeGrid& grid) {
    const TimeGrid g = TimeGrid::make(grid.t_start, grid.t_end, grid.steps);
    const auto* pulse = std::get_if<PulseParams>(&drive);
    if (pulse) check_pulse_grid(*pulse, g);
    if (const auto* s = std::get_if<SampledDrive>(&drive); s && (g.t_start < s->t_first() || g.t_end > s->t_last()))
        throw Error(ErrorKind::OutOfRange, "grid extends beyond the sampled drive");

    const double h = g.step();
    TimeSeries out;
    out.push(g.t_start, rho0);
    Mat2 rho = rho0.matrix();

    for (std::size_t i = 0; i < g.steps; ++i) {
        const double t = g.at(i);
        Mat2 h0, h_mid, h1;
        if (pulse) {
            // piecewise constant, no step crosses a switch
            h0 = h_mid = h1 = pulse_hamiltonian(*pulse, t + 0.5 * h);
        } else {
            h0 = hamiltonian_at(drive, t);
            h_mid = hamiltonian_at(drive, t + 0.5 * h);
            h1 = hamiltonian_at(drive, std::min(t + h, g.t_end));
        }
        const Mat2 k1 = rhs(h0, rho);
        const Mat2 k2 = rhs(h_mid, rho + Complex{0.5 * h} * k1);
        const Mat2 k3 = rhs(h_mid, rho + Complex{0.5 * h} * k2);
        const Mat2 k4 = rhs(h1, rho + Complex{h} * k3);
        rho += Complex{h / 6.0} * (k1 + Complex{2.0} * k2 + Complex{2.0} * k3 + k4);

        const double t_next = g.at(i + 1);
        const double trace_drift = std::abs(rho.trace() - 1.0);
        const double herm_drift = hermiticity_defect(rho);
        if (!rho.finite() || trace_drift > kDriftLimit || herm_drift > kDriftLimit)
            throw Error(ErrorKind::InvariantDrift, "at t = " + sci(t_next) + ": trace drift " +
                                                       sci(trace_drift) + ", hermiticity drift " + sci(herm_drift));
        try {
            out.push(t_next, dm_new_relaxed(rho, kDriftLimit, kPropagatedTolerance));
        } catch (const Error& e) {
            throw Error(ErrorKind::InvariantDrift, "at t = " + sci(t_next) + ": " + e.what());
        }
    }
    return out;
}

}  // namespace qdrive
