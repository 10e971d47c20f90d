#include "wavebench/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "wavebench/kernels.hpp"

namespace wavebench::spectral {

namespace {

constexpr double kPi = std::numbers::pi;

void check_omega_grid(const std::vector<double>& omega_grid) {
    if (omega_grid.empty())
        throw std::invalid_argument("wavebench::transform: omega grid is empty");
    for (std::size_t i = 0; i < omega_grid.size(); ++i) {
        if (!std::isfinite(omega_grid[i]))
            throw std::invalid_argument("wavebench::transform: omega grid has a non-finite entry");
        if (i > 0 && omega_grid[i] <= omega_grid[i - 1])
            throw std::invalid_argument("wavebench::transform: omega grid must be strictly increasing");
    }
}

/// Uniform-grid step, or throws when the grid is not uniform enough for
/// trapezoidal band integrals.
double uniform_step(const std::vector<double>& grid, const char* who) {
    if (grid.size() < 2)
        throw std::invalid_argument(std::string(who) + ": need at least two grid points");
    const double step = (grid.back() - grid.front()) / static_cast<double>(grid.size() - 1);
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double local = grid[i] - grid[i - 1];
        if (std::fabs(local - step) > 1e-9 * std::max(1.0, std::fabs(step)))
            throw std::invalid_argument(std::string(who) + ": omega grid must be uniform");
    }
    return step;
}

}  // namespace

SpectrumSamples transform(const psf::PulseShape& shape,
                          std::vector<double> omega_grid, double dt) {
    check_omega_grid(omega_grid);
    const double T = shape.half_support_T;
    if (!(dt > 0.0))
        throw std::invalid_argument("wavebench::transform: dt must be > 0");
    if (dt > T / 64.0)
        throw PrecisionError("wavebench::transform: dt too coarse (needs dt <= T/64)");

    // Round the step so both endpoints +/-T land on the grid exactly.
    const auto segments = static_cast<std::size_t>(std::llround(2.0 * T / dt));
    const double dt_used = 2.0 * T / static_cast<double>(segments);
    const std::size_t n = segments + 1;

    // Trapezoid-weighted samples; end weights are halved, and h(+/-T) = 0
    // anyway, so the end contribution vanishes.
    std::vector<double> w(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double t = -T + dt_used * static_cast<double>(k);
        w[k] = psf::eval_pulse(shape, t) * dt_used;
    }
    w.front() *= 0.5;
    w.back() *= 0.5;

    SpectrumSamples spec;
    spec.dt_used = dt_used;
    spec.values.resize(omega_grid.size());
    double worst_imag = 0.0;
    for (std::size_t i = 0; i < omega_grid.size(); ++i) {
        double re = 0.0, im = 0.0;
        kernels::fourier_sum(w.data(), n, -T, dt_used, omega_grid[i], re, im);
        spec.values[i] = re;
        worst_imag = std::max(worst_imag, std::fabs(im));
    }
    spec.max_imag_residual = worst_imag;
    spec.omega_grid = std::move(omega_grid);
    return spec;
}

double half_sine_spectrum_closed_form(double omega, double T) {
    if (!(T > 0.0) || !std::isfinite(omega))
        throw std::invalid_argument("wavebench::half_sine_spectrum_closed_form: bad arguments");
    const double pole = 0.5 * kPi / T;
    const double delta = std::fabs(omega) - pole;
    if (std::fabs(delta) < 1e-6 / T) {
        // Removable singularity at |omega| = pi/2T: H = T there, with
        // first-order slope -T^2/pi in |omega|.
        return T * (1.0 - delta * T / kPi);
    }
    return (kPi / T) * std::cos(omega * T) / (pole * pole - omega * omega);
}

std::vector<double> power_spectrum(const SpectrumSamples& spec) {
    std::vector<double> p(spec.values.size());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = spec.values[i] * spec.values[i];
    return p;
}

double band_energy(const SpectrumSamples& spec, double W) {
    double snap = 0.0;
    return band_energy(spec, W, snap);
}

double band_energy(const SpectrumSamples& spec, double W, double& snap_distance) {
    if (!(W >= 0.0) || !std::isfinite(W))
        throw std::invalid_argument("wavebench::band_energy: W must be finite and >= 0");
    const double domega = uniform_step(spec.omega_grid, "wavebench::band_energy");
    if (W > spec.omega_grid.back() + 0.5 * domega)
        throw std::invalid_argument("wavebench::band_energy: W exceeds the spectrum grid");

    // Snap W to the nearest grid point and integrate |H|^2 over [-W, W].
    // The grid covers [-w_max, w_max] symmetrically.
    const double lo = spec.omega_grid.front();
    auto idx = static_cast<std::ptrdiff_t>(std::llround((W - lo) / domega));
    idx = std::clamp<std::ptrdiff_t>(idx, 0, static_cast<std::ptrdiff_t>(spec.omega_grid.size()) - 1);
    snap_distance = std::fabs(spec.omega_grid[static_cast<std::size_t>(idx)] - W);

    auto lo_idx = static_cast<std::ptrdiff_t>(std::llround((-W - lo) / domega));
    lo_idx = std::clamp<std::ptrdiff_t>(lo_idx, 0, static_cast<std::ptrdiff_t>(spec.omega_grid.size()) - 1);
    if (lo_idx > idx) std::swap(lo_idx, idx);
    if (lo_idx == idx) return 0.0;  // zero-width band

    double acc = 0.0;
    for (std::ptrdiff_t i = lo_idx; i <= idx; ++i) {
        const double v = spec.values[static_cast<std::size_t>(i)];
        const double weight = (i == lo_idx || i == idx) ? 0.5 : 1.0;
        acc += weight * v * v;
    }
    return acc * domega;
}

LeakageCurve leakage_curve(const psf::PulseShape& shape,
                           const std::vector<double>& W_grid, double w_max,
                           double dt, double domega) {
    if (!(w_max > 0.0) || !std::isfinite(w_max))
        throw std::invalid_argument("wavebench::leakage_curve: w_max must be finite and > 0");
    if (!(domega > 0.0) || domega >= w_max)
        throw std::invalid_argument("wavebench::leakage_curve: domega must be in (0, w_max)");
    for (double W : W_grid) {
        if (!(W >= 0.0) || W > w_max)
            throw std::invalid_argument("wavebench::leakage_curve: every W must satisfy 0 <= W <= w_max");
    }

    // One symmetric spectrum over [-w_max, w_max]; steps rounds the grid
    // so the band edges land on sample points.
    const auto half_steps = static_cast<std::size_t>(std::llround(w_max / domega));
    if (half_steps < 8)
        throw PrecisionError("wavebench::leakage_curve: domega too coarse for w_max");
    const double domega_used = w_max / static_cast<double>(half_steps);
    std::vector<double> omega_grid(2 * half_steps + 1);
    for (std::size_t i = 0; i < omega_grid.size(); ++i) {
        omega_grid[i] = -w_max + domega_used * static_cast<double>(i);
    }
    const SpectrumSamples spec = transform(shape, std::move(omega_grid), dt);

    LeakageCurve curve;
    curve.w_max = w_max;
    curve.dt_used = spec.dt_used;
    curve.domega_used = domega_used;
    curve.total_energy = band_energy(spec, w_max);
    if (!(curve.total_energy > 0.0))
        throw PrecisionError("wavebench::leakage_curve: total band energy is not positive");

    curve.bandwidth_grid = W_grid;
    curve.bandwidth_grid.push_back(w_max);
    curve.leakage.reserve(curve.bandwidth_grid.size());
    for (double W : curve.bandwidth_grid) {
        double snap = 0.0;
        const double ew = band_energy(spec, W, snap);
        curve.max_snap_distance = std::max(curve.max_snap_distance, snap);
        curve.leakage.push_back(std::max(0.0, 1.0 - ew / curve.total_energy));
    }
    return curve;
}

}  // namespace wavebench::spectral
