#ifndef WAVEBENCH_SPECTRUM_HPP
#define WAVEBENCH_SPECTRUM_HPP

#include <stdexcept>
#include <vector>

#include "wavebench/psf.hpp"

namespace wavebench::spectral {

/// Raised when a quadrature step is too coarse for the requested result.
struct PrecisionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Numerically transformed spectrum H(omega) on a frequency grid.
/// h(t) is real and even, so the exact transform is real; the largest
/// |imaginary part| seen during quadrature is kept as a residual that
/// doubles as an evenness check.
struct SpectrumSamples {
    std::vector<double> omega_grid;  // strictly increasing, rad/s
    std::vector<double> values;      // H(omega), real part
    double max_imag_residual = 0.0;
    double dt_used = 0.0;            // actual time step of the quadrature
};

/// H(omega) = trapezoidal approximation of the integral of
/// h(t) e^{-j omega t} over [-T, T] with a uniform step of ~dt.
/// The step is rounded so the grid lands exactly on +/-T; the value used
/// is recorded in dt_used. Requires dt <= T/64 (PrecisionError otherwise)
/// and a finite, strictly increasing omega grid.
SpectrumSamples transform(const psf::PulseShape& shape,
                          std::vector<double> omega_grid, double dt);

/// Closed-form half-sine spectrum (pi/T) cos(omega T) / (pi^2/4T^2 - omega^2),
/// with a two-term Taylor fallback inside |omega -+ pi/2T| < 1e-6/T where the
/// expression is a removable singularity of value T.
double half_sine_spectrum_closed_form(double omega, double T);

/// Elementwise |H(omega)|^2.
std::vector<double> power_spectrum(const SpectrumSamples& spec);

/// Trapezoidal integral of |H|^2 over [-W, W], with W snapped to the
/// nearest grid point. Requires a uniform grid and W <= max(omega_grid).
/// The overload with snap_distance reports |W - snapped W|.
double band_energy(const SpectrumSamples& spec, double W);
double band_energy(const SpectrumSamples& spec, double W, double& snap_distance);

struct LeakageCurve {
    std::vector<double> bandwidth_grid;  // W values, rad/s; last entry is w_max
    std::vector<double> leakage;         // R_o(W) in [0, 1]
    double w_max = 0.0;
    double total_energy = 0.0;
    double max_snap_distance = 0.0;
    double dt_used = 0.0;
    double domega_used = 0.0;
};

/// Out-of-band leakage R_o(W) = 1 - E(W)/E(w_max) from one spectrum
/// computed on a uniform omega grid of step ~domega over [-w_max, w_max].
/// Every W must satisfy W <= w_max; w_max is appended as the final grid
/// point so the curve always ends at R_o = 0.
LeakageCurve leakage_curve(const psf::PulseShape& shape,
                           const std::vector<double>& W_grid, double w_max,
                           double dt, double domega);

// Module defaults. Parseval closes within 1% and the grid-refinement
// check stays inside its tolerances at these settings.
inline double default_dt(double T) { return T / 4096.0; }
inline double default_domega(double T) { return 2.0 * 3.14159265358979323846 * 0.005 / T; }
inline double default_wmax(double T) { return 200.0 * 3.14159265358979323846 / T; }

}  // namespace wavebench::spectral

#endif
