#ifndef WAVEBENCH_PSF_HPP
#define WAVEBENCH_PSF_HPP

#include <string>
#include <vector>

namespace wavebench::psf {

enum class PulseKind { HalfSine, Sfsk, AlphaHalfSine };

/// Descriptor of one pulse shaping filter. The pulse is supported on the
/// open interval (-T, T) and evaluates to cos(g(t)) there, 0 outside.
struct PulseShape {
    PulseKind kind = PulseKind::HalfSine;
    double alpha = 1.0;           // shape exponent, only read for AlphaHalfSine
    double half_support_T = 1.0;  // T > 0, seconds

    static PulseShape half_sine(double T = 1.0);
    static PulseShape sfsk(double T = 1.0);
    static PulseShape alpha_half_sine(double alpha, double T = 1.0);

    /// Kind as the CLI/CSV spelling: "half-sine", "sfsk", "alpha-half-sine".
    std::string label() const;
};

/// Continuity constant of the alpha-half-sine phase: (pi/2) * (4/pi)^(1/alpha).
/// Throws std::invalid_argument unless alpha is finite and positive.
double beta_of_alpha(double alpha);

/// Phase g(t) of the pulse in its uniform form h(t) = cos g(t).
/// Defined for |t| < T only; throws std::invalid_argument outside.
double eval_phase(const PulseShape& shape, double t);

/// Pulse value h(t): cos(g(t)) for |t| < T, exactly 0 for |t| >= T.
double eval_pulse(const PulseShape& shape, double t);

/// N uniformly spaced taps h(t_m), t_m = -T + 2mT/N for m = 0..N-1.
/// Requires interp_N >= 2.
std::vector<double> sample_pulse(const PulseShape& shape, int interp_N);

}  // namespace wavebench::psf

#endif
