#include "wavebench/psf.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace wavebench::psf {

namespace {

constexpr double kPi = std::numbers::pi;

void check_T(double T) {
    if (!std::isfinite(T) || T <= 0.0)
        throw std::invalid_argument("wavebench::PulseShape: half_support_T must be finite and > 0");
}

}  // namespace

PulseShape PulseShape::half_sine(double T) {
    check_T(T);
    return PulseShape{PulseKind::HalfSine, 1.0, T};
}

PulseShape PulseShape::sfsk(double T) {
    check_T(T);
    return PulseShape{PulseKind::Sfsk, 1.0, T};
}

PulseShape PulseShape::alpha_half_sine(double alpha, double T) {
    check_T(T);
    if (!std::isfinite(alpha) || alpha <= 0.0)
        throw std::invalid_argument("wavebench::PulseShape: alpha must be finite and > 0");
    // alpha in (0, 1] is allowed; classify_smoothness flags those pulses
    return PulseShape{PulseKind::AlphaHalfSine, alpha, T};
}

std::string PulseShape::label() const {
    switch (kind) {
        case PulseKind::HalfSine: return "half-sine";
        case PulseKind::Sfsk: return "sfsk";
        case PulseKind::AlphaHalfSine: return "alpha-half-sine";
    }
    return "?";
}

double beta_of_alpha(double alpha) {
    if (!std::isfinite(alpha) || alpha <= 0.0)
        throw std::invalid_argument("wavebench::beta_of_alpha: alpha must be finite and > 0");
    return 0.5 * kPi * std::pow(4.0 / kPi, 1.0 / alpha);
}

double eval_phase(const PulseShape& shape, double t) {
    const double T = shape.half_support_T;
    if (!(std::fabs(t) < T))
        throw std::invalid_argument("wavebench::eval_phase: |t| must be < half_support_T");
    switch (shape.kind) {
        case PulseKind::HalfSine:
            return 0.5 * kPi * t / T;
        case PulseKind::Sfsk:
            return 0.5 * kPi * t / T - 0.25 * std::sin(2.0 * kPi * t / T);
        case PulseKind::AlphaHalfSine: {
            const double beta = beta_of_alpha(shape.alpha);
            const double u = std::fabs(t);
            if (u <= 0.5 * T) return std::pow(kPi * u / (beta * T), shape.alpha);
            return 0.5 * kPi - std::pow(kPi * (T - u) / (beta * T), shape.alpha);
        }
    }
    throw std::invalid_argument("wavebench::eval_phase: unknown pulse kind");
}

double eval_pulse(const PulseShape& shape, double t) {
    // h(+/-T) is defined as exactly 0, the two-sided limit of cos g
    if (std::fabs(t) >= shape.half_support_T) return 0.0;
    return std::cos(eval_phase(shape, t));
}

std::vector<double> sample_pulse(const PulseShape& shape, int interp_N) {
    if (interp_N < 2)
        throw std::invalid_argument("wavebench::sample_pulse: interp_N must be >= 2");
    const double T = shape.half_support_T;
    const double step = 2.0 * T / interp_N;
    std::vector<double> taps(static_cast<std::size_t>(interp_N));
    for (int m = 0; m < interp_N; ++m) {
        taps[static_cast<std::size_t>(m)] = eval_pulse(shape, -T + step * m);
    }
    return taps;
}

}  // namespace wavebench::psf
