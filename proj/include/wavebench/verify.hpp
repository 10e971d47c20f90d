#ifndef WAVEBENCH_VERIFY_HPP
#define WAVEBENCH_VERIFY_HPP

#include <functional>
#include <optional>
#include <string>

#include "wavebench/psf.hpp"

namespace wavebench::psf {

enum class Parity { Even, Odd, Unknown };

/// A phase function g(t) on (-T, T) with a declared symmetry. The
/// constant-envelope verifier relies on the parity to extend g to
/// negative arguments, and cross-checks the declaration numerically
/// before trusting it.
struct PhaseFunction {
    std::function<double(double)> evaluator;
    Parity parity = Parity::Unknown;
    double half_support_T = 1.0;
};

/// Phase function of a built-in shape (half-sine and SFSK are odd,
/// alpha-half-sine is even).
PhaseFunction make_phase(const PulseShape& shape);

/// Loads a tabulated phase function from a two-column CSV (t, g).
/// Rows must be strictly increasing in t; values are linearly
/// interpolated between rows and the half-support T is inferred as
/// max |t| over the table. Lines starting with '#' and a non-numeric
/// header row are skipped.
PhaseFunction load_phase_csv(const std::string& path, Parity declared);

inline constexpr double kCeToleranceDefault = 1e-9;
inline constexpr double kSmoothToleranceDefault = 1e-6;

struct CeReport {
    double max_deviation = 0.0;      // max |cos^2 g(t) + cos^2 g(t-T) - 1| over the grid
    std::optional<int> detected_k;   // k when g(t)+g(T-t) is grid-constant at (2k+1)pi/2
    bool endpoint_ok = false;        // |cos g(T-)| small, probed at t = T(1 - 1e-8)
    bool passed = false;             // max_deviation <= ce_tolerance
    std::string note;                // non-empty when the check was blocked (parity evidence)
};

/// Checks the constant-envelope identity h^2(t) + h^2(t-T) = 1 on a
/// uniform grid of (0, T) and, independently, whether the phase sum
/// condition g(t) + g(T-t) = (2k+1)pi/2 holds for some integer k.
/// The identity check decides `passed`; the k detection is informative.
/// Requires grid_points >= 16. A declared parity that the grid
/// contradicts throws std::invalid_argument; parity Unknown that
/// matches neither symmetry yields passed=false with a note.
CeReport verify_ce(const PhaseFunction& g, int grid_points,
                   double ce_tolerance = kCeToleranceDefault);

enum class SmoothnessClass { Smooth, CornerAtEdge, Divergent };

struct SmoothnessVerdict {
    SmoothnessClass cls = SmoothnessClass::Smooth;
    double edge_derivative_limit = 0.0;  // +infinity when Divergent
};

/// Estimates lim_{t->T-} g'(t) by central differences at offsets
/// T*10^{-3-j}, j = 0..5, and classifies the pulse edge: Smooth when the
/// limit is below smooth_tolerance, Divergent when successive estimates
/// keep growing by a factor >= 2, CornerAtEdge otherwise.
SmoothnessVerdict classify_smoothness(const PulseShape& shape,
                                      double smooth_tolerance = kSmoothToleranceDefault);

const char* smoothness_name(SmoothnessClass cls);

}  // namespace wavebench::psf

#endif
