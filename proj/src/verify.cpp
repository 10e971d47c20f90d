#include "wavebench/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <memory>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace wavebench::psf {

namespace {

constexpr double kPi = std::numbers::pi;

struct Table {
    std::vector<double> t;
    std::vector<double> g;

    double interp(double x) const {
        // callers guarantee t.front() <= x <= t.back()
        auto it = std::upper_bound(t.begin(), t.end(), x);
        if (it == t.begin()) return g.front();
        if (it == t.end()) return g.back();
        const std::size_t hi = static_cast<std::size_t>(it - t.begin());
        const std::size_t lo = hi - 1;
        const double w = (x - t[lo]) / (t[hi] - t[lo]);
        return g[lo] + w * (g[hi] - g[lo]);
    }

    bool covers(double x) const { return x >= t.front() && x <= t.back(); }
};

bool parse_row(const std::string& line, double& t, double& g) {
    std::string s = line;
    std::replace(s.begin(), s.end(), ',', ' ');
    std::istringstream in(s);
    if (!(in >> t >> g)) return false;
    return std::isfinite(t) && std::isfinite(g);
}

/// Max |g(t) - parity-reflected g(-t)| over a probe grid, or nullopt when
/// the evaluator cannot be reached at negative arguments.
std::optional<double> parity_mismatch(const PhaseFunction& g, Parity assumed, int probes) {
    double worst = 0.0;
    const double T = g.half_support_T;
    for (int j = 0; j < probes; ++j) {
        const double t = T * (j + 0.5) / probes;
        double pos, neg;
        try {
            pos = g.evaluator(t);
            neg = g.evaluator(-t);
        } catch (const std::exception&) {
            return std::nullopt;
        }
        const double mirror = (assumed == Parity::Even) ? neg : -neg;
        worst = std::max(worst, std::fabs(pos - mirror));
    }
    return worst;
}

}  // namespace

PhaseFunction make_phase(const PulseShape& shape) {
    PhaseFunction g;
    g.evaluator = [shape](double t) { return eval_phase(shape, t); };
    g.parity = (shape.kind == PulseKind::AlphaHalfSine) ? Parity::Even : Parity::Odd;
    g.half_support_T = shape.half_support_T;
    return g;
}

PhaseFunction load_phase_csv(const std::string& path, Parity declared) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("wavebench::load_phase_csv: cannot open '" + path + "'");

    auto table = std::make_shared<Table>();
    std::string line;
    bool first_data_seen = false;
    while (std::getline(in, line)) {
        const auto start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos) continue;
        if (line[start] == '#') continue;
        double t = 0.0, gv = 0.0;
        if (!parse_row(line, t, gv)) {
            if (!first_data_seen) continue;  // header row
            throw std::invalid_argument("wavebench::load_phase_csv: malformed row '" + line + "'");
        }
        first_data_seen = true;
        if (!table->t.empty() && t <= table->t.back())
            throw std::invalid_argument("wavebench::load_phase_csv: t column must be strictly increasing");
        table->t.push_back(t);
        table->g.push_back(gv);
    }
    if (table->t.size() < 2)
        throw std::invalid_argument("wavebench::load_phase_csv: need at least two data rows");

    const double T = std::max(std::fabs(table->t.front()), std::fabs(table->t.back()));
    if (T <= 0.0)
        throw std::invalid_argument("wavebench::load_phase_csv: inferred half-support is zero");

    const bool two_sided = table->t.front() <= -T * (1.0 - 1e-12) &&
                           table->t.back() >= T * (1.0 - 1e-12);
    if (declared == Parity::Unknown && !two_sided)
        throw std::invalid_argument(
            "wavebench::load_phase_csv: parity must be declared when the table does not cover (-T, T)");

    PhaseFunction g;
    g.parity = declared;
    g.half_support_T = T;
    g.evaluator = [table, declared](double x) {
        if (table->covers(x)) return table->interp(x);
        if (declared != Parity::Unknown && table->covers(-x)) {
            const double mirrored = table->interp(-x);
            return declared == Parity::Even ? mirrored : -mirrored;
        }
        throw std::invalid_argument("wavebench::PhaseFunction: argument outside tabulated range");
    };
    return g;
}

CeReport verify_ce(const PhaseFunction& g, int grid_points, double ce_tolerance) {
    if (grid_points < 16)
        throw std::invalid_argument("wavebench::verify_ce: grid_points must be >= 16");
    if (!(ce_tolerance > 0.0))
        throw std::invalid_argument("wavebench::verify_ce: ce_tolerance must be > 0");
    if (!g.evaluator)
        throw std::invalid_argument("wavebench::verify_ce: empty evaluator");

    CeReport report;
    const double T = g.half_support_T;
    const int probes = std::min(grid_points, 64);

    // Theorem 1 assumes g has a definite parity; check the declaration
    // against the function before relying on it.
    bool parity_blocked = false;
    if (g.parity == Parity::Unknown) {
        const auto even_dev = parity_mismatch(g, Parity::Even, probes);
        const auto odd_dev = parity_mismatch(g, Parity::Odd, probes);
        if (!even_dev || !odd_dev) {
            parity_blocked = true;
            report.note = "parity unknown and g is not evaluable at negative arguments";
        } else {
            const double scale = 1e-6;
            if (*even_dev > scale && *odd_dev > scale) {
                parity_blocked = true;
                report.note = "g is neither even nor odd on the probe grid";
            }
        }
    } else {
        const auto dev = parity_mismatch(g, g.parity, probes);
        if (dev && *dev > 1e-6)
            throw std::invalid_argument(
                "wavebench::verify_ce: declared parity contradicted by the function values");
    }

    // Envelope identity and phase-sum scan over a strictly interior grid.
    // cos^2 is parity-blind, so both terms reduce to positive arguments.
    double max_dev = 0.0;
    double s_min = std::numeric_limits<double>::infinity();
    double s_max = -std::numeric_limits<double>::infinity();
    double s_sum = 0.0;
    for (int i = 0; i < grid_points; ++i) {
        const double t = T * (i + 0.5) / grid_points;
        const double ga = g.evaluator(t);
        const double gb = g.evaluator(T - t);
        const double ca = std::cos(ga);
        const double cb = std::cos(gb);
        max_dev = std::max(max_dev, std::fabs(ca * ca + cb * cb - 1.0));
        const double s = (ga + gb) * (2.0 / kPi);
        s_min = std::min(s_min, s);
        s_max = std::max(s_max, s);
        s_sum += s;
    }
    report.max_deviation = max_dev;

    const double s_mean = s_sum / grid_points;
    const double s_spread = std::max(s_max - s_mean, s_mean - s_min);
    const double nearest_odd = 2.0 * std::round(0.5 * (s_mean - 1.0)) + 1.0;
    if (s_spread <= ce_tolerance && std::fabs(s_mean - nearest_odd) <= ce_tolerance)
        report.detected_k = static_cast<int>(std::llround(0.5 * (nearest_odd - 1.0)));

    // |cos g| just inside t = T. The probe sits 1e-8*T from the edge, so
    // even an exact endpoint zero leaves |cos g| ~ |g'(T)|*T*1e-8; the
    // floor keeps the canonical pulses from failing their own condition.
    const double endpoint_tol = std::max(ce_tolerance, 1e-6);
    report.endpoint_ok = std::fabs(std::cos(g.evaluator(T * (1.0 - 1e-8)))) <= endpoint_tol;

    report.passed = !parity_blocked && max_dev <= ce_tolerance;
    return report;
}

SmoothnessVerdict classify_smoothness(const PulseShape& shape, double smooth_tolerance) {
    if (!(smooth_tolerance > 0.0))
        throw std::invalid_argument("wavebench::classify_smoothness: smooth_tolerance must be > 0");

    const double T = shape.half_support_T;
    constexpr int kSteps = 6;
    double est[kSteps];
    for (int j = 0; j < kSteps; ++j) {
        const double eps = T * std::pow(10.0, -3.0 - j);
        const double delta = 0.5 * eps;
        const double lo = eval_phase(shape, T - eps - delta);
        const double hi = eval_phase(shape, T - eps + delta);
        est[j] = (hi - lo) / (2.0 * delta);
    }

    SmoothnessVerdict v;
    const double last = est[kSteps - 1];
    if (std::fabs(last) <= smooth_tolerance) {
        v.cls = SmoothnessClass::Smooth;
        v.edge_derivative_limit = last;
        return v;
    }
    const bool growing = std::fabs(est[kSteps - 1]) >= 2.0 * std::fabs(est[kSteps - 2]) &&
                         std::fabs(est[kSteps - 2]) >= 2.0 * std::fabs(est[kSteps - 3]);
    if (growing) {
        v.cls = SmoothnessClass::Divergent;
        v.edge_derivative_limit = std::numeric_limits<double>::infinity();
        return v;
    }
    v.cls = SmoothnessClass::CornerAtEdge;
    v.edge_derivative_limit = last;
    return v;
}

const char* smoothness_name(SmoothnessClass cls) {
    switch (cls) {
        case SmoothnessClass::Smooth: return "smooth";
        case SmoothnessClass::CornerAtEdge: return "corner-at-edge";
        case SmoothnessClass::Divergent: return "divergent";
    }
    return "?";
}

}  // namespace wavebench::psf
