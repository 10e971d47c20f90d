// wavebench: batch front end for the pulse-shaping toolkit.
//
// Subcommands: verify, spectrum, leakage, papr-sweep. Every run computes
// first and writes once at the end (stdout or --out), so a failed run
// never leaves partial output behind. Exit status: 0 success, 1
// verification failure, 2 usage/config error.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "wavebench/oqpsk.hpp"
#include "wavebench/psf.hpp"
#include "wavebench/spectrum.hpp"
#include "wavebench/verify.hpp"

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDbFloor = -160.0;

using wavebench::psf::PulseKind;
using wavebench::psf::PulseShape;

// ---------------------------------------------------------------- formatting

/// Fixed 6-decimal rendering used for all curve data, with -0.000000
/// canonicalized so reruns are byte-identical across libm variants.
std::string fix6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    std::string s(buf);
    if (s == "-0.000000") s = "0.000000";
    return s;
}

/// Scientific rendering for diagnostics that span many decades
/// (deviations, derivative limits).
std::string sci6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6e", v);
    return std::string(buf);
}

std::string js_str(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') { out.push_back('\\'); out.push_back(c); }
        else if (c == '\n') out += "\\n";
        else out.push_back(c);
    }
    out.push_back('"');
    return out;
}

double clip_db(double power) {
    if (!(power > 0.0)) return kDbFloor;
    return std::max(kDbFloor, 10.0 * std::log10(power));
}

/// Alpha column: rendered only for the parameterized family.
std::string alpha_cell_csv(const PulseShape& s) {
    return s.kind == PulseKind::AlphaHalfSine ? fix6(s.alpha) : std::string();
}

std::string alpha_cell_json(const PulseShape& s) {
    return s.kind == PulseKind::AlphaHalfSine ? fix6(s.alpha) : std::string("null");
}

void write_output(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream f(out_path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open output file '" + out_path + "'");
    f << content;
    if (!f) throw std::runtime_error("write failed for '" + out_path + "'");
}

// ------------------------------------------------------------- shape parsing

/// Expands --kind/--alpha into the shape list. An empty kind selects the
/// composite default: half-sine, SFSK, then the alpha family.
std::vector<PulseShape> resolve_shapes(const std::string& kind,
                                       std::vector<double> alphas,
                                       const std::vector<double>& default_alphas) {
    if (alphas.empty()) alphas = default_alphas;
    std::vector<PulseShape> shapes;
    if (kind.empty()) {
        shapes.push_back(PulseShape::half_sine());
        shapes.push_back(PulseShape::sfsk());
        for (double a : alphas) shapes.push_back(PulseShape::alpha_half_sine(a));
    } else if (kind == "half-sine") {
        shapes.push_back(PulseShape::half_sine());
    } else if (kind == "sfsk") {
        shapes.push_back(PulseShape::sfsk());
    } else if (kind == "alpha-half-sine") {
        for (double a : alphas) shapes.push_back(PulseShape::alpha_half_sine(a));
    } else {
        throw std::invalid_argument("unknown --kind '" + kind + "'");
    }
    return shapes;
}

std::vector<double> linear_grid(double upper, double step, const char* who) {
    if (!(upper > 0.0) || !(step > 0.0) || step > upper)
        throw std::invalid_argument(std::string(who) + ": grid bounds must satisfy 0 < step <= max");
    const auto count = static_cast<std::size_t>(std::llround(upper / step));
    if (count > 2'000'000)
        throw std::invalid_argument(std::string(who) + ": grid too fine (over 2e6 points)");
    std::vector<double> g(count + 1);
    for (std::size_t i = 0; i <= count; ++i) g[i] = step * static_cast<double>(i);
    return g;
}

// ------------------------------------------------------------------- verify

struct VerifyRecord {
    std::string shape_label;
    std::string alpha_csv;   // empty when not applicable
    std::string alpha_json;  // "null" when not applicable
    wavebench::psf::CeReport ce;
    std::optional<wavebench::psf::SmoothnessVerdict> smooth;
};

std::string render_verify_csv(const std::vector<VerifyRecord>& recs) {
    std::ostringstream out;
    out << "shape,alpha,passed,max_deviation,detected_k,endpoint_ok,smoothness,"
           "edge_derivative_limit,note\n";
    for (const auto& r : recs) {
        out << r.shape_label << ',' << r.alpha_csv << ','
            << (r.ce.passed ? "true" : "false") << ',' << sci6(r.ce.max_deviation) << ',';
        if (r.ce.detected_k) out << *r.ce.detected_k;
        out << ',' << (r.ce.endpoint_ok ? "true" : "false") << ',';
        if (r.smooth) out << wavebench::psf::smoothness_name(r.smooth->cls);
        out << ',';
        if (r.smooth) out << sci6(r.smooth->edge_derivative_limit);
        out << ',' << r.ce.note << '\n';
    }
    return out.str();
}

std::string render_verify_json(const std::vector<VerifyRecord>& recs) {
    std::ostringstream out;
    out << "{\n  \"command\": \"verify\",\n  \"shapes\": [\n";
    for (std::size_t i = 0; i < recs.size(); ++i) {
        const auto& r = recs[i];
        out << "    {\"shape\": " << js_str(r.shape_label) << ", \"alpha\": " << r.alpha_json
            << ", \"passed\": " << (r.ce.passed ? "true" : "false")
            << ", \"max_deviation\": " << sci6(r.ce.max_deviation) << ", \"detected_k\": ";
        if (r.ce.detected_k) out << *r.ce.detected_k;
        else out << "null";
        out << ", \"endpoint_ok\": " << (r.ce.endpoint_ok ? "true" : "false")
            << ", \"smoothness\": ";
        if (r.smooth) out << js_str(wavebench::psf::smoothness_name(r.smooth->cls));
        else out << "null";
        out << ", \"edge_derivative_limit\": ";
        if (r.smooth) {
            if (std::isinf(r.smooth->edge_derivative_limit)) out << "\"inf\"";
            else out << sci6(r.smooth->edge_derivative_limit);
        } else {
            out << "null";
        }
        out << ", \"note\": " << js_str(r.ce.note) << "}";
        out << (i + 1 < recs.size() ? ",\n" : "\n");
    }
    out << "  ]\n}\n";
    return out.str();
}

int run_verify(const std::string& kind, const std::vector<double>& alphas,
               const std::string& custom_g, const std::string& parity_name,
               int grid_points, const std::string& format, const std::string& out_path) {
    std::vector<VerifyRecord> recs;
    if (!custom_g.empty()) {
        wavebench::psf::Parity parity = wavebench::psf::Parity::Unknown;
        if (parity_name == "even") parity = wavebench::psf::Parity::Even;
        else if (parity_name == "odd") parity = wavebench::psf::Parity::Odd;
        else if (!parity_name.empty() && parity_name != "unknown")
            throw std::invalid_argument("unknown --parity '" + parity_name + "'");
        const auto g = wavebench::psf::load_phase_csv(custom_g, parity);
        VerifyRecord r;
        r.shape_label = "custom";
        r.alpha_json = "null";
        r.ce = wavebench::psf::verify_ce(g, grid_points);
        recs.push_back(std::move(r));
    } else {
        for (const auto& shape : resolve_shapes(kind, alphas, {1.0, 1.5, 2.0, 3.0})) {
            VerifyRecord r;
            r.shape_label = shape.label();
            r.alpha_csv = alpha_cell_csv(shape);
            r.alpha_json = alpha_cell_json(shape);
            r.ce = wavebench::psf::verify_ce(wavebench::psf::make_phase(shape), grid_points);
            r.smooth = wavebench::psf::classify_smoothness(shape);
            recs.push_back(std::move(r));
        }
    }

    const std::string rendered =
        (format == "json") ? render_verify_json(recs) : render_verify_csv(recs);
    write_output(out_path, rendered);
    const bool all_passed =
        std::all_of(recs.begin(), recs.end(), [](const VerifyRecord& r) { return r.ce.passed; });
    return all_passed ? 0 : 1;
}

// ------------------------------------------------------------------ spectrum

int run_spectrum(const std::string& kind, const std::vector<double>& alphas,
                 double dt, double fmax, double df, const std::string& format,
                 const std::string& out_path) {
    const auto shapes = resolve_shapes(kind, alphas, {1.0, 1.5, 2.0, 3.0});
    const std::vector<double> f_grid = linear_grid(fmax, df, "spectrum");
    std::vector<double> omega(f_grid.size());
    for (std::size_t i = 0; i < f_grid.size(); ++i) omega[i] = 2.0 * kPi * f_grid[i];

    struct Curve {
        const PulseShape* shape;
        std::vector<double> p_db;
    };
    std::vector<Curve> curves;
    double dt_used = 0.0;
    for (const auto& shape : shapes) {
        const auto spec = wavebench::spectral::transform(shape, omega, dt);
        dt_used = spec.dt_used;
        Curve c{&shape, {}};
        c.p_db.reserve(f_grid.size());
        for (double h : spec.values) c.p_db.push_back(clip_db(h * h));
        curves.push_back(std::move(c));
    }

    std::ostringstream out;
    if (format == "json") {
        out << "{\n  \"command\": \"spectrum\",\n  \"meta\": {\"dt\": " << fix6(dt_used)
            << ", \"f_max\": " << fix6(fmax) << ", \"df\": " << fix6(df)
            << ", \"db_floor\": " << fix6(kDbFloor) << "},\n  \"curves\": [\n";
        for (std::size_t ci = 0; ci < curves.size(); ++ci) {
            const auto& c = curves[ci];
            out << "    {\"shape\": " << js_str(c.shape->label())
                << ", \"alpha\": " << alpha_cell_json(*c.shape) << ", \"points\": [";
            for (std::size_t i = 0; i < f_grid.size(); ++i) {
                out << (i ? ", " : "") << "{\"f_normalized\": " << fix6(f_grid[i])
                    << ", \"P_db\": " << fix6(c.p_db[i]) << "}";
            }
            out << "]}" << (ci + 1 < curves.size() ? ",\n" : "\n");
        }
        out << "  ]\n}\n";
    } else {
        out << "shape,alpha,f_normalized,P_db\n";
        for (const auto& c : curves) {
            const std::string label = c.shape->label();
            const std::string alpha = alpha_cell_csv(*c.shape);
            for (std::size_t i = 0; i < f_grid.size(); ++i) {
                out << label << ',' << alpha << ',' << fix6(f_grid[i]) << ','
                    << fix6(c.p_db[i]) << '\n';
            }
        }
    }
    write_output(out_path, out.str());
    return 0;
}

// ------------------------------------------------------------------- leakage

int run_leakage(const std::string& kind, const std::vector<double>& alphas,
                double dt, double dn, double wmax_norm, double wn_max, double dw,
                const std::string& format, const std::string& out_path) {
    const auto shapes = resolve_shapes(kind, alphas, {1.0, 1.5, 2.0, 3.0});
    if (!(wn_max <= wmax_norm))
        throw std::invalid_argument("leakage: --wn-max must not exceed --wmax");
    const std::vector<double> wn_grid = linear_grid(wn_max, dw, "leakage");
    std::vector<double> W(wn_grid.size());
    for (std::size_t i = 0; i < wn_grid.size(); ++i) W[i] = 2.0 * kPi * wn_grid[i];
    const double w_max = 2.0 * kPi * wmax_norm;
    const double domega = 2.0 * kPi * dn;

    struct Curve {
        const PulseShape* shape;
        wavebench::spectral::LeakageCurve lc;
    };
    std::vector<Curve> curves;
    for (const auto& shape : shapes) {
        curves.push_back({&shape, wavebench::spectral::leakage_curve(shape, W, w_max, dt, domega)});
    }

    std::ostringstream out;
    if (format == "json") {
        const auto& first = curves.front().lc;
        out << "{\n  \"command\": \"leakage\",\n  \"meta\": {\"w_max_normalized\": "
            << fix6(wmax_norm) << ", \"dt\": " << fix6(first.dt_used)
            << ", \"domega\": " << fix6(first.domega_used) << "},\n  \"curves\": [\n";
        for (std::size_t ci = 0; ci < curves.size(); ++ci) {
            const auto& c = curves[ci];
            out << "    {\"shape\": " << js_str(c.shape->label())
                << ", \"alpha\": " << alpha_cell_json(*c.shape)
                << ", \"max_snap_distance\": " << sci6(c.lc.max_snap_distance)
                << ", \"points\": [";
            for (std::size_t i = 0; i < c.lc.bandwidth_grid.size(); ++i) {
                out << (i ? ", " : "")
                    << "{\"W_normalized\": " << fix6(c.lc.bandwidth_grid[i] / (2.0 * kPi))
                    << ", \"R_o\": " << fix6(c.lc.leakage[i]) << "}";
            }
            out << "]}" << (ci + 1 < curves.size() ? ",\n" : "\n");
        }
        out << "  ]\n}\n";
    } else {
        const auto& first = curves.front().lc;
        out << "# w_max_normalized=" << fix6(wmax_norm) << "\n";
        out << "# dt=" << fix6(first.dt_used) << "\n";
        out << "# domega=" << fix6(first.domega_used) << "\n";
        for (const auto& c : curves) {
            out << "# max_snap_distance[" << c.shape->label();
            if (c.shape->kind == PulseKind::AlphaHalfSine) out << " alpha=" << fix6(c.shape->alpha);
            out << "]=" << sci6(c.lc.max_snap_distance) << "\n";
        }
        out << "shape,alpha,W_normalized,R_o\n";
        for (const auto& c : curves) {
            const std::string label = c.shape->label();
            const std::string alpha = alpha_cell_csv(*c.shape);
            for (std::size_t i = 0; i < c.lc.bandwidth_grid.size(); ++i) {
                out << label << ',' << alpha << ','
                    << fix6(c.lc.bandwidth_grid[i] / (2.0 * kPi)) << ','
                    << fix6(c.lc.leakage[i]) << '\n';
            }
        }
    }
    write_output(out_path, out.str());
    return 0;
}

// ---------------------------------------------------------------- papr-sweep

int run_papr_sweep(const std::string& kind, const std::vector<double>& alphas,
                   std::vector<int> n_values, int n0, int k, std::size_t bit_count,
                   std::uint64_t seed, const std::string& bits_in,
                   const std::string& bits_out, const std::string& format,
                   const std::string& out_path) {
    const auto shapes = resolve_shapes(kind, alphas, {2.0, 3.0});
    if (n_values.empty()) n_values = {4, 6, 8, 12, 16, 24, 32};
    for (int n : n_values) {
        if (n < 4 || n % 2 != 0)
            throw std::invalid_argument(
                "papr-sweep: every --n must be even and >= 4 (the Q branch is offset by N/2 "
                "samples, which must be an integer)");
    }
    const auto lpf = wavebench::oqpsk::lpf_taps(n0, k);

    std::vector<std::uint8_t> bits;
    std::string bit_source;
    if (!bits_in.empty()) {
        bits = wavebench::oqpsk::read_bits(bits_in);
        bit_source = "file:" + bits_in;
    } else {
        bits = wavebench::oqpsk::generate_bits(seed, bit_count);
        bit_source = wavebench::oqpsk::kBitGeneratorId;
    }
    if (bits.size() < 2 || bits.size() % 2 != 0)
        throw std::invalid_argument("papr-sweep: bit count must be even and >= 2");

    const auto rows = wavebench::oqpsk::papr_sweep(shapes, n_values, lpf, bits, seed, bit_source);

    std::ostringstream out;
    if (format == "json") {
        out << "{\n  \"command\": \"papr-sweep\",\n  \"meta\": {\"n0\": " << n0
            << ", \"k\": " << k << ", \"bits\": " << bits.size() << ", \"seed\": " << seed
            << ", \"bit_source\": " << js_str(bit_source) << "},\n  \"rows\": [\n";
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const auto& r = rows[i];
            out << "    {\"shape\": " << js_str(r.shape.label())
                << ", \"alpha\": " << alpha_cell_json(r.shape) << ", \"N\": " << r.interp_N
                << ", \"papr_db\": " << fix6(r.report.papr_db) << "}"
                << (i + 1 < rows.size() ? ",\n" : "\n");
        }
        out << "  ]\n}\n";
    } else {
        out << "shape,alpha,N,N0,K,bits,seed,papr_db\n";
        for (const auto& r : rows) {
            out << r.shape.label() << ',' << alpha_cell_csv(r.shape) << ',' << r.interp_N << ','
                << n0 << ',' << k << ',' << bits.size() << ',' << seed << ','
                << fix6(r.report.papr_db) << '\n';
        }
    }
    if (!bits_out.empty()) wavebench::oqpsk::write_bits(bits_out, bits);
    write_output(out_path, out.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Constant-envelope pulse-shaping workbench: CE verification, "
                 "filter spectra, out-of-band leakage, and OQPSK PAPR sweeps"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read option defaults from a TOML-style file");

    // shared option storage
    std::string kind, format = "csv", out_path;
    std::vector<double> alphas;

    const auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--kind", kind, "Pulse family: half-sine, sfsk, or alpha-half-sine "
                                        "(default: all of them)")
            ->check(CLI::IsMember({"half-sine", "sfsk", "alpha-half-sine"}));
        cmd->add_option("--alpha", alphas, "Alpha values for the alpha-half-sine family");
        cmd->add_option("--format", format, "Output format")
            ->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--out", out_path, "Output file (default: stdout)");
    };

    // verify
    auto* cmd_verify = app.add_subcommand("verify", "Check the constant-envelope condition "
                                                    "and classify edge smoothness");
    std::string custom_g, parity = "unknown";
    int grid_points = 2048;
    add_common(cmd_verify);
    cmd_verify->add_option("--custom-g", custom_g,
                           "Two-column CSV (t,g) with a tabulated phase function");
    cmd_verify->add_option("--parity", parity, "Declared parity of the tabulated phase")
        ->check(CLI::IsMember({"even", "odd", "unknown"}));
    cmd_verify->add_option("--grid-points", grid_points, "Grid resolution of the CE check")
        ->check(CLI::Range(16, 1 << 22));

    // spectrum
    auto* cmd_spectrum = app.add_subcommand("spectrum", "Power spectrum curves in dB over "
                                                        "normalized frequency fT");
    double dt = 1.0 / 4096.0, fmax = 10.0, df = 0.01;
    add_common(cmd_spectrum);
    cmd_spectrum->add_option("--dt", dt, "Quadrature time step (units of T)")
        ->check(CLI::PositiveNumber);
    cmd_spectrum->add_option("--fmax", fmax, "Largest normalized frequency fT")
        ->check(CLI::PositiveNumber);
    cmd_spectrum->add_option("--df", df, "Normalized frequency step")
        ->check(CLI::PositiveNumber);

    // leakage
    auto* cmd_leakage = app.add_subcommand("leakage", "Out-of-band leakage ratio R_o over "
                                                      "normalized bandwidth");
    double l_dt = 1.0 / 4096.0, l_dn = 0.005, l_wmax = 100.0, l_wn_max = 4.0, l_dw = 0.05;
    add_common(cmd_leakage);
    cmd_leakage->add_option("--dt", l_dt, "Quadrature time step (units of T)")
        ->check(CLI::PositiveNumber);
    cmd_leakage->add_option("--domega", l_dn, "Spectrum grid step (normalized frequency)")
        ->check(CLI::PositiveNumber);
    cmd_leakage->add_option("--wmax", l_wmax, "Total-energy truncation bandwidth "
                                              "(normalized frequency)")
        ->check(CLI::PositiveNumber);
    cmd_leakage->add_option("--wn-max", l_wn_max, "Largest reported bandwidth "
                                                  "(normalized frequency)")
        ->check(CLI::PositiveNumber);
    cmd_leakage->add_option("--dw", l_dw, "Reported bandwidth step (normalized frequency)")
        ->check(CLI::PositiveNumber);

    // papr-sweep
    auto* cmd_papr = app.add_subcommand("papr-sweep", "OQPSK PAPR versus PSF interpolation "
                                                      "multiple N");
    std::vector<int> n_values;
    int n0 = 5, lpf_k = 50;
    std::size_t bit_count = 8192;
    std::uint64_t seed = 42;
    std::string bits_in, bits_out;
    add_common(cmd_papr);
    cmd_papr->add_option("--n", n_values, "PSF interpolation multiples "
                                          "(default: 4 6 8 12 16 24 32)");
    cmd_papr->add_option("--n0", n0, "LPF interpolation multiple")->check(CLI::Range(2, 1024));
    cmd_papr->add_option("--k", lpf_k, "LPF half length (2K+1 taps)")->check(CLI::Range(1, 100000));
    cmd_papr->add_option("--bits", bit_count, "Number of pseudorandom bits")
        ->check(CLI::Range(std::size_t{2}, std::size_t{1} << 26));
    cmd_papr->add_option("--seed", seed, "Bit generator seed");
    cmd_papr->add_option("--bits-in", bits_in, "Read the bit stream from a file "
                                               "instead of generating it");
    cmd_papr->add_option("--bits-out", bits_out, "Export the bit stream used");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(cmd_verify))
            return run_verify(kind, alphas, custom_g, parity, grid_points, format, out_path);
        if (app.got_subcommand(cmd_spectrum))
            return run_spectrum(kind, alphas, dt, fmax, df, format, out_path);
        if (app.got_subcommand(cmd_leakage))
            return run_leakage(kind, alphas, l_dt, l_dn, l_wmax, l_wn_max, l_dw, format, out_path);
        if (app.got_subcommand(cmd_papr))
            return run_papr_sweep(kind, alphas, n_values, n0, lpf_k, bit_count, seed, bits_in,
                                  bits_out, format, out_path);
    } catch (const std::exception& e) {
        std::cerr << "wavebench: " << e.what() << '\n';
        return 2;
    }
    std::cerr << "wavebench: no subcommand selected\n";
    return 2;
}
