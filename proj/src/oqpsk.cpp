#include "wavebench/oqpsk.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <stdexcept>

#include "wavebench/kernels.hpp"

namespace wavebench::oqpsk {

namespace {

constexpr double kPi = std::numbers::pi;

void check_lpf(const LpfParams& lpf, const char* who) {
    if (lpf.interp_N0 < 2 || lpf.half_length_K < 1 ||
        lpf.taps.size() != static_cast<std::size_t>(2 * lpf.half_length_K + 1))
        throw std::invalid_argument(std::string(who) + ": malformed LpfParams");
}

}  // namespace

LpfParams lpf_taps(int interp_N0, int half_length_K) {
    if (interp_N0 < 2)
        throw std::invalid_argument("wavebench::lpf_taps: interp_N0 must be >= 2");
    if (half_length_K < 1)
        throw std::invalid_argument("wavebench::lpf_taps: half_length_K must be >= 1");

    LpfParams lpf;
    lpf.interp_N0 = interp_N0;
    lpf.half_length_K = half_length_K;
    lpf.taps.resize(static_cast<std::size_t>(2 * half_length_K + 1));
    const double gain = kPi / interp_N0;
    for (int i = -half_length_K; i <= half_length_K; ++i) {
        const double x = i * kPi / (2.0 * interp_N0);
        const double v = (i == 0) ? gain : gain * std::sin(x) / x;
        lpf.taps[static_cast<std::size_t>(i + half_length_K)] = v;
    }
    return lpf;
}

std::vector<std::uint8_t> generate_bits(std::uint64_t seed, std::size_t count) {
    std::mt19937_64 rng(seed);
    std::vector<std::uint8_t> bits(count);
    for (std::size_t k = 0; k < count; ++k)
        bits[k] = static_cast<std::uint8_t>(rng() & 1u);
    return bits;
}

std::vector<std::uint8_t> read_bits(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("wavebench::read_bits: cannot open '" + path + "'");
    std::vector<std::uint8_t> bits;
    char c = 0;
    while (in.get(c)) {
        if (c == '0') bits.push_back(0);
        else if (c == '1') bits.push_back(1);
        else if (c == '\n' || c == '\r' || c == ' ' || c == '\t') continue;
        else
            throw std::invalid_argument("wavebench::read_bits: unexpected character in '" + path + "'");
    }
    return bits;
}

void write_bits(const std::string& path, const std::vector<std::uint8_t>& bits) {
    std::ofstream out(path);
    if (!out)
        throw std::invalid_argument("wavebench::write_bits: cannot open '" + path + "'");
    for (std::uint8_t b : bits) out.put(b ? '1' : '0');
    out.put('\n');
    if (!out)
        throw std::runtime_error("wavebench::write_bits: write failed for '" + path + "'");
}

SymbolStreams map_bits(const std::vector<std::uint8_t>& bits) {
    if (bits.size() % 2 != 0)
        throw std::invalid_argument("wavebench::map_bits: bit count must be even");
    SymbolStreams s;
    s.i_symbols.reserve(bits.size() / 2);
    s.q_symbols.reserve(bits.size() / 2);
    for (std::size_t k = 0; k < bits.size(); ++k) {
        if (bits[k] > 1)
            throw std::invalid_argument("wavebench::map_bits: bits must be 0 or 1");
        const double sym = bits[k] ? -1.0 : 1.0;
        if (k % 2 == 0) s.i_symbols.push_back(sym);
        else s.q_symbols.push_back(sym);
    }
    return s;
}

BasebandSignal modulate(const std::vector<std::uint8_t>& bits,
                        const psf::PulseShape& shape, int interp_N,
                        std::uint64_t seed_echo, const std::string& bit_source) {
    if (interp_N < 4 || interp_N % 2 != 0)
        throw std::invalid_argument(
            "wavebench::modulate: interp_N must be even and >= 4 (the Q branch is offset by "
            "T = N/2 samples, which must be an integer)");
    if (bits.empty())
        throw std::invalid_argument("wavebench::modulate: empty bit stream");

    const SymbolStreams syms = map_bits(bits);
    const std::vector<double> p = psf::sample_pulse(shape, interp_N);
    const std::size_t pairs = syms.i_symbols.size();
    const auto N = static_cast<std::size_t>(interp_N);
    const std::size_t half = N / 2;

    BasebandSignal sig;
    sig.samples.assign(pairs * N + half, {0.0, 0.0});
    sig.samples_per_2T = interp_N;
    for (std::size_t k = 0; k < pairs; ++k) {
        const double a = syms.i_symbols[k];
        const double b = syms.q_symbols[k];
        const std::size_t base_i = k * N;
        const std::size_t base_q = base_i + half;
        for (std::size_t m = 0; m < N; ++m) {
            auto& si = sig.samples[base_i + m];
            auto& sq = sig.samples[base_q + m];
            si.real(si.real() + a * p[m]);
            sq.imag(sq.imag() + b * p[m]);
        }
    }

    sig.provenance.seed = seed_echo;
    sig.provenance.bit_count = bits.size();
    sig.provenance.shape = shape;
    sig.provenance.interp_N = interp_N;
    sig.provenance.lpf = std::nullopt;
    sig.provenance.bit_source = bit_source;
    return sig;
}

BasebandSignal upsample_filter(const BasebandSignal& signal, const LpfParams& lpf) {
    check_lpf(lpf, "wavebench::upsample_filter");
    if (signal.samples.empty())
        throw std::invalid_argument("wavebench::upsample_filter: empty signal");

    const std::size_t n_in = signal.samples.size();
    const auto N0 = static_cast<std::size_t>(lpf.interp_N0);
    const std::size_t n_stuffed = (n_in - 1) * N0 + 1;
    const std::size_t nt = lpf.taps.size();
    const std::size_t n_out = n_stuffed + nt - 1;

    std::vector<double> re(n_stuffed, 0.0), im(n_stuffed, 0.0);
    for (std::size_t i = 0; i < n_in; ++i) {
        re[i * N0] = signal.samples[i].real();
        im[i * N0] = signal.samples[i].imag();
    }
    std::vector<double> re_out(n_out), im_out(n_out);
    kernels::fir_full(re.data(), n_stuffed, lpf.taps.data(), nt, re_out.data());
    kernels::fir_full(im.data(), n_stuffed, lpf.taps.data(), nt, im_out.data());

    BasebandSignal out;
    out.samples.resize(n_out);
    for (std::size_t i = 0; i < n_out; ++i) out.samples[i] = {re_out[i], im_out[i]};
    out.samples_per_2T = signal.samples_per_2T * lpf.interp_N0;
    out.provenance = signal.provenance;
    out.provenance.lpf = lpf;
    return out;
}

PaprReport papr(const BasebandSignal& signal, std::size_t discard_each_end) {
    const std::size_t n = signal.samples.size();
    if (n < 2 * discard_each_end || n - 2 * discard_each_end < 1000)
        throw std::invalid_argument(
            "wavebench::papr: fewer than 1000 samples remain after edge discard");
    const std::size_t kept = n - 2 * discard_each_end;

    double peak = 0.0, sum = 0.0;
    kernels::power_peak_sum(signal.samples.data() + discard_each_end, kept, peak, sum);
    const double mean = sum / static_cast<double>(kept);
    if (!(mean > 0.0) || !(peak > 0.0))
        throw std::invalid_argument("wavebench::papr: signal power is zero over the retained region");

    PaprReport report;
    report.peak_power = peak;
    report.mean_power = mean;
    report.papr_db = 10.0 * std::log10(peak / mean);
    report.discarded_edge_samples = discard_each_end;
    report.provenance = signal.provenance;
    return report;
}

std::vector<SweepRow> papr_sweep(const std::vector<psf::PulseShape>& shapes,
                                 const std::vector<int>& N_values,
                                 const LpfParams& lpf, std::size_t bit_count,
                                 std::uint64_t seed) {
    return papr_sweep(shapes, N_values, lpf, generate_bits(seed, bit_count), seed,
                      kBitGeneratorId);
}

std::vector<SweepRow> papr_sweep(const std::vector<psf::PulseShape>& shapes,
                                 const std::vector<int>& N_values,
                                 const LpfParams& lpf,
                                 const std::vector<std::uint8_t>& bits,
                                 std::uint64_t seed_echo,
                                 const std::string& bit_source) {
    check_lpf(lpf, "wavebench::papr_sweep");
    std::vector<SweepRow> rows;
    rows.reserve(shapes.size() * N_values.size());
    for (const auto& shape : shapes) {
        for (int N : N_values) {
            BasebandSignal sig = modulate(bits, shape, N, seed_echo, bit_source);
            sig = upsample_filter(sig, lpf);
            SweepRow row;
            row.shape = shape;
            row.interp_N = N;
            row.report = papr(sig, default_discard(N, lpf));
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

}  // namespace wavebench::oqpsk
