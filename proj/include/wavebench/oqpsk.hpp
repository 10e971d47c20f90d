#ifndef WAVEBENCH_OQPSK_HPP
#define WAVEBENCH_OQPSK_HPP

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wavebench/psf.hpp"

namespace wavebench::oqpsk {

/// Interpolating low-pass filter: upsampling factor N0, half length K,
/// 2K+1 taps with taps[K+i] = (pi/N0) * sin(i pi/2N0) / (i pi/2N0)
/// (the i = 0 tap is the analytic limit pi/N0).
struct LpfParams {
    int interp_N0 = 0;
    int half_length_K = 0;
    std::vector<double> taps;  // size 2K+1, symmetric
};

LpfParams lpf_taps(int interp_N0, int half_length_K);

/// Everything needed to regenerate a waveform or cross-check it from an
/// exported bit file.
struct Provenance {
    std::uint64_t seed = 0;
    std::size_t bit_count = 0;
    psf::PulseShape shape;
    int interp_N = 0;
    std::optional<LpfParams> lpf;
    std::string bit_source;  // bit generator id ("mt19937_64-lsb") or "file:<path>"
};

struct BasebandSignal {
    std::vector<std::complex<double>> samples;
    int samples_per_2T = 0;  // current rate in samples per pulse support 2T
    Provenance provenance;
};

struct PaprReport {
    double papr_db = 0.0;
    double peak_power = 0.0;
    double mean_power = 0.0;
    std::size_t discarded_edge_samples = 0;
    Provenance provenance;
};

/// Deterministic bit stream: bit k is the least significant bit of the
/// k-th output of std::mt19937_64 seeded with `seed`.
std::vector<std::uint8_t> generate_bits(std::uint64_t seed, std::size_t count);

inline constexpr const char* kBitGeneratorId = "mt19937_64-lsb";

/// Bit-stream files: one ASCII '0'/'1' per bit, newline-terminated.
std::vector<std::uint8_t> read_bits(const std::string& path);
void write_bits(const std::string& path, const std::vector<std::uint8_t>& bits);

struct SymbolStreams {
    std::vector<double> i_symbols;  // entries +/-1
    std::vector<double> q_symbols;
};

/// Bit 0 -> +1, bit 1 -> -1; even-indexed bits feed the I branch,
/// odd-indexed the Q branch, order preserved. Bit count must be even.
SymbolStreams map_bits(const std::vector<std::uint8_t>& bits);

/// OQPSK complex baseband with the sampled digital PSF:
///   s[n] = sum_k a_k p[n - kN] + j sum_k b_k p[n - kN - N/2]
/// where p = sample_pulse(shape, N). One branch symbol interval is
/// 2T = N samples; the Q branch is offset by T = N/2 samples, which is
/// why interp_N must be even (and >= 4). seed/bit_source are echoed
/// into the provenance record only.
BasebandSignal modulate(const std::vector<std::uint8_t>& bits,
                        const psf::PulseShape& shape, int interp_N,
                        std::uint64_t seed_echo,
                        const std::string& bit_source = kBitGeneratorId);

/// Zero-stuffs by the LPF's factor N0 (samples land N0 apart) and applies
/// the full FIR convolution, transients included. The output rate is
/// samples_per_2T * N0.
BasebandSignal upsample_filter(const BasebandSignal& signal, const LpfParams& lpf);

/// Peak-to-average power over the retained region, in dB. Requires at
/// least 1000 samples after discarding discard_each_end from both ends.
PaprReport papr(const BasebandSignal& signal, std::size_t discard_each_end);

/// Transient discard used by the sweep: full FIR edge plus one pulse
/// support at the output rate, both ends.
inline std::size_t default_discard(int interp_N, const LpfParams& lpf) {
    return 2 * (static_cast<std::size_t>(lpf.half_length_K) +
                static_cast<std::size_t>(interp_N) * lpf.interp_N0);
}

struct SweepRow {
    psf::PulseShape shape;
    int interp_N = 0;
    PaprReport report;
};

/// One PAPR measurement per (shape, N), shape-major row order, all cells
/// sharing the bit sequence generated from `seed`.
std::vector<SweepRow> papr_sweep(const std::vector<psf::PulseShape>& shapes,
                                 const std::vector<int>& N_values,
                                 const LpfParams& lpf, std::size_t bit_count,
                                 std::uint64_t seed);

/// Same sweep over a caller-supplied bit stream (e.g. read_bits).
std::vector<SweepRow> papr_sweep(const std::vector<psf::PulseShape>& shapes,
                                 const std::vector<int>& N_values,
                                 const LpfParams& lpf,
                                 const std::vector<std::uint8_t>& bits,
                                 std::uint64_t seed_echo,
                                 const std::string& bit_source);

}  // namespace wavebench::oqpsk

#endif
