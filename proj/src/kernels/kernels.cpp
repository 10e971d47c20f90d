#include "wavebench/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <vector>

namespace wavebench::kernels {

namespace scalar {

// Phasor recurrence: z_{k+1} = z_k * e^{-j omega dt}. The recurrence is
// restarted from a fresh sincos every kResync samples to keep the
// accumulated rounding drift of the unit phasor below ~1e-13.
static constexpr std::size_t kResync = 1024;

void fourier_sum(const double* w, std::size_t n, double t0, double dt,
                 double omega, double& re, double& im) {
    const double step_c = std::cos(omega * dt);
    const double step_s = std::sin(omega * dt);
    double acc_re = 0.0, acc_im = 0.0;
    for (std::size_t base = 0; base < n; base += kResync) {
        const std::size_t end = std::min(n, base + kResync);
        const double phase = omega * (t0 + static_cast<double>(base) * dt);
        double zr = std::cos(phase);
        double zi = -std::sin(phase);
        for (std::size_t k = base; k < end; ++k) {
            acc_re += w[k] * zr;
            acc_im += w[k] * zi;
            const double nr = zr * step_c + zi * step_s;
            zi = zi * step_c - zr * step_s;
            zr = nr;
        }
    }
    re = acc_re;
    im = acc_im;
}

void fir_full(const double* x, std::size_t nx, const double* taps,
              std::size_t nt, double* out) {
    const std::size_t ny = nx + nt - 1;
    // x padded with nt-1 zeros on both sides so every output index reads
    // a contiguous window
    std::vector<double> xp(nx + 2 * (nt - 1), 0.0);
    std::memcpy(xp.data() + (nt - 1), x, nx * sizeof(double));
    const double* base = xp.data() + (nt - 1);
    for (std::size_t i = 0; i < ny; ++i) {
        double acc = 0.0;
        const double* xi = base + i;
        for (std::size_t k = 0; k < nt; ++k) {
            acc += taps[k] * xi[-static_cast<std::ptrdiff_t>(k)];
        }
        out[i] = acc;
    }
}

void power_peak_sum(const std::complex<double>* s, std::size_t n,
                    double& peak, double& sum) {
    double pk = 0.0, sm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double p = s[i].real() * s[i].real() + s[i].imag() * s[i].imag();
        if (p > pk) pk = p;
        sm += p;
    }
    peak = pk;
    sum = sm;
}

}  // namespace scalar

namespace {

Backend detect_backend() {
    if (const char* env = std::getenv("WAVEBENCH_SIMD")) {
        if (std::strcmp(env, "scalar") == 0) return Backend::Scalar;
#if defined(__x86_64__) || defined(_M_X64)
        if (std::strcmp(env, "avx2") == 0 && avx2::available()) return Backend::Avx2;
#endif
#if defined(__aarch64__)
        if (std::strcmp(env, "neon") == 0 && neon::available()) return Backend::Neon;
#endif
        if (std::strcmp(env, "auto") != 0) {
            // unknown or unavailable request: fall through to autodetection
        }
    }
#if defined(__x86_64__) || defined(_M_X64)
    if (avx2::available()) return Backend::Avx2;
#endif
#if defined(__aarch64__)
    if (neon::available()) return Backend::Neon;
#endif
    return Backend::Scalar;
}

}  // namespace

Backend active_backend() {
    static const Backend b = detect_backend();
    return b;
}

const char* backend_name(Backend b) {
    switch (b) {
        case Backend::Avx2: return "avx2";
        case Backend::Neon: return "neon";
        default: return "scalar";
    }
}

bool backend_available(Backend b) {
    switch (b) {
        case Backend::Scalar: return true;
        case Backend::Avx2:
#if defined(__x86_64__) || defined(_M_X64)
            return avx2::available();
#else
            return false;
#endif
        case Backend::Neon:
#if defined(__aarch64__)
            return neon::available();
#else
            return false;
#endif
    }
    return false;
}

void fourier_sum(const double* w, std::size_t n, double t0, double dt,
                 double omega, double& re, double& im) {
    switch (active_backend()) {
#if defined(__x86_64__) || defined(_M_X64)
        case Backend::Avx2: avx2::fourier_sum(w, n, t0, dt, omega, re, im); return;
#endif
#if defined(__aarch64__)
        case Backend::Neon: neon::fourier_sum(w, n, t0, dt, omega, re, im); return;
#endif
        default: scalar::fourier_sum(w, n, t0, dt, omega, re, im); return;
    }
}

void fir_full(const double* x, std::size_t nx, const double* taps,
              std::size_t nt, double* out) {
    switch (active_backend()) {
#if defined(__x86_64__) || defined(_M_X64)
        case Backend::Avx2: avx2::fir_full(x, nx, taps, nt, out); return;
#endif
#if defined(__aarch64__)
        case Backend::Neon: neon::fir_full(x, nx, taps, nt, out); return;
#endif
        default: scalar::fir_full(x, nx, taps, nt, out); return;
    }
}

void power_peak_sum(const std::complex<double>* s, std::size_t n,
                    double& peak, double& sum) {
    switch (active_backend()) {
#if defined(__x86_64__) || defined(_M_X64)
        case Backend::Avx2: avx2::power_peak_sum(s, n, peak, sum); return;
#endif
#if defined(__aarch64__)
        case Backend::Neon: neon::power_peak_sum(s, n, peak, sum); return;
#endif
        default: scalar::power_peak_sum(s, n, peak, sum); return;
    }
}

}  // namespace wavebench::kernels
