// AVX2 + FMA variants of the arithmetic kernels. This translation unit is
// compiled with -mavx2 -mfma and only entered after avx2::available()
// confirms hardware support.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <vector>

#include "wavebench/kernels.hpp"

namespace wavebench::kernels::avx2 {

bool available() {
#if defined(__GNUC__) || defined(__clang__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

namespace {

inline double hsum4(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

inline double hmax4(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_max_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_max_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

}  // namespace

void fourier_sum(const double* w, std::size_t n, double t0, double dt,
                 double omega, double& re, double& im) {
    // Four interleaved phasor recurrences, each advancing by e^{-j omega 4dt},
    // resynced from sincos once per chunk (same drift policy as the scalar
    // kernel).
    constexpr std::size_t kResync = 1024;  // multiple of 4
    const double c4 = std::cos(4.0 * omega * dt);
    const double s4 = std::sin(4.0 * omega * dt);
    const __m256d step_c = _mm256_set1_pd(c4);
    const __m256d step_s = _mm256_set1_pd(s4);
    __m256d acc_re = _mm256_setzero_pd();
    __m256d acc_im = _mm256_setzero_pd();
    double tail_re = 0.0, tail_im = 0.0;
    for (std::size_t base = 0; base < n; base += kResync) {
        const std::size_t end = std::min(n, base + kResync);
        double cr[4] = {0.0, 0.0, 0.0, 0.0};
        double ci[4] = {0.0, 0.0, 0.0, 0.0};
        const std::size_t lanes = std::min<std::size_t>(4, end - base);
        for (std::size_t j = 0; j < lanes; ++j) {
            const double phase = omega * (t0 + static_cast<double>(base + j) * dt);
            cr[j] = std::cos(phase);
            ci[j] = -std::sin(phase);
        }
        __m256d zr = _mm256_setr_pd(cr[0], cr[1], cr[2], cr[3]);
        __m256d zi = _mm256_setr_pd(ci[0], ci[1], ci[2], ci[3]);
        std::size_t k = base;
        for (; k + 4 <= end; k += 4) {
            const __m256d wv = _mm256_loadu_pd(w + k);
            acc_re = _mm256_fmadd_pd(wv, zr, acc_re);
            acc_im = _mm256_fmadd_pd(wv, zi, acc_im);
            // (zr + j zi) * (c4 - j s4)
            const __m256d nr =
                _mm256_fmadd_pd(zi, step_s, _mm256_mul_pd(zr, step_c));
            zi = _mm256_fmsub_pd(zi, step_c, _mm256_mul_pd(zr, step_s));
            zr = nr;
        }
        for (; k < end; ++k) {
            const double phase = omega * (t0 + static_cast<double>(k) * dt);
            tail_re += w[k] * std::cos(phase);
            tail_im -= w[k] * std::sin(phase);
        }
    }
    re = hsum4(acc_re) + tail_re;
    im = hsum4(acc_im) + tail_im;
}

void fir_full(const double* x, std::size_t nx, const double* taps,
              std::size_t nt, double* out) {
    const std::size_t ny = nx + nt - 1;
    std::vector<double> xp(nx + 2 * (nt - 1), 0.0);
    std::memcpy(xp.data() + (nt - 1), x, nx * sizeof(double));
    const double* base = xp.data() + (nt - 1);
    std::size_t i = 0;
    for (; i + 4 <= ny; i += 4) {
        __m256d acc = _mm256_setzero_pd();
        const double* xi = base + i;
        for (std::size_t k = 0; k < nt; ++k) {
            const __m256d tv = _mm256_set1_pd(taps[k]);
            const __m256d xv =
                _mm256_loadu_pd(xi - static_cast<std::ptrdiff_t>(k));
            acc = _mm256_fmadd_pd(tv, xv, acc);
        }
        _mm256_storeu_pd(out + i, acc);
    }
    for (; i < ny; ++i) {
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
    const double* d = reinterpret_cast<const double*>(s);
    __m256d peak4 = _mm256_setzero_pd();
    __m256d sum4 = _mm256_setzero_pd();
    std::size_t i = 0;
    // two complex samples per 256-bit lane pair: [re0 im0 re1 im1]
    for (; i + 2 <= n; i += 2) {
        const __m256d v = _mm256_loadu_pd(d + 2 * i);
        const __m256d sq = _mm256_mul_pd(v, v);
        sum4 = _mm256_add_pd(sum4, sq);
        // lanes 0 and 2 hold |s0|^2 and |s1|^2 after the in-lane hadd
        const __m256d p = _mm256_hadd_pd(sq, sq);
        peak4 = _mm256_max_pd(peak4, p);
    }
    double pk = hmax4(peak4);
    double sm = hsum4(sum4);
    for (; i < n; ++i) {
        const double p = s[i].real() * s[i].real() + s[i].imag() * s[i].imag();
        if (p > pk) pk = p;
        sm += p;
    }
    peak = pk;
    sum = sm;
}

}  // namespace wavebench::kernels::avx2

#endif  // x86-64
