// NEON variants of the arithmetic kernels (aarch64, where NEON with
// double lanes is baseline).

#if defined(__aarch64__)

#include <arm_neon.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <vector>

#include "wavebench/kernels.hpp"

namespace wavebench::kernels::neon {

bool available() { return true; }

void fourier_sum(const double* w, std::size_t n, double t0, double dt,
                 double omega, double& re, double& im) {
    // Two interleaved phasor recurrences advancing by e^{-j omega 2dt},
    // resynced from sincos once per chunk.
    constexpr std::size_t kResync = 1024;  // multiple of 2
    const double c2 = std::cos(2.0 * omega * dt);
    const double s2 = std::sin(2.0 * omega * dt);
    const float64x2_t step_c = vdupq_n_f64(c2);
    const float64x2_t step_s = vdupq_n_f64(s2);
    float64x2_t acc_re = vdupq_n_f64(0.0);
    float64x2_t acc_im = vdupq_n_f64(0.0);
    double tail_re = 0.0, tail_im = 0.0;
    for (std::size_t base = 0; base < n; base += kResync) {
        const std::size_t end = std::min(n, base + kResync);
        double cr[2] = {0.0, 0.0}, ci[2] = {0.0, 0.0};
        const std::size_t lanes = std::min<std::size_t>(2, end - base);
        for (std::size_t j = 0; j < lanes; ++j) {
            const double phase = omega * (t0 + static_cast<double>(base + j) * dt);
            cr[j] = std::cos(phase);
            ci[j] = -std::sin(phase);
        }
        float64x2_t zr = vld1q_f64(cr);
        float64x2_t zi = vld1q_f64(ci);
        std::size_t k = base;
        for (; k + 2 <= end; k += 2) {
            const float64x2_t wv = vld1q_f64(w + k);
            acc_re = vfmaq_f64(acc_re, wv, zr);
            acc_im = vfmaq_f64(acc_im, wv, zi);
            // (zr + j zi) * (c2 - j s2)
            const float64x2_t nr = vfmaq_f64(vmulq_f64(zr, step_c), zi, step_s);
            zi = vfmsq_f64(vmulq_f64(zi, step_c), zr, step_s);
            zr = nr;
        }
        for (; k < end; ++k) {
            const double phase = omega * (t0 + static_cast<double>(k) * dt);
            tail_re += w[k] * std::cos(phase);
            tail_im -= w[k] * std::sin(phase);
        }
    }
    re = vaddvq_f64(acc_re) + tail_re;
    im = vaddvq_f64(acc_im) + tail_im;
}

void fir_full(const double* x, std::size_t nx, const double* taps,
              std::size_t nt, double* out) {
    const std::size_t ny = nx + nt - 1;
    std::vector<double> xp(nx + 2 * (nt - 1), 0.0);
    std::memcpy(xp.data() + (nt - 1), x, nx * sizeof(double));
    const double* base = xp.data() + (nt - 1);
    std::size_t i = 0;
    for (; i + 2 <= ny; i += 2) {
        float64x2_t acc = vdupq_n_f64(0.0);
        const double* xi = base + i;
        for (std::size_t k = 0; k < nt; ++k) {
            const float64x2_t tv = vdupq_n_f64(taps[k]);
            const float64x2_t xv = vld1q_f64(xi - static_cast<std::ptrdiff_t>(k));
            acc = vfmaq_f64(acc, tv, xv);
        }
        vst1q_f64(out + i, acc);
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
    float64x2_t peak2 = vdupq_n_f64(0.0);
    float64x2_t sum2 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t v0 = vld1q_f64(d + 2 * i);      // re0 im0
        const float64x2_t v1 = vld1q_f64(d + 2 * i + 2);  // re1 im1
        const float64x2_t sq0 = vmulq_f64(v0, v0);
        const float64x2_t sq1 = vmulq_f64(v1, v1);
        sum2 = vaddq_f64(sum2, vaddq_f64(sq0, sq1));
        const float64x2_t p = vpaddq_f64(sq0, sq1);  // [|s0|^2, |s1|^2]
        peak2 = vmaxq_f64(peak2, p);
    }
    double pk = vmaxvq_f64(peak2);
    double sm = vaddvq_f64(sum2);
    for (; i < n; ++i) {
        const double p = s[i].real() * s[i].real() + s[i].imag() * s[i].imag();
        if (p > pk) pk = p;
        sm += p;
    }
    peak = pk;
    sum = sm;
}

}  // namespace wavebench::kernels::neon

#endif  // aarch64
