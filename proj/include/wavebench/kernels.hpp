#ifndef WAVEBENCH_KERNELS_HPP
#define WAVEBENCH_KERNELS_HPP

#include <complex>
#include <cstddef>

// Data-parallel inner loops behind the spectrum and OQPSK chain code.
// Every operation has a scalar reference implementation plus SIMD
// variants (AVX2 on x86-64, NEON on aarch64) selected once at runtime.
// The dispatched entry points and the per-backend namespaces compute the
// same quantities; equivalence is covered by tests/test_kernels.cpp.

namespace wavebench::kernels {

enum class Backend { Scalar, Avx2, Neon };

/// Backend used by the dispatched entry points. Resolved once per
/// process: the environment variable WAVEBENCH_SIMD (scalar|avx2|neon|auto)
/// overrides autodetection; an unavailable request falls back to scalar.
Backend active_backend();

const char* backend_name(Backend b);
bool backend_available(Backend b);

/// S(omega) = sum_k w[k] * exp(-j*omega*(t0 + k*dt)), accumulated into
/// re + j*im. w is any weight sequence (the callers pass trapezoid-weighted
/// pulse samples).
void fourier_sum(const double* w, std::size_t n, double t0, double dt,
                 double omega, double& re, double& im);

/// Full convolution of x (length nx) with taps (length nt >= 1):
/// out[i] = sum_k taps[k] * x[i-k] for i = 0..nx+nt-2.
void fir_full(const double* x, std::size_t nx, const double* taps,
              std::size_t nt, double* out);

/// Peak and sum of |s[i]|^2 over the range. n == 0 yields peak = sum = 0.
void power_peak_sum(const std::complex<double>* s, std::size_t n,
                    double& peak, double& sum);

namespace scalar {
void fourier_sum(const double* w, std::size_t n, double t0, double dt,
                 double omega, double& re, double& im);
void fir_full(const double* x, std::size_t nx, const double* taps,
              std::size_t nt, double* out);
void power_peak_sum(const std::complex<double>* s, std::size_t n,
                    double& peak, double& sum);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
bool available();  // checks AVX2 + FMA at runtime
void fourier_sum(const double* w, std::size_t n, double t0, double dt,
                 double omega, double& re, double& im);
void fir_full(const double* x, std::size_t nx, const double* taps,
              std::size_t nt, double* out);
void power_peak_sum(const std::complex<double>* s, std::size_t n,
                    double& peak, double& sum);
}  // namespace avx2
#endif

#if defined(__aarch64__)
namespace neon {
bool available();
void fourier_sum(const double* w, std::size_t n, double t0, double dt,
                 double omega, double& re, double& im);
void fir_full(const double* x, std::size_t nx, const double* taps,
              std::size_t nt, double* out);
void power_peak_sum(const std::complex<double>* s, std::size_t n,
                    double& peak, double& sum);
}  // namespace neon
#endif

}  // namespace wavebench::kernels

#endif
