#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>
#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "wavebench/kernels.hpp"

using namespace wavebench::kernels;

namespace {

/// Plain per-sample reference: no phasor recurrence, no lane batching.
void ref_fourier_sum(const double* w, std::size_t n, double t0, double dt,
                     double omega, double& re, double& im) {
    re = 0.0;
    im = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double t = t0 + dt * static_cast<double>(k);
        re += w[k] * std::cos(omega * t);
        im -= w[k] * std::sin(omega * t);
    }
}

void ref_fir_full(const std::vector<double>& x, const std::vector<double>& taps,
                  std::vector<double>& out) {
    out.assign(x.size() + taps.size() - 1, 0.0);
    for (std::size_t i = 0; i < out.size(); ++i)
        for (std::size_t k = 0; k < taps.size(); ++k)
            if (i >= k && i - k < x.size()) out[i] += taps[k] * x[i - k];
}

void ref_power_peak_sum(const std::vector<std::complex<double>>& s, double& peak,
                        double& sum) {
    peak = 0.0;
    sum = 0.0;
    for (const auto& v : s) {
        const double p = v.real() * v.real() + v.imag() * v.imag();
        peak = std::max(peak, p);
        sum += p;
    }
}

std::vector<double> random_vec(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> v(n);
    for (auto& x : v) x = dist(rng);
    return v;
}

// Sizes straddling the SIMD lane width and the resync interval.
const std::size_t kSizes[] = {0, 1, 2, 3, 4, 5, 7, 8, 9, 31, 64, 1000, 1023, 1024, 1025, 4097};

}  // namespace

TEST_CASE("backend bookkeeping") {
    CHECK(std::string(backend_name(Backend::Scalar)) == "scalar");
    CHECK(std::string(backend_name(Backend::Avx2)) == "avx2");
    CHECK(std::string(backend_name(Backend::Neon)) == "neon");
    CHECK(backend_available(Backend::Scalar));
    CHECK(backend_available(active_backend()));
}

TEST_CASE("scalar fourier_sum matches the naive reference") {
    std::mt19937_64 rng(101);
    for (std::size_t n : kSizes) {
        auto w = random_vec(rng, n);
        for (double omega : {0.0, 0.5, 3.14159, 40.0}) {
            double re = -1.0, im = -1.0, rr = 0.0, ri = 0.0;
            scalar::fourier_sum(w.data(), n, -1.0, 2.0 / 4096.0, omega, re, im);
            ref_fourier_sum(w.data(), n, -1.0, 2.0 / 4096.0, omega, rr, ri);
            // The recurrence drifts by ~k eps between resyncs.
            CHECK(std::fabs(re - rr) <= 1e-10);
            CHECK(std::fabs(im - ri) <= 1e-10);
        }
    }
}

TEST_CASE("scalar fir_full matches the naive reference") {
    std::mt19937_64 rng(202);
    for (std::size_t nx : {1, 2, 3, 8, 100, 1001}) {
        for (std::size_t nt : {1, 2, 5, 17, 101}) {
            auto x = random_vec(rng, static_cast<std::size_t>(nx));
            auto taps = random_vec(rng, static_cast<std::size_t>(nt));
            std::vector<double> out(x.size() + taps.size() - 1, -7.0), ref;
            scalar::fir_full(x.data(), x.size(), taps.data(), taps.size(), out.data());
            ref_fir_full(x, taps, ref);
            for (std::size_t i = 0; i < ref.size(); ++i)
                CHECK(std::fabs(out[i] - ref[i]) <= 1e-13);
        }
    }
}

TEST_CASE("scalar power_peak_sum matches the naive reference") {
    std::mt19937_64 rng(303);
    for (std::size_t n : kSizes) {
        std::vector<std::complex<double>> s(n);
        std::uniform_real_distribution<double> dist(-2.0, 2.0);
        for (auto& v : s) v = {dist(rng), dist(rng)};
        double peak = -1.0, sum = -1.0, rp = 0.0, rs = 0.0;
        scalar::power_peak_sum(s.data(), n, peak, sum);
        ref_power_peak_sum(s, rp, rs);
        CHECK(peak == rp);  // max of identical per-sample powers
        CHECK(std::fabs(sum - rs) <= 1e-11 * (1.0 + rs));
    }
}

#if defined(__x86_64__) || defined(_M_X64)
TEST_CASE("avx2 kernels agree with scalar" * doctest::skip(!avx2::available())) {
    std::mt19937_64 rng(404);

    SUBCASE("fourier_sum") {
        for (std::size_t n : kSizes) {
            auto w = random_vec(rng, n);
            for (double omega : {0.0, 1.0, 25.1327}) {
                double sr = 0.0, si = 0.0, vr = 0.0, vi = 0.0;
                scalar::fourier_sum(w.data(), n, -1.0, 2.0 / 4096.0, omega, sr, si);
                avx2::fourier_sum(w.data(), n, -1.0, 2.0 / 4096.0, omega, vr, vi);
                CHECK(std::fabs(sr - vr) <= 1e-10);
                CHECK(std::fabs(si - vi) <= 1e-10);
            }
        }
    }
    SUBCASE("fir_full") {
        for (std::size_t nx : {1, 2, 3, 4, 5, 9, 255, 1000}) {
            for (std::size_t nt : {1, 3, 11, 101}) {
                auto x = random_vec(rng, static_cast<std::size_t>(nx));
                auto taps = random_vec(rng, static_cast<std::size_t>(nt));
                std::vector<double> a(x.size() + taps.size() - 1, 0.0), b = a;
                scalar::fir_full(x.data(), x.size(), taps.data(), taps.size(), a.data());
                avx2::fir_full(x.data(), x.size(), taps.data(), taps.size(), b.data());
                for (std::size_t i = 0; i < a.size(); ++i)
                    CHECK(std::fabs(a[i] - b[i]) <= 1e-13 * (1.0 + std::fabs(a[i])));
            }
        }
    }
    SUBCASE("power_peak_sum") {
        for (std::size_t n : kSizes) {
            std::vector<std::complex<double>> s(n);
            std::uniform_real_distribution<double> dist(-2.0, 2.0);
            for (auto& v : s) v = {dist(rng), dist(rng)};
            double sp = 0.0, ss = 0.0, vp = 0.0, vs = 0.0;
            scalar::power_peak_sum(s.data(), n, sp, ss);
            avx2::power_peak_sum(s.data(), n, vp, vs);
            CHECK(sp == vp);  // identical per-sample powers, same max
            CHECK(std::fabs(ss - vs) <= 1e-11 * (1.0 + ss));
        }
    }
}
#endif

#if defined(__aarch64__)
TEST_CASE("neon kernels agree with scalar" * doctest::skip(!neon::available())) {
    std::mt19937_64 rng(505);

    SUBCASE("fourier_sum") {
        for (std::size_t n : kSizes) {
            auto w = random_vec(rng, n);
            for (double omega : {0.0, 1.0, 25.1327}) {
                double sr = 0.0, si = 0.0, vr = 0.0, vi = 0.0;
                scalar::fourier_sum(w.data(), n, -1.0, 2.0 / 4096.0, omega, sr, si);
                neon::fourier_sum(w.data(), n, -1.0, 2.0 / 4096.0, omega, vr, vi);
                CHECK(std::fabs(sr - vr) <= 1e-10);
                CHECK(std::fabs(si - vi) <= 1e-10);
            }
        }
    }
    SUBCASE("fir_full") {
        for (std::size_t nx : {1, 2, 3, 4, 5, 9, 255, 1000}) {
            for (std::size_t nt : {1, 3, 11, 101}) {
                auto x = random_vec(rng, static_cast<std::size_t>(nx));
                auto taps = random_vec(rng, static_cast<std::size_t>(nt));
                std::vector<double> a(x.size() + taps.size() - 1, 0.0), b = a;
                scalar::fir_full(x.data(), x.size(), taps.data(), taps.size(), a.data());
                neon::fir_full(x.data(), x.size(), taps.data(), taps.size(), b.data());
                for (std::size_t i = 0; i < a.size(); ++i)
                    CHECK(std::fabs(a[i] - b[i]) <= 1e-13 * (1.0 + std::fabs(a[i])));
            }
        }
    }
    SUBCASE("power_peak_sum") {
        for (std::size_t n : kSizes) {
            std::vector<std::complex<double>> s(n);
            std::uniform_real_distribution<double> dist(-2.0, 2.0);
            for (auto& v : s) v = {dist(rng), dist(rng)};
            double sp = 0.0, ss = 0.0, vp = 0.0, vs = 0.0;
            scalar::power_peak_sum(s.data(), n, sp, ss);
            neon::power_peak_sum(s.data(), n, vp, vs);
            CHECK(sp == vp);
            CHECK(std::fabs(ss - vs) <= 1e-11 * (1.0 + ss));
        }
    }
}
#endif

TEST_CASE("dispatched entry points route to the active backend") {
    std::mt19937_64 rng(606);
    auto w = random_vec(rng, 777);

    double dr = 0.0, di = 0.0, br = 0.0, bi = 0.0;
    fourier_sum(w.data(), w.size(), -1.0, 1e-3, 2.5, dr, di);
    switch (active_backend()) {
        case Backend::Scalar:
            scalar::fourier_sum(w.data(), w.size(), -1.0, 1e-3, 2.5, br, bi);
            break;
#if defined(__x86_64__) || defined(_M_X64)
        case Backend::Avx2:
            avx2::fourier_sum(w.data(), w.size(), -1.0, 1e-3, 2.5, br, bi);
            break;
#endif
#if defined(__aarch64__)
        case Backend::Neon:
            neon::fourier_sum(w.data(), w.size(), -1.0, 1e-3, 2.5, br, bi);
            break;
#endif
        default:
            REQUIRE(false);
    }
    CHECK(dr == br);
    CHECK(di == bi);

    std::vector<std::complex<double>> s(1234);
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = {w[i % w.size()], -w[(i * 7) % w.size()]};
    double p1 = 0.0, s1 = 0.0, p2 = 0.0, s2 = 0.0;
    power_peak_sum(s.data(), s.size(), p1, s1);
    power_peak_sum(s.data(), s.size(), p2, s2);
    CHECK(p1 == p2);  // deterministic
    CHECK(s1 == s2);
}

TEST_CASE("empty inputs are well-defined") {
    double re = 9.0, im = 9.0;
    fourier_sum(nullptr, 0, 0.0, 1.0, 1.0, re, im);
    CHECK(re == 0.0);
    CHECK(im == 0.0);
    double peak = 9.0, sum = 9.0;
    power_peak_sum(nullptr, 0, peak, sum);
    CHECK(peak == 0.0);
    CHECK(sum == 0.0);
}
