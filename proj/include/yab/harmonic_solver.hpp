#pragma once

// Periodic steady-state link current by frequency-domain division:
// I_k = V_k / (R + j 2 pi k f_sw L), DC bin forced to zero.

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>
#include <mutex>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

namespace yab {

struct LinkImpedanceSpec {
    double L = 0.0;     // H
    double R = 0.0;     // ohm
    double f_sw = 0.0;  // Hz
    int N_sw = 0;
};

namespace detail {

// FFTW's planner is not thread-safe; execution on distinct buffers is.
inline std::mutex& fftw_planner_mutex() {
    static std::mutex m;
    return m;
}

/// Per-thread r2c/c2r plans and buffers for one transform length.
class RealFft {
public:
    explicit RealFft(int n) : n_(n) {
        real_ = fftw_alloc_real(static_cast<std::size_t>(n));
        spec_ = fftw_alloc_complex(static_cast<std::size_t>(n / 2 + 1));
        std::lock_guard lock(fftw_planner_mutex());
        forward_ = fftw_plan_dft_r2c_1d(n, real_, spec_, FFTW_ESTIMATE);
        inverse_ = fftw_plan_dft_c2r_1d(n, spec_, real_, FFTW_ESTIMATE);
    }
    ~RealFft() {
        {
            std::lock_guard lock(fftw_planner_mutex());
            fftw_destroy_plan(forward_);
            fftw_destroy_plan(inverse_);
        }
        fftw_free(real_);
        fftw_free(spec_);
    }
    RealFft(const RealFft&) = delete;
    RealFft& operator=(const RealFft&) = delete;

    int size() const { return n_; }
    double* real() { return real_; }
    std::complex<double>* spectrum() { return reinterpret_cast<std::complex<double>*>(spec_); }
    void forward() { fftw_execute(forward_); }
    void inverse() { fftw_execute(inverse_); }  // unnormalized

private:
    int n_;
    double* real_ = nullptr;
    fftw_complex* spec_ = nullptr;
    fftw_plan forward_ = nullptr;
    fftw_plan inverse_ = nullptr;
};

inline RealFft& thread_fft(int n) {
    thread_local std::unique_ptr<RealFft> fft;
    if (!fft || fft->size() != n) {
        fft.reset();
        fft = std::make_unique<RealFft>(n);
    }
    return *fft;
}

}  // namespace detail

/// Steady-state inductor current over one switching period for the sampled
/// inductor voltage v_L. The mean of v_L is dropped (blocking capacitor), each
/// bin k is divided by R + j 2 pi k f_sw L, and the result is real with zero
/// mean. The Nyquist bin keeps only the real part of its response, which is the
/// average of the +N/2 and -N/2 readings.
inline std::vector<double> steady_state_current(std::span<const double> v_L, const LinkImpedanceSpec& spec) {
    if (!(spec.L > 0.0) || !(spec.R >= 0.0) || !(spec.f_sw > 0.0)) {
        throw std::invalid_argument("steady_state_current: need L > 0, R >= 0, f_sw > 0");
    }
    if (static_cast<int>(v_L.size()) != spec.N_sw || spec.N_sw < 2) {
        throw std::invalid_argument("steady_state_current: length of v_L must equal N_sw");
    }
    for (double v : v_L) {
        if (!std::isfinite(v)) throw std::invalid_argument("steady_state_current: non-finite input sample");
    }

    const int N = spec.N_sw;
    auto& fft = detail::thread_fft(N);
    std::copy(v_L.begin(), v_L.end(), fft.real());
    fft.forward();

    std::complex<double>* bins = fft.spectrum();
    const double omega = 2.0 * std::numbers::pi * spec.f_sw * spec.L;
    bins[0] = 0.0;
    for (int k = 1; k <= N / 2; ++k) {
        const std::complex<double> z(spec.R, omega * k);
        bins[k] /= z;
    }
    if (N % 2 == 0) bins[N / 2] = bins[N / 2].real();
    fft.inverse();

    std::vector<double> i(static_cast<std::size_t>(N));
    const double scale = 1.0 / N;
    for (int n = 0; n < N; ++n) i[static_cast<std::size_t>(n)] = fft.real()[n] * scale;
    return i;
}

/// RMS computed from DFT bin magnitudes (Parseval), for cross-checking time-domain RMS.
inline double bin_domain_rms(std::span<const double> x) {
    const int N = static_cast<int>(x.size());
    if (N == 0) return 0.0;
    auto& fft = detail::thread_fft(N);
    std::copy(x.begin(), x.end(), fft.real());
    fft.forward();
    const std::complex<double>* bins = fft.spectrum();
    double sum = std::norm(bins[0]);
    for (int k = 1; k < (N + 1) / 2; ++k) sum += 2.0 * std::norm(bins[k]);
    if (N % 2 == 0) sum += std::norm(bins[N / 2]);
    return std::sqrt(sum) / N;
}

}  // namespace yab
