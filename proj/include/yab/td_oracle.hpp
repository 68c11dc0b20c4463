#pragma once

// Time-domain reference for the harmonic solver: exact integration of a series
// R-L branch driven by the zero-order-held inductor voltage, iterated to the
// periodic steady state.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include "yab/error.hpp"

namespace yab {

struct OracleResult {
    std::vector<double> i;      // current at the start of each sample interval
    std::vector<double> i_avg;  // exact average current over each interval
    int cycles_to_converge = 0;
    bool converged = false;
};

struct OracleComparison {
    double rel_rms_err = 0.0;
    double max_abs_err_over_peak = 0.0;
};

/// Number of periods after which the homogeneous term e^{-R t / L} has decayed below 1e-12.
inline int oracle_decay_cycles(double L, double R, double T_sw) {
    if (!(R > 0.0)) return 1;
    return static_cast<int>(std::ceil(12.0 * std::numbers::ln10 * L / (R * T_sw)));
}

/// Integrates L di/dt + R i = v(t) with v held constant over each of the N
/// intervals of length T_sw / N. For R = 0 one period suffices (v_L must be
/// zero-mean) and the zero-mean constraint of the blocking capacitor is applied
/// afterwards. For R > 0 periods are iterated until the homogeneous decay bound.
inline OracleResult simulate_zoh(std::span<const double> v_L, double L, double R, double f_sw,
                                 int max_cycles = 1'000'000) {
    if (!(L > 0.0) || !(R >= 0.0) || !(f_sw > 0.0)) {
        throw std::invalid_argument("simulate_zoh: need L > 0, R >= 0, f_sw > 0");
    }
    const std::size_t N = v_L.size();
    if (N == 0) throw std::invalid_argument("simulate_zoh: empty input");
    const double T_sw = 1.0 / f_sw;
    const double dt = T_sw / static_cast<double>(N);

    double v_max = 0.0, v_sum = 0.0;
    for (double v : v_L) {
        v_max = std::max(v_max, std::abs(v));
        v_sum += v;
    }

    OracleResult out;
    out.i.assign(N, 0.0);
    out.i_avg.assign(N, 0.0);

    if (R == 0.0) {
        if (std::abs(v_sum / N) > 1e-12 * std::max(v_max, 1e-300)) {
            throw ModelInvariantError("simulate_zoh: R = 0 needs a zero-mean v_L (no periodic solution otherwise)");
        }
        double i = 0.0;
        for (std::size_t n = 0; n < N; ++n) {
            const double next = i + v_L[n] * dt / L;
            out.i[n] = i;
            out.i_avg[n] = 0.5 * (i + next);
            i = next;
        }
        double mean = 0.0;
        for (double x : out.i_avg) mean += x;
        mean /= static_cast<double>(N);
        for (std::size_t n = 0; n < N; ++n) {
            out.i[n] -= mean;
            out.i_avg[n] -= mean;
        }
        out.cycles_to_converge = 1;
        out.converged = true;
        return out;
    }

    const int cycles = oracle_decay_cycles(L, R, T_sw);
    if (cycles > max_cycles) {
        throw ModelInvariantError("simulate_zoh: periodic steady state needs " + std::to_string(cycles) +
                                  " cycles, more than max_cycles");
    }
    const double a = std::exp(-R * dt / L);
    const double tau_over_dt = L / (R * dt);
    double i = 0.0;
    double change = 0.0;
    for (int c = 0; c < cycles; ++c) {
        const double start = i;
        const bool last = c + 1 == cycles;
        for (std::size_t n = 0; n < N; ++n) {
            const double target = v_L[n] / R;
            const double next = i * a + target * (1.0 - a);
            if (last) {
                out.i[n] = i;
                out.i_avg[n] = target + (i - target) * tau_over_dt * (1.0 - a);
            }
            i = next;
        }
        change = std::abs(i - start);
    }
    double peak = 0.0;
    for (double x : out.i) peak = std::max(peak, std::abs(x));
    out.cycles_to_converge = cycles;
    out.converged = change <= 1e-12 * std::max(peak, 1e-300);
    return out;
}

/// Relative RMS and peak-normalized maximum deviation of i_fft from the oracle.
inline OracleComparison compare(std::span<const double> i_fft, std::span<const double> i_oracle) {
    if (i_fft.size() != i_oracle.size()) throw std::invalid_argument("compare: length mismatch");
    double se = 0.0, so = 0.0, max_err = 0.0, peak = 0.0;
    for (std::size_t n = 0; n < i_fft.size(); ++n) {
        const double e = i_fft[n] - i_oracle[n];
        se += e * e;
        so += i_oracle[n] * i_oracle[n];
        max_err = std::max(max_err, std::abs(e));
        peak = std::max(peak, std::abs(i_oracle[n]));
    }
    if (!(peak > 0.0)) throw std::invalid_argument("compare: oracle signal is identically zero");
    return {std::sqrt(se / so), max_err / peak};
}

/// Exact average power of a held voltage v against the oracle current.
inline double oracle_average_power(std::span<const double> v, const OracleResult& r) {
    if (v.size() != r.i_avg.size()) throw std::invalid_argument("oracle_average_power: length mismatch");
    double s = 0.0;
    for (std::size_t n = 0; n < v.size(); ++n) s += v[n] * r.i_avg[n];
    return s / static_cast<double>(v.size());
}

}  // namespace yab
