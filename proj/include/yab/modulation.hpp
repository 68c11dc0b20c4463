#pragma once

// Sin-PS modulation: grid voltages, sinusoidal DC-side pulse widths and the
// circularly shifted gate sequences for one switching period.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include "yab/error.hpp"
#include "yab/format.hpp"

namespace yab {

using PhaseTriple = std::array<double, 3>;  // phases a, b, c (or x, y, z)

/// Wraps an angle in degrees onto [0, 360).
inline double wrap_degrees(double theta) {
    double t = std::fmod(theta, 360.0);
    if (t < 0.0) t += 360.0;
    return t;
}

/// Balanced grid voltages at grid angle theta (degrees). Phase k is evaluated at
/// theta - 120 k wrapped to [0, 360) so that phase b at theta and phase a at
/// theta - 120 go through identical arithmetic.
inline PhaseTriple grid_voltages(double theta, double v_g_peak) {
    PhaseTriple v{};
    for (int k = 0; k < 3; ++k) {
        const double angle = wrap_degrees(theta - 120.0 * k);
        v[k] = v_g_peak * std::cos(angle * std::numbers::pi / 180.0);
    }
    return v;
}

/// Signed DC-side pulse widths d_p = v_p / (2 v_dc) * T_sw / 2, seconds.
inline PhaseTriple duty_cycles(const PhaseTriple& v_abc, double v_dc, double T_sw) {
    if (!(v_dc > 0.0)) throw std::invalid_argument("duty_cycles: v_dc must be positive");
    PhaseTriple d{};
    for (int k = 0; k < 3; ++k) {
        if (std::abs(v_abc[k]) > 2.0 * v_dc) {
            throw OverModulationError("over-modulation: |v| = " + format_number(std::abs(v_abc[k])) +
                                      " V exceeds 2 v_dc = " + format_number(2.0 * v_dc) + " V");
        }
        d[k] = v_abc[k] / (2.0 * v_dc) * T_sw / 2.0;
    }
    return d;
}

/// Binary gate sequence over one switching period with exactly N/2 ones.
class GateWaveform {
public:
    GateWaveform() = default;

    /// Throws std::invalid_argument unless every sample is 0/1 and exactly half are 1.
    explicit GateWaveform(std::vector<std::uint8_t> samples) : samples_(std::move(samples)) {
        std::size_t ones = 0;
        for (auto s : samples_) {
            if (s > 1) throw std::invalid_argument("GateWaveform: samples must be 0 or 1");
            ones += s;
        }
        if (samples_.size() % 2 != 0 || 2 * ones != samples_.size()) {
            throw std::invalid_argument("GateWaveform: need an even length with exactly half the samples set");
        }
    }

    std::size_t size() const { return samples_.size(); }
    std::uint8_t operator[](std::size_t n) const { return samples_[n]; }
    std::span<const std::uint8_t> samples() const { return samples_; }

    bool operator==(const GateWaveform&) const = default;

private:
    std::vector<std::uint8_t> samples_;
};

/// [1,...,1,0,...,0] with N/2 ones: the top AC-side switch gate.
inline GateWaveform gate_reference(int N_sw) {
    if (N_sw <= 0 || N_sw % 2 != 0) throw std::invalid_argument("gate_reference: N_sw must be positive and even");
    std::vector<std::uint8_t> s(static_cast<std::size_t>(N_sw), 0);
    std::fill(s.begin(), s.begin() + N_sw / 2, std::uint8_t{1});
    return GateWaveform(std::move(s));
}

/// Sample count for a time shift tau, rounded to the nearest sample (ties up).
inline long sample_shift(double tau, double T_sw, std::size_t N) {
    return static_cast<long>(std::floor(static_cast<double>(N) * tau / T_sw + 0.5));
}

/// Circular delay of g by tau: out[n] = g[(n - shift) mod N].
inline GateWaveform shifted_gate(const GateWaveform& g, double tau, double T_sw) {
    const auto N = static_cast<long>(g.size());
    if (N == 0) return g;
    const long shift = sample_shift(tau, T_sw, g.size());
    std::vector<std::uint8_t> out(g.size());
    for (long n = 0; n < N; ++n) {
        long k = (n - shift) % N;
        if (k < 0) k += N;
        out[static_cast<std::size_t>(n)] = g[static_cast<std::size_t>(k)];
    }
    return GateWaveform(std::move(out));
}

/// Index of the single 0 -> 1 transition (circularly). Throws for sequences
/// without one (all-zero or all-one).
inline std::size_t rising_edge(std::span<const std::uint8_t> g) {
    const std::size_t N = g.size();
    for (std::size_t n = 0; n < N; ++n) {
        if (g[n] == 1 && g[(n + N - 1) % N] == 0) return n;
    }
    throw std::invalid_argument("rising_edge: gate sequence has no rising edge");
}

inline std::size_t rising_edge(const GateWaveform& g) { return rising_edge(g.samples()); }

/// Operating point of one switching period: grid angle, main phase shift and
/// the three DC-side pulse widths.
struct ModulationPoint {
    double theta = 0.0;  // degrees
    double phi = 0.0;    // seconds
    double T_sw = 0.0;   // seconds
    PhaseTriple v{};     // grid voltages, V
    PhaseTriple d{};     // pulse widths, seconds (signed)

    /// Leading edge offset of DC leg 1 of phase p.
    double tau_1(int p = 0) const { return T_sw / 4.0 + phi - d[p] / 2.0; }
    /// Leading edge offset of DC leg 2 of phase p.
    double tau_2(int p = 0) const { return T_sw / 4.0 + phi + d[p] / 2.0; }
};

inline ModulationPoint make_modulation_point(double theta, double phi, double v_g_peak, double v_dc, double T_sw) {
    ModulationPoint mp;
    mp.theta = theta;
    mp.phi = phi;
    mp.T_sw = T_sw;
    mp.v = grid_voltages(theta, v_g_peak);
    mp.d = duty_cycles(mp.v, v_dc, T_sw);
    return mp;
}

struct DcGatePair {
    GateWaveform leg1;  // g_p1+
    GateWaveform leg2;  // g_p2+
};

/// Gates of DC full bridge p (0 = x, 1 = y, 2 = z). leg1 - leg2 is +1 on
/// [tau_1, tau_2) and -1 half a period later (signs swap for negative d).
inline DcGatePair dc_gates(const ModulationPoint& point, int N_sw, int phase = 0) {
    const GateWaveform ref = gate_reference(N_sw);
    return {shifted_gate(ref, point.tau_1(phase), point.T_sw), shifted_gate(ref, point.tau_2(phase), point.T_sw)};
}

/// Gate-signal phase shifts of all nine half-bridges, in seconds.
struct PhaseShiftSchedule {
    PhaseTriple ac{};    // ps_a, ps_b, ps_c
    PhaseTriple leg1{};  // ps_x1, ps_y1, ps_z1
    PhaseTriple leg2{};  // ps_x2, ps_y2, ps_z2
};

/// ps_p1 = phi + (1 - d')/4 T_sw, ps_p2 = phi + (1 + d')/4 T_sw with d' = d_p / (T_sw/2).
inline PhaseShiftSchedule phase_shift_schedule(double phi, const PhaseTriple& d, double T_sw) {
    PhaseShiftSchedule s;
    for (int k = 0; k < 3; ++k) {
        const double dn = d[k] / (T_sw / 2.0);
        s.ac[k] = 0.0;
        s.leg1[k] = phi + (1.0 - dn) / 4.0 * T_sw;
        s.leg2[k] = phi + (1.0 + dn) / 4.0 * T_sw;
    }
    return s;
}

}  // namespace yab
