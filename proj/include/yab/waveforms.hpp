#pragma once

// Winding-voltage synthesis for one switching period: AC-side square wave,
// DC-side three-level bridge voltages, the common-mode / differential-mode
// split of the Y-connected windings, and the per-phase inductor voltage.

#include <array>
#include <cmath>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include "yab/modulation.hpp"
#include "yab/params.hpp"

namespace yab {

using Samples = std::vector<double>;

/// HFT primary winding voltage: a 50 % square of amplitude v_a/2 in phase with
/// the top AC switch gate, i.e. +v_a/2 while g = 1 and -v_a/2 while g = 0.
inline Samples primary_winding_voltage(const GateWaveform& g, double v_a) {
    Samples out(g.size());
    const double half = v_a / 2.0;
    for (std::size_t n = 0; n < g.size(); ++n) out[n] = g[n] ? half : -half;
    return out;
}

/// DC full-bridge output v_Xx = v_dc (g_1 - g_2); levels {-v_dc, 0, +v_dc}.
inline Samples bridge_voltage(const GateWaveform& g1, const GateWaveform& g2, double v_dc) {
    if (g1.size() != g2.size()) throw std::invalid_argument("bridge_voltage: gate length mismatch");
    Samples out(g1.size());
    for (std::size_t n = 0; n < g1.size(); ++n) {
        out[n] = v_dc * (static_cast<double>(g1[n]) - static_cast<double>(g2[n]));
    }
    return out;
}

/// The three DC bridge voltages together with their common-mode part.
struct ThreePhaseBridgeSet {
    std::array<Samples, 3> bridge;  // v_Xx, v_Yy, v_Zz
    Samples v_cm;                   // (v_Xx + v_Yy + v_Zz) / 3
};

inline ThreePhaseBridgeSet make_bridge_set(std::array<Samples, 3> bridge) {
    const std::size_t N = bridge[0].size();
    if (bridge[1].size() != N || bridge[2].size() != N) {
        throw std::invalid_argument("make_bridge_set: sequence length mismatch");
    }
    ThreePhaseBridgeSet set;
    set.v_cm.resize(N);
    for (std::size_t n = 0; n < N; ++n) set.v_cm[n] = (bridge[0][n] + bridge[1][n] + bridge[2][n]) / 3.0;
    set.bridge = std::move(bridge);
    return set;
}

/// Differential-mode winding voltages v_PN = v_Pp - v_cm. They sum to zero per sample.
inline std::array<Samples, 3> dm_decompose(const ThreePhaseBridgeSet& set) {
    const std::size_t N = set.v_cm.size();
    std::array<Samples, 3> out;
    for (int k = 0; k < 3; ++k) {
        if (set.bridge[k].size() != N) throw std::invalid_argument("dm_decompose: sequence length mismatch");
        out[k].resize(N);
        for (std::size_t n = 0; n < N; ++n) out[k][n] = set.bridge[k][n] - set.v_cm[n];
    }
    return out;
}

/// Voltage across the link inductance: v_AN - v_XN for the YAB (pass the DM
/// voltage), v_AN - v_Xx for the AC-DC DAB (pass the full bridge voltage).
inline Samples inductor_voltage(std::span<const double> v_AN, std::span<const double> dc_side, Topology) {
    if (v_AN.size() != dc_side.size()) throw std::invalid_argument("inductor_voltage: sequence length mismatch");
    Samples out(v_AN.size());
    for (std::size_t n = 0; n < v_AN.size(); ++n) out[n] = v_AN[n] - dc_side[n];
    return out;
}

enum class SwitchVoltageScale {
    normalized,  // sqrt(6) v_g / v_dc * sin(.), dimensionless
    volts,       // sqrt(6) v_g * sin(.), used for loss-map lookups
};

/// Voltage commutated by the AC half-bridge of phase a. Zero on the clamped
/// interval 120 < theta < 240.
inline double ac_switch_voltage(double theta, double v_g_rms, double v_dc,
                                SwitchVoltageScale scale = SwitchVoltageScale::normalized) {
    constexpr double pi = std::numbers::pi;
    const double t = wrap_degrees(theta);
    double s = 0.0;
    if (t <= 120.0) {
        s = std::sin(2.0 * pi / 3.0 - t * pi / 180.0);
    } else if (t >= 240.0) {
        s = std::sin(2.0 * pi / 3.0 + t * pi / 180.0);
    } else {
        return 0.0;
    }
    const double amplitude = std::sqrt(6.0) * v_g_rms;
    return scale == SwitchVoltageScale::volts ? amplitude * s : amplitude / v_dc * s;
}

/// Phase-A waveforms of one switching period. i_t is filled by the harmonic solver.
struct SwitchingCycle {
    double theta = 0.0;
    Samples v_AN;
    Samples v_Xx;
    Samples v_XN;
    Samples v_L;
    Samples i_t;
};

/// Everything synthesized at one grid angle, for all three phases.
struct CycleBundle {
    ModulationPoint point;
    GateWaveform ac_gate;              // g_a+ (identical for b and c)
    std::array<DcGatePair, 3> dc;      // gates of bridges x, y, z
    std::array<SwitchingCycle, 3> phase;  // A, B, C
    Samples v_cm;
};

/// Builds gates and winding voltages of all phases at grid angle theta for main
/// phase shift phi (seconds).
inline CycleBundle synthesize_cycle(const ConverterParams& p, double theta, double phi, Topology topology) {
    CycleBundle b;
    b.point = make_modulation_point(theta, phi, p.v_g_peak(), p.v_dc, p.T_sw());
    b.ac_gate = gate_reference(p.N_sw);

    std::array<Samples, 3> bridges;
    for (int k = 0; k < 3; ++k) {
        b.dc[k] = dc_gates(b.point, p.N_sw, k);
        bridges[k] = bridge_voltage(b.dc[k].leg1, b.dc[k].leg2, p.v_dc);
    }
    ThreePhaseBridgeSet set = make_bridge_set(std::move(bridges));
    std::array<Samples, 3> dm = dm_decompose(set);

    for (int k = 0; k < 3; ++k) {
        SwitchingCycle& c = b.phase[k];
        c.theta = theta;
        c.v_AN = primary_winding_voltage(b.ac_gate, b.point.v[k]);
        c.v_Xx = std::move(set.bridge[k]);
        c.v_XN = std::move(dm[k]);
        c.v_L = inductor_voltage(c.v_AN, topology == Topology::YAB ? c.v_XN : c.v_Xx, topology);
    }
    b.v_cm = std::move(set.v_cm);
    return b;
}

}  // namespace yab
