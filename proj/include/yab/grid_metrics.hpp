#pragma once

// Grid-period sweep: every switching-cycle derived quantity over the
// half-degree-offset grid angles, plus the flux and loss figures.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "yab/error.hpp"
#include "yab/harmonic_solver.hpp"
#include "yab/loss_map.hpp"
#include "yab/modulation.hpp"
#include "yab/parallel.hpp"
#include "yab/params.hpp"
#include "yab/waveforms.hpp"

namespace yab {

enum class ZvsClass { full_zvs, partial_zvs, hard, clamped };

inline std::string_view to_string(ZvsClass c) {
    switch (c) {
        case ZvsClass::full_zvs: return "full_zvs";
        case ZvsClass::partial_zvs: return "partial_zvs";
        case ZvsClass::hard: return "hard";
        case ZvsClass::clamped: return "clamped";
    }
    return "?";
}

inline bool is_soft(ZvsClass c) { return c == ZvsClass::full_zvs || c == ZvsClass::partial_zvs; }

/// Turn-on classification. A negative i_sw (current leaving through the body
/// diode) is ZVS; it is complete when |i_sw| can swing both output capacitances
/// within the link inductance, |i_sw| > v_sw sqrt(2 C_oss / L_t).
inline ZvsClass zvs_classify(double i_sw, double v_sw, double L_t, double C_oss) {
    if (v_sw == 0.0) return ZvsClass::clamped;
    if (i_sw >= 0.0) return ZvsClass::hard;
    const double threshold = std::abs(v_sw) * std::sqrt(2.0 * C_oss / L_t);
    return std::abs(i_sw) > threshold ? ZvsClass::full_zvs : ZvsClass::partial_zvs;
}

struct SwitchingLoss {
    double watts = 0.0;
    bool clamped_lookup = false;
};

/// p_sw = f_sw E_sw(v_sw, i_sw), zero for an actively clamped half-bridge.
inline SwitchingLoss switching_loss(double v_sw, double i_sw, ZvsClass cls, const LossMap& map, double f_sw) {
    if (cls == ZvsClass::clamped) return {};
    const LossLookup e = map.lookup(std::abs(v_sw), i_sw);
    return {f_sw * e.energy, e.clamped};
}

inline double rms(std::span<const double> x) {
    if (x.empty()) return 0.0;
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s / static_cast<double>(x.size()));
}

/// Per half-bridge conduction loss I_rms^2 R_ds_on.
inline double conduction_loss(std::span<const double> i_t, double R_ds_on) {
    const double r = rms(i_t);
    return r * r * R_ds_on;
}

/// Switching-period average of v_AN i_t.
inline double phase_power(std::span<const double> v_AN, std::span<const double> i_t) {
    if (v_AN.size() != i_t.size()) throw std::invalid_argument("phase_power: length mismatch");
    if (v_AN.empty()) return 0.0;
    double s = 0.0;
    for (std::size_t n = 0; n < v_AN.size(); ++n) s += v_AN[n] * i_t[n];
    return s / static_cast<double>(v_AN.size());
}

/// Harmonic magnitudes (peak amplitudes) 0..max_k of a periodic sequence by direct DFT.
inline std::vector<double> harmonic_magnitudes(std::span<const double> x, int max_k) {
    const std::size_t N = x.size();
    if (max_k < 1 || static_cast<std::size_t>(2 * max_k) >= N) {
        throw std::invalid_argument("harmonic_magnitudes: need 1 <= max_k < N/2");
    }
    std::vector<double> mag(static_cast<std::size_t>(max_k) + 1);
    for (int k = 0; k <= max_k; ++k) {
        std::complex<double> s = 0.0;
        for (std::size_t n = 0; n < N; ++n) {
            const double a = -2.0 * std::numbers::pi * static_cast<double>((static_cast<std::size_t>(k) * n) % N) /
                             static_cast<double>(N);
            s += x[n] * std::complex<double>(std::cos(a), std::sin(a));
        }
        mag[static_cast<std::size_t>(k)] = (k == 0 ? 1.0 : 2.0) * std::abs(s) / static_cast<double>(N);
    }
    return mag;
}

struct GridCurrent {
    std::vector<double> i_a;
    double fundamental = 0.0;  // I_1, A peak
    double thd = 0.0;
    bool no_load = false;      // I_1 below the current floor; thd reported as 0
};

/// i_a = p_a / v_a and THD = sqrt(sum_{k=2..n} I_k^2) / I_1. A fundamental below
/// current_floor is treated as no load (THD 0) instead of dividing by numerical noise.
inline GridCurrent grid_current_and_thd(std::span<const double> p_a, std::span<const double> v_a,
                                        int n_harmonics = 50, double current_floor = 0.0) {
    if (p_a.size() != v_a.size()) throw std::invalid_argument("grid_current_and_thd: length mismatch");
    double v_hat = 0.0;
    for (double v : v_a) v_hat = std::max(v_hat, std::abs(v));
    GridCurrent out;
    out.i_a.resize(p_a.size());
    for (std::size_t n = 0; n < p_a.size(); ++n) {
        if (!(std::abs(v_a[n]) >= 1e-6 * v_hat) || v_hat == 0.0) {
            throw ModelInvariantError("grid_current_and_thd: grid voltage vanishes at sample " + std::to_string(n));
        }
        out.i_a[n] = p_a[n] / v_a[n];
    }
    const auto mag = harmonic_magnitudes(out.i_a, n_harmonics);
    out.fundamental = mag[1];
    if (!(out.fundamental > current_floor)) {
        out.no_load = true;
        return out;
    }
    double h = 0.0;
    for (std::size_t k = 2; k < mag.size(); ++k) h += mag[k] * mag[k];
    out.thd = std::sqrt(h) / out.fundamental;
    return out;
}

/// RMS over the concatenation of all per-angle current sequences.
inline double current_stress(std::span<const Samples> currents) {
    double s = 0.0;
    std::size_t n = 0;
    for (const auto& c : currents) {
        for (double v : c) s += v * v;
        n += c.size();
    }
    return n == 0 ? 0.0 : std::sqrt(s / static_cast<double>(n));
}

struct TurnOnCurrents {
    double i_sw_a = 0.0;
    double i_sw_x1 = 0.0;
    double i_sw_x2 = 0.0;
};

/// Currents at the turn-on instants of S_a+, S_x1+ and S_x2+, located from the
/// rising edges of their gates. i_t is positive out of the AC switching node.
inline TurnOnCurrents turn_on_currents(std::span<const double> i_t, const GateWaveform& g_a, const DcGatePair& g_x) {
    if (i_t.size() != g_a.size() || i_t.size() != g_x.leg1.size() || i_t.size() != g_x.leg2.size()) {
        throw std::invalid_argument("turn_on_currents: length mismatch");
    }
    return {i_t[rising_edge(g_a)], -i_t[rising_edge(g_x.leg1)], i_t[rising_edge(g_x.leg2)]};
}

struct InductorFlux {
    double B_max = 0.0;      // T
    double B_bar_max = 0.0;  // T/W
};

inline double inductor_peak_flux(std::span<const double> v_L, double N_l, double A_c_l, double f_sw) {
    double l1 = 0.0;
    for (double v : v_L) l1 += std::abs(v);
    return l1 / (4.0 * N_l * static_cast<double>(v_L.size()) * f_sw * A_c_l);
}

/// B_max = ||v_L||_1 / (4 N_l N_sw f_sw A_c_l) and its normalization by the peak phase power.
inline InductorFlux inductor_flux(std::span<const double> v_L, double N_l, double A_c_l, double f_sw, double p_hat_a) {
    if (!(p_hat_a > 0.0)) throw std::invalid_argument("inductor_flux: peak phase power must be positive");
    const double b = inductor_peak_flux(v_L, N_l, A_c_l, f_sw);
    return {b, b / p_hat_a};
}

/// Peak HFT flux of the high-frequency pulse at start-up.
inline double hft_startup_flux(double v_g_peak, double N_t, double A_c_t, double f_sw) {
    return (1.0 / A_c_t) * (v_g_peak / (2.0 * N_t)) * 0.25 / f_sw;
}

/// Peak HFT flux from the grid-frequency voltage left across the winding by the
/// L_t / C_B divider.
inline double hft_lowfreq_flux(double v_g_peak, double N_t, double A_c_t, double f_g, double L_t, double C_B) {
    const double x_l = 2.0 * std::numbers::pi * f_g * L_t;
    const double x_c = 1.0 / (2.0 * std::numbers::pi * f_g * C_B);
    return (1.0 / A_c_t) * (v_g_peak / (2.0 * N_t)) * (x_l / (x_l + x_c)) * 0.25 / f_g;
}

struct GridOptions {
    const LossMap* loss_map = nullptr;  // placeholder map when null
    int n_harmonics = 50;
    int jobs = 1;
    bool keep_cycles = false;
    double invariant_rel_tol = 1e-9;
};

struct AngleRecord {
    double theta = 0.0;
    double v_a = 0.0;
    double p_a = 0.0, p_b = 0.0, p_c = 0.0, p_total = 0.0;
    double I_rms = 0.0;  // phase-A winding current RMS over the switching period
    double sum_sq = 0.0; // sum of i_tA^2 over the period
    TurnOnCurrents turn_on;
    double v_sw_a = 0.0;   // V
    double v_sw_dc = 0.0;  // V
    std::optional<ZvsClass> cls_a, cls_x1, cls_x2;
    double p_sw_a = 0.0, p_sw_x1 = 0.0, p_sw_x2 = 0.0, p_cond = 0.0;
    int clamped_lookups = 0;
};

struct GridCycleResult {
    Topology topology = Topology::YAB;
    double phi = 0.0;  // seconds
    std::vector<AngleRecord> angles;
    double P_avg = 0.0;
    std::vector<double> i_a;
    double I_1 = 0.0;
    double thd = 0.0;
    bool no_load = false;
    double I_t_rms = 0.0;
    double B_max = 0.0;
    double B_bar_max = 0.0;  // NaN when p_a at the first grid angle is not positive
    bool has_losses = false;
    std::string loss_map_label;
    int clamped_lookups = 0;
    std::vector<SwitchingCycle> cycles;  // phase A, filled when keep_cycles

    std::vector<double> theta_grid() const {
        std::vector<double> t;
        for (const auto& a : angles) t.push_back(a.theta);
        return t;
    }
};

/// Half-degree-offset grid angles {0.5, 1.5, ...} for n_theta = 360.
inline std::vector<double> grid_angles(int n_theta) {
    std::vector<double> t(static_cast<std::size_t>(n_theta));
    for (int k = 0; k < n_theta; ++k) t[static_cast<std::size_t>(k)] = (k + 0.5) * 360.0 / n_theta;
    return t;
}

/// Evaluates one grid angle: synthesis, current, power, turn-on and loss metrics.
inline AngleRecord evaluate_angle(const ConverterParams& p, double theta, double phi, Topology topology,
                                  const LossMap& map, SwitchingCycle* keep = nullptr) {
    CycleBundle b = synthesize_cycle(p, theta, phi, topology);
    const LinkImpedanceSpec z{p.L_t, p.R_series, p.f_sw, p.N_sw};
    AngleRecord r;
    r.theta = theta;
    r.v_a = b.point.v[0];
    std::array<double, 3> power{};
    for (int k = 0; k < 3; ++k) {
        auto& c = b.phase[k];
        c.i_t = steady_state_current(c.v_L, z);
        power[k] = phase_power(c.v_AN, c.i_t);
    }
    r.p_a = power[0];
    r.p_b = power[1];
    r.p_c = power[2];
    r.p_total = power[0] + power[1] + power[2];

    const Samples& i_t = b.phase[0].i_t;
    for (double v : i_t) r.sum_sq += v * v;
    r.I_rms = std::sqrt(r.sum_sq / static_cast<double>(i_t.size()));
    r.turn_on = turn_on_currents(i_t, b.ac_gate, b.dc[0]);
    r.v_sw_a = ac_switch_voltage(theta, p.v_g_rms, p.v_dc, SwitchVoltageScale::volts);
    r.v_sw_dc = p.v_dc;

    if (p.C_oss) {
        r.cls_a = zvs_classify(r.turn_on.i_sw_a, r.v_sw_a, p.L_t, *p.C_oss);
        r.cls_x1 = zvs_classify(r.turn_on.i_sw_x1, r.v_sw_dc, p.L_t, *p.C_oss);
        r.cls_x2 = zvs_classify(r.turn_on.i_sw_x2, r.v_sw_dc, p.L_t, *p.C_oss);
    }
    if (p.C_oss && p.R_ds_on) {
        const SwitchingLoss a = switching_loss(r.v_sw_a, r.turn_on.i_sw_a, *r.cls_a, map, p.f_sw);
        const SwitchingLoss x1 = switching_loss(r.v_sw_dc, r.turn_on.i_sw_x1, *r.cls_x1, map, p.f_sw);
        const SwitchingLoss x2 = switching_loss(r.v_sw_dc, r.turn_on.i_sw_x2, *r.cls_x2, map, p.f_sw);
        r.p_sw_a = a.watts;
        r.p_sw_x1 = x1.watts;
        r.p_sw_x2 = x2.watts;
        r.clamped_lookups = int(a.clamped_lookup) + int(x1.clamped_lookup) + int(x2.clamped_lookup);
        r.p_cond = conduction_loss(i_t, *p.R_ds_on);
    }
    if (keep) *keep = std::move(b.phase[0]);
    return r;
}

/// Full grid period at main phase shift phi (seconds) for p.topology.
inline GridCycleResult grid_cycle(const ConverterParams& p, double phi, const GridOptions& options = {}) {
    require_valid(p);
    if (!std::isfinite(phi)) throw std::invalid_argument("grid_cycle: phi must be finite");
    static const LossMap placeholder = LossMap::placeholder();
    const LossMap& map = options.loss_map ? *options.loss_map : placeholder;

    const auto thetas = grid_angles(p.n_theta);
    const std::size_t n = thetas.size();
    GridCycleResult res;
    res.topology = p.topology;
    res.phi = phi;
    res.angles.resize(n);
    if (options.keep_cycles) res.cycles.resize(n);
    parallel_for(n, options.jobs, [&](std::size_t k) {
        res.angles[k] = evaluate_angle(p, thetas[k], phi, p.topology, map,
                                       options.keep_cycles ? &res.cycles[k] : nullptr);
    });

    // Three-phase symmetry: phase b at theta is phase a at theta - 120.
    const std::size_t shift = n / 3;
    double p_scale = 0.0;
    for (const auto& a : res.angles) p_scale = std::max(p_scale, std::abs(a.p_a));
    const double rated = 3.0 * std::abs(p.v_g_rms * p.v_dc / (2.0 * std::numbers::pi * p.f_sw * p.L_t));
    const double tol = options.invariant_rel_tol * std::max(p_scale, 1e-12 * rated);
    for (std::size_t k = 0; k < n; ++k) {
        const double p_b = res.angles[k].p_b;
        const double p_a_lag = res.angles[(k + n - shift) % n].p_a;
        if (std::abs(p_b - p_a_lag) > tol) {
            throw ModelInvariantError("grid_cycle: three-phase symmetry violated at theta = " +
                                      format_number(res.angles[k].theta) + ": p_b = " + format_number(p_b) +
                                      ", p_a(theta - 120) = " + format_number(p_a_lag));
        }
    }

    double sum_p = 0.0, sum_sq = 0.0;
    std::size_t samples = 0;
    std::vector<double> p_a(n), v_a(n);
    for (std::size_t k = 0; k < n; ++k) {
        const auto& a = res.angles[k];
        sum_p += a.p_total;
        sum_sq += a.sum_sq;
        samples += static_cast<std::size_t>(p.N_sw);
        p_a[k] = a.p_a;
        v_a[k] = a.v_a;
        res.clamped_lookups += a.clamped_lookups;
    }
    res.P_avg = sum_p / static_cast<double>(n);
    res.I_t_rms = std::sqrt(sum_sq / static_cast<double>(samples));

    const double current_floor = 1e-9 * p.v_g_peak() / (2.0 * std::numbers::pi * p.f_sw * p.L_t);
    GridCurrent gc = grid_current_and_thd(p_a, v_a, options.n_harmonics, current_floor);
    res.i_a = std::move(gc.i_a);
    res.I_1 = gc.fundamental;
    res.thd = gc.thd;
    res.no_load = gc.no_load;

    // Flux at the grid angle nearest theta = 0, where v_a peaks.
    const CycleBundle peak = synthesize_cycle(p, thetas[0], phi, p.topology);
    res.B_max = inductor_peak_flux(peak.phase[0].v_L, p.N_l, p.A_c_l, p.f_sw);
    res.B_bar_max = res.angles[0].p_a > 0.0 ? res.B_max / res.angles[0].p_a : std::nan("");

    res.has_losses = p.C_oss.has_value() && p.R_ds_on.has_value();
    if (res.has_losses) res.loss_map_label = map.label();
    for (const auto& a : res.angles) {
        if (!std::isfinite(a.p_total) || !std::isfinite(a.I_rms)) {
            throw ModelInvariantError("grid_cycle: non-finite result at theta = " + format_number(a.theta));
        }
    }
    return res;
}

struct LossTotals {
    double P_sw_total = 0.0;    // 3 AC + 6 DC half-bridges, W
    double P_cond_total = 0.0;  // 9 half-bridges, W
    double total() const { return P_sw_total + P_cond_total; }
};

/// Grid-period average losses. By phase symmetry every AC half-bridge sees the
/// phase-a sequence shifted by 120 deg, and each DC leg the x1/x2 sequence, so
/// the period averages multiply by the half-bridge counts.
inline LossTotals aggregate_losses(const GridCycleResult& r) {
    if (!r.has_losses) throw std::invalid_argument("aggregate_losses: result carries no loss data (set R_ds_on and C_oss)");
    LossTotals t;
    if (r.angles.empty()) return t;
    double sw = 0.0, cond = 0.0;
    for (const auto& a : r.angles) {
        sw += a.p_sw_a + a.p_sw_x1 + a.p_sw_x2;
        cond += a.p_cond;
    }
    const double n = static_cast<double>(r.angles.size());
    t.P_sw_total = 3.0 * sw / n;
    t.P_cond_total = 9.0 * cond / n;
    return t;
}

}  // namespace yab
