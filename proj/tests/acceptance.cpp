// Acceptance gate: each criterion prints one PASS/FAIL line. Run one with
// `acceptance --criterion N`, or all of them with no arguments.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "yab/yab.hpp"

using namespace yab;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
    std::vector<std::string> info;
};

std::string fmt(double x, int digits = 4) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    return buf;
}

// ideal inductor, no series resistance
ConverterParams ideal() {
    ConverterParams p;
    p.R_series = 0.0;
    return p;
}

// device inputs for the loss checks
ConverterParams ideal_with_devices() {
    ConverterParams p = ideal();
    p.R_ds_on = 0.021;
    p.C_oss = 1e-9;
    return p;
}

std::vector<double> phi_range(int from, int to) {
    std::vector<double> g;
    for (int k = from; k <= to; ++k) g.push_back(k / 100.0);
    return g;
}

const std::vector<double> vdcs{200.0, 250.0, 300.0};

GridCycleResult run(ConverterParams p, double v_dc, Topology t, double phi_frac) {
    p.v_dc = v_dc;
    p.topology = t;
    GridOptions o;
    o.jobs = 0;
    return grid_cycle(p, phi_frac * p.T_sw(), o);
}

double elapsed_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome criterion_1() {
    const auto t0 = std::chrono::steady_clock::now();
    const Table t = capbounds_table(ConverterParams{}, 0.01, 0.2);
    const double c_min = *parse_double(t.rows[0][0]), c_max = *parse_double(t.rows[0][1]);
    const double secs = elapsed_since(t0);
    const bool ok = std::abs(c_min / 3.28e-6 - 1) <= 0.01 && std::abs(c_max / 86.4e-6 - 1) <= 0.01 && secs < 1.0;
    return {ok, "c_min=" + fmt(c_min * 1e6) + " uF, c_max=" + fmt(c_max * 1e6) + " uF, " + fmt(secs, 2) + " s", {}};
}

Outcome criterion_2() {
    const auto t0 = std::chrono::steady_clock::now();
    const ConverterParams p;  // R_series = 24.8 mOhm, N_sw = 2048
    const auto pts = random_operating_points(100, 42);
    const auto rows = oracle_check(p, pts, 0);
    double worst_rel = 0.0, worst_max = 0.0;
    int breaches = 0;
    const OracleCheckRow* worst = nullptr;
    for (const auto& r : rows) {
        if (r.cmp.rel_rms_err >= 0.005 || r.cmp.max_abs_err_over_peak >= 0.02) ++breaches;
        if (r.cmp.rel_rms_err > worst_rel) {
            worst_rel = r.cmp.rel_rms_err;
            worst = &r;
        }
        worst_max = std::max(worst_max, r.cmp.max_abs_err_over_peak);
    }
    ConverterParams p512 = p;
    p512.N_sw = 512;
    const auto rows512 = oracle_check(p512, pts, 0);
    double worst_power = 0.0;
    for (const auto& r : rows512) {
        worst_power = std::max(worst_power, std::abs(r.p_fft - r.p_oracle) / std::abs(r.p_oracle));
    }
    const double secs = elapsed_since(t0);
    Outcome o;
    o.pass = breaches == 0 && worst_power < 0.01 && secs < 60.0;
    o.detail = std::to_string(breaches) + "/100 points over tolerance; worst rel_rms_err=" + fmt(worst_rel) +
               ", worst max_err=" + fmt(worst_max) + "; worst power mismatch at N_sw=512: " + fmt(worst_power) + ", " +
               fmt(secs, 2) + " s";
    if (worst) {
        o.info.push_back("worst point theta=" + fmt(worst->point.theta) + " phi=" + fmt(worst->point.phi) +
                         " v_dc=" + fmt(worst->point.v_dc));
    }
    int near_crossing = 0;
    for (const auto& r : rows) {
        if (r.cmp.rel_rms_err >= 0.005 || r.cmp.max_abs_err_over_peak >= 0.02) {
            const double t = wrap_degrees(r.point.theta);
            near_crossing += std::abs(t - 90.0) < 10.0 || std::abs(t - 270.0) < 10.0;
        }
    }
    if (breaches) o.info.push_back(std::to_string(near_crossing) + " of the breaching points lie within 10 deg of a grid-voltage zero crossing");
    return o;
}

Outcome criterion_3() {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (double v : vdcs) {
        for (double f : default_phi_grid()) {
            const double y = run(ideal(), v, Topology::YAB, f).P_avg;
            const double d = run(ideal(), v, Topology::ACDC_DAB, f).P_avg;
            worst = std::max(worst, std::abs(y - d) / std::max(1.0, std::abs(y)));
        }
    }
    const double secs = elapsed_since(t0);
    return {worst <= 1e-6 && secs < 120.0, "max |P_YAB - P_DAB| / max(1 W, P) = " + fmt(worst) + ", " + fmt(secs, 2) + " s", {}};
}

Outcome criterion_4() {
    const auto phis = default_phi_grid(true);
    std::map<double, std::vector<double>> P;
    for (double v : vdcs)
        for (double f : phis) P[v].push_back(run(ideal(), v, Topology::YAB, f).P_avg);
    bool monotone = true, symmetric = true, in_vdc = true, peak_at_quarter = true;
    double worst_sym = 0.0;
    for (double v : vdcs) {
        const auto& s = P[v];
        const double peak = s[25];
        for (int k = 1; k <= 25; ++k) monotone &= s[k] >= s[k - 1] - 1e-9 * peak;
        for (int k = 0; k <= 25; ++k) {
            const double rel = std::abs(s[25 - k] - s[25 + k]) / peak;
            worst_sym = std::max(worst_sym, rel);
            symmetric &= rel <= 1e-6;
        }
        peak_at_quarter &= *std::max_element(s.begin(), s.end()) <= peak * (1 + 1e-12);
    }
    for (std::size_t k = 1; k < phis.size() - 1; ++k) {
        in_vdc &= P[200.0][k] < P[250.0][k] && P[250.0][k] < P[300.0][k];
    }
    Outcome o;
    o.pass = monotone && symmetric && in_vdc && peak_at_quarter;
    o.detail = std::string("monotone on [0,0.25]: ") + (monotone ? "yes" : "no") + ", max symmetry error " +
               fmt(worst_sym) + ", increasing in v_dc: " + (in_vdc ? "yes" : "no") + ", P(0.25)=" +
               fmt(P[200.0][25]) + "/" + fmt(P[250.0][25]) + "/" + fmt(P[300.0][25]) + " W";
    return o;
}

Outcome criterion_5() {
    const double P = run(ideal(), 200.0, Topology::YAB, 0.2).P_avg;
    const double P_r = run(ConverterParams{}, 200.0, Topology::YAB, 0.2).P_avg;
    Outcome o{std::abs(P / 4180.0 - 1) <= 0.10, "P(phi=0.2T_sw, v_dc=200) = " + fmt(P, 5) + " W (target 4180 W +/- 10 %)", {}};
    o.info.push_back("with R_series=24.8 mOhm: " + fmt(P_r, 5) + " W");
    return o;
}

Outcome criterion_6() {
    double yab_max = 0.0, dab_max = 0.0;
    bool ordered = true;
    std::string first_violation;
    for (double v : vdcs) {
        for (double f : default_phi_grid()) {
            const auto y = run(ideal(), v, Topology::YAB, f);
            yab_max = std::max(yab_max, y.thd);
            if (f >= 0.1 - 1e-12) {
                const auto d = run(ideal(), v, Topology::ACDC_DAB, f);
                dab_max = std::max(dab_max, d.thd);
                if (d.thd < y.thd && ordered) {
                    ordered = false;
                    first_violation = " (first at v_dc=" + fmt(v) + ", phi=" + fmt(f) + ")";
                }
            }
        }
    }
    return {yab_max < 0.025 && ordered && dab_max > 0.05,
            "max YAB THD=" + fmt(100 * yab_max) + " %, DAB >= YAB for phi >= 0.1: " + (ordered ? "yes" : "no") +
                first_violation + ", max DAB THD=" + fmt(100 * dab_max) + " %", {}};
}

Outcome criterion_7() {
    bool ok = true;
    double min_ratio = 1e300;
    for (double v : vdcs) {
        for (double f : default_phi_grid()) {
            const double y = run(ideal(), v, Topology::YAB, f).I_t_rms;
            const double d = run(ideal(), v, Topology::ACDC_DAB, f).I_t_rms;
            ok &= y < d;
            min_ratio = std::min(min_ratio, d / y);
        }
    }
    return {ok, "min I_rms(DAB)/I_rms(YAB) over the sweep = " + fmt(min_ratio, 5), {}};
}

Outcome criterion_8() {
    bool a_neg = true, ac_clamped_zero = true, x1_majority = true;
    double worst_a = -1e300, min_x1 = 1.0;
    for (double f : phi_range(5, 25)) {
        const auto r = run(ideal_with_devices(), 200.0, Topology::YAB, f);
        std::size_t soft = 0;
        for (const auto& a : r.angles) {
            if (a.theta > 0.0 && a.theta < 90.0) {
                a_neg &= a.turn_on.i_sw_a < 0.0;
                worst_a = std::max(worst_a, a.turn_on.i_sw_a);
            }
            if (a.theta > 120.0 && a.theta < 240.0) ac_clamped_zero &= a.p_sw_a == 0.0;
            soft += is_soft(*a.cls_x1);
        }
        const double frac = static_cast<double>(soft) / static_cast<double>(r.angles.size());
        min_x1 = std::min(min_x1, frac);
        x1_majority &= frac >= 0.8;
    }
    Outcome o;
    o.pass = a_neg && ac_clamped_zero && x1_majority;
    o.detail = "v_dc=200, phi in [0.05,0.25]: max i_sw_a on (0,90) deg = " + fmt(worst_a) + " A, AC loss zero on clamp: " +
               (ac_clamped_zero ? "yes" : "no") + ", min S_x1 soft-switching share = " + fmt(100 * min_x1) + " %";
    for (double v : {250.0, 300.0}) {
        double share = 1.0;
        for (double f : {0.05, 0.15, 0.25}) {
            const auto r = run(ideal_with_devices(), v, Topology::YAB, f);
            std::size_t soft = 0;
            for (const auto& a : r.angles) soft += is_soft(*a.cls_x1);
            share = std::min(share, static_cast<double>(soft) / 360.0);
        }
        o.info.push_back("v_dc=" + fmt(v) + ": min S_x1 soft-switching share at phi in {0.05,0.15,0.25} = " + fmt(100 * share) + " %");
    }
    return o;
}

Outcome criterion_9() {
    bool ok = true;
    std::vector<std::string> failing;
    double worst = -1e300;
    for (double f : phi_range(5, 25)) {
        const auto y = run(ideal(), 300.0, Topology::YAB, f);
        const auto d = run(ideal(), 300.0, Topology::ACDC_DAB, f);
        const double rel = (y.B_bar_max - d.B_bar_max) / d.B_bar_max;
        worst = std::max(worst, rel);
        if (!(y.B_bar_max < d.B_bar_max)) {
            ok = false;
            failing.push_back(fmt(f));
        }
    }
    Outcome o;
    o.pass = ok;
    o.detail = "v_dc=300: max (B_YAB - B_DAB)/B_DAB = " + fmt(worst) + "; not strictly lower at phi = ";
    if (failing.empty()) o.detail += "none";
    for (std::size_t k = 0; k < failing.size(); ++k) o.detail += (k ? "," : "") + failing[k];
    o.info.push_back("DAB flux computed under plain Sin-PS modulation (no DC-side compensation)");
    return o;
}

Outcome criterion_10() {
    const ConverterParams p = ideal_with_devices();
    bool upper_exceeds = true;
    double min_ratio = 1e300;
    for (int k = 26; k <= 50; ++k) {
        const double f = k / 100.0, mirror = (50 - k) / 100.0;
        const double hi = aggregate_losses(run(p, 200.0, Topology::YAB, f)).total();
        const double lo = aggregate_losses(run(p, 200.0, Topology::YAB, mirror)).total();
        upper_exceeds &= hi > lo;
        min_ratio = std::min(min_ratio, hi / lo);
    }

    const auto r = run(p, 200.0, Topology::YAB, 0.2);
    auto argmax = [&](auto value) {
        std::size_t best = 0;
        for (std::size_t k = 1; k < r.angles.size(); ++k)
            if (value(r.angles[k]) > value(r.angles[best])) best = k;
        return r.angles[best].theta;
    };
    auto distance_to = [](double theta, std::initializer_list<double> targets) {
        double d = 1e300;
        for (double t : targets) d = std::min(d, std::abs(theta - t));
        return d;
    };
    const double cond_peak = argmax([](const AngleRecord& a) { return a.p_cond; });
    const double sw_peak = argmax([](const AngleRecord& a) { return a.p_sw_a + a.p_sw_x1 + a.p_sw_x2; });
    // voltage maxima of phase a at 0/180/360 deg, zero crossings at 90/270 deg
    const bool cond_ok = distance_to(cond_peak, {0.0, 180.0, 360.0}) <= 1.0;
    const bool sw_ok = distance_to(sw_peak, {90.0, 270.0}) <= 15.0;

    Outcome o;
    o.pass = upper_exceeds && cond_ok && sw_ok;
    o.detail = "(a) losses on (0.25,0.5] exceed mirrors: " + std::string(upper_exceeds ? "yes" : "no") +
               " (min ratio " + fmt(min_ratio) + "); (b) conduction peak at " + fmt(cond_peak) +
               " deg, switching peak at " + fmt(sw_peak) + " deg (needs within 15 deg of 90/270)";
    o.info.push_back("loss map: " + std::string(LossMap::placeholder_label));
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> which;
    for (int a = 1; a < argc; ++a) {
        if (std::strcmp(argv[a], "--criterion") == 0 && a + 1 < argc) {
            which.push_back(std::atoi(argv[++a]));
        } else {
            std::fprintf(stderr, "usage: acceptance [--criterion N]...\n");
            return 2;
        }
    }
    if (which.empty())
        for (int k = 1; k <= 10; ++k) which.push_back(k);

    const std::vector<std::function<Outcome()>> criteria{criterion_1, criterion_2, criterion_3, criterion_4,
                                                         criterion_5, criterion_6, criterion_7, criterion_8,
                                                         criterion_9, criterion_10};
    int failed = 0;
    for (int k : which) {
        if (k < 1 || k > 10) {
            std::fprintf(stderr, "no criterion %d\n", k);
            return 2;
        }
        Outcome o;
        try {
            o = criteria[static_cast<std::size_t>(k - 1)]();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what(), {}};
        }
        std::printf("criterion %2d: %s  %s\n", k, o.pass ? "PASS" : "FAIL", o.detail.c_str());
        for (const auto& line : o.info) std::printf("              info: %s\n", line.c_str());
        std::fflush(stdout);
        failed += !o.pass;
    }
    return failed ? 1 : 0;
}
