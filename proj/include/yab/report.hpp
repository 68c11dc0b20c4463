#pragma once

// Sweeps, figure tables and CSV output for the command-line front end.

#include <algorithm>
#include <array>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "yab/error.hpp"
#include "yab/format.hpp"
#include "yab/grid_metrics.hpp"
#include "yab/harmonic_solver.hpp"
#include "yab/loss_map.hpp"
#include "yab/parallel.hpp"
#include "yab/params.hpp"
#include "yab/td_oracle.hpp"
#include "yab/waveforms.hpp"

namespace yab {

/// A CSV document: '#' comment lines, a header row and string cells.
struct Table {
    std::vector<std::string> comments;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    std::string to_csv() const {
        std::string out;
        for (const auto& c : comments) out += "# " + c + "\n";
        auto line = [&](const std::vector<std::string>& cells) {
            for (std::size_t k = 0; k < cells.size(); ++k) {
                if (k) out += ',';
                out += cells[k];
            }
            out += '\n';
        };
        line(columns);
        for (const auto& r : rows) line(r);
        return out;
    }
};

inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError(path.string(), "cannot write output file");
    f << text;
}

inline std::string params_comment(const ConverterParams& p) { return "params: " + describe_params(p); }

// ---------------------------------------------------------------------------
// sweep

enum class Metric { power, thd, stress, zvs, loss, flux };

inline std::string_view to_string(Metric m) {
    switch (m) {
        case Metric::power: return "power";
        case Metric::thd: return "thd";
        case Metric::stress: return "stress";
        case Metric::zvs: return "zvs";
        case Metric::loss: return "loss";
        case Metric::flux: return "flux";
    }
    return "?";
}

inline std::optional<Metric> parse_metric(std::string_view s) {
    for (Metric m : {Metric::power, Metric::thd, Metric::stress, Metric::zvs, Metric::loss, Metric::flux}) {
        if (s == to_string(m)) return m;
    }
    return std::nullopt;
}

/// Phase shift grid as fractions of T_sw: {0, 0.01, ..., 0.25}, or up to 0.5 in full-range mode.
inline std::vector<double> default_phi_grid(bool full_range = false) {
    std::vector<double> g;
    for (int k = 0; k <= (full_range ? 50 : 25); ++k) g.push_back(k / 100.0);
    return g;
}

struct SweepSpec {
    std::vector<double> phi_grid = default_phi_grid();
    std::vector<double> v_dc_list{200.0, 250.0, 300.0};
    std::vector<Topology> topologies{Topology::YAB, Topology::ACDC_DAB};
    std::vector<Metric> metrics{Metric::power, Metric::thd, Metric::stress};
};

inline void validate_sweep(const SweepSpec& s) {
    if (s.phi_grid.empty()) throw ConfigError("phi", "phi grid is empty");
    if (s.v_dc_list.empty()) throw ConfigError("v_dc", "v_dc list is empty");
    if (s.topologies.empty()) throw ConfigError("topology", "topology list is empty");
    if (s.metrics.empty()) throw ConfigError("metrics", "metric list is empty");
    for (double f : s.phi_grid) {
        if (!(f >= -0.5 && f <= 0.5)) throw ConfigError("phi", "phi fractions must lie in [-0.5, 0.5], got " + format_number(f));
    }
    for (double v : s.v_dc_list) {
        if (!(v > 0.0)) throw ConfigError("v_dc", "v_dc values must be positive");
    }
}

inline std::vector<std::string> metric_columns(Metric m) {
    switch (m) {
        case Metric::power: return {"P"};
        case Metric::thd: return {"thd", "no_load"};
        case Metric::stress: return {"I_t_rms"};
        case Metric::zvs: return {"zvs_frac_a", "zvs_frac_x1", "zvs_frac_x2"};
        case Metric::loss: return {"P_sw", "P_cond"};
        case Metric::flux: return {"B_max", "B_bar_max"};
    }
    return {};
}

/// Fraction of switching events with negative turn-on current, among angles where the switch commutates.
struct ZvsFractions {
    double a = 0.0, x1 = 0.0, x2 = 0.0;
};

inline ZvsFractions zvs_fractions(const GridCycleResult& r) {
    std::size_t na = 0, sa = 0, s1 = 0, s2 = 0;
    for (const auto& a : r.angles) {
        if (a.v_sw_a != 0.0) {
            ++na;
            sa += a.turn_on.i_sw_a < 0.0;
        }
        s1 += a.turn_on.i_sw_x1 < 0.0;
        s2 += a.turn_on.i_sw_x2 < 0.0;
    }
    const double n = static_cast<double>(r.angles.size());
    return {na ? static_cast<double>(sa) / static_cast<double>(na) : 0.0, static_cast<double>(s1) / n,
            static_cast<double>(s2) / n};
}

inline std::vector<std::string> metric_cells(Metric m, const GridCycleResult& r) {
    switch (m) {
        case Metric::power: return {format_number(r.P_avg)};
        case Metric::thd: return {format_number(r.thd), r.no_load ? "1" : "0"};
        case Metric::stress: return {format_number(r.I_t_rms)};
        case Metric::zvs: {
            const ZvsFractions z = zvs_fractions(r);
            return {format_number(z.a), format_number(z.x1), format_number(z.x2)};
        }
        case Metric::loss: {
            const LossTotals t = aggregate_losses(r);
            return {format_number(t.P_sw_total), format_number(t.P_cond_total)};
        }
        case Metric::flux: return {format_number(r.B_max), format_number(r.B_bar_max)};
    }
    return {};
}

/// One row per (topology, v_dc, phi) in that order. An over-modulated v_dc
/// yields a single error row for its series.
inline Table sweep(const SweepSpec& spec, const ConverterParams& params, int jobs = 1,
                   const LossMap* loss_map = nullptr) {
    validate_sweep(spec);
    const bool want_loss = std::find(spec.metrics.begin(), spec.metrics.end(), Metric::loss) != spec.metrics.end();
    if (want_loss && !(params.R_ds_on && params.C_oss)) {
        throw ConfigError("R_ds_on", "the loss metric needs R_ds_on and C_oss (e.g. --set R_ds_on=0.021 --set C_oss=1e-9)");
    }

    struct Series {
        Topology topology;
        double v_dc;
        std::optional<std::string> error;
    };
    std::vector<Series> series;
    for (Topology t : spec.topologies) {
        for (double v : spec.v_dc_list) {
            ConverterParams p = params;
            p.v_dc = v;
            p.topology = t;
            std::optional<std::string> err;
            for (const auto& d : validate(p)) {
                if (d.severity == Severity::error) {
                    if (d.key != "v_dc") throw ConfigError(d.key, d.message);
                    err = d.message;
                    break;
                }
            }
            series.push_back({t, v, err});
        }
    }

    struct Job {
        std::size_t series;
        double phi;
    };
    std::vector<Job> work;
    for (std::size_t s = 0; s < series.size(); ++s) {
        if (series[s].error) continue;
        for (double f : spec.phi_grid) work.push_back({s, f});
    }
    std::vector<std::vector<std::string>> cells(work.size());
    GridOptions opt;
    opt.loss_map = loss_map;
    parallel_for(work.size(), jobs, [&](std::size_t k) {
        ConverterParams p = params;
        p.v_dc = series[work[k].series].v_dc;
        p.topology = series[work[k].series].topology;
        const GridCycleResult r = grid_cycle(p, work[k].phi * p.T_sw(), opt);
        for (Metric m : spec.metrics) {
            for (auto& c : metric_cells(m, r)) cells[k].push_back(std::move(c));
        }
    });

    Table t;
    t.comments.push_back(params_comment(params));
    if (want_loss) {
        t.comments.push_back("loss_map: " + (loss_map ? loss_map->label() : std::string(LossMap::placeholder_label)));
    }
    t.columns = {"topology", "v_dc", "phi"};
    std::size_t n_metric_cols = 0;
    for (Metric m : spec.metrics) {
        for (auto& c : metric_columns(m)) {
            t.columns.push_back(c);
            ++n_metric_cols;
        }
    }
    t.columns.push_back("status");
    std::size_t k = 0;
    for (const auto& s : series) {
        if (s.error) {
            std::vector<std::string> row{std::string(to_string(s.topology)), format_number(s.v_dc), ""};
            row.resize(row.size() + n_metric_cols);
            row.push_back("error: " + *s.error);
            t.rows.push_back(std::move(row));
            continue;
        }
        for (double f : spec.phi_grid) {
            std::vector<std::string> row{std::string(to_string(s.topology)), format_number(s.v_dc), format_number(f)};
            for (auto& c : cells[k]) row.push_back(std::move(c));
            row.push_back("ok");
            t.rows.push_back(std::move(row));
            ++k;
        }
    }
    return t;
}

// ---------------------------------------------------------------------------
// figures

inline const std::vector<std::string>& figure_ids() {
    static const std::vector<std::string> ids{"phase-power", "power-vs-phi", "thd",       "stress",
                                              "flux",        "zvs",          "loss-cycle", "loss-vs-phi"};
    return ids;
}

struct Figure {
    std::string id;
    Table table;
    std::string plot;
};

struct PlotSpec {
    std::string title, xlabel, ylabel;
    std::vector<std::string> extra;  // additional plot commands, e.g. reference lines
};

/// Plain gnuplot commands plotting every non-x column of <id>.csv against column 1.
inline std::string plot_script(const std::string& id, const Table& t, const PlotSpec& s) {
    std::string out;
    out += "set datafile separator ','\n";
    out += "set datafile commentschars '#'\n";
    out += "set key autotitle columnhead\n";
    out += "set title '" + s.title + "'\n";
    out += "set xlabel '" + s.xlabel + "'\n";
    out += "set ylabel '" + s.ylabel + "'\n";
    out += "set grid\n";
    for (const auto& e : s.extra) out += e + "\n";
    out += "plot ";
    for (std::size_t c = 2; c <= t.columns.size(); ++c) {
        if (c > 2) out += ", \\\n     ";
        out += "'" + id + ".csv' using 1:" + std::to_string(c) + " with lines";
    }
    out += "\n";
    return out;
}

inline void require_loss_inputs(const ConverterParams& p, std::string_view what) {
    if (!p.R_ds_on) throw ConfigError("R_ds_on", std::string(what) + " needs R_ds_on (e.g. --set R_ds_on=0.021)");
    if (!p.C_oss) throw ConfigError("C_oss", std::string(what) + " needs C_oss (e.g. --set C_oss=1e-9)");
}

inline ConverterParams with(ConverterParams p, double v_dc, Topology t) {
    p.v_dc = v_dc;
    p.topology = t;
    require_valid(p);
    return p;
}

/// Results for every (params, phi) pair, computed in parallel and returned in input order.
inline std::vector<GridCycleResult> grid_batch(const std::vector<std::pair<ConverterParams, double>>& points, int jobs,
                                               const GridOptions& base = {}) {
    std::vector<GridCycleResult> out(points.size());
    GridOptions opt = base;
    opt.jobs = 1;
    parallel_for(points.size(), jobs, [&](std::size_t k) {
        out[k] = grid_cycle(points[k].first, points[k].second * points[k].first.T_sw(), opt);
    });
    return out;
}

/// Builds the table and plot script of one model figure at that figure's stated
/// operating conditions. Throws ConfigError for an unknown id.
inline Figure reproduce_figure(const std::string& id, const ConverterParams& params, int jobs = 1,
                               const LossMap* loss_map = nullptr) {
    require_valid(params);
    Figure f;
    f.id = id;
    Table& t = f.table;
    t.comments.push_back(params_comment(params));
    GridOptions opt;
    opt.loss_map = loss_map;
    const std::array<double, 3> vdcs{200.0, 250.0, 300.0};
    const std::array<Topology, 2> topos{Topology::YAB, Topology::ACDC_DAB};
    auto topo_tag = [](Topology tp) { return tp == Topology::YAB ? std::string("YAB") : std::string("DAB"); };

    if (id == "phase-power") {
        const auto r = grid_batch({{with(params, 200.0, Topology::YAB), 0.2}}, jobs, opt)[0];
        t.comments.push_back("v_dc=200 phi=0.2T_sw topology=YAB P_avg=" + format_number(r.P_avg));
        t.columns = {"theta", "p_a", "p_b", "p_c", "p_total"};
        for (const auto& a : r.angles) {
            t.rows.push_back({format_number(a.theta), format_number(a.p_a), format_number(a.p_b), format_number(a.p_c),
                              format_number(a.p_total)});
        }
        f.plot = plot_script(id, t, {"Phase power over a grid period", "theta (deg)", "power (W)", {}});
    } else if (id == "power-vs-phi") {
        const auto phis = default_phi_grid(true);
        std::vector<std::pair<ConverterParams, double>> pts;
        for (double v : vdcs)
            for (double phi : phis) pts.push_back({with(params, v, Topology::YAB), phi});
        const auto rs = grid_batch(pts, jobs, opt);
        t.comments.push_back("topology=YAB");
        t.columns = {"phi"};
        for (double v : vdcs) t.columns.push_back("P_vdc" + format_number(v));
        for (std::size_t k = 0; k < phis.size(); ++k) {
            std::vector<std::string> row{format_number(phis[k])};
            for (std::size_t s = 0; s < vdcs.size(); ++s) row.push_back(format_number(rs[s * phis.size() + k].P_avg));
            t.rows.push_back(std::move(row));
        }
        f.plot = plot_script(id, t, {"Relationship between system total power P and phi", "phi (T_sw)", "P (W)", {}});
    } else if (id == "thd" || id == "stress") {
        const auto phis = default_phi_grid();
        std::vector<std::pair<ConverterParams, double>> pts;
        for (Topology tp : topos)
            for (double v : vdcs)
                for (double phi : phis) pts.push_back({with(params, v, tp), phi});
        const auto rs = grid_batch(pts, jobs, opt);
        t.columns = {"phi"};
        for (Topology tp : topos)
            for (double v : vdcs) t.columns.push_back((id == "thd" ? "thd_" : "I_rms_") + topo_tag(tp) + "_vdc" + format_number(v));
        for (std::size_t k = 0; k < phis.size(); ++k) {
            std::vector<std::string> row{format_number(phis[k])};
            for (std::size_t s = 0; s < topos.size() * vdcs.size(); ++s) {
                const auto& r = rs[s * phis.size() + k];
                row.push_back(format_number(id == "thd" ? r.thd : r.I_t_rms));
            }
            t.rows.push_back(std::move(row));
        }
        if (id == "thd") {
            f.plot = plot_script(id, t, {"Comparison of current THD", "phi (T_sw)", "THD", {"set arrow from graph 0, first 0.025 to graph 1, first 0.025 nohead dt 2"}});
        } else {
            f.plot = plot_script(id, t, {"Comparison of current stress", "phi (T_sw)", "I_t,rms (A)", {}});
        }
    } else if (id == "flux") {
        std::vector<double> phis;
        for (int k = 5; k <= 25; ++k) phis.push_back(k / 100.0);
        std::vector<std::pair<ConverterParams, double>> pts;
        for (Topology tp : topos)
            for (double phi : phis) pts.push_back({with(params, 300.0, tp), phi});
        const auto rs = grid_batch(pts, jobs, opt);
        t.comments.push_back("v_dc=300; DAB computed under plain Sin-PS modulation (no DC-side compensation)");
        t.columns = {"phi", "B_bar_max_YAB", "B_bar_max_DAB", "B_max_YAB", "B_max_DAB"};
        for (std::size_t k = 0; k < phis.size(); ++k) {
            const auto& y = rs[k];
            const auto& d = rs[phis.size() + k];
            t.rows.push_back({format_number(phis[k]), format_number(y.B_bar_max), format_number(d.B_bar_max),
                              format_number(y.B_max), format_number(d.B_max)});
        }
        f.plot = plot_script(id, t, {"Normalized inductor peak flux density", "phi (T_sw)", "B_bar_max (T/W)", {}});
    } else if (id == "zvs") {
        const std::vector<double> phis{0.05, 0.1, 0.15, 0.2, 0.25};
        std::vector<std::pair<ConverterParams, double>> pts;
        for (double phi : phis) pts.push_back({with(params, 200.0, Topology::YAB), phi});
        const auto rs = grid_batch(pts, jobs, opt);
        t.comments.push_back("v_dc=200 topology=YAB; negative turn-on current means ZVS");
        t.columns = {"theta"};
        for (double phi : phis) t.columns.push_back("i_sw_a_phi" + format_number(phi));
        for (double phi : phis) t.columns.push_back("i_sw_x1_phi" + format_number(phi));
        for (std::size_t k = 0; k < rs[0].angles.size(); ++k) {
            std::vector<std::string> row{format_number(rs[0].angles[k].theta)};
            for (const auto& r : rs) row.push_back(format_number(r.angles[k].turn_on.i_sw_a));
            for (const auto& r : rs) row.push_back(format_number(r.angles[k].turn_on.i_sw_x1));
            t.rows.push_back(std::move(row));
        }
        f.plot = plot_script(id, t, {"Turn on current of S_a+ and S_x1+", "theta (deg)", "current (A)", {}});
    } else if (id == "loss-cycle") {
        require_loss_inputs(params, "figure loss-cycle");
        const auto r = grid_batch({{with(params, 200.0, Topology::YAB), 0.2}}, jobs, opt)[0];
        const LossTotals tot = aggregate_losses(r);
        t.comments.push_back("v_dc=200 phi=0.2T_sw topology=YAB P=" + format_number(r.P_avg) + " W");
        t.comments.push_back("loss_map: " + r.loss_map_label);
        t.comments.push_back("P_sw_total=" + format_number(tot.P_sw_total) + " P_cond_total=" + format_number(tot.P_cond_total) +
                             " clamped_lookups=" + format_number(r.clamped_lookups));
        t.columns = {"theta", "p_sw_a", "p_sw_x1", "p_sw_x2", "p_cond", "class_a", "class_x1", "class_x2"};
        for (const auto& a : r.angles) {
            t.rows.push_back({format_number(a.theta), format_number(a.p_sw_a), format_number(a.p_sw_x1),
                              format_number(a.p_sw_x2), format_number(a.p_cond), std::string(to_string(*a.cls_a)),
                              std::string(to_string(*a.cls_x1)), std::string(to_string(*a.cls_x2))});
        }
        Table numeric = t;
        numeric.columns.resize(5);
        f.plot = plot_script(id, numeric, {"Switching and conduction losses of a half-bridge over a grid period", "theta (deg)", "loss (W)", {}});
    } else if (id == "loss-vs-phi") {
        require_loss_inputs(params, "figure loss-vs-phi");
        const auto phis = default_phi_grid(true);
        std::vector<std::pair<ConverterParams, double>> pts;
        for (double phi : phis) pts.push_back({with(params, 200.0, Topology::YAB), phi});
        const auto rs = grid_batch(pts, jobs, opt);
        t.comments.push_back("v_dc=200 topology=YAB");
        t.comments.push_back("loss_map: " + (loss_map ? loss_map->label() : std::string(LossMap::placeholder_label)));
        t.columns = {"phi", "P_sw_total", "P_cond_total", "P_loss_total", "P"};
        for (std::size_t k = 0; k < phis.size(); ++k) {
            const LossTotals tot = aggregate_losses(rs[k]);
            t.rows.push_back({format_number(phis[k]), format_number(tot.P_sw_total), format_number(tot.P_cond_total),
                              format_number(tot.total()), format_number(rs[k].P_avg)});
        }
        Table numeric = t;
        numeric.columns.resize(4);
        f.plot = plot_script(id, numeric, {"Total MOSFET losses versus phi", "phi (T_sw)", "loss (W)", {}});
    } else {
        std::string known;
        for (const auto& k : figure_ids()) known += (known.empty() ? "" : ", ") + k;
        throw ConfigError("figure", "unknown figure id '" + id + "' (known: " + known + ")");
    }
    return f;
}

inline void write_figure(const Figure& f, const std::filesystem::path& dir) {
    write_text_file(dir / (f.id + ".csv"), f.table.to_csv());
    write_text_file(dir / (f.id + ".plot"), f.plot);
}

// ---------------------------------------------------------------------------
// dump-cycle

/// Phase-A waveforms of one switching period at grid angle theta (degrees) and phi (fraction of T_sw).
inline Table dump_cycle(const ConverterParams& params, double theta, double phi_frac) {
    require_valid(params);
    CycleBundle b = synthesize_cycle(params, theta, phi_frac * params.T_sw(), params.topology);
    auto& c = b.phase[0];
    c.i_t = steady_state_current(c.v_L, {params.L_t, params.R_series, params.f_sw, params.N_sw});
    const TurnOnCurrents on = turn_on_currents(c.i_t, b.ac_gate, b.dc[0]);
    Table t;
    t.comments.push_back(params_comment(params));
    t.comments.push_back("theta=" + format_number(theta) + " phi=" + format_number(phi_frac) + " p_a=" +
                         format_number(phase_power(c.v_AN, c.i_t)) + " i_sw_a=" + format_number(on.i_sw_a) +
                         " i_sw_x1=" + format_number(on.i_sw_x1) + " i_sw_x2=" + format_number(on.i_sw_x2));
    t.columns = {"theta", "n", "v_AN", "v_Xx", "v_XN", "v_L", "i_t", "t", "g_a", "g_x1", "g_x2"};
    const double dt = params.T_sw() / params.N_sw;
    for (std::size_t n = 0; n < c.v_AN.size(); ++n) {
        t.rows.push_back({format_number(theta), format_number(n), format_number(c.v_AN[n]), format_number(c.v_Xx[n]),
                          format_number(c.v_XN[n]), format_number(c.v_L[n]), format_number(c.i_t[n]),
                          format_number(static_cast<double>(n) * dt), format_number(int(b.ac_gate[n])),
                          format_number(int(b.dc[0].leg1[n])), format_number(int(b.dc[0].leg2[n]))});
    }
    return t;
}

// ---------------------------------------------------------------------------
// oracle-check

struct OraclePoint {
    double theta = 0.0;  // degrees
    double phi = 0.0;    // fraction of T_sw
    double v_dc = 0.0;
};

/// Operating points drawn from a seeded mt19937_64: theta in [0, 360),
/// phi in [0, phi_max], v_dc in [v_lo, v_hi].
inline std::vector<OraclePoint> random_operating_points(int count, std::uint64_t seed, double phi_max = 0.25,
                                                        double v_lo = 200.0, double v_hi = 300.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> th(0.0, 360.0), ph(0.0, phi_max), vd(v_lo, v_hi);
    std::vector<OraclePoint> pts(static_cast<std::size_t>(std::max(count, 0)));
    for (auto& p : pts) {
        p.theta = th(rng);
        p.phi = ph(rng);
        p.v_dc = vd(rng);
    }
    return pts;
}

struct OracleCheckRow {
    OraclePoint point;
    OracleComparison cmp;
    double p_fft = 0.0;
    double p_oracle = 0.0;
    int cycles = 0;
    bool converged = false;
};

/// Solves phase A at one point with both the harmonic solver and the oracle.
inline OracleCheckRow oracle_check_point(const ConverterParams& params, const OraclePoint& pt) {
    ConverterParams p = params;
    p.v_dc = pt.v_dc;
    require_valid(p);
    CycleBundle b = synthesize_cycle(p, pt.theta, pt.phi * p.T_sw(), p.topology);
    const auto& c = b.phase[0];
    const Samples i_fft = steady_state_current(c.v_L, {p.L_t, p.R_series, p.f_sw, p.N_sw});
    const OracleResult o = simulate_zoh(c.v_L, p.L_t, p.R_series, p.f_sw);
    OracleCheckRow row;
    row.point = pt;
    row.cmp = compare(i_fft, o.i);
    row.p_fft = phase_power(c.v_AN, i_fft);
    row.p_oracle = oracle_average_power(c.v_AN, o);
    row.cycles = o.cycles_to_converge;
    row.converged = o.converged;
    return row;
}

inline std::vector<OracleCheckRow> oracle_check(const ConverterParams& params, const std::vector<OraclePoint>& pts,
                                                int jobs = 1) {
    std::vector<OracleCheckRow> rows(pts.size());
    parallel_for(pts.size(), jobs, [&](std::size_t k) { rows[k] = oracle_check_point(params, pts[k]); });
    return rows;
}

inline Table oracle_table(const ConverterParams& params, const std::vector<OracleCheckRow>& rows) {
    Table t;
    t.comments.push_back(params_comment(params));
    t.columns = {"theta", "phi", "v_dc", "rel_rms_err", "max_err"};
    for (const auto& r : rows) {
        t.rows.push_back({format_number(r.point.theta), format_number(r.point.phi), format_number(r.point.v_dc),
                          format_number(r.cmp.rel_rms_err), format_number(r.cmp.max_abs_err_over_peak)});
    }
    return t;
}

// ---------------------------------------------------------------------------
// capbounds / validate

inline Table capbounds_table(const ConverterParams& p, double epsilon, double lambda) {
    const CapBounds b = blocking_cap_bounds(p.L_t, p.f_g, p.f_sw, epsilon, lambda);
    Table t;
    t.comments.push_back("L_t=" + format_number(p.L_t) + " f_g=" + format_number(p.f_g) + " f_sw=" + format_number(p.f_sw));
    t.columns = {"c_min", "c_max", "epsilon", "lambda"};
    t.rows.push_back({format_number(b.c_min), format_number(b.c_max), format_number(b.epsilon), format_number(b.lambda)});
    return t;
}

}  // namespace yab
