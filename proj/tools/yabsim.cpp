#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "yab/yab.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_usage = 1;
constexpr int exit_invariant = 2;

struct Globals {
    std::string config;
    std::vector<std::string> sets;
    std::string out_dir;
    std::string topology;
    int nsw = 0;
    int jobs = 1;
    std::string loss_map;
};

yab::ConverterParams resolve(const Globals& g, bool validate_now = true) {
    yab::ConverterParams p;
    if (!g.config.empty()) {
        std::ifstream in(g.config);
        if (!in) throw yab::ConfigError(g.config, "cannot open config file");
        std::stringstream ss;
        ss << in.rdbuf();
        p = yab::parse_config(ss.str(), p);
    }
    for (const auto& s : g.sets) yab::apply_override(p, s);
    if (!g.topology.empty()) yab::set_param(p, "topology", g.topology);
    if (g.nsw != 0) p.N_sw = g.nsw;
    if (validate_now) yab::require_valid(p);
    return p;
}

std::optional<yab::LossMap> resolve_loss_map(const Globals& g) {
    if (g.loss_map.empty()) return std::nullopt;
    return yab::load_loss_map(g.loss_map);
}

void emit(const Globals& g, const std::string& name, const std::string& text) {
    if (g.out_dir.empty()) {
        std::cout << text;
    } else {
        const auto path = std::filesystem::path(g.out_dir) / name;
        yab::write_text_file(path, text);
        std::cerr << "wrote " << path.string() << "\n";
    }
}

std::vector<double> split_numbers(const std::string& text, const std::string& what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto v = yab::parse_double(item);
        if (!v) throw yab::ConfigError(what, "not a number: '" + item + "'");
        out.push_back(*v);
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Steady-state model of the Y-configuration active bridge (YAB) and the AC-DC DAB baseline"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--config", g.config, "key = value parameter file");
    app.add_option("--set", g.sets, "override one parameter, key=value (repeatable)");
    app.add_option("--out-dir", g.out_dir, "write CSV files here instead of stdout (figure: default .)");
    app.add_option("--topology", g.topology, "YAB or ACDC_DAB");
    app.add_option("--nsw", g.nsw, "samples per switching period (even, >= 8)");
    app.add_option("--jobs", g.jobs, "worker threads (0 = all cores)")->capture_default_str();
    app.add_option("--loss-map", g.loss_map, "switching-energy map CSV (v,i,e); default is the synthetic placeholder");

    // sweep
    auto* sweep_cmd = app.add_subcommand(
        "sweep",
        "Grid-period metrics over phi and v_dc.\n"
        "CSV columns: topology,v_dc,phi,<metric columns>,status\n"
        "  power: P (W)  thd: thd,no_load  stress: I_t_rms (A)\n"
        "  zvs: zvs_frac_a,zvs_frac_x1,zvs_frac_x2 (share of negative turn-on currents)\n"
        "  loss: P_sw,P_cond (W, needs R_ds_on and C_oss)  flux: B_max (T),B_bar_max (T/W)\n"
        "Rows are ordered by topology, then v_dc, then phi.");
    std::string phi_list, vdc_list = "200,250,300", topo_list = "YAB,ACDC_DAB", metric_list = "power,thd,stress";
    bool full_range = false;
    sweep_cmd->add_option("--phi", phi_list, "phi values as fractions of T_sw in [-0.5,0.5], comma separated (default 0,0.01,...,0.25)");
    sweep_cmd->add_flag("--full-range", full_range, "default phi grid extends to 0.5");
    sweep_cmd->add_option("--vdc", vdc_list, "v_dc values, comma separated")->capture_default_str();
    sweep_cmd->add_option("--topologies", topo_list, "comma separated subset of YAB,ACDC_DAB")->capture_default_str();
    sweep_cmd->add_option("--metrics", metric_list, "comma separated subset of power,thd,stress,zvs,loss,flux")
        ->capture_default_str();

    // figure
    std::string figure_help = "Write <id>.csv and <id>.plot (gnuplot commands) for one model figure. Ids:";
    for (const auto& id : yab::figure_ids()) figure_help += " " + id;
    auto* figure_cmd = app.add_subcommand("figure", figure_help);
    std::string figure_id;
    figure_cmd->add_option("id", figure_id, "figure id")->required();

    // capbounds
    auto* cap_cmd = app.add_subcommand("capbounds", "Blocking-capacitor window. CSV columns: c_min,c_max,epsilon,lambda (F)");
    double epsilon = 0.01, lambda = 0.2;
    cap_cmd->add_option("--epsilon", epsilon, "LF/HF flux ratio bound")->capture_default_str();
    cap_cmd->add_option("--lambda", lambda, "resonance/switching frequency ratio bound")->capture_default_str();

    // dump-cycle
    auto* dump_cmd = app.add_subcommand(
        "dump-cycle",
        "Phase-A waveforms of one switching period.\n"
        "CSV columns: theta,n,v_AN,v_Xx,v_XN,v_L,i_t,t,g_a,g_x1,g_x2");
    double theta = 0.0, phi = 0.0;
    dump_cmd->add_option("--theta", theta, "grid angle, degrees")->required();
    dump_cmd->add_option("--phi", phi, "main phase shift as a fraction of T_sw")->required();

    // oracle-check
    auto* oracle_cmd = app.add_subcommand(
        "oracle-check",
        "Harmonic solver against the time-domain oracle at random operating points.\n"
        "CSV columns: theta,phi,v_dc,rel_rms_err,max_err. Exit code 2 when a tolerance is exceeded.");
    int count = 100;
    std::uint64_t seed = 42;
    double rel_tol = 0.005, max_tol = 0.02;
    oracle_cmd->add_option("--count", count, "number of operating points")->capture_default_str();
    oracle_cmd->add_option("--seed", seed, "random seed")->capture_default_str();
    oracle_cmd->add_option("--rel-tol", rel_tol, "bound on rel_rms_err")->capture_default_str();
    oracle_cmd->add_option("--max-tol", max_tol, "bound on max_err")->capture_default_str();

    // validate
    auto* validate_cmd = app.add_subcommand("validate", "Check the resolved parameters and print them as a config file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? exit_ok : exit_usage;
    }

    try {
        std::optional<yab::LossMap> map = resolve_loss_map(g);
        const yab::LossMap* map_ptr = map ? &*map : nullptr;

        if (validate_cmd->parsed()) {
            const yab::ConverterParams p = resolve(g, false);
            const auto diags = yab::validate(p);
            for (const auto& d : diags) {
                std::cerr << (d.severity == yab::Severity::error ? "error: " : "warning: ") << d.key << ": " << d.message
                          << "\n";
            }
            if (yab::has_errors(diags)) return exit_usage;
            std::cout << yab::save_config(p);
            return exit_ok;
        }

        const yab::ConverterParams p = resolve(g);

        if (sweep_cmd->parsed()) {
            yab::SweepSpec spec;
            spec.phi_grid = phi_list.empty() ? yab::default_phi_grid(full_range) : split_numbers(phi_list, "phi");
            spec.v_dc_list = split_numbers(vdc_list, "v_dc");
            spec.topologies.clear();
            std::stringstream ts(topo_list);
            for (std::string item; std::getline(ts, item, ',');) {
                auto t = yab::parse_topology(item);
                if (!t) throw yab::ConfigError("topology", "unknown topology '" + item + "'");
                spec.topologies.push_back(*t);
            }
            spec.metrics.clear();
            std::stringstream ms(metric_list);
            for (std::string item; std::getline(ms, item, ',');) {
                auto m = yab::parse_metric(yab::trim(item));
                if (!m) throw yab::ConfigError("metrics", "unknown metric '" + item + "'");
                spec.metrics.push_back(*m);
            }
            emit(g, "sweep.csv", yab::sweep(spec, p, g.jobs, map_ptr).to_csv());
        } else if (figure_cmd->parsed()) {
            const auto fig = yab::reproduce_figure(figure_id, p, g.jobs, map_ptr);
            const std::filesystem::path dir = g.out_dir.empty() ? "." : g.out_dir;
            yab::write_figure(fig, dir);
            std::cerr << "wrote " << (dir / (figure_id + ".csv")).string() << " and "
                      << (dir / (figure_id + ".plot")).string() << "\n";
        } else if (cap_cmd->parsed()) {
            emit(g, "capbounds.csv", yab::capbounds_table(p, epsilon, lambda).to_csv());
        } else if (dump_cmd->parsed()) {
            emit(g, "cycle.csv", yab::dump_cycle(p, theta, phi).to_csv());
        } else if (oracle_cmd->parsed()) {
            const auto rows = yab::oracle_check(p, yab::random_operating_points(count, seed), g.jobs);
            emit(g, "oracle_check.csv", yab::oracle_table(p, rows).to_csv());
            int breaches = 0;
            for (const auto& r : rows) {
                breaches += r.cmp.rel_rms_err >= rel_tol || r.cmp.max_abs_err_over_peak >= max_tol;
            }
            if (breaches > 0) {
                std::cerr << "oracle-check: " << breaches << " of " << rows.size() << " points exceed tolerance\n";
                return exit_invariant;
            }
        }
    } catch (const yab::ModelInvariantError& e) {
        std::cerr << "model invariant violated: " << e.what() << "\n";
        return exit_invariant;
    } catch (const yab::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return exit_invariant;
    }
    return exit_ok;
}
