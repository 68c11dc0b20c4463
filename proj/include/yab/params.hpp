#pragma once

// System parameters, validation, the key = value config format, and the
// blocking-capacitor design window.

#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "yab/error.hpp"
#include "yab/format.hpp"

namespace yab {

enum class Topology { YAB, ACDC_DAB };

inline std::string_view to_string(Topology t) { return t == Topology::YAB ? "YAB" : "ACDC_DAB"; }

inline std::optional<Topology> parse_topology(std::string_view text) {
    text = trim(text);
    if (text == "YAB" || text == "yab") return Topology::YAB;
    if (text == "ACDC_DAB" || text == "acdc_dab" || text == "DAB" || text == "dab") return Topology::ACDC_DAB;
    return std::nullopt;
}

/// Electrical, magnetic, device and sampling parameters of one converter.
/// Defaults are the prototype values (480 V grid, 100 kHz, 19.3 uH link).
/// R_ds_on and C_oss have no defaults: they are device data and must be supplied
/// before loss or ZVS-class computations.
struct ConverterParams {
    double v_g_rms = 277.0;    // grid phase voltage, V rms
    double f_g = 60.0;         // Hz
    double v_dc = 200.0;       // V
    double f_sw = 100e3;       // Hz
    double L_t = 19.3e-6;      // H, leakage + extra inductance
    double R_series = 0.0248;  // ohm, HFT + inductor resistance (0 = ideal inductor)
    double C_B = 4.5e-6;       // F
    int N_sw = 2048;           // samples per switching period
    int n_theta = 360;         // grid-angle samples per grid period
    std::optional<double> R_ds_on;  // ohm
    std::optional<double> C_oss;    // F
    double N_l = 6.0;
    double A_c_l = 1.56e-3;  // m^2
    double N_t = 21.0;
    double A_c_t = 7.84e-4;  // m^2
    Topology topology = Topology::YAB;
    // Filter/DC-link capacitances: inert metadata, not used by the steady-state model.
    double C_a = 0.5e-6;
    double C_fa = 10e-6;
    double C_dc = 10e-6;

    double v_g_peak() const { return std::numbers::sqrt2 * v_g_rms; }
    double T_sw() const { return 1.0 / f_sw; }

    bool operator==(const ConverterParams&) const = default;
};

struct CapBounds {
    double c_min = 0.0;  // F, resonance bound f_r < lambda f_sw
    double c_max = 0.0;  // F, grid-frequency blocking bound
    double epsilon = 0.0;
    double lambda = 0.0;
};

/// Allowed blocking-capacitance window.
///   c_max = eps / (f_g (f_sw - eps f_g) L_t)
///   c_min = 1 / (4 pi^2 lambda^2 f_sw^2 L_t)
inline CapBounds blocking_cap_bounds(double L_t, double f_g, double f_sw, double epsilon = 0.01,
                                     double lambda = 0.2) {
    if (!(L_t > 0.0) || !(f_g > 0.0) || !(f_sw > 0.0)) {
        throw std::invalid_argument("blocking_cap_bounds: L_t, f_g and f_sw must be positive");
    }
    if (!(epsilon > 0.0 && epsilon < 1.0) || !(lambda > 0.0 && lambda <= 1.0)) {
        throw std::invalid_argument("blocking_cap_bounds: need 0 < epsilon < 1 and 0 < lambda <= 1");
    }
    if (!(f_sw > epsilon * f_g)) {
        throw std::invalid_argument("blocking_cap_bounds: f_sw must exceed epsilon * f_g");
    }
    constexpr double pi = std::numbers::pi;
    CapBounds b;
    b.epsilon = epsilon;
    b.lambda = lambda;
    b.c_max = epsilon / (f_g * (f_sw - epsilon * f_g) * L_t);
    b.c_min = 1.0 / (4.0 * pi * pi * lambda * lambda * f_sw * f_sw * L_t);
    return b;
}

enum class Severity { error, warning };

struct Diagnostic {
    Severity severity = Severity::error;
    std::string key;
    std::string message;
};

inline bool has_errors(const std::vector<Diagnostic>& diags) {
    for (const auto& d : diags)
        if (d.severity == Severity::error) return true;
    return false;
}

/// Every violated invariant; blocking-capacitor placement is reported as a warning.
inline std::vector<Diagnostic> validate(const ConverterParams& p) {
    std::vector<Diagnostic> out;
    auto error = [&](std::string key, std::string msg) {
        out.push_back({Severity::error, std::move(key), std::move(msg)});
    };
    auto positive = [&](const char* key, double v) {
        if (!(v > 0.0) || !std::isfinite(v)) error(key, std::string(key) + " must be positive");
    };

    positive("v_g_rms", p.v_g_rms);
    positive("f_g", p.f_g);
    positive("v_dc", p.v_dc);
    positive("f_sw", p.f_sw);
    positive("L_t", p.L_t);
    if (!(p.R_series >= 0.0) || !std::isfinite(p.R_series)) error("R_series", "R_series must be non-negative");
    positive("C_B", p.C_B);
    if (p.N_sw % 2 != 0) error("N_sw", "N_sw must be even");
    if (p.N_sw < 8) error("N_sw", "N_sw must be at least 8");
    if (p.n_theta < 12 || p.n_theta % 12 != 0) error("n_theta", "n_theta must be a positive multiple of 12");
    if (p.R_ds_on) positive("R_ds_on", *p.R_ds_on);
    if (p.C_oss) positive("C_oss", *p.C_oss);
    positive("N_l", p.N_l);
    positive("A_c_l", p.A_c_l);
    positive("N_t", p.N_t);
    positive("A_c_t", p.A_c_t);
    positive("C_a", p.C_a);
    positive("C_fa", p.C_fa);
    positive("C_dc", p.C_dc);

    if (p.v_dc > 0.0 && p.v_g_rms > 0.0 && p.v_dc < p.v_g_peak() / 2.0) {
        error("v_dc", "over-modulation: v_dc must be at least v_g_peak/2 = " + format_number(p.v_g_peak() / 2.0) +
                          " V");
    }

    if (p.L_t > 0.0 && p.f_g > 0.0 && p.f_sw > p.f_g && p.C_B > 0.0) {
        const CapBounds b = blocking_cap_bounds(p.L_t, p.f_g, p.f_sw);
        if (p.C_B < b.c_min) {
            out.push_back({Severity::warning, "C_B",
                           "C_B below resonance lower bound (" + format_number(b.c_min) + " F)"});
        } else if (p.C_B > b.c_max) {
            out.push_back({Severity::warning, "C_B",
                           "C_B above grid-frequency blocking upper bound (" + format_number(b.c_max) + " F)"});
        }
    }
    return out;
}

/// Throws ConfigError naming the first violated key.
inline void require_valid(const ConverterParams& p) {
    for (const auto& d : validate(p))
        if (d.severity == Severity::error) throw ConfigError(d.key, d.message);
}

namespace detail {

struct ParamField {
    std::string_view key;
    std::function<void(ConverterParams&, std::string_view)> set;
    std::function<std::optional<std::string>(const ConverterParams&)> get;
};

inline double parse_real_value(std::string_view key, std::string_view text) {
    auto v = parse_double(text);
    if (!v) throw ConfigError(std::string(key), "not a number: '" + std::string(trim(text)) + "'");
    return *v;
}

inline int parse_int_value(std::string_view key, std::string_view text) {
    auto v = parse_integer(text);
    if (!v) throw ConfigError(std::string(key), "not an integer: '" + std::string(trim(text)) + "'");
    return static_cast<int>(*v);
}

template <class M>
ParamField real_field(std::string_view key, M member) {
    return {key, [key, member](ConverterParams& p, std::string_view v) { p.*member = parse_real_value(key, v); },
            [member](const ConverterParams& p) -> std::optional<std::string> { return format_number(p.*member); }};
}

template <class M>
ParamField optional_field(std::string_view key, M member) {
    return {key, [key, member](ConverterParams& p, std::string_view v) { p.*member = parse_real_value(key, v); },
            [member](const ConverterParams& p) -> std::optional<std::string> {
                if (!(p.*member)) return std::nullopt;
                return format_number(*(p.*member));
            }};
}

template <class M>
ParamField int_field(std::string_view key, M member) {
    return {key, [key, member](ConverterParams& p, std::string_view v) { p.*member = parse_int_value(key, v); },
            [member](const ConverterParams& p) -> std::optional<std::string> { return format_number(p.*member); }};
}

inline const std::vector<ParamField>& param_fields() {
    static const std::vector<ParamField> fields = {
        real_field("v_g_rms", &ConverterParams::v_g_rms),
        real_field("f_g", &ConverterParams::f_g),
        real_field("v_dc", &ConverterParams::v_dc),
        real_field("f_sw", &ConverterParams::f_sw),
        real_field("L_t", &ConverterParams::L_t),
        real_field("R_series", &ConverterParams::R_series),
        real_field("C_B", &ConverterParams::C_B),
        int_field("N_sw", &ConverterParams::N_sw),
        int_field("n_theta", &ConverterParams::n_theta),
        optional_field("R_ds_on", &ConverterParams::R_ds_on),
        optional_field("C_oss", &ConverterParams::C_oss),
        real_field("N_l", &ConverterParams::N_l),
        real_field("A_c_l", &ConverterParams::A_c_l),
        real_field("N_t", &ConverterParams::N_t),
        real_field("A_c_t", &ConverterParams::A_c_t),
        ParamField{"topology",
                   [](ConverterParams& p, std::string_view v) {
                       auto t = parse_topology(v);
                       if (!t) throw ConfigError("topology", "expected YAB or ACDC_DAB, got '" + std::string(trim(v)) + "'");
                       p.topology = *t;
                   },
                   [](const ConverterParams& p) -> std::optional<std::string> {
                       return std::string(to_string(p.topology));
                   }},
        real_field("C_a", &ConverterParams::C_a),
        real_field("C_fa", &ConverterParams::C_fa),
        real_field("C_dc", &ConverterParams::C_dc),
    };
    return fields;
}

}  // namespace detail

/// Sets one field by name; unknown keys and malformed values throw ConfigError.
inline void set_param(ConverterParams& p, std::string_view key, std::string_view value) {
    key = trim(key);
    for (const auto& f : detail::param_fields()) {
        if (f.key == key) {
            f.set(p, value);
            return;
        }
    }
    throw ConfigError(std::string(key), "unknown key");
}

/// Applies a "key=value" override (the CLI --set form).
inline void apply_override(ConverterParams& p, std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos) {
        throw ConfigError(std::string(trim(assignment)), "expected key=value");
    }
    set_param(p, assignment.substr(0, eq), assignment.substr(eq + 1));
}

/// Parses config text on top of `base`. Does not validate.
inline ConverterParams parse_config(std::string_view text, ConverterParams base = {}) {
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError(std::string(line), "line " + std::to_string(line_no) + ": expected key = value");
        }
        set_param(base, line.substr(0, eq), line.substr(eq + 1));
    }
    return base;
}

/// Reads and validates a config file. Keys not present keep their defaults.
inline ConverterParams load_config(const std::string& path, ConverterParams base = {}) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path, "cannot open config file");
    std::stringstream ss;
    ss << in.rdbuf();
    ConverterParams p = parse_config(ss.str(), base);
    require_valid(p);
    return p;
}

/// Config text with every set field, one key = value per line.
inline std::string save_config(const ConverterParams& p) {
    std::string out;
    for (const auto& f : detail::param_fields()) {
        if (auto v = f.get(p)) {
            out += f.key;
            out += " = ";
            out += *v;
            out += '\n';
        }
    }
    return out;
}

/// Single-line "key=value key=value ..." rendering used in CSV header comments.
inline std::string describe_params(const ConverterParams& p) {
    std::string out;
    for (const auto& f : detail::param_fields()) {
        if (!out.empty()) out += ' ';
        out += f.key;
        out += '=';
        out += f.get(p).value_or("unset");
    }
    return out;
}

}  // namespace yab
