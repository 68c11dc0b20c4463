#pragma once

// Half-bridge switching energy E_sw(v, i) on a rectangular (v, i) grid with
// bilinear interpolation. CSV format: header `v,i,e`, one row per grid node.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "yab/error.hpp"
#include "yab/format.hpp"

namespace yab {

struct LossLookup {
    double energy = 0.0;  // J
    bool clamped = false; // query fell outside the grid and was clamped to its edge
};

class LossMap {
public:
    /// energy is row-major over (v, i): energy[iv * i_axis.size() + ii].
    LossMap(std::vector<double> v_axis, std::vector<double> i_axis, std::vector<double> energy,
            std::string label = {})
        : v_(std::move(v_axis)), i_(std::move(i_axis)), e_(std::move(energy)), label_(std::move(label)) {
        check_axis(v_, "v");
        check_axis(i_, "i");
        if (e_.size() != v_.size() * i_.size()) {
            throw ConfigError("loss_map", "energy grid has " + format_number(e_.size()) + " entries, expected " +
                                              format_number(v_.size() * i_.size()));
        }
        for (double e : e_) {
            if (!std::isfinite(e) || e < 0.0) throw ConfigError("loss_map", "energy must be finite and >= 0");
        }
    }

    const std::vector<double>& v_axis() const { return v_; }
    const std::vector<double>& i_axis() const { return i_; }
    const std::string& label() const { return label_; }
    bool is_placeholder() const { return label_ == placeholder_label; }

    double at(std::size_t iv, std::size_t ii) const { return e_[iv * i_.size() + ii]; }

    LossLookup lookup(double v, double i) const {
        LossLookup out;
        auto [iv, tv] = locate(v_, v, out.clamped);
        auto [ii, ti] = locate(i_, i, out.clamped);
        const std::size_t iv1 = std::min(iv + 1, v_.size() - 1);
        const std::size_t ii1 = std::min(ii + 1, i_.size() - 1);
        const double e00 = at(iv, ii), e01 = at(iv, ii1), e10 = at(iv1, ii), e11 = at(iv1, ii1);
        out.energy = (1 - tv) * ((1 - ti) * e00 + ti * e01) + tv * ((1 - ti) * e10 + ti * e11);
        return out;
    }

    /// Synthetic map for pipeline testing, not device data:
    /// E = (k_on + k_off) v |i| for i >= 0 (hard turn-on), k_off v |i| for i < 0.
    static LossMap placeholder(double k_on = 1.0e-6, double k_off = 0.4e-6) {
        std::vector<double> v, i, e;
        for (int k = 0; k <= 20; ++k) v.push_back(50.0 * k);
        for (int k = -20; k <= 20; ++k) i.push_back(5.0 * k);
        for (double vv : v) {
            for (double ii : i) e.push_back(placeholder_energy(vv, ii, k_on, k_off));
        }
        return LossMap(std::move(v), std::move(i), std::move(e), placeholder_label);
    }

    static double placeholder_energy(double v, double i, double k_on = 1.0e-6, double k_off = 0.4e-6) {
        return (i >= 0.0 ? k_on + k_off : k_off) * v * std::abs(i);
    }

    static constexpr const char* placeholder_label = "placeholder (synthetic k_on=1uJ/VA k_off=0.4uJ/VA, not device data)";

private:
    static void check_axis(const std::vector<double>& a, const char* name) {
        if (a.empty()) throw ConfigError("loss_map", std::string(name) + " axis is empty");
        for (std::size_t k = 0; k < a.size(); ++k) {
            if (!std::isfinite(a[k])) throw ConfigError("loss_map", std::string(name) + " axis value is not finite");
            if (k > 0 && !(a[k] > a[k - 1])) {
                throw ConfigError("loss_map", std::string(name) + " axis must be strictly increasing");
            }
        }
    }

    static std::pair<std::size_t, double> locate(const std::vector<double>& a, double x, bool& clamped) {
        if (a.size() == 1) {
            if (x != a[0]) clamped = true;
            return {0, 0.0};
        }
        if (x <= a.front()) {
            if (x < a.front()) clamped = true;
            return {0, 0.0};
        }
        if (x >= a.back()) {
            if (x > a.back()) clamped = true;
            return {a.size() - 2, 1.0};
        }
        const auto it = std::upper_bound(a.begin(), a.end(), x);
        const std::size_t k = static_cast<std::size_t>(it - a.begin()) - 1;
        return {k, (x - a[k]) / (a[k + 1] - a[k])};
    }

    std::vector<double> v_, i_, e_;
    std::string label_;
};

/// Parses `v,i,e` CSV text. Lines starting with '#' and blank lines are skipped.
inline LossMap parse_loss_map(std::string_view text, std::string label = "user") {
    std::map<std::pair<double, double>, double> nodes;
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    bool header = false;
    while (std::getline(in, line)) {
        ++line_no;
        const auto t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        std::vector<std::string_view> cols;
        std::size_t start = 0;
        while (true) {
            const auto comma = t.find(',', start);
            cols.push_back(trim(t.substr(start, comma == std::string_view::npos ? t.npos : comma - start)));
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        const std::string where = "line " + std::to_string(line_no) + ": ";
        if (!header) {
            if (cols.size() != 3 || cols[0] != "v" || cols[1] != "i" || cols[2] != "e") {
                throw ConfigError("loss_map", where + "expected header v,i,e");
            }
            header = true;
            continue;
        }
        if (cols.size() != 3) throw ConfigError("loss_map", where + "expected 3 columns");
        const auto v = parse_double(cols[0]), i = parse_double(cols[1]), e = parse_double(cols[2]);
        if (!v || !i || !e) throw ConfigError("loss_map", where + "non-numeric value");
        if (!nodes.emplace(std::pair{*v, *i}, *e).second) throw ConfigError("loss_map", where + "duplicate grid node");
    }
    if (!header) throw ConfigError("loss_map", "missing header v,i,e");
    if (nodes.empty()) throw ConfigError("loss_map", "no data rows");

    std::vector<double> v_axis, i_axis;
    for (const auto& [key, e] : nodes) {
        v_axis.push_back(key.first);
        i_axis.push_back(key.second);
    }
    std::sort(v_axis.begin(), v_axis.end());
    v_axis.erase(std::unique(v_axis.begin(), v_axis.end()), v_axis.end());
    std::sort(i_axis.begin(), i_axis.end());
    i_axis.erase(std::unique(i_axis.begin(), i_axis.end()), i_axis.end());
    if (nodes.size() != v_axis.size() * i_axis.size()) {
        throw ConfigError("loss_map", "grid is not rectangular: " + format_number(nodes.size()) + " nodes for " +
                                          format_number(v_axis.size()) + " x " + format_number(i_axis.size()) +
                                          " axes");
    }
    std::vector<double> energy;
    energy.reserve(nodes.size());
    for (const auto& [key, e] : nodes) energy.push_back(e);  // map order is (v, i) row-major
    return LossMap(std::move(v_axis), std::move(i_axis), std::move(energy), std::move(label));
}

inline LossMap load_loss_map(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError(path, "cannot open loss map file");
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_loss_map(ss.str(), path);
}

inline std::string write_loss_map(const LossMap& m) {
    std::string out = "v,i,e\n";
    for (std::size_t a = 0; a < m.v_axis().size(); ++a) {
        for (std::size_t b = 0; b < m.i_axis().size(); ++b) {
            out += format_number(m.v_axis()[a]) + "," + format_number(m.i_axis()[b]) + "," + format_number(m.at(a, b)) +
                   "\n";
        }
    }
    return out;
}

}  // namespace yab
