#pragma once

#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "radstri/quadrature.hpp"

namespace radstri {

/// RFC-4180 field quoting.
inline std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

struct RatioSample {
    std::string label;   // what `param` means: radius, time, scale, ...
    double param = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
};

/// Per-scan record of an inequality check: both sides at every sample, the
/// supremum of the ratios (the empirical constant), grid metadata, and tail
/// bounds for truncated integrals. Never a bare number.
struct RatioReport {
    std::string op;
    std::map<std::string, double> exponents;
    bool admissible = true;
    std::string rejection;  // violated hypothesis, when !admissible
    std::vector<RatioSample> samples;
    double supremum = 0.0;
    std::optional<LineFit> fit;
    std::map<std::string, double> grid_meta;
    std::map<std::string, double> tail_bounds;

    void finalize() {
        supremum = 0.0;
        for (const auto& s : samples) supremum = std::max(supremum, s.ratio);
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["op"] = op;
        j["exponents"] = exponents;
        j["admissible"] = admissible;
        if (!rejection.empty()) j["rejection"] = rejection;
        j["supremum"] = supremum;
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& s : samples)
            arr.push_back({{"label", s.label}, {"param", s.param}, {"lhs", s.lhs},
                           {"rhs", s.rhs}, {"ratio", s.ratio}});
        j["samples"] = arr;
        if (fit) j["fit"] = {{"slope", fit->slope}, {"intercept", fit->intercept}, {"r2", fit->r2}};
        j["grid"] = grid_meta;
        j["tail_bounds"] = tail_bounds;
        return j;
    }

    void write_csv(std::ostream& os) const {
        os << "op,label,param,lhs,rhs,ratio\n";
        for (const auto& s : samples)
            os << csv_quote(op) << ',' << csv_quote(s.label) << ',' << s.param << ',' << s.lhs
               << ',' << s.rhs << ',' << s.ratio << '\n';
    }
};

/// (T, value) growth table with an analytic lower bound alongside.
struct GrowthTable {
    std::string op;
    std::vector<double> T;
    std::vector<double> value;        // N(T)
    std::vector<double> lower_bound;  // logarithmic bound at the same T
    std::optional<LineFit> log_fit;   // value against log T
    std::map<std::string, double> meta;

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["op"] = op;
        j["T"] = T;
        j["value"] = value;
        j["lower_bound"] = lower_bound;
        if (log_fit)
            j["fit"] = {{"slope", log_fit->slope}, {"intercept", log_fit->intercept}, {"r2", log_fit->r2}};
        j["meta"] = meta;
        return j;
    }

    void write_csv(std::ostream& os) const {
        os << "T,value,log_bound,fit_residual\n";
        for (std::size_t i = 0; i < T.size(); ++i) {
            const double fitted =
                log_fit ? log_fit->slope * std::log(T[i]) + log_fit->intercept : 0.0;
            os << T[i] << ',' << value[i] << ',' << lower_bound[i] << ',' << (value[i] - fitted)
               << '\n';
        }
    }
};

}  // namespace radstri
