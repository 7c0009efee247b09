#ifndef OPCALC_RUN_HPP
#define OPCALC_RUN_HPP
//
// Run configuration and dispatch from experiment id to suite.
//

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "perturbation.hpp"
#include "report.hpp"
#include "suites.hpp"

namespace opcalc {

inline const std::vector<std::string>& experiment_ids() {
    static const std::vector<std::string> ids{"doi-verify",     "sinc-check", "lip-bound", "holder-sweep",
                                              "schatten-decay", "ideals-boyd", "qc-verify", "fuglede-ratio"};
    return ids;
}

struct RunConfig {
    std::string experiment;
    std::uint64_t seed = 1;
    std::vector<int> dims{4};
    double sigma = 2.0;
    int trials = 10;
    double alpha = 0.5;
    std::vector<double> p;  // empty selects the per-experiment default
    std::vector<double> delta_grid;
    std::string out;

    std::vector<double> p_or_default() const {
        if (!p.empty()) return p;
        if (experiment == "fuglede-ratio") return {1.0, 2.0, std::numeric_limits<double>::infinity()};
        if (experiment == "ideals-boyd") return {1.0, 4.0 / 3.0, 2.0, 4.0};
        return {2.0};
    }
    std::string out_or_default() const { return out.empty() ? experiment : out; }
};

class ConfigError : public Error {
  public:
    using Error::Error;
};

inline double parse_p_value(const nlohmann::json& v) {
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        if (s == "inf") return std::numeric_limits<double>::infinity();
        throw ConfigError("config: p entries must be numbers or \"inf\"");
    }
    return v.get<double>();
}

// Reads the recognized keys of a JSON run object onto `cfg`.
inline void apply_json(RunConfig& cfg, const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("config: expected a JSON object");
    static const std::vector<std::string> known{"experiment", "seed", "dims",        "sigma", "trials",
                                                "alpha",      "p",    "delta_grid", "out"};
    for (const auto& [k, v] : j.items())
        if (std::find(known.begin(), known.end(), k) == known.end()) throw ConfigError("config: unknown key '" + k + "'");
    try {
        if (j.contains("experiment")) cfg.experiment = j["experiment"].get<std::string>();
        if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
        if (j.contains("dims")) {
            const auto& d = j["dims"];
            cfg.dims = d.is_array() ? d.get<std::vector<int>>() : std::vector<int>{d.get<int>()};
        }
        if (j.contains("sigma")) cfg.sigma = j["sigma"].get<double>();
        if (j.contains("trials")) cfg.trials = j["trials"].get<int>();
        if (j.contains("alpha")) cfg.alpha = j["alpha"].get<double>();
        if (j.contains("p")) {
            cfg.p.clear();
            const auto& p = j["p"];
            if (p.is_array())
                for (const auto& e : p) cfg.p.push_back(parse_p_value(e));
            else
                cfg.p.push_back(parse_p_value(p));
        }
        if (j.contains("delta_grid")) cfg.delta_grid = j["delta_grid"].get<std::vector<double>>();
        if (j.contains("out")) cfg.out = j["out"].get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

inline void validate(const RunConfig& c) {
    const auto& ids = experiment_ids();
    if (std::find(ids.begin(), ids.end(), c.experiment) == ids.end())
        throw ConfigError("unknown experiment id '" + c.experiment + "'");
    if (c.dims.empty()) throw ConfigError("dims must not be empty");
    for (int d : c.dims)
        if (d < 1 || d > 64) throw ConfigError("dims entries must lie in [1, 64]");
    if (c.trials < 0 || c.trials > 1000000) throw ConfigError("trials must lie in [0, 1000000]");
    if (!(c.sigma > 0.0) || c.sigma > 64.0) throw ConfigError("sigma must lie in (0, 64]");
    if (!(c.alpha > 0.0 && c.alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
    for (double p : c.p)
        if (!(p > 0.0)) throw ConfigError("p entries must be positive");
    for (double d : c.delta_grid)
        if (!(d > 0.0) || !std::isfinite(d)) throw ConfigError("delta_grid entries must be positive");
}

inline ExperimentReport run(const RunConfig& c) {
    validate(c);
    const std::string& e = c.experiment;
    ExperimentReport r;
    try {
        if (e == "doi-verify") r = experiment_doi_verify(c.dims, c.sigma, c.trials, c.seed);
        else if (e == "sinc-check") r = experiment_sinc_check(c.sigma, c.trials, c.seed);
        else if (e == "lip-bound") r = experiment_lipschitz(c.dims, c.sigma, c.trials, c.seed);
        else if (e == "holder-sweep") r = experiment_holder_sweep(c.alpha, c.dims, c.delta_grid, c.trials, c.seed);
        else if (e == "schatten-decay")
            r = experiment_schatten_decay(c.alpha, c.p_or_default().front(), c.dims, c.trials, c.seed);
        else if (e == "ideals-boyd") r = experiment_ideals_boyd(c.p_or_default(), c.trials, c.seed);
        else if (e == "qc-verify") r = experiment_quasicommutator(c.dims, c.sigma, c.trials, c.seed);
        else r = experiment_fuglede_ratio(c.dims, c.p_or_default(), c.trials, c.seed);
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& err) {
        throw Error(e + ": " + err.what());
    }
    ordered_json cfg = ordered_json::object();
    cfg["dims"] = c.dims;
    cfg["sigma"] = c.sigma;
    cfg["trials"] = c.trials;
    cfg["alpha"] = c.alpha;
    ordered_json ps = ordered_json::array();
    for (double p : c.p_or_default()) ps.push_back(std::isinf(p) ? ordered_json("inf") : ordered_json(p));
    cfg["p"] = ps;
    ordered_json meta = ordered_json::object();
    meta["config"] = cfg;
    for (const auto& [k, v] : r.meta.items()) meta[k] = v;
    r.meta = meta;
    return r;
}

}  // namespace opcalc

#endif
