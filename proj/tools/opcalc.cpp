#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "opcalc/run.hpp"

namespace {

std::vector<double> parse_p_list(const std::vector<std::string>& items) {
    std::vector<double> out;
    for (const auto& s : items) {
        if (s == "inf")
            out.push_back(std::numeric_limits<double>::infinity());
        else
            out.push_back(opcalc::parse_double(s));
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Perturbation calculus for functions of normal matrices"};
    std::string positional, experiment, config_path, out;
    std::uint64_t seed = 0;
    std::vector<int> dims;
    double sigma = 0.0, alpha = 0.0;
    int trials = 0;
    std::vector<std::string> p;

    std::string ids;
    for (const auto& id : opcalc::experiment_ids()) ids += (ids.empty() ? "" : ", ") + id;
    app.add_option("experiment-id", positional, "One of: " + ids);
    auto* o_config = app.add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
    auto* o_exp = app.add_option("--experiment", experiment, "Experiment id (overrides the positional id)");
    auto* o_seed = app.add_option("--seed", seed, "64-bit seed");
    auto* o_dims = app.add_option("--dims", dims, "Matrix dimensions, cycled over trials")->delimiter(',');
    auto* o_sigma = app.add_option("--sigma", sigma, "Support radius of the test functions");
    auto* o_trials = app.add_option("--trials", trials, "Number of trials");
    auto* o_alpha = app.add_option("--alpha", alpha, "Holder exponent in (0, 1)");
    auto* o_p = app.add_option("--p", p, "Schatten exponents (numbers or inf)")->delimiter(',');
    auto* o_out = app.add_option("--out", out, "Output path prefix");
    CLI11_PARSE(app, argc, argv);

    try {
        opcalc::RunConfig cfg;
        if (*o_config) {
            std::ifstream in(config_path);
            std::stringstream buf;
            buf << in.rdbuf();
            opcalc::apply_json(cfg, nlohmann::json::parse(buf.str()));
        }
        if (!positional.empty()) cfg.experiment = positional;
        if (*o_exp) cfg.experiment = experiment;
        if (*o_seed) cfg.seed = seed;
        if (*o_dims) cfg.dims = dims;
        if (*o_sigma) cfg.sigma = sigma;
        if (*o_trials) cfg.trials = trials;
        if (*o_alpha) cfg.alpha = alpha;
        if (*o_p) cfg.p = parse_p_list(p);
        if (*o_out) cfg.out = out;
        if (cfg.experiment.empty()) throw opcalc::ConfigError("no experiment id given");

        const opcalc::ExperimentReport report = opcalc::run(cfg);
        opcalc::write_outputs(report, cfg.out_or_default());
        std::cout << report.experiment << ": " << report.rows.size() << " rows, " << report.failures.size()
                  << " failed checks\n";
        for (const auto& f : report.failures) std::cerr << "FAILED " << f << "\n";
        return report.ok() ? 0 : 1;
    } catch (const opcalc::ConfigError& e) {
        std::cerr << "opcalc: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "opcalc: invalid JSON: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "opcalc: " << e.what() << "\n";
        return 3;
    }
}
