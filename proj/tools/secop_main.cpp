/*
   Copyright 2026 the secop authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "secop/sweep.hpp"

namespace {

// Exit codes: 0 success, 1 validation failure, 2 config error,
// 3 numerical non-convergence.
constexpr int kExitOk = 0;
constexpr int kExitValidationFailure = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitNonConvergence = 3;

int run_sweep_cmd(const std::string& config_path, const std::string& out_path,
                  std::uint64_t* seed, std::uint64_t* trials, unsigned* workers) {
    secop::sweep::SweepSpec spec = secop::sweep::load_config(config_path);
    if (seed) spec.mcplan.seed = *seed;
    if (trials) spec.mcplan.trials = *trials;
    if (workers) spec.mcplan.workers = *workers;
    spec.mcplan.validate();
    auto rows = secop::sweep::run_sweep(spec);
    secop::sweep::write_csv(rows, spec.sweeps_lambda(), out_path);
    std::size_t flagged = 0;
    for (const auto& r : rows)
        if (r.outside_asymptotic_regime) ++flagged;
    std::printf("wrote %zu rows to %s", rows.size(), out_path.c_str());
    if (flagged > 0) std::printf(" (%zu outside the asymptotic regime)", flagged);
    std::printf("\n");
    return kExitOk;
}

int run_validate_cmd(const std::string& config_path) {
    std::uint64_t trials = 1'000'000;
    std::uint64_t seed = 1;
    unsigned workers = 2;
    if (!config_path.empty()) {
        // validate config: only the Monte Carlo sizing knobs
        secop::sweep::SweepSpec spec = secop::sweep::load_config(config_path);
        trials = spec.mcplan.trials;
        seed = spec.mcplan.seed;
        workers = spec.mcplan.workers;
    }
    auto checks = secop::sweep::run_validation(trials, seed, workers);
    std::printf("%s\n", secop::sweep::checks_to_json(checks).c_str());
    for (const auto& c : checks)
        if (!c.pass) return kExitValidationFailure;
    return kExitOk;
}

int run_det_cmd(const std::vector<double>& eta) {
    secop::chan::SystemConfig cfg;
    cfg.m = eta.size();
    secop::chan::CorrelationSpec spec;
    spec.eta = eta;
    auto f = secop::chan::build_factors(spec, cfg);
    std::printf("U =\n");
    for (std::size_t r = 0; r < cfg.m; ++r) {
        for (std::size_t c = 0; c < cfg.m; ++c) std::printf(" % .9g", f.at(r, c));
        std::printf("\n");
    }
    std::printf("det(U) product identity    = %.9g\n", f.det_u);
    std::printf("det(U) direct elimination  = %.9g\n",
                secop::chan::determinant_direct(f.u, cfg.m));
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"secrecy outage probability of correlated Rayleigh wiretap channels"};
    app.require_subcommand(1);

    auto* sweep_cmd = app.add_subcommand("sweep", "evaluate a sweep config and write CSV");
    std::string config_path, out_path;
    std::uint64_t seed = 0, trials = 0;
    unsigned workers = 0;
    sweep_cmd->add_option("--config", config_path, "sweep config (JSON)")->required();
    sweep_cmd->add_option("--out", out_path, "output CSV path")->required();
    auto* seed_opt = sweep_cmd->add_option("--seed", seed, "override Monte Carlo seed");
    auto* trials_opt = sweep_cmd->add_option("--trials", trials, "override Monte Carlo trials");
    auto* workers_opt = sweep_cmd->add_option("--workers", workers, "override worker count");

    auto* validate_cmd =
        app.add_subcommand("validate", "run the built-in cross-validation suite");
    std::string validate_config;
    validate_cmd->add_option("--config", validate_config,
                             "optional config whose mc block sizes the Monte Carlo checks");

    auto* det_cmd = app.add_subcommand("det", "print U and det(U) for an eta vector");
    std::vector<double> eta;
    det_cmd->add_option("--eta", eta, "comma-separated eta values")
        ->required()
        ->delimiter(',');

    CLI11_PARSE(app, argc, argv);

    try {
        if (sweep_cmd->parsed())
            return run_sweep_cmd(config_path, out_path, seed_opt->count() ? &seed : nullptr,
                                 trials_opt->count() ? &trials : nullptr,
                                 workers_opt->count() ? &workers : nullptr);
        if (validate_cmd->parsed()) return run_validate_cmd(validate_config);
        if (det_cmd->parsed()) return run_det_cmd(eta);
    } catch (const secop::NonConvergence& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitNonConvergence;
    } catch (const secop::ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitConfigError;
    } catch (const secop::DomainError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitConfigError;
    } catch (const secop::DegenerateCorrelation& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitConfigError;
    } catch (const secop::IoError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitConfigError;
    } catch (const secop::SecrecyInfeasible& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitConfigError;
    }
    return kExitOk;
}
