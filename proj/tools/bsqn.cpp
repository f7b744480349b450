// Copyright 2026 The BSQN Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "bsqn/harness/config.hpp"
#include "bsqn/harness/estimate.hpp"
#include "bsqn/harness/oracle_check.hpp"
#include "bsqn/harness/runner.hpp"

using namespace bsqn;
using namespace bsqn::harness;

namespace {

int cmd_run(const std::string &config_path, bool full, const std::string &out_dir) {
    ExperimentConfig cfg = load_config(config_path);
    if (full) {
        cfg.apply_full();
    }
    std::string dir = out_dir.empty() ? cfg.output : out_dir;
    size_t cells = enumerate_cells(cfg).size();
    std::cerr << cfg.name << ": " << cells << " cells x " << cfg.trials << " trials, " << worker_count()
              << " workers\n";
    size_t done = 0;
    RunOptions options;
    options.sink = [&](const ResultRow &) {
        done++;
        if (done % cfg.trials == 0) {
            std::cerr << "  cell " << done / cfg.trials << "/" << cells << " done\n";
        }
    };
    RunPaths paths = run_to_directory(cfg, dir, options);
    std::cout << paths.csv.string() << "\n" << paths.summary.string() << "\n";
    return 0;
}

int cmd_oracle_check(uint64_t seed) {
    OracleCheckOptions options;
    options.seed = seed;
    OracleReport report = oracle_check(options);
    print_report(std::cout, report);
    return report.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Bell sampling estimators for graph-state noise"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    bool full = false;
    auto *run = app.add_subcommand("run", "Run an experiment configuration");
    run->add_option("--config", config_path, "JSON experiment file")->required();
    run->add_flag("--full", full, "Use the paper-scale trial count");
    run->add_option("--out", out_dir, "Output directory (overrides the config)");

    uint64_t oracle_seed = OracleCheckOptions{}.seed;
    auto *check = app.add_subcommand("oracle-check", "Run the equivalence gates against the dense oracle");
    check->add_option("--seed", oracle_seed, "Seed for the sampling gates");

    std::string graph_text, noise_text, protocol_name = "bsqn_full", strategy, target, sign_ref, shot_log;
    uint64_t shots = 0, seed = 0;
    std::optional<size_t> M;
    auto *estimate = app.add_subcommand("estimate", "Run one estimate and print the report as JSON");
    estimate->add_option("--graph", graph_text, "complete:<n>, path:<n> or edges:<file>")->required();
    estimate->add_option("--noise", noise_text,
                         "depolarizing:F=<f>, dephasing_iid:mu=<m>|F=<f>, bimodal:F=<f>[,b_star=<bits>], "
                         "explicit:a=<a0>/<a1>/...|file=<path>")
        ->required();
    estimate->add_option("--protocol", protocol_name, "bsqn_full, bsqn_random or dge")->capture_default_str();
    estimate->add_option("--shots", shots, "Number of copies N_s")->required();
    estimate->add_option("--seed", seed, "RNG seed")->required();
    estimate->add_option("--M", M, "Sampled stabilizer count (bsqn_random)");
    estimate->add_option("--target", target, "Target bit string (bsqn_random)");
    estimate->add_option("--strategy", strategy, "Naive, CompleteOverlapY or CompleteDisjointY (dge)");
    estimate->add_option("--sign-ref", sign_ref, "Reference bit string with a_ref > 1/2");
    std::string sampler = "fast";
    estimate->add_option("--sampler", sampler, "fast or circuit (Bell-sampling protocols)")->capture_default_str();
    estimate->add_option("--shot-log", shot_log, "Write the syndrome stream to this file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            return cmd_run(config_path, full, out_dir);
        }
        if (*check) {
            return cmd_oracle_check(oracle_seed);
        }
        EstimateRequest req;
        req.graph = parse_graph_spec(graph_text);
        req.noise = parse_noise_spec(noise_text);
        Json protocol = {{"name", protocol_name}};
        if (sampler != "fast") {
            protocol["sampler"] = sampler;
        }
        if (M) {
            protocol["M"] = *M;
        }
        if (!target.empty()) {
            protocol["target_b"] = target;
        }
        if (!strategy.empty()) {
            protocol["strategy"] = strategy;
        }
        if (!sign_ref.empty()) {
            protocol["sign_reference"] = sign_ref;
        }
        req.protocol = harness::detail::parse_protocol(protocol, "--protocol");
        req.shots = shots;
        req.seed = seed;
        req.shot_log = shot_log;
        std::cout << run_estimate(req).dump(2) << "\n";
        return 0;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
