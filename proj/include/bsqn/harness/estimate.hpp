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

#pragma once

#include <chrono>
#include <cmath>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "bsqn/bell_sampler.hpp"
#include "bsqn/estimators.hpp"
#include "bsqn/harness/config.hpp"
#include "bsqn/harness/runner.hpp"
#include "bsqn/transforms.hpp"

namespace bsqn::harness {

/// Vectors longer than this are left out of the JSON report.
inline constexpr size_t kMaxReportedOrder = 12;

struct EstimateRequest {
    GraphSpec graph;
    NoiseSpec noise;
    ProtocolSpec protocol;
    uint64_t shots = 0;
    uint64_t seed = 0;
    std::string shot_log;
};

namespace detail {

inline Json nullable(double v) {
    return std::isnan(v) ? Json(nullptr) : Json(v);
}

inline Json metrics_json(const ErrorMetrics &m) {
    return Json{{"l2", m.l2}, {"linf", m.linf}, {"F_err", m.fidelity_error}};
}

}  // namespace detail

/// Runs one estimate and returns the report: estimates, error metrics
/// against the exact state, and run metadata.
inline Json run_estimate(const EstimateRequest &req) {
    auto start = std::chrono::steady_clock::now();
    const size_t n = req.graph.n;
    if (n == 0) {
        throw ConfigError("--graph", "missing");
    }
    if (req.shots == 0) {
        throw ConfigError("--shots", "must be positive");
    }
    if (req.noise.model == "explicit" && req.noise.a->size() != (size_t{1} << n)) {
        throw ConfigError("--noise.a", "length must be 2^n");
    }
    if (req.noise.model != "explicit" && !req.noise.F && !req.noise.mu) {
        throw ConfigError("--noise.F", "missing");
    }
    if (req.noise.b_star && req.noise.b_star->size() != n) {
        throw ConfigError("--noise.b_star", "length must equal n");
    }
    const ProtocolSpec &protocol = req.protocol;
    for (const auto *bits : {&protocol.target_b, &protocol.sign_reference}) {
        if (*bits && (*bits)->size() != n) {
            throw ConfigError("--target/--sign-ref", "length must equal n");
        }
    }
    if (protocol.kind == "bsqn_random" && !protocol.M) {
        throw ConfigError("--M", "bsqn_random needs M");
    }
    if (!req.shot_log.empty() && protocol.kind == "dge") {
        throw ConfigError("--shot-log", "applies only to Bell-sampling protocols");
    }

    Graph g = req.graph.build(n);
    DiagonalState state = req.noise.build(n);
    SignRule rule = protocol.sign_reference ? SignRule::with_reference(BitVec::from_string(*protocol.sign_reference))
                                            : SignRule::fidelity_above_half(n);
    BitVec target = protocol.target_b ? BitVec::from_string(*protocol.target_b) : BitVec(n);
    Rng rng(req.seed);

    Json report;
    report["protocol"] = protocol.label();
    report["graph"] = {{"type", req.graph.type}, {"n", n}};
    report["noise"] = {{"model", state.model_name()}, {"F", state.fidelity()}};
    if (req.noise.mu) {
        report["noise"]["mu"] = *req.noise.mu;
    }
    report["Ns"] = req.shots;
    report["seed"] = req.seed;
    const bool small = n <= kMaxReportedOrder;

    if (protocol.kind == "dge") {
        MeasurementPlan plan = dge_plan(g, protocol.strategy);
        DgeEstimate est = dge_simulate(plan, g, state, req.shots, rng);
        RealVector a = state.exact_a();
        report["settings"] = plan.settings.size();
        report["F_hat"] = est.a_hat[0];
        report["F_true"] = a[0];
        report["metrics"] = detail::metrics_json(error_metrics(est.a_hat, a));
        if (small) {
            report["w_hat"] = est.w_hat;
            report["a_hat"] = est.a_hat;
        }
    } else {
        const uint64_t pairs = req.shots / 2;
        if (pairs == 0) {
            throw ConfigError("--shots", "Bell sampling needs at least 2 copies");
        }
        report["pairs"] = pairs;
        SyndromeBatch batch = sample_batch(protocol, g, state, pairs, rng);
        if (!req.shot_log.empty()) {
            std::ofstream log(req.shot_log);
            if (!log) {
                throw ConfigError("--shot-log", "cannot write '" + req.shot_log + "'");
            }
            write_shot_log(log, batch, req.seed);
        }
        if (protocol.kind == "bsqn_full") {
            CHatVector c = c_hat_full(batch.to_histogram());
            BsqnFullEstimate est = bsqn_full(c, rule);
            RealVector a = state.exact_a();
            report["F_hat"] = est.a_hat[0];
            report["F_true"] = a[0];
            report["metrics"] = detail::metrics_json(error_metrics(est.a_hat, a));
            if (small) {
                report["c_hat"] = c.values;
                report["w_hat"] = est.w_hat;
                report["a_hat"] = est.a_hat;
            }
        } else {
            RandomElementEstimate est = bsqn_random_element(batch, g, target, *protocol.M, rng, rule);
            double truth = state.probability(target);
            report["target"] = target.str();
            report["M"] = est.M;
            report["F_hat"] = est.estimate;
            report["F_true"] = truth;
            report["metrics"] = {{"l2", nullptr}, {"linf", nullptr}, {"F_err", std::abs(est.estimate - truth)}};
            std::vector<std::string> indices;
            for (const auto &b : est.indices) {
                indices.push_back(b.str());
            }
            report["indices"] = indices;
            report["c_hat"] = est.c_hat;
        }
    }
    report["wall_ms"] =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return report;
}

}  // namespace bsqn::harness
