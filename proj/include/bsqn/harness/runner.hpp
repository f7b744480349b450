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

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "bsqn/bell_sampler.hpp"
#include "bsqn/estimators.hpp"
#include "bsqn/harness/config.hpp"
#include "bsqn/noise.hpp"
#include "bsqn/rng.hpp"
#include "bsqn/stats.hpp"
#include "bsqn/tableau.hpp"
#include "bsqn/transforms.hpp"

namespace bsqn::harness {

inline constexpr const char *kCsvHeader =
    "protocol,graph,n,model,F_true,Ns,M,trial,seed,l2_error,linf_error,F_hat,F_err,wall_ms";

/// One point of the experiment grid: a protocol, a noise model and one sweep
/// value, with every coordinate resolved.
struct Cell {
    size_t protocol_index = 0;
    size_t noise_index = 0;
    size_t n = 0;
    std::optional<double> F;
    uint64_t Ns = 0;
    size_t M = 0;
    std::string key;
};

struct ResultRow {
    std::string protocol;
    std::string graph;
    size_t n = 0;
    std::string model;
    double F_true = 0;
    uint64_t Ns = 0;
    size_t M = 0;
    size_t trial = 0;
    uint64_t seed = 0;
    double l2_error = std::numeric_limits<double>::quiet_NaN();
    double linf_error = std::numeric_limits<double>::quiet_NaN();
    double F_hat = std::numeric_limits<double>::quiet_NaN();
    double F_err = std::numeric_limits<double>::quiet_NaN();
    double wall_ms = 0;
    /// Why the estimate is missing; empty for a successful trial.
    std::string error;
};

inline std::string format_number(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    std::ostringstream out;
    out << std::setprecision(12) << v;
    return out.str();
}

inline std::string csv_line(const ResultRow &r) {
    std::ostringstream out;
    out << r.protocol << ',' << r.graph << ',' << r.n << ',' << r.model << ',' << format_number(r.F_true) << ','
        << r.Ns << ',' << r.M << ',' << r.trial << ',' << r.seed << ',' << format_number(r.l2_error) << ','
        << format_number(r.linf_error) << ',' << format_number(r.F_hat) << ',' << format_number(r.F_err) << ','
        << std::fixed << std::setprecision(3) << r.wall_ms;
    return out.str();
}

namespace detail {

inline std::string noise_key(const NoiseSpec &noise, const std::optional<double> &swept_F) {
    std::ostringstream key;
    key << std::setprecision(17) << noise.model;
    if (swept_F) {
        key << ",F=" << *swept_F;
    } else if (noise.mu) {
        key << ",mu=" << *noise.mu;
    } else if (noise.F) {
        key << ",F=" << *noise.F;
    }
    if (noise.b_star) {
        key << ",b_star=" << *noise.b_star;
    }
    if (noise.a) {
        std::ostringstream values;
        values << std::setprecision(17);
        for (double v : *noise.a) {
            values << v << ' ';
        }
        key << ",a=" << std::hex << fnv1a(values.str());
    }
    return key.str();
}

}  // namespace detail

/// Cells in protocol-major, then noise, then sweep order.
inline std::vector<Cell> enumerate_cells(const ExperimentConfig &cfg) {
    std::vector<Cell> cells;
    for (size_t p = 0; p < cfg.protocols.size(); p++) {
        const auto &protocol = cfg.protocols[p];
        for (size_t m = 0; m < cfg.noises.size(); m++) {
            for (double value : cfg.sweep_values) {
                Cell c;
                c.protocol_index = p;
                c.noise_index = m;
                c.n = cfg.axis == SweepAxis::n ? static_cast<size_t>(value) : cfg.graph.n;
                if (cfg.axis == SweepAxis::F) {
                    c.F = value;
                }
                c.Ns = cfg.axis == SweepAxis::Ns ? static_cast<uint64_t>(value) : *cfg.Ns;
                std::optional<size_t> swept_M;
                if (cfg.axis == SweepAxis::M) {
                    swept_M = static_cast<size_t>(value);
                }
                c.M = protocol.kind == "bsqn_random" ? protocol.resolve_M(c.n, swept_M) : 0;
                std::ostringstream key;
                key << protocol.label() << '|' << cfg.graph.type;
                if (!cfg.graph.file.empty()) {
                    key << ':' << cfg.graph.file;
                }
                key << "|n=" << c.n << '|' << detail::noise_key(cfg.noises[m], c.F) << "|Ns=" << c.Ns
                    << "|M=" << c.M;
                if (protocol.target_b) {
                    key << "|target=" << *protocol.target_b;
                }
                if (protocol.sign_reference) {
                    key << "|ref=" << *protocol.sign_reference;
                }
                key << "|sampler=" << protocol.sampler;
                c.key = key.str();
                cells.push_back(std::move(c));
            }
        }
    }
    return cells;
}

/// Per-cell data shared by all trials of the cell.
struct CellContext {
    Graph graph;
    std::optional<DiagonalState> state;
    RealVector exact_a;
    std::optional<MeasurementPlan> plan;
    SignRule sign_rule;
    BitVec target;
    double F_true = 0;
};

inline CellContext make_context(const ExperimentConfig &cfg, const Cell &cell) {
    const auto &protocol = cfg.protocols[cell.protocol_index];
    CellContext ctx;
    ctx.graph = cfg.graph.build(cell.n);
    ctx.state = cfg.noises[cell.noise_index].build(cell.n, cell.F);
    ctx.sign_rule = protocol.sign_reference ? SignRule::with_reference(BitVec::from_string(*protocol.sign_reference))
                                            : SignRule::fidelity_above_half(cell.n);
    ctx.target = protocol.target_b ? BitVec::from_string(*protocol.target_b) : BitVec(cell.n);
    ctx.F_true = ctx.state->probability(ctx.target);
    if (protocol.kind != "bsqn_random") {
        ctx.exact_a = ctx.state->exact_a();
    }
    if (protocol.kind == "dge") {
        ctx.plan = dge_plan(ctx.graph, protocol.strategy);
    }
    return ctx;
}

/// Bell-sampling syndromes for `pairs` pairs of copies, either from the
/// stabilizer circuit or from the XOR shortcut.
template <typename URBG>
SyndromeBatch sample_batch(const ProtocolSpec &protocol, const Graph &g, const DiagonalState &state, uint64_t pairs,
                           URBG &rng) {
    if (protocol.sampler != "circuit") {
        return sample_syndrome_batch(g, state, pairs, rng);
    }
    SyndromeBatch batch(g.n());
    batch.reserve(pairs);
    BitVec b(g.n()), b_prime(g.n());
    for (uint64_t t = 0; t < pairs; t++) {
        state.sample_into(b, rng);
        state.sample_into(b_prime, rng);
        batch.add(syndrome_from_outcome(g, run_bell_circuit(g, b, b_prime, rng)));
    }
    return batch;
}

template <typename URBG>
SyndromeHistogram sample_histogram(const ProtocolSpec &protocol, const Graph &g, const DiagonalState &state,
                                   uint64_t pairs, URBG &rng) {
    if (protocol.sampler == "circuit") {
        return sample_syndromes_circuit(g, state, pairs, rng);
    }
    return sample_syndromes_fast(g, state, pairs, rng);
}

inline ResultRow run_trial(const ExperimentConfig &cfg, const Cell &cell, const CellContext &ctx, size_t trial) {
    const auto &protocol = cfg.protocols[cell.protocol_index];
    auto start = std::chrono::steady_clock::now();
    ResultRow row;
    row.protocol = protocol.label();
    row.graph = cfg.graph.type;
    row.n = cell.n;
    row.model = ctx.state->model_name();
    row.F_true = ctx.F_true;
    row.Ns = cell.Ns;
    row.M = cell.M;
    row.trial = trial;
    row.seed = derive_seed(cfg.seed, cell.key, trial);
    Rng rng(row.seed);

    if (protocol.kind == "dge") {
        try {
            DgeEstimate est = dge_simulate(*ctx.plan, ctx.graph, *ctx.state, cell.Ns, rng);
            ErrorMetrics m = error_metrics(est.a_hat, ctx.exact_a);
            row.l2_error = m.l2;
            row.linf_error = m.linf;
            row.F_hat = est.a_hat[0];
            row.F_err = m.fidelity_error;
        } catch (const InsufficientBudget &e) {
            row.error = e.what();
        }
    } else {
        const uint64_t pairs = cell.Ns / 2;
        if (pairs == 0) {
            row.error = "Bell sampling needs N_s >= 2 copies";
        } else if (protocol.kind == "bsqn_full") {
            SyndromeHistogram h = sample_histogram(protocol, ctx.graph, *ctx.state, pairs, rng);
            BsqnFullEstimate est = bsqn_full(c_hat_full(h), ctx.sign_rule);
            ErrorMetrics m = error_metrics(est.a_hat, ctx.exact_a);
            row.l2_error = m.l2;
            row.linf_error = m.linf;
            row.F_hat = est.a_hat[0];
            row.F_err = m.fidelity_error;
        } else {
            SyndromeBatch batch = sample_batch(protocol, ctx.graph, *ctx.state, pairs, rng);
            RandomElementEstimate est = bsqn_random_element(batch, ctx.graph, ctx.target, cell.M, rng, ctx.sign_rule);
            row.F_hat = est.estimate;
            row.F_err = std::abs(est.estimate - ctx.F_true);
        }
    }
    row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return row;
}

/// Worker count: hardware concurrency, capped by BSQN_THREADS when set.
inline size_t worker_count() {
    size_t workers = std::max<size_t>(1, std::thread::hardware_concurrency());
    if (const char *env = std::getenv("BSQN_THREADS")) {
        try {
            long cap = std::stol(env);
            if (cap >= 1) {
                workers = std::min(workers, static_cast<size_t>(cap));
            }
        } catch (const std::exception &) {
        }
    }
    return workers;
}

struct RunOptions {
    /// 0 means worker_count().
    size_t threads = 0;
    /// Receives rows in (cell, trial) order as soon as they are contiguous.
    std::function<void(const ResultRow &)> sink;
};

struct ExperimentResult {
    std::vector<Cell> cells;
    /// Cell-major, trial-minor.
    std::vector<ResultRow> rows;
};

inline ExperimentResult run_experiment(const ExperimentConfig &cfg, const RunOptions &options = {}) {
    ExperimentResult result;
    result.cells = enumerate_cells(cfg);
    std::vector<CellContext> contexts;
    contexts.reserve(result.cells.size());
    for (const auto &cell : result.cells) {
        contexts.push_back(make_context(cfg, cell));
    }
    const size_t total = result.cells.size() * cfg.trials;
    std::vector<std::optional<ResultRow>> slots(total);
    std::mutex sink_mutex;
    size_t next_to_emit = 0;
    std::atomic<size_t> next_task{0};
    std::exception_ptr failure;

    auto worker = [&]() {
        while (true) {
            size_t task = next_task.fetch_add(1);
            if (task >= total) {
                return;
            }
            size_t c = task / cfg.trials;
            size_t trial = task % cfg.trials;
            std::optional<ResultRow> row;
            try {
                row = run_trial(cfg, result.cells[c], contexts[c], trial);
            } catch (...) {
                std::lock_guard<std::mutex> lock(sink_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
                next_task = total;
                return;
            }
            std::lock_guard<std::mutex> lock(sink_mutex);
            slots[task] = std::move(row);
            while (next_to_emit < total && slots[next_to_emit] && !failure) {
                if (options.sink) {
                    options.sink(*slots[next_to_emit]);
                }
                next_to_emit++;
            }
        }
    };

    size_t threads = options.threads ? options.threads : worker_count();
    threads = std::max<size_t>(1, std::min(threads, total));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (size_t t = 0; t < threads; t++) {
            pool.emplace_back(worker);
        }
        for (auto &t : pool) {
            t.join();
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    result.rows.reserve(total);
    for (auto &slot : slots) {
        result.rows.push_back(std::move(*slot));
    }
    return result;
}

struct CellSummary {
    const Cell *cell = nullptr;
    std::string protocol;
    std::string graph;
    size_t n = 0;
    std::string model;
    double F_true = 0;
    uint64_t Ns = 0;
    size_t M = 0;
    size_t trials = 0;
    size_t failed_trials = 0;
    std::string error;
    stats::Summary l2_error, linf_error, F_hat, F_err;
};

inline std::vector<CellSummary> summarize_cells(const ExperimentResult &result) {
    std::vector<CellSummary> out;
    if (result.cells.empty()) {
        return out;
    }
    const size_t trials = result.rows.size() / result.cells.size();
    for (size_t c = 0; c < result.cells.size(); c++) {
        CellSummary s;
        s.cell = &result.cells[c];
        std::vector<double> l2, linf, fhat, ferr;
        for (size_t t = 0; t < trials; t++) {
            const ResultRow &r = result.rows[c * trials + t];
            if (t == 0) {
                s.protocol = r.protocol;
                s.graph = r.graph;
                s.n = r.n;
                s.model = r.model;
                s.F_true = r.F_true;
                s.Ns = r.Ns;
                s.M = r.M;
            }
            if (!r.error.empty()) {
                s.failed_trials++;
                s.error = r.error;
            }
            l2.push_back(r.l2_error);
            linf.push_back(r.linf_error);
            fhat.push_back(r.F_hat);
            ferr.push_back(r.F_err);
        }
        s.trials = trials;
        s.l2_error = stats::summarize(l2);
        s.linf_error = stats::summarize(linf);
        s.F_hat = stats::summarize(fhat);
        s.F_err = stats::summarize(ferr);
        out.push_back(std::move(s));
    }
    return out;
}

inline Json summary_json(const ExperimentConfig &cfg, const ExperimentResult &result) {
    auto metric = [](const stats::Summary &s) {
        return Json{{"count", s.count}, {"mean", s.mean}, {"std", s.stddev}, {"median", s.median}};
    };
    Json cells = Json::array();
    for (const auto &s : summarize_cells(result)) {
        Json entry = {{"key", s.cell->key},
                      {"protocol", s.protocol},
                      {"graph", s.graph},
                      {"n", s.n},
                      {"model", s.model},
                      {"F_true", s.F_true},
                      {"Ns", s.Ns},
                      {"M", s.M},
                      {"trials", s.trials},
                      {"failed_trials", s.failed_trials},
                      {"l2_error", metric(s.l2_error)},
                      {"linf_error", metric(s.linf_error)},
                      {"F_hat", metric(s.F_hat)},
                      {"F_err", metric(s.F_err)}};
        if (!s.error.empty()) {
            entry["error"] = s.error;
        }
        cells.push_back(std::move(entry));
    }
    return Json{{"name", cfg.name},      {"seed", cfg.seed},   {"trials", cfg.trials},
                {"sweep", to_string(cfg.axis)}, {"cells", cells}};
}

struct RunPaths {
    std::filesystem::path csv;
    std::filesystem::path summary;
};

/// Runs the experiment, streaming rows into <out>/<name>.csv and writing
/// <out>/<name>_summary.json at the end.
inline RunPaths run_to_directory(const ExperimentConfig &cfg, const std::filesystem::path &out_dir,
                                 RunOptions options = {}) {
    std::filesystem::create_directories(out_dir);
    RunPaths paths{out_dir / (cfg.name + ".csv"), out_dir / (cfg.name + "_summary.json")};
    std::ofstream csv(paths.csv);
    if (!csv) {
        throw std::runtime_error("cannot write " + paths.csv.string());
    }
    csv << kCsvHeader << "\n" << std::flush;
    auto downstream = options.sink;
    options.sink = [&](const ResultRow &row) {
        csv << csv_line(row) << "\n" << std::flush;
        if (downstream) {
            downstream(row);
        }
    };
    ExperimentResult result = run_experiment(cfg, options);
    std::ofstream summary(paths.summary);
    if (!summary) {
        throw std::runtime_error("cannot write " + paths.summary.string());
    }
    summary << summary_json(cfg, result).dump(2) << "\n";
    return paths;
}

}  // namespace bsqn::harness
