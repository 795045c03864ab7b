// Copyright 2026 The qrcfb Authors
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

// Experiment orchestration: washout/train/test pipeline, Haar ensembles,
// hyperparameter sweeps, echo-state runs, noise sweeps and the oracle check.
//
// Every random quantity is drawn from a stream derived from
// (master_seed, unitary index, role[, shot]), so results are independent of
// how work units are scheduled across threads.

#include <chrono>
#include <cmath>
#include <ctime>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "qrcfb/config.hpp"
#include "qrcfb/io.hpp"
#include "qrcfb/metrics.hpp"
#include "qrcfb/oracle.hpp"
#include "qrcfb/parallel.hpp"
#include "qrcfb/readout.hpp"
#include "qrcfb/reservoirs.hpp"
#include "qrcfb/tasks.hpp"

namespace qrcfb {

struct MetricRecord {
    size_t unitary_index = 0;
    SweepPoint point{};
    std::optional<int> tau;
    std::string metric;
    double value = 0.0;
    bool degenerate = false;
};

struct Aggregate {
    SweepPoint point{};
    std::optional<int> tau;
    std::string metric;
    double mean = 0.0;
    double std_of_mean = 0.0;
    size_t count = 0;
};

struct ExperimentResult {
    std::vector<MetricRecord> records;
    std::vector<Aggregate> aggregates;
    std::string config_hash;
    uint64_t seed = 0;
    std::string timestamp;

    const Aggregate *find(const SweepPoint &p, std::optional<int> tau, const std::string &metric) const {
        for (const auto &a : aggregates) {
            if (a.point == p && a.tau == tau && a.metric == metric) {
                return &a;
            }
        }
        return nullptr;
    }
};

inline RngStream master_stream(const ExperimentConfig &c) { return RngStream{c.master_seed, 0}; }

inline std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// ---------------------------------------------------------------------------
// Building blocks

/// Input series of one work unit, long enough for the run plus the largest
/// forecast delay.
inline TimeSeries generate_task_series(const ExperimentConfig &c, size_t unitary_index, size_t length) {
    switch (c.task.kind) {
        case TaskKind::Uniform: return gen_uniform(length, master_stream(c).derive(unitary_index, StreamRole::Input));
        case TaskKind::MackeyGlass: return gen_mackey_glass(length, c.task.mackey_glass);
        case TaskKind::Ising: return gen_ising_series(length, c.task.ising);
    }
    throw InternalError("generate_task_series: unknown task");
}

inline ProposedModelConfig proposed_config(const ExperimentConfig &c, const SweepPoint &p, size_t unitary_index) {
    const RngStream base = master_stream(c);
    ProposedModelConfig m;
    m.n_qubits = c.model.n_qubits;
    m.a_in = p.a_in;
    m.a_fb = p.a_fb;
    m.shots = c.shots;
    m.haar_seed = base.derive(unitary_index, StreamRole::Haar);
    m.noise = c.noise;
    m.reset_after_measurement = c.model.kind != ModelKind::ProposedNoReset;
    m.initial_state = c.model.initial_state;
    m.init_seed = base.derive(unitary_index, StreamRole::InitialState);
    return m;
}

inline FeedbackDrivenConfig feedback_driven_config(const ExperimentConfig &c, const SweepPoint &p, size_t unitary_index) {
    const RngStream base = master_stream(c);
    FeedbackDrivenConfig m;
    m.n_qubits = c.model.n_qubits;
    m.a_in = p.a_in;
    m.a_fb = p.a_fb;
    m.haar_seed = base.derive(unitary_index, StreamRole::Haar);
    m.init_seed = base.derive(unitary_index, StreamRole::Feedback);
    return m;
}

inline McmBaselineConfig mcm_config(const ExperimentConfig &c, size_t unitary_index) {
    const RngStream base = master_stream(c);
    McmBaselineConfig m;
    m.n_system = c.model.n_system;
    m.n_ancilla = c.model.n_ancilla;
    m.a = c.model.a;
    m.shots = c.shots;
    m.haar_seed = base.derive(unitary_index, StreamRole::Haar);
    m.init_seed = base.derive(unitary_index, StreamRole::InitialState);
    return m;
}

inline EsnConfig esn_config(const ExperimentConfig &c, size_t unitary_index) {
    const RngStream base = master_stream(c);
    EsnConfig m;
    m.dim = c.model.esn_dim;
    m.alpha = c.model.alpha;
    m.spectral_radius = c.model.spectral_radius;
    m.weight_seed = base.derive(unitary_index, StreamRole::Weights);
    m.init_seed = base.derive(unitary_index, StreamRole::InitialState);
    return m;
}

/// Run the configured reservoir over `inputs` for one work unit.
inline FeatureSeries run_model(const ExperimentConfig &c, const SweepPoint &p, size_t unitary_index,
                               const TimeSeries &inputs, unsigned shot_threads = 1) {
    const RngStream shots = master_stream(c).derive(unitary_index, StreamRole::Shot);
    switch (c.model.kind) {
        case ModelKind::Proposed:
        case ModelKind::ProposedNoReset: {
            auto m = proposed_config(c, p, unitary_index);
            m.threads = shot_threads;
            return run_proposed_model(m, inputs, shots);
        }
        case ModelKind::FeedbackDriven: return run_feedback_driven_baseline(feedback_driven_config(c, p, unitary_index), inputs);
        case ModelKind::McmBaseline: {
            auto m = mcm_config(c, unitary_index);
            m.threads = shot_threads;
            return run_mcm_baseline(m, inputs, shots);
        }
        case ModelKind::Esn: return run_esn(esn_config(c, unitary_index), inputs);
    }
    throw InternalError("run_model: unknown model");
}

// ---------------------------------------------------------------------------
// Pipeline

/// Washout, train on [l_w, l_w + l_tr), test on the following l_ts rows; one
/// reservoir run serves every delay in tau_list. Targets are y_k = s_{k+tau}.
inline std::vector<MetricReport> run_pipeline(const ExperimentConfig &c, size_t unitary_index, const SweepPoint &p,
                                              unsigned shot_threads = 1) {
    c.validate();
    const TimeSeries series = generate_task_series(c, unitary_index, c.series_length());
    TimeSeries inputs{std::vector<double>(series.values.begin(), series.values.begin() + std::ptrdiff_t(c.run_length())),
                      series.generator, series.normalized};
    const FeatureSeries features = run_model(c, p, unitary_index, inputs, shot_threads);
    if (!features.values.allFinite()) {
        throw NumericError("run_pipeline: reservoir produced non-finite features");
    }
    const size_t train_lo = c.l_w, train_hi = c.l_w + c.l_tr, test_hi = c.run_length();
    const DesignMatrix x_tr = assemble_design_matrix(features, train_lo, train_hi);
    const DesignMatrix x_ts = assemble_design_matrix(features, train_hi, test_hi);

    auto targets = [&](size_t lo, size_t hi, int tau) {
        TimeSeries y{{}, series.generator, series.normalized};
        for (size_t k = lo; k < hi; ++k) {
            y.values.push_back(series[size_t(std::ptrdiff_t(k) + tau)]);
        }
        return y;
    };

    std::vector<MetricReport> reports;
    double capacity = 0.0;
    for (int tau : c.tau_list) {
        const WeightVector w = fit_readout(x_tr, targets(train_lo, train_hi, tau), c.ridge);
        const TimeSeries y_pred = predict(x_ts, w);
        const TimeSeries y_true = targets(train_hi, test_hi, tau);
        if (c.metric == MetricKind::RSquared) {
            const RSquared r2 = r_squared(y_true, y_pred);
            capacity += r2.value;
            reports.push_back({"r2", r2.value, tau, r2.degenerate});
        } else {
            reports.push_back({"nmse", nmse(y_true, y_pred), tau, false});
        }
    }
    if (c.metric == MetricKind::RSquared) {
        reports.push_back({"capacity", capacity, std::nullopt, false});
    }
    return reports;
}

inline std::vector<MetricReport> run_pipeline(const ExperimentConfig &c, size_t unitary_index) {
    return run_pipeline(c, unitary_index, c.sweep_grid().front());
}

namespace detail {

inline std::vector<Aggregate> aggregate(const std::vector<MetricRecord> &records) {
    std::vector<Aggregate> out;
    std::vector<std::vector<double>> samples;
    for (const auto &r : records) {
        size_t slot = out.size();
        for (size_t i = 0; i < out.size(); ++i) {
            if (out[i].point == r.point && out[i].tau == r.tau && out[i].metric == r.metric) {
                slot = i;
                break;
            }
        }
        if (slot == out.size()) {
            out.push_back({r.point, r.tau, r.metric, 0.0, 0.0, 0});
            samples.emplace_back();
        }
        samples[slot].push_back(r.value);
    }
    for (size_t i = 0; i < out.size(); ++i) {
        const auto &v = samples[i];
        double mean = 0.0;
        for (double x : v) mean += x;
        mean /= double(v.size());
        double var = 0.0;
        for (double x : v) var += (x - mean) * (x - mean);
        out[i].mean = mean;
        out[i].count = v.size();
        out[i].std_of_mean = v.size() > 1 ? std::sqrt(var / double(v.size() - 1) / double(v.size())) : 0.0;
    }
    return out;
}

}  // namespace detail

/// run_pipeline over every (unitary, sweep point) work unit, then ensemble
/// mean and standard deviation of the mean per (point, tau, metric).
inline ExperimentResult run_ensemble(const ExperimentConfig &c) {
    c.validate();
    const auto grid = c.sweep_grid();
    const size_t units = c.n_unitaries * grid.size();
    std::vector<std::vector<MetricReport>> per_unit(units);
    parallel_for(units, c.threads, [&](size_t u) {
        const size_t unitary = u / grid.size();
        per_unit[u] = run_pipeline(c, unitary, grid[u % grid.size()]);
    });

    ExperimentResult result;
    for (size_t u = 0; u < units; ++u) {
        for (const auto &rep : per_unit[u]) {
            result.records.push_back({u / grid.size(), grid[u % grid.size()], rep.tau, rep.name, rep.value, rep.degenerate});
        }
    }
    result.aggregates = detail::aggregate(result.records);
    result.config_hash = config_hash(c);
    result.seed = c.master_seed;
    result.timestamp = utc_timestamp();
    return result;
}

/// Sweep point with the lowest (NMSE) or highest (other metrics) ensemble mean.
inline const Aggregate *best_aggregate(const ExperimentResult &r, const std::string &metric, std::optional<int> tau) {
    const Aggregate *best = nullptr;
    const bool minimize = metric == "nmse";
    for (const auto &a : r.aggregates) {
        if (a.metric != metric || a.tau != tau) continue;
        if (!best || (minimize ? a.mean < best->mean : a.mean > best->mean)) best = &a;
    }
    return best;
}

// ---------------------------------------------------------------------------
// Noise sweep

struct NoiseSweepResult {
    std::vector<std::pair<double, ExperimentResult>> per_lambda;
};

/// The prediction experiment repeated with depolarizing noise at each lambda.
/// Noise draws use their own streams, so lambda = 0 reproduces the noiseless
/// measurement record exactly.
inline NoiseSweepResult run_noise_sweep(const ExperimentConfig &c, const std::vector<double> &lambdas) {
    detail::require(!lambdas.empty(), "run_noise_sweep: empty lambda list");
    NoiseSweepResult out;
    for (double l : lambdas) {
        ExperimentConfig run = c;
        run.noise = NoiseSpec{l, true};
        run.noise.validate();
        out.per_lambda.emplace_back(l, run_ensemble(run));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Echo state property

struct EspResult {
    /// Divergence curve of each model instance.
    std::vector<std::vector<double>> curves;
    /// Mean over model instances.
    std::vector<double> mean_curve;
    /// First state component of every run for instance 0.
    std::vector<std::vector<double>> traces;
};

/// First state component of run `run` for model instance `unitary_index`.
/// Fixed parameters and inputs are shared by all runs of an instance. Runs
/// differ in the initial internal state and, for shot-based models, in their
/// measurement record. With vary_initial_state off every run replays run 0.
inline std::vector<double> esp_trace(const ExperimentConfig &c, size_t unitary_index, size_t run, const TimeSeries &inputs,
                                     unsigned shot_threads) {
    const RngStream base = master_stream(c);
    const size_t r = c.esp.vary_initial_state ? run : 0;
    const RngStream init = base.derive(unitary_index, r, StreamRole::InitialState);
    const RngStream shots = base.derive(unitary_index, r, StreamRole::Shot);
    const SweepPoint p = c.sweep_grid().front();
    FeatureSeries f;
    switch (c.model.kind) {
        case ModelKind::Proposed:
        case ModelKind::ProposedNoReset: {
            auto m = proposed_config(c, p, unitary_index);
            m.initial_state = InitialState::HaarRandomPure;
            m.init_seed = init;
            m.threads = shot_threads;
            f = run_proposed_model(m, inputs, shots);
            break;
        }
        case ModelKind::FeedbackDriven: {
            auto m = feedback_driven_config(c, p, unitary_index);
            m.init_seed = init;
            f = run_feedback_driven_baseline(m, inputs);
            break;
        }
        case ModelKind::McmBaseline: {
            auto m = mcm_config(c, unitary_index);
            m.system_initial_state = InitialState::HaarRandomPure;
            m.init_seed = init;
            m.threads = shot_threads;
            f = run_mcm_baseline(m, inputs, shots);
            break;
        }
        case ModelKind::Esn: {
            auto m = esn_config(c, unitary_index);
            m.init_seed = init;
            f = run_esn(m, inputs);
            break;
        }
    }
    std::vector<double> trace(f.steps());
    for (size_t t = 0; t < f.steps(); ++t) {
        trace[t] = f(t, 0);
    }
    return trace;
}

inline EspResult run_esp_experiment(const ExperimentConfig &c) {
    c.validate();
    const size_t instances = c.esp.n_unitaries, runs = c.esp.n_runs;
    std::vector<std::vector<double>> traces(instances * runs);
    std::vector<TimeSeries> inputs(instances);
    for (size_t u = 0; u < instances; ++u) {
        inputs[u] = gen_uniform(c.esp.length, master_stream(c).derive(u, StreamRole::Input));
    }
    parallel_for(traces.size(), c.threads, [&](size_t i) {
        traces[i] = esp_trace(c, i / runs, i % runs, inputs[i / runs], 1);
    });

    EspResult out;
    out.mean_curve.assign(c.esp.length, 0.0);
    for (size_t u = 0; u < instances; ++u) {
        std::vector<std::vector<double>> group(traces.begin() + std::ptrdiff_t(u * runs),
                                               traces.begin() + std::ptrdiff_t((u + 1) * runs));
        out.curves.push_back(esp_divergence(group));
        for (size_t t = 0; t < c.esp.length; ++t) {
            out.mean_curve[t] += out.curves.back()[t] / double(instances);
        }
        if (u == 0) {
            out.traces = std::move(group);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Oracle check

struct OracleCheckRecord {
    size_t unitary_index = 0;
    SweepPoint point{};
    double max_abs_z = 0.0;
    size_t within = 0;
    size_t total = 0;
};

struct OracleCheckResult {
    std::vector<OracleCheckRecord> records;
    double threshold = 4.0;

    double fraction_within() const {
        size_t w = 0, t = 0;
        for (const auto &r : records) {
            w += r.within;
            t += r.total;
        }
        return t == 0 ? 0.0 : double(w) / double(t);
    }
};

/// |mu_hat - mu| / sqrt((1 - mu^2) / shots), with mu from the Markov oracle.
inline double standardized_deviation(double estimate, double exact, size_t shots) {
    const double var = (1.0 - exact * exact) / double(shots);
    if (var <= 1e-300) {
        return std::abs(estimate - exact) <= 1e-12 ? 0.0 : std::numeric_limits<double>::infinity();
    }
    return std::abs(estimate - exact) / std::sqrt(var);
}

/// Shot simulator against the exact Markov-chain series, one random reset
/// model per unitary index.
inline OracleCheckResult run_oracle_check(const ExperimentConfig &c, double threshold = 4.0) {
    c.validate();
    detail::require(c.model.kind == ModelKind::Proposed, "oracle-check: model.type must be 'proposed'");
    detail::require(!c.noise.enabled, "oracle-check: noise must be disabled");
    OracleCheckResult out;
    out.threshold = threshold;
    out.records.resize(c.n_unitaries);
    parallel_for(c.n_unitaries, c.threads, [&](size_t u) {
        SweepPoint p = c.sweep_grid().front();
        if (c.oracle.random_scalings) {
            Rng rng(master_stream(c).derive(u, StreamRole::Oracle));
            p.a_in = c.oracle.max_scaling * rng.uniform();
            p.a_fb = c.oracle.max_scaling * rng.uniform();
        }
        const ProposedModelConfig m = proposed_config(c, p, u);
        const TimeSeries inputs = gen_uniform(c.oracle.steps, master_stream(c).derive(u, StreamRole::Input));
        const FeatureSeries sim = run_proposed_model(m, inputs, master_stream(c).derive(u, StreamRole::Shot));
        const FeatureSeries exact = oracle::exact_feature_series_markov(m, inputs);
        OracleCheckRecord rec{u, p, 0.0, 0, 0};
        for (size_t k = 0; k < sim.steps(); ++k) {
            for (size_t q = 0; q < sim.components(); ++q) {
                const double z = standardized_deviation(sim(k, q), exact(k, q), m.shots);
                rec.max_abs_z = std::max(rec.max_abs_z, z);
                rec.within += z < threshold ? 1 : 0;
                rec.total += 1;
            }
        }
        out.records[u] = rec;
    });
    return out;
}

// ---------------------------------------------------------------------------
// Output

inline void write_results_csv_header(std::ostream &out) {
    out << "model,task,tau,a_in,a_fb,shots,unitary_index,metric_name,value\n";
}

/// One line per record; `metric_suffix` tags rows from a noise sweep.
inline void write_results_csv_rows(std::ostream &out, const ExperimentConfig &c, const ExperimentResult &r,
                                   const std::string &metric_suffix = "") {
    const size_t shots = c.model.shot_based() ? c.shots : 0;
    for (const auto &rec : r.records) {
        out << to_string(c.model.kind) << ',' << to_string(c.task.kind) << ',' << (rec.tau ? std::to_string(*rec.tau) : "")
            << ',' << format_double(rec.point.a_in) << ',' << format_double(rec.point.a_fb) << ',' << shots << ','
            << rec.unitary_index << ',' << rec.metric << metric_suffix << ',' << format_double(rec.value) << '\n';
    }
}

inline void write_results_csv(std::ostream &out, const ExperimentConfig &c, const ExperimentResult &r) {
    write_results_csv_header(out);
    write_results_csv_rows(out, c, r);
}

inline std::string lambda_suffix(double lambda) { return "@lambda=" + format_double(lambda); }

inline void write_divergence_csv(std::ostream &out, const std::vector<double> &curve) {
    out << "t,mean_abs_diff\n";
    for (size_t t = 0; t < curve.size(); ++t) {
        out << t << ',' << format_double(curve[t]) << '\n';
    }
}

/// JSON writer that prints every floating-point number with 17 significant
/// digits (nlohmann's own dump uses the shortest round-trip form).
inline void write_json(std::ostream &out, const nlohmann::json &j, int indent = 0) {
    const std::string pad(size_t(indent + 2), ' '), close(size_t(indent), ' ');
    if (j.is_object()) {
        if (j.empty()) {
            out << "{}";
            return;
        }
        out << "{\n";
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            out << (first ? "" : ",\n") << pad << nlohmann::json(it.key()).dump() << ": ";
            write_json(out, it.value(), indent + 2);
            first = false;
        }
        out << '\n' << close << '}';
    } else if (j.is_array()) {
        if (j.empty()) {
            out << "[]";
            return;
        }
        out << "[\n";
        for (size_t i = 0; i < j.size(); ++i) {
            out << (i ? ",\n" : "") << pad;
            write_json(out, j[i], indent + 2);
        }
        out << '\n' << close << ']';
    } else if (j.is_number_float()) {
        const double v = j.get<double>();
        out << (std::isfinite(v) ? format_double(v) : "null");
    } else {
        out << j.dump();
    }
}

inline nlohmann::json aggregates_json(const ExperimentResult &r) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto &a : r.aggregates) {
        nlohmann::json e = {{"a_in", a.point.a_in},
                            {"a_fb", a.point.a_fb},
                            {"metric", a.metric},
                            {"mean", a.mean},
                            {"std_of_mean", a.std_of_mean},
                            {"count", a.count}};
        e["tau"] = a.tau ? nlohmann::json(*a.tau) : nlohmann::json(nullptr);
        arr.push_back(e);
    }
    return arr;
}

inline nlohmann::json summary_json(const std::string &command, const ExperimentConfig &c, const ExperimentResult &r) {
    nlohmann::json j = {{"command", command},
                        {"model", to_string(c.model.kind)},
                        {"task", to_string(c.task.kind)},
                        {"seed", r.seed},
                        {"config_hash", r.config_hash},
                        {"timestamp", r.timestamp},
                        {"n_unitaries", c.n_unitaries},
                        {"shots", c.shots},
                        {"aggregates", aggregates_json(r)}};
    return j;
}

}  // namespace qrcfb
