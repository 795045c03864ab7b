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

// Declarative experiment description and its JSON form.
//
// Keys are snake_case and mirror the struct fields below. Every object is
// parsed strictly: an unknown key, a wrong type, or an out-of-range value
// raises InvalidArgument.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "qrcfb/errors.hpp"
#include "qrcfb/io.hpp"
#include "qrcfb/metrics.hpp"
#include "qrcfb/qsim.hpp"
#include "qrcfb/reservoirs.hpp"
#include "qrcfb/tasks.hpp"

namespace qrcfb {

enum class ModelKind { Proposed, ProposedNoReset, FeedbackDriven, McmBaseline, Esn };
enum class TaskKind { Uniform, MackeyGlass, Ising };
enum class MetricKind { RSquared, Nmse };

inline const char *to_string(ModelKind k) {
    switch (k) {
        case ModelKind::Proposed: return "proposed";
        case ModelKind::ProposedNoReset: return "proposed_no_reset";
        case ModelKind::FeedbackDriven: return "feedback_driven";
        case ModelKind::McmBaseline: return "mcm_baseline";
        case ModelKind::Esn: return "esn";
    }
    return "?";
}

inline const char *to_string(TaskKind k) {
    switch (k) {
        case TaskKind::Uniform: return "uniform";
        case TaskKind::MackeyGlass: return "mackey_glass";
        case TaskKind::Ising: return "ising";
    }
    return "?";
}

inline const char *to_string(MetricKind k) { return k == MetricKind::RSquared ? "r2" : "nmse"; }

inline const char *to_string(InitialState s) { return s == InitialState::AllZero ? "all_zero" : "haar_random_pure"; }

struct ModelSpec {
    ModelKind kind = ModelKind::Proposed;
    // Feedback model and restart baseline.
    size_t n_qubits = 2;
    double a_in = 1.0;
    double a_fb = 1.3;
    InitialState initial_state = InitialState::AllZero;
    // Ancilla baseline.
    size_t n_system = 2;
    size_t n_ancilla = 2;
    double a = 5.0;
    // Echo state network.
    size_t esn_dim = 1000;
    double alpha = 0.3;
    double spectral_radius = 1.25;

    bool shot_based() const {
        return kind == ModelKind::Proposed || kind == ModelKind::ProposedNoReset || kind == ModelKind::McmBaseline;
    }
};

struct TaskSpec {
    TaskKind kind = TaskKind::Uniform;
    MackeyGlassParams mackey_glass{};
    IsingParams ising{};
};

struct SweepPoint {
    double a_in = 0.0;
    double a_fb = 0.0;
    bool operator==(const SweepPoint &) const = default;
};

struct SweepSpec {
    std::vector<double> a_in;
    std::vector<double> a_fb;
};

inline std::vector<double> default_a_fb_grid() { return {0.0, 0.5, 1.0, 1.3, 1.6, 2.0, 2.5, 3.0}; }

struct EspSpec {
    size_t n_runs = 5;
    size_t length = 100;
    size_t n_unitaries = 1;
    /// false gives every run the same initial state (control experiment).
    bool vary_initial_state = true;
};

struct OracleCheckSpec {
    size_t steps = 10;
    /// Draw a_in, a_fb uniformly from [0, max_scaling] per unitary instead
    /// of using the model's values.
    bool random_scalings = true;
    double max_scaling = 3.0;
};

struct ExperimentConfig {
    ModelSpec model{};
    TaskSpec task{};
    std::vector<int> tau_list = default_memory_taus();
    size_t l_w = 25;
    size_t l_tr = 100;
    size_t l_ts = 100;
    size_t n_unitaries = 128;
    size_t shots = 5000;
    uint64_t master_seed = 1;
    NoiseSpec noise{};
    std::optional<SweepSpec> sweep;
    MetricKind metric = MetricKind::RSquared;
    double ridge = 0.0;
    /// Work-unit parallelism; 0 = hardware concurrency.
    unsigned threads = 0;
    std::vector<double> lambda_list = {0.0, 0.04};
    EspSpec esp{};
    OracleCheckSpec oracle{};

    size_t run_length() const { return l_w + l_tr + l_ts; }
    int max_positive_tau() const { return std::max(0, *std::max_element(tau_list.begin(), tau_list.end())); }
    int max_negative_tau() const { return std::max(0, -*std::min_element(tau_list.begin(), tau_list.end())); }
    /// Length of the generated input series (run length plus forecast horizon).
    size_t series_length() const { return run_length() + size_t(max_positive_tau()); }

    std::vector<SweepPoint> sweep_grid() const {
        std::vector<double> ins{model.a_in}, fbs{model.a_fb};
        if (sweep) {
            if (!sweep->a_in.empty()) ins = sweep->a_in;
            if (!sweep->a_fb.empty()) fbs = sweep->a_fb;
        }
        std::vector<SweepPoint> grid;
        for (double ai : ins) {
            for (double af : fbs) {
                grid.push_back({ai, af});
            }
        }
        return grid;
    }

    void validate() const {
        detail::require(!tau_list.empty(), "config: tau_list must not be empty");
        detail::require(l_tr >= 1 && l_ts >= 1, "config: l_tr and l_ts must be >= 1");
        detail::require(size_t(max_negative_tau()) <= l_w,
                        "config: washout must cover the largest negative delay (need l_w >= max|tau|)");
        detail::require(n_unitaries >= 1, "config: n_unitaries must be >= 1");
        detail::require(shots >= 1, "config: shots must be >= 1");
        detail::require(std::isfinite(ridge) && ridge >= 0.0, "config: ridge must be non-negative");
        noise.validate();
        for (double l : lambda_list) {
            detail::require(std::isfinite(l) && l >= 0.0 && l < 1.0, "config: lambda_list entries must lie in [0, 1)");
        }
        detail::require(esp.n_runs >= 2, "config: esp.n_runs must be >= 2");
        detail::require(esp.length >= 1 && esp.n_unitaries >= 1, "config: esp.length and esp.n_unitaries must be >= 1");
        detail::require(oracle.steps >= 1, "config: oracle.steps must be >= 1");
        for (const auto &p : sweep_grid()) {
            detail::require(std::isfinite(p.a_in) && std::isfinite(p.a_fb), "config: sweep values must be finite");
        }
        switch (model.kind) {
            case ModelKind::Proposed:
            case ModelKind::ProposedNoReset:
            case ModelKind::FeedbackDriven:
                detail::require(model.n_qubits >= 2 && model.n_qubits <= 12, "config: model.n_qubits must be in [2, 12]");
                break;
            case ModelKind::McmBaseline:
                detail::require(model.n_system >= 2 && model.n_ancilla >= 1 && model.n_system + model.n_ancilla <= 12,
                                "config: mcm baseline needs n_system >= 2, n_ancilla >= 1, at most 12 qubits");
                break;
            case ModelKind::Esn:
                detail::require(model.esn_dim >= 1, "config: model.esn_dim must be >= 1");
                detail::require(model.alpha >= 0.0 && model.alpha <= 1.0, "config: model.alpha must lie in [0, 1]");
                detail::require(model.spectral_radius > 0.0, "config: model.spectral_radius must be positive");
                break;
        }
        if (task.kind == TaskKind::Ising) {
            detail::require(task.ising.n_spins % 2 == 1 && task.ising.n_spins <= kMaxIsingSpins,
                            "config: task.n_spins must be odd and <= 12");
            detail::require(task.ising.dt > 0.0, "config: task.dt must be positive");
        }
        if (task.kind == TaskKind::MackeyGlass) {
            detail::require(task.mackey_glass.tau >= 1 && task.mackey_glass.dt > 0.0,
                            "config: mackey_glass needs tau >= 1 and dt > 0");
        }
    }
};

// ---------------------------------------------------------------------------
// JSON

namespace detail {

using nlohmann::json;

class ObjectReader {
   public:
    ObjectReader(const json &j, std::string where) : j_(j), where_(std::move(where)) {
        require(j.is_object(), where_ + ": expected a JSON object");
    }

    template <typename T>
    void read(const char *key, T &out) {
        seen_.insert(key);
        auto it = j_.find(key);
        if (it == j_.end()) {
            return;
        }
        try {
            if constexpr (std::is_same_v<T, bool>) {
                require(it->is_boolean(), "expected a boolean");
            } else if constexpr (std::is_unsigned_v<T>) {
                require(it->is_number_unsigned() || (it->is_number_integer() && it->template get<int64_t>() >= 0),
                        "expected a non-negative integer");
            } else if constexpr (std::is_integral_v<T>) {
                require(it->is_number_integer(), "expected an integer");
            } else if constexpr (std::is_floating_point_v<T>) {
                require(it->is_number(), "expected a number");
            }
            out = it->template get<T>();
        } catch (const std::exception &e) {
            throw InvalidArgument(where_ + "." + key + ": " + e.what());
        }
    }

    const json *child(const char *key) {
        seen_.insert(key);
        auto it = j_.find(key);
        return it == j_.end() ? nullptr : &*it;
    }

    /// Unknown keys are a hard error.
    void finish() const {
        for (auto it = j_.begin(); it != j_.end(); ++it) {
            if (!seen_.count(it.key())) {
                throw InvalidArgument(where_ + ": unknown key '" + it.key() + "'");
            }
        }
    }

   private:
    const json &j_;
    std::string where_;
    std::set<std::string> seen_;
};

template <typename E>
E parse_enum(const std::string &text, std::initializer_list<std::pair<const char *, E>> options, const std::string &where) {
    for (const auto &[name, value] : options) {
        if (text == name) {
            return value;
        }
    }
    throw InvalidArgument(where + ": unknown value '" + text + "'");
}

inline ModelSpec parse_model(const json &j) {
    ModelSpec m;
    ObjectReader r(j, "model");
    std::string type = "proposed";
    r.read("type", type);
    m.kind = parse_enum<ModelKind>(type,
                                   {{"proposed", ModelKind::Proposed},
                                    {"proposed_no_reset", ModelKind::ProposedNoReset},
                                    {"feedback_driven", ModelKind::FeedbackDriven},
                                    {"mcm_baseline", ModelKind::McmBaseline},
                                    {"esn", ModelKind::Esn}},
                                   "model.type");
    if (m.kind == ModelKind::FeedbackDriven) {
        m.a_in = 0.001;
        m.a_fb = 2.5;
    }
    switch (m.kind) {
        case ModelKind::Proposed:
        case ModelKind::ProposedNoReset: {
            r.read("n_qubits", m.n_qubits);
            r.read("a_in", m.a_in);
            r.read("a_fb", m.a_fb);
            std::string init = "all_zero";
            r.read("initial_state", init);
            m.initial_state = parse_enum<InitialState>(
                init, {{"all_zero", InitialState::AllZero}, {"haar_random_pure", InitialState::HaarRandomPure}},
                "model.initial_state");
            break;
        }
        case ModelKind::FeedbackDriven:
            r.read("n_qubits", m.n_qubits);
            r.read("a_in", m.a_in);
            r.read("a_fb", m.a_fb);
            break;
        case ModelKind::McmBaseline:
            r.read("n_system", m.n_system);
            r.read("n_ancilla", m.n_ancilla);
            r.read("a", m.a);
            break;
        case ModelKind::Esn:
            r.read("dim", m.esn_dim);
            r.read("alpha", m.alpha);
            r.read("spectral_radius", m.spectral_radius);
            break;
    }
    r.finish();
    return m;
}

inline TaskSpec parse_task(const json &j) {
    TaskSpec t;
    ObjectReader r(j, "task");
    std::string type = "uniform";
    r.read("type", type);
    t.kind = parse_enum<TaskKind>(
        type, {{"uniform", TaskKind::Uniform}, {"mackey_glass", TaskKind::MackeyGlass}, {"ising", TaskKind::Ising}},
        "task.type");
    if (t.kind == TaskKind::MackeyGlass) {
        auto &p = t.mackey_glass;
        r.read("beta0", p.beta0);
        r.read("theta", p.theta);
        r.read("n", p.n);
        r.read("tau", p.tau);
        r.read("gamma", p.gamma);
        r.read("dt", p.dt);
        r.read("init_value", p.init_value);
        r.read("discard", p.discard);
    } else if (t.kind == TaskKind::Ising) {
        auto &p = t.ising;
        r.read("n_spins", p.n_spins);
        r.read("coupling", p.J);
        r.read("hx", p.hx);
        r.read("hz", p.hz);
        r.read("dt", p.dt);
        r.read("rescale", p.rescale);
    }
    r.finish();
    return t;
}

}  // namespace detail

inline ExperimentConfig config_from_json(const nlohmann::json &j) {
    ExperimentConfig c;
    detail::ObjectReader r(j, "config");
    if (const auto *m = r.child("model")) c.model = detail::parse_model(*m);
    if (const auto *t = r.child("task")) c.task = detail::parse_task(*t);
    r.read("tau_list", c.tau_list);
    r.read("l_w", c.l_w);
    r.read("l_tr", c.l_tr);
    r.read("l_ts", c.l_ts);
    r.read("n_unitaries", c.n_unitaries);
    r.read("shots", c.shots);
    r.read("master_seed", c.master_seed);
    r.read("ridge", c.ridge);
    r.read("threads", c.threads);
    r.read("lambda_list", c.lambda_list);
    if (const auto *n = r.child("noise")) {
        detail::ObjectReader nr(*n, "noise");
        nr.read("enabled", c.noise.enabled);
        nr.read("lambda", c.noise.lambda);
        nr.finish();
    }
    if (const auto *s = r.child("sweep")) {
        SweepSpec sweep;
        detail::ObjectReader sr(*s, "sweep");
        sr.read("a_in", sweep.a_in);
        sr.read("a_fb", sweep.a_fb);
        sr.finish();
        c.sweep = sweep;
    }
    if (const auto *m = r.child("metric")) {
        detail::require(m->is_string(), "config.metric: expected a string");
        c.metric = detail::parse_enum<MetricKind>(m->get<std::string>(),
                                                  {{"r2", MetricKind::RSquared}, {"nmse", MetricKind::Nmse}}, "metric");
    }
    if (const auto *e = r.child("esp")) {
        detail::ObjectReader er(*e, "esp");
        er.read("n_runs", c.esp.n_runs);
        er.read("length", c.esp.length);
        er.read("n_unitaries", c.esp.n_unitaries);
        er.read("vary_initial_state", c.esp.vary_initial_state);
        er.finish();
    }
    if (const auto *o = r.child("oracle")) {
        detail::ObjectReader orr(*o, "oracle");
        orr.read("steps", c.oracle.steps);
        orr.read("random_scalings", c.oracle.random_scalings);
        orr.read("max_scaling", c.oracle.max_scaling);
        orr.finish();
    }
    r.finish();
    c.validate();
    return c;
}

inline ExperimentConfig parse_config(const std::string &text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw InvalidArgument(std::string("config: malformed JSON: ") + e.what());
    }
    return config_from_json(j);
}

/// Canonical JSON form (every field, sorted keys); the basis of config_hash.
inline nlohmann::json config_to_json(const ExperimentConfig &c) {
    using nlohmann::json;
    json model = {{"type", to_string(c.model.kind)}};
    switch (c.model.kind) {
        case ModelKind::Proposed:
        case ModelKind::ProposedNoReset:
            model.update({{"n_qubits", c.model.n_qubits},
                          {"a_in", c.model.a_in},
                          {"a_fb", c.model.a_fb},
                          {"initial_state", to_string(c.model.initial_state)}});
            break;
        case ModelKind::FeedbackDriven:
            model.update({{"n_qubits", c.model.n_qubits}, {"a_in", c.model.a_in}, {"a_fb", c.model.a_fb}});
            break;
        case ModelKind::McmBaseline:
            model.update({{"n_system", c.model.n_system}, {"n_ancilla", c.model.n_ancilla}, {"a", c.model.a}});
            break;
        case ModelKind::Esn:
            model.update({{"dim", c.model.esn_dim}, {"alpha", c.model.alpha}, {"spectral_radius", c.model.spectral_radius}});
            break;
    }
    json task = {{"type", to_string(c.task.kind)}};
    if (c.task.kind == TaskKind::MackeyGlass) {
        const auto &p = c.task.mackey_glass;
        task.update({{"beta0", p.beta0},
                     {"theta", p.theta},
                     {"n", p.n},
                     {"tau", p.tau},
                     {"gamma", p.gamma},
                     {"dt", p.dt},
                     {"init_value", p.init_value},
                     {"discard", p.discard}});
    } else if (c.task.kind == TaskKind::Ising) {
        const auto &p = c.task.ising;
        task.update({{"n_spins", p.n_spins}, {"coupling", p.J}, {"hx", p.hx}, {"hz", p.hz}, {"dt", p.dt}, {"rescale", p.rescale}});
    }
    json j = {{"model", model},
              {"task", task},
              {"tau_list", c.tau_list},
              {"l_w", c.l_w},
              {"l_tr", c.l_tr},
              {"l_ts", c.l_ts},
              {"n_unitaries", c.n_unitaries},
              {"shots", c.shots},
              {"master_seed", c.master_seed},
              {"ridge", c.ridge},
              {"metric", to_string(c.metric)},
              {"lambda_list", c.lambda_list},
              {"noise", {{"enabled", c.noise.enabled}, {"lambda", c.noise.lambda}}},
              {"esp",
               {{"n_runs", c.esp.n_runs},
                {"length", c.esp.length},
                {"n_unitaries", c.esp.n_unitaries},
                {"vary_initial_state", c.esp.vary_initial_state}}},
              {"oracle",
               {{"steps", c.oracle.steps},
                {"random_scalings", c.oracle.random_scalings},
                {"max_scaling", c.oracle.max_scaling}}}};
    if (c.sweep) {
        j["sweep"] = {{"a_in", c.sweep->a_in}, {"a_fb", c.sweep->a_fb}};
    }
    return j;
}

/// Fingerprint of the canonical config; the thread count is excluded since
/// it never changes results.
inline std::string config_hash(const ExperimentConfig &c) { return hex64(fnv1a64(config_to_json(c).dump())); }

}  // namespace qrcfb
