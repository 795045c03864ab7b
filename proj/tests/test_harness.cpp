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

#include <gtest/gtest.h>

#include <sstream>

#include "qrcfb/harness.hpp"

using namespace qrcfb;

namespace {

ExperimentConfig small_stm(size_t unitaries, size_t shots) {
    ExperimentConfig c;
    c.n_unitaries = unitaries;
    c.shots = shots;
    c.threads = 1;
    c.master_seed = 17;
    return c;
}

std::string csv_of(const ExperimentConfig &c, const ExperimentResult &r) {
    std::ostringstream out;
    write_results_csv(out, c, r);
    return out.str();
}

}  // namespace

TEST(Pipeline, RecordCountFollowsGrid) {
    ExperimentConfig c = small_stm(3, 200);
    c.sweep = SweepSpec{{0.5, 1.0}, {0.0, 1.3, 2.0}};
    const ExperimentResult r = run_ensemble(c);
    // Per unit: one R^2 per delay plus the capacity.
    EXPECT_EQ(r.records.size(), 3u * 6u * (c.tau_list.size() + 1));
    EXPECT_EQ(r.aggregates.size(), 6u * (c.tau_list.size() + 1));
    for (const auto &a : r.aggregates) EXPECT_EQ(a.count, 3u);
}

TEST(Pipeline, RerunIsBitIdenticalAcrossThreadCounts) {
    ExperimentConfig c = small_stm(6, 300);
    c.sweep = SweepSpec{{}, {1.0, 1.6}};
    const std::string first = csv_of(c, run_ensemble(c));
    for (unsigned threads : {1u, 2u, 5u}) {
        c.threads = threads;
        EXPECT_EQ(csv_of(c, run_ensemble(c)), first) << threads;
    }
}

TEST(Pipeline, SingleUnitaryEnsembleEqualsTheRun) {
    const ExperimentConfig c = small_stm(1, 300);
    const ExperimentResult r = run_ensemble(c);
    const auto single = run_pipeline(c, 0);
    for (const auto &rep : single) {
        const Aggregate *a = r.find(c.sweep_grid().front(), rep.tau, rep.name);
        ASSERT_NE(a, nullptr);
        EXPECT_EQ(a->mean, rep.value);
        EXPECT_EQ(a->std_of_mean, 0.0);
    }
}

TEST(Pipeline, DeadReservoirGivesDegenerateZero) {
    ExperimentConfig c = small_stm(1, 1);
    c.model.kind = ModelKind::FeedbackDriven;
    c.model.a_in = 0.0;
    c.model.a_fb = 0.0;
    const auto reps = run_pipeline(c, 0);
    for (const auto &rep : reps) {
        if (rep.tau == -1) {
            EXPECT_TRUE(rep.degenerate);
            EXPECT_EQ(rep.value, 0.0);
        }
    }
}

TEST(Pipeline, FeatureRowsAlignWithTargets) {
    // The current input is recoverable from the current state; a shifted
    // alignment would move the peak to another delay.
    ExperimentConfig c = small_stm(1, 1);
    c.model.kind = ModelKind::Esn;
    c.ridge = 1e-6;
    c.tau_list = {0, -1, 1};
    const auto reps = run_pipeline(c, 0);
    EXPECT_GT(reps[0].value, 0.8);
    EXPECT_LT(reps[1].value, reps[0].value);
    EXPECT_LT(reps[2].value, 0.1);
}

TEST(Pipeline, EsnPredictsMackeyGlass) {
    ExperimentConfig c = small_stm(1, 1);
    c.model.kind = ModelKind::Esn;
    c.task.kind = TaskKind::MackeyGlass;
    c.metric = MetricKind::Nmse;
    c.tau_list = {1};
    c.ridge = 1e-6;
    const auto reps = run_pipeline(c, 0);
    ASSERT_EQ(reps.size(), 1u);
    EXPECT_LT(reps[0].value, 1e-2);
}

TEST(Pipeline, ProposedModelMemoryOrdering) {
    const ExperimentResult r = run_ensemble(small_stm(32, 1000));
    const SweepPoint p{1.0, 1.3};
    const double r0 = r.find(p, 0, "r2")->mean, r1 = r.find(p, -1, "r2")->mean, r2 = r.find(p, -2, "r2")->mean;
    EXPECT_GT(r0, r1);
    EXPECT_GT(r1, r2);
}

TEST(Pipeline, StdOfMeanShrinksWithEnsembleSize) {
    const SweepPoint p{1.0, 1.3};
    const double small = run_ensemble(small_stm(32, 500)).find(p, std::nullopt, "capacity")->std_of_mean;
    const double large = run_ensemble(small_stm(128, 500)).find(p, std::nullopt, "capacity")->std_of_mean;
    // sqrt(128 / 32) = 2.
    EXPECT_GT(small / large, 1.4);
    EXPECT_LT(small / large, 2.8);
}

TEST(Pipeline, InvalidConfigFailsBeforeCompute) {
    ExperimentConfig c = small_stm(1, 10);
    c.l_w = 1;
    EXPECT_THROW(run_pipeline(c, 0), InvalidArgument);
    EXPECT_THROW(run_ensemble(c), InvalidArgument);
}

TEST(NoiseSweep, ZeroLambdaReproducesNoiselessRun) {
    ExperimentConfig c = small_stm(3, 400);
    c.task.kind = TaskKind::Ising;
    c.metric = MetricKind::Nmse;
    c.tau_list = {1};
    const ExperimentResult clean = run_ensemble(c);
    const NoiseSweepResult noisy = run_noise_sweep(c, {0.0, 0.04});
    ASSERT_EQ(noisy.per_lambda.size(), 2u);
    const auto &zero = noisy.per_lambda[0].second;
    ASSERT_EQ(zero.records.size(), clean.records.size());
    for (size_t i = 0; i < clean.records.size(); ++i) EXPECT_EQ(zero.records[i].value, clean.records[i].value);
    bool differs = false;
    for (size_t i = 0; i < clean.records.size(); ++i)
        differs |= noisy.per_lambda[1].second.records[i].value != clean.records[i].value;
    EXPECT_TRUE(differs);
    EXPECT_THROW(run_noise_sweep(c, {}), InvalidArgument);
}

TEST(Esp, IdenticalInitialStatesGiveZeroDivergence) {
    for (ModelKind kind : {ModelKind::Proposed, ModelKind::Esn, ModelKind::FeedbackDriven}) {
        ExperimentConfig c = small_stm(1, 300);
        c.model.kind = kind;
        c.model.esn_dim = 100;
        c.esp.vary_initial_state = false;
        c.esp.length = 30;
        const EspResult r = run_esp_experiment(c);
        for (double d : r.mean_curve) EXPECT_EQ(d, 0.0) << to_string(kind);
        EXPECT_EQ(r.traces.size(), c.esp.n_runs);
    }
}

TEST(Esp, EsnForgetsInitialState) {
    ExperimentConfig c = small_stm(1, 1);
    c.model.kind = ModelKind::Esn;
    c.model.esn_dim = 200;
    const EspResult r = run_esp_experiment(c);
    ASSERT_EQ(r.mean_curve.size(), 100u);
    EXPECT_LT(r.mean_curve.back(), 1e-6 * r.mean_curve.front());
}

TEST(Esp, ResetModelDecaysToShotNoiseFloor) {
    ExperimentConfig c = small_stm(1, 2000);
    c.esp.n_unitaries = 4;
    c.esp.length = 40;
    const EspResult r = run_esp_experiment(c);
    EXPECT_GT(r.mean_curve.back(), 0.0);
    EXPECT_LT(r.mean_curve.back(), r.mean_curve.front());
    EXPECT_EQ(r.curves.size(), 4u);
}

TEST(Output, ResultsCsvLayout) {
    const ExperimentConfig c = small_stm(2, 100);
    const ExperimentResult r = run_ensemble(c);
    std::istringstream in(csv_of(c, r));
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "model,task,tau,a_in,a_fb,shots,unitary_index,metric_name,value");
    size_t rows = 0, capacity_rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        EXPECT_EQ(std::count(line.begin(), line.end(), ','), 8) << line;
        if (line.find(",capacity,") != std::string::npos) {
            ++capacity_rows;
            EXPECT_EQ(line.rfind("proposed,uniform,,1,1.3,100,", 0), 0u) << line;
        }
    }
    EXPECT_EQ(rows, r.records.size());
    EXPECT_EQ(capacity_rows, 2u);
}

TEST(Output, SeventeenSignificantDigits) {
    EXPECT_EQ(format_double(0.1), "0.10000000000000001");
    EXPECT_EQ(format_double(1.0), "1");
    std::ostringstream out;
    write_json(out, nlohmann::json{{"x", 0.1}, {"n", 3}, {"s", "a"}});
    EXPECT_NE(out.str().find("0.10000000000000001"), std::string::npos);
    std::ostringstream div;
    write_divergence_csv(div, {0.5, 0.25});
    EXPECT_EQ(div.str(), "t,mean_abs_diff\n0,0.5\n1,0.25\n");
    EXPECT_EQ(lambda_suffix(0.04), "@lambda=0.040000000000000001");
}

TEST(Output, SummaryCarriesProvenance) {
    const ExperimentConfig c = small_stm(2, 100);
    const ExperimentResult r = run_ensemble(c);
    const nlohmann::json s = summary_json("stm", c, r);
    EXPECT_EQ(s["seed"], 17u);
    EXPECT_EQ(s["config_hash"], config_hash(c));
    EXPECT_FALSE(s["timestamp"].get<std::string>().empty());
    EXPECT_EQ(s["aggregates"].size(), r.aggregates.size());
}
