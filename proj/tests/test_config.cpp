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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "qrcfb/config.hpp"

using namespace qrcfb;

TEST(Config, EmptyObjectGivesDefaults) {
    const ExperimentConfig c = parse_config("{}");
    EXPECT_EQ(c.model.kind, ModelKind::Proposed);
    EXPECT_EQ(c.l_w, 25u);
    EXPECT_EQ(c.l_tr, 100u);
    EXPECT_EQ(c.l_ts, 100u);
    EXPECT_EQ(c.n_unitaries, 128u);
    EXPECT_EQ(c.tau_list, (std::vector<int>{0, -1, -2, -3}));
    EXPECT_EQ(c.sweep_grid().size(), 1u);
}

TEST(Config, ParsesFullDocument) {
    const ExperimentConfig c = parse_config(R"({
        "model": {"type": "proposed", "n_qubits": 3, "a_in": 0.5, "a_fb": 1.6, "initial_state": "haar_random_pure"},
        "task": {"type": "ising", "n_spins": 7, "coupling": 1.0, "hx": 1.05, "hz": -0.5, "dt": 0.005},
        "tau_list": [1], "l_w": 10, "l_tr": 50, "l_ts": 40, "n_unitaries": 3, "shots": 100,
        "master_seed": 99, "metric": "nmse", "threads": 2,
        "noise": {"enabled": true, "lambda": 0.04},
        "sweep": {"a_fb": [1.0, 2.0]}
    })");
    EXPECT_EQ(c.model.n_qubits, 3u);
    EXPECT_EQ(c.model.initial_state, InitialState::HaarRandomPure);
    EXPECT_EQ(c.task.kind, TaskKind::Ising);
    EXPECT_EQ(c.task.ising.n_spins, 7u);
    EXPECT_EQ(c.metric, MetricKind::Nmse);
    EXPECT_TRUE(c.noise.enabled);
    ASSERT_EQ(c.sweep_grid().size(), 2u);
    EXPECT_EQ(c.sweep_grid()[1], (SweepPoint{0.5, 2.0}));
    EXPECT_EQ(c.series_length(), 101u);
}

TEST(Config, UnknownKeysAreErrors) {
    for (const char *doc : {R"({"shotz": 10})", R"({"model": {"type": "proposed", "a_fbb": 1}})",
                            R"({"task": {"type": "ising", "tau": 17}})", R"({"noise": {"p": 0.1}})",
                            R"({"sweep": {"a_out": [1]}})", R"({"esp": {"runs": 3}})", R"({"oracle": {"n": 3}})",
                            R"({"model": {"type": "esn", "a_fb": 1.0}})",
                            R"({"model": {"type": "mcm_baseline", "n_qubits": 2}})"}) {
        EXPECT_THROW(parse_config(doc), InvalidArgument) << doc;
    }
}

TEST(Config, TypeErrorsAreErrors) {
    for (const char *doc : {R"({"shots": "many"})", R"({"shots": -5})", R"({"l_w": 1.5})", R"({"tau_list": 3})",
                            R"({"noise": {"enabled": 1}})", R"({"model": {"type": "quantum"}})",
                            R"({"metric": "mae"})", R"([1, 2])", R"({"model": 3})"}) {
        EXPECT_THROW(parse_config(doc), InvalidArgument) << doc;
    }
    EXPECT_THROW(parse_config("{\"shots\": "), InvalidArgument);
}

TEST(Config, InvariantViolationsAreErrors) {
    for (const char *doc : {R"({"l_w": 2})", R"({"l_tr": 0})", R"({"n_unitaries": 0})", R"({"shots": 0})",
                            R"({"noise": {"enabled": true, "lambda": 1.0}})", R"({"lambda_list": [-0.1]})",
                            R"({"tau_list": []})", R"({"esp": {"n_runs": 1}})",
                            R"({"task": {"type": "ising", "n_spins": 4}})"}) {
        EXPECT_THROW(parse_config(doc), InvalidArgument) << doc;
    }
}

TEST(Config, ModelSpecificDefaults) {
    const auto fd = parse_config(R"({"model": {"type": "feedback_driven"}})");
    EXPECT_EQ(fd.model.a_in, 0.001);
    EXPECT_EQ(fd.model.a_fb, 2.5);
    const auto esn = parse_config(R"({"model": {"type": "esn", "dim": 50}})");
    EXPECT_EQ(esn.model.esn_dim, 50u);
    EXPECT_EQ(esn.model.alpha, 0.3);
    EXPECT_EQ(esn.model.spectral_radius, 1.25);
    const auto mcm = parse_config(R"({"model": {"type": "mcm_baseline"}})");
    EXPECT_EQ(mcm.model.a, 5.0);
    EXPECT_TRUE(mcm.model.shot_based());
    EXPECT_FALSE(esn.model.shot_based());
}

TEST(Config, CanonicalFormRoundTrips) {
    for (const char *doc : {"{}", R"({"model": {"type": "esn"}, "task": {"type": "mackey_glass"}, "metric": "nmse",
                                    "tau_list": [1], "sweep": {"a_in": [0.5]}})",
                            R"({"model": {"type": "mcm_baseline", "a": 4}, "task": {"type": "ising", "rescale": false}})"}) {
        const ExperimentConfig a = parse_config(doc);
        const ExperimentConfig b = config_from_json(config_to_json(a));
        EXPECT_EQ(config_to_json(a), config_to_json(b)) << doc;
        EXPECT_EQ(config_hash(a), config_hash(b));
    }
}

TEST(Config, HashIgnoresThreadsButNotSeed) {
    const auto a = parse_config(R"({"threads": 1})");
    const auto b = parse_config(R"({"threads": 4})");
    const auto c = parse_config(R"({"master_seed": 2})");
    EXPECT_EQ(config_hash(a), config_hash(b));
    EXPECT_NE(config_hash(a), config_hash(c));
    EXPECT_EQ(config_hash(a).size(), 16u);
}

TEST(Config, ShippedConfigsParse) {
    size_t seen = 0;
    for (const auto &entry : std::filesystem::directory_iterator(QRCFB_CONFIG_DIR)) {
        if (entry.path().extension() != ".json") continue;
        std::ifstream in(entry.path());
        std::stringstream ss;
        ss << in.rdbuf();
        EXPECT_NO_THROW(parse_config(ss.str())) << entry.path();
        ++seen;
    }
    EXPECT_GE(seen, 10u);
}
