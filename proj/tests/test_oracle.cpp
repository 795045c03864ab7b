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

#include <functional>
#include <numeric>

#include "qrcfb/harness.hpp"
#include "qrcfb/oracle.hpp"

using namespace qrcfb;

namespace {

ProposedModelConfig config(size_t n, double a_in, double a_fb, uint64_t seed) {
    ProposedModelConfig c;
    c.n_qubits = n;
    c.a_in = a_in;
    c.a_fb = a_fb;
    c.haar_seed = RngStream{seed, 1};
    c.init_seed = RngStream{seed, 2};
    return c;
}

// Sum over every outcome history, weighting each branch by its Born
// probability. Uses the simulator's gate kernels, not the oracle's matrices.
Eigen::MatrixXd brute_force_means(const ProposedModelConfig &c, const TimeSeries &in) {
    const size_t n = c.n_qubits, dim = size_t(1) << n, steps = in.size();
    const UnitaryMatrix u = reservoir_unitary(c);
    const StateVector rho0 = prepare_initial_state(c);
    Eigen::MatrixXd means = Eigen::MatrixXd::Zero(Eigen::Index(steps), Eigen::Index(n));
    std::function<void(size_t, size_t, double)> walk = [&](size_t k, size_t m_prev, double weight) {
        if (k == steps) return;
        StateVector s = k == 0 ? rho0 : StateVector(n);
        apply_proposed_unitary(s, in[k], MeasurementString::from_index(n, m_prev), c, u);
        const auto p = s.probabilities();
        for (size_t out = 0; out < dim; ++out) {
            const double w = weight * p[out];
            const auto m = MeasurementString::from_index(n, out);
            for (size_t q = 0; q < n; ++q) means(Eigen::Index(k), Eigen::Index(q)) += w * m[q];
            walk(k + 1, out, w);
        }
    };
    for (size_t m0 = 0; m0 < dim; ++m0) walk(0, m0, 1.0 / double(dim));
    return means;
}

}  // namespace

TEST(Markov, MatchesBruteForceEnumeration) {
    for (uint64_t seed = 0; seed < 4; ++seed) {
        const auto c = config(2, 0.4 + seed, 2.7 - 0.6 * double(seed), seed);
        const TimeSeries in = gen_uniform(3, RngStream{seed, 5});
        const FeatureSeries exact = oracle::exact_feature_series_markov(c, in);
        EXPECT_LT((exact.values - brute_force_means(c, in)).cwiseAbs().maxCoeff(), 1e-12) << seed;
    }
}

TEST(Markov, MatchesBruteForceWithRandomInitialStateOnThreeQubits) {
    auto c = config(3, 1.2, 0.9, 8);
    c.initial_state = InitialState::HaarRandomPure;
    const TimeSeries in = gen_uniform(3, RngStream{8, 5});
    const FeatureSeries exact = oracle::exact_feature_series_markov(c, in);
    EXPECT_LT((exact.values - brute_force_means(c, in)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(CycleDistribution, IsNormalizedAndUnitary) {
    for (size_t n = 2; n <= 6; ++n) {
        const auto c = config(n, 2.1, 1.4, 20 + n);
        const UnitaryMatrix u = reservoir_unitary(c);
        Rng rng(RngStream{n, 3});
        const MeasurementString m = random_measurement_string(n, rng);
        const auto d = oracle::exact_cycle_distribution(0.77, m, c, u);
        EXPECT_NEAR(std::accumulate(d.probs.begin(), d.probs.end(), 0.0), 1.0, 1e-10);
        for (double p : d.probs) EXPECT_GE(p, 0.0);
        const CMatrix w = oracle::cycle_unitary(0.77, m, c, u);
        EXPECT_LT((w.adjoint() * w - CMatrix::Identity(w.rows(), w.cols())).cwiseAbs().maxCoeff(), 1e-10);
    }
}

TEST(CycleDistribution, IgnoresInputsAndFeedbackWhenScalingsVanish) {
    const auto c = config(3, 0.0, 0.0, 30);
    const UnitaryMatrix u = reservoir_unitary(c);
    const auto ref = oracle::exact_cycle_distribution(0.0, MeasurementString::all_plus(3), c, u);
    for (size_t m = 0; m < 8; ++m) {
        const auto d = oracle::exact_cycle_distribution(0.9, MeasurementString::from_index(3, m), c, u);
        for (size_t i = 0; i < 8; ++i) EXPECT_NEAR(d.probs[i], ref.probs[i], 1e-14);
    }
}

TEST(CycleDistribution, MarkovLawStaysAProbabilityVector) {
    const auto c = config(4, 1.5, 2.2, 31);
    const TimeSeries in = gen_uniform(15, RngStream{31, 1});
    const FeatureSeries f = oracle::exact_feature_series_markov(c, in);
    EXPECT_LE(f.values.cwiseAbs().maxCoeff(), 1.0 + 1e-12);
}

TEST(Expectation, FromDistribution) {
    const oracle::OutcomeDistribution d{{0.5, 0.25, 0.125, 0.125}};
    EXPECT_EQ(d.n_qubits(), 2u);
    EXPECT_NEAR(oracle::expectation_from_distribution(d, 0), 0.5, 1e-15);
    EXPECT_NEAR(oracle::expectation_from_distribution(d, 1), 0.25, 1e-15);
    EXPECT_THROW(oracle::expectation_from_distribution(d, 2), InvalidArgument);
}

TEST(Oracle, RejectsUnsupportedSettings) {
    auto c = config(2, 1.0, 1.0, 1);
    const TimeSeries in = gen_uniform(3, RngStream{1, 1});
    c.noise = NoiseSpec{0.01, true};
    EXPECT_THROW(oracle::exact_feature_series_markov(c, in), Unsupported);
    EXPECT_THROW(oracle::exact_cycle_distribution(0.1, MeasurementString::all_plus(2), c, reservoir_unitary(c)),
                 Unsupported);
    c = config(2, 1.0, 1.0, 1);
    c.reset_after_measurement = false;
    EXPECT_THROW(oracle::exact_feature_series_markov(c, in), Unsupported);
    c = config(7, 1.0, 1.0, 1);
    EXPECT_THROW(oracle::exact_feature_series_markov(c, in), InvalidArgument);
}

TEST(Oracle, ShotSimulatorAgreesWithinShotNoise) {
    ExperimentConfig c;
    c.n_unitaries = 5;
    c.shots = 20000;
    c.oracle.steps = 10;
    c.threads = 1;
    c.master_seed = 4242;
    const OracleCheckResult r = run_oracle_check(c);
    EXPECT_GE(r.fraction_within(), 0.99);
    for (const auto &rec : r.records) {
        EXPECT_EQ(rec.total, 20u);
        EXPECT_GE(rec.point.a_in, 0.0);
        EXPECT_LE(rec.point.a_fb, 3.0);
    }
}

TEST(Oracle, StandardizedDeviation) {
    EXPECT_NEAR(standardized_deviation(0.1, 0.0, 100), 1.0, 1e-12);
    EXPECT_EQ(standardized_deviation(1.0, 1.0, 100), 0.0);
    EXPECT_TRUE(std::isinf(standardized_deviation(0.9, 1.0, 100)));
}
