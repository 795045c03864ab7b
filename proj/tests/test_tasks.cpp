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

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <deque>
#include <sstream>

#include "qrcfb/tasks.hpp"
#include "test_support.hpp"

using namespace qrcfb;
namespace t = qrcfb::testing;

TEST(Uniform, RangeLengthAndDeterminism) {
    const auto a = gen_uniform(1000, RngStream{1, 2});
    const auto b = gen_uniform(1000, RngStream{1, 2});
    ASSERT_EQ(a.size(), 1000u);
    EXPECT_EQ(a.values, b.values);
    for (double v : a.values) {
        EXPECT_GE(v, 0.0);
        EXPECT_LT(v, 1.0);
    }
    double mean = 0;
    for (double v : a.values) mean += v;
    EXPECT_NEAR(mean / 1000, 0.5, 0.05);
}

TEST(MackeyGlass, FixedPointIsExact) {
    // beta0 theta^n / (theta^n + 1) = gamma at P = 1 with these constants.
    MackeyGlassParams p;
    p.init_value = 1.0;
    p.normalize = false;
    const auto s = gen_mackey_glass(300, p);
    for (double v : s.values) {
        EXPECT_EQ(v, 1.0);
    }
    p.normalize = true;
    EXPECT_THROW(gen_mackey_glass(300, p), NumericError);
}

TEST(MackeyGlass, MatchesIndependentEulerIntegration) {
    MackeyGlassParams p;
    p.normalize = false;
    const size_t len = 400;
    const auto s = gen_mackey_glass(len, p);

    std::deque<double> hist(size_t(p.tau) + 1, p.init_value);
    std::vector<double> out;
    for (size_t k = 0; k < p.discard + len; ++k) {
        const double x = hist.back(), lag = hist.front();
        const double next = x + p.dt * (p.beta0 * lag / (1.0 + std::pow(lag, p.n)) - p.gamma * x);
        hist.pop_front();
        hist.push_back(next);
        if (k >= p.discard) out.push_back(next);
    }
    ASSERT_EQ(out.size(), s.size());
    for (size_t i = 0; i < len; ++i) {
        EXPECT_NEAR(s[i], out[i], 1e-12 * std::abs(out[i]));
    }
}

TEST(MackeyGlass, NormalizedOntoUnitInterval) {
    const auto s = gen_mackey_glass(500, MackeyGlassParams{});
    EXPECT_TRUE(s.normalized);
    const auto [lo, hi] = std::minmax_element(s.values.begin(), s.values.end());
    EXPECT_EQ(*lo, 0.0);
    EXPECT_EQ(*hi, 1.0);
}

TEST(MackeyGlass, RejectsBadParameters) {
    MackeyGlassParams p;
    p.tau = 0;
    EXPECT_THROW(gen_mackey_glass(10, p), InvalidArgument);
    EXPECT_THROW(gen_mackey_glass(0, MackeyGlassParams{}), InvalidArgument);
}

namespace {

CMatrix ising_oracle(const IsingParams &p) {
    const size_t n = p.n_spins;
    CMatrix h = CMatrix::Zero(Eigen::Index(1) << n, Eigen::Index(1) << n);
    for (size_t i = 0; i + 1 < n; ++i) h += p.J * t::on_qubit(t::pauli('Z'), i, n) * t::on_qubit(t::pauli('Z'), i + 1, n);
    for (size_t i = 0; i < n; ++i) {
        h += p.hx * t::on_qubit(t::pauli('X'), i, n);
        h += p.hz * t::on_qubit(t::pauli('Z'), i, n);
    }
    return h;
}

}  // namespace

TEST(Ising, HamiltonianMatchesPauliSum) {
    for (size_t n : {1, 3, 5}) {
        IsingParams p;
        p.n_spins = n;
        const CMatrix h = build_ising_hamiltonian(p);
        EXPECT_LT((h - ising_oracle(p)).cwiseAbs().maxCoeff(), 1e-14);
        EXPECT_LT((h - h.adjoint()).cwiseAbs().maxCoeff(), 1e-15);
    }
}

TEST(Ising, SeriesMatchesDenseExponential) {
    IsingParams p;
    p.rescale = false;
    const size_t len = 50;
    const auto s = gen_ising_series(len, p);
    const CMatrix h = ising_oracle(p);
    const CMatrix z_mid = t::on_qubit(t::pauli('Z'), 2, 5);
    t::Vec psi0 = t::Vec::Zero(32);
    psi0[0] = 1.0;
    EXPECT_EQ(s[0], 1.0);
    for (size_t k = 0; k < len; k += 7) {
        const t::Vec psi = CMatrix(Complex(0, -p.dt * double(k)) * h).exp() * psi0;
        EXPECT_NEAR(s[k], (psi.adjoint() * z_mid * psi)(0, 0).real(), 1e-10) << k;
    }
}

TEST(Ising, RescaledSeriesInUnitInterval) {
    const auto s = gen_ising_series(300, IsingParams{});
    EXPECT_EQ(s[0], 1.0);
    for (double v : s.values) {
        EXPECT_GE(v, -1e-12);
        EXPECT_LE(v, 1.0 + 1e-12);
    }
}

TEST(Ising, EnergyConserved) {
    IsingParams p;
    const CMatrix h = build_ising_hamiltonian(p);
    const UnitaryMatrix step = matrix_exponential_propagator(h, p.dt);
    StateVector psi(p.n_spins);
    auto energy = [&](const StateVector &s) { return (s.amplitudes().adjoint() * h * s.amplitudes())(0, 0).real(); };
    const double e0 = energy(psi);
    for (int k = 0; k < 2000; ++k) apply_unitary_inplace(psi, step);
    EXPECT_NEAR(energy(psi), e0, 1e-8);
    EXPECT_NEAR(psi.norm(), 1.0, 1e-10);
}

TEST(Ising, CustomInitialStateAndValidation) {
    IsingParams p;
    p.n_spins = 3;
    CVector v = CVector::Zero(8);
    v[7] = 1.0;  // all spins down
    p.initial_amplitudes = v;
    p.rescale = false;
    EXPECT_EQ(gen_ising_series(1, p)[0], -1.0);
    p.n_spins = 4;
    p.initial_amplitudes.reset();
    EXPECT_THROW(gen_ising_series(10, p), InvalidArgument);
}

TEST(DelayTarget, Alignment) {
    const TimeSeries s{{0, 1, 2, 3, 4}, "x", false};
    auto [in_f, y_f] = make_delay_target(s, 2);
    EXPECT_EQ(in_f.values, (std::vector<double>{0, 1, 2}));
    EXPECT_EQ(y_f.values, (std::vector<double>{2, 3, 4}));
    auto [in_m, y_m] = make_delay_target(s, -1);
    EXPECT_EQ(in_m.values, (std::vector<double>{1, 2, 3, 4}));
    EXPECT_EQ(y_m.values, (std::vector<double>{0, 1, 2, 3}));
    auto [in_0, y_0] = make_delay_target(s, 0);
    EXPECT_EQ(in_0.values, y_0.values);
    EXPECT_THROW(make_delay_target(s, 5), InvalidArgument);
}

TEST(SeriesCsv, HeaderAndPrecision) {
    std::ostringstream out;
    write_series_csv(out, TimeSeries{{0.1, 1.0 / 3.0}, "x", false});
    EXPECT_EQ(out.str(), "t,value\n0,0.10000000000000001\n1,0.33333333333333331\n");
}
