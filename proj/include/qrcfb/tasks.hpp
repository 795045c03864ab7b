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

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "qrcfb/errors.hpp"
#include "qrcfb/io.hpp"
#include "qrcfb/qsim.hpp"
#include "qrcfb/rng.hpp"

namespace qrcfb {

struct TimeSeries {
    std::vector<double> values;
    std::string generator;
    bool normalized = false;

    size_t size() const { return values.size(); }
    bool empty() const { return values.empty(); }
    double operator[](size_t i) const { return values[i]; }
};

/// i.i.d. uniform samples on [0, 1).
inline TimeSeries gen_uniform(size_t len, Rng &rng) {
    detail::require(len >= 1, "gen_uniform: length must be >= 1");
    TimeSeries s{std::vector<double>(len), "uniform", true};
    for (double &v : s.values) {
        v = rng.uniform();
    }
    return s;
}

inline TimeSeries gen_uniform(size_t len, const RngStream &stream) {
    Rng rng(stream);
    return gen_uniform(len, rng);
}

struct MackeyGlassParams {
    double beta0 = 0.2;
    double theta = 1.0;
    double n = 10.0;
    int tau = 17;
    double gamma = 0.1;
    double dt = 1.0;
    double init_value = 1.2;
    size_t discard = 500;
    bool normalize = true;
};

/// Min-max rescale onto [0, 1]. Throws NumericError for a constant series.
inline void normalize_min_max(TimeSeries &s) {
    auto [lo, hi] = std::minmax_element(s.values.begin(), s.values.end());
    const double min = *lo, max = *hi;
    if (!(max > min)) {
        throw NumericError("normalize_min_max: series is constant");
    }
    for (double &v : s.values) {
        v = (v - min) / (max - min);
    }
    s.normalized = true;
}

/// Forward-Euler integration of the Mackey-Glass delay equation with a
/// constant history of `init_value` over the delay window.
inline TimeSeries gen_mackey_glass(size_t len, const MackeyGlassParams &p) {
    detail::require(len >= 1, "gen_mackey_glass: length must be >= 1");
    detail::require(p.tau >= 1, "gen_mackey_glass: tau must be >= 1");
    detail::require(p.dt > 0.0 && std::isfinite(p.dt), "gen_mackey_glass: dt must be positive");

    const size_t delay = size_t(p.tau);
    const double theta_n = std::pow(p.theta, p.n);
    // history[0..delay] holds P_{-tau}..P_0.
    std::vector<double> traj(delay + 1, p.init_value);
    traj.reserve(delay + 1 + p.discard + len);
    for (size_t step = 0; step < p.discard + len; ++step) {
        const double now = traj.back();
        const double lagged = traj[traj.size() - 1 - delay];
        const double next = now + p.dt * (p.beta0 * theta_n * lagged / (theta_n + std::pow(lagged, p.n)) - p.gamma * now);
        if (!std::isfinite(next)) {
            throw NumericError("gen_mackey_glass: integration diverged");
        }
        traj.push_back(next);
    }
    TimeSeries s{std::vector<double>(traj.end() - std::ptrdiff_t(len), traj.end()), "mackey_glass", false};
    if (p.normalize) {
        normalize_min_max(s);
    }
    return s;
}

struct IsingParams {
    size_t n_spins = 5;
    double J = 1.0;
    double hx = 1.05;
    double hz = -0.5;
    double dt = 0.005;
    /// Empty means |0...0>.
    std::optional<CVector> initial_amplitudes;
    /// Map <Z> from [-1, 1] onto [0, 1].
    bool rescale = true;
};

inline constexpr size_t kMaxIsingSpins = 12;

/// Open-boundary chain: J sum Z_i Z_{i+1} + hx sum X_i + hz sum Z_i.
inline CMatrix build_ising_hamiltonian(const IsingParams &p) {
    detail::require(p.n_spins >= 1 && p.n_spins <= kMaxIsingSpins, "build_ising_hamiltonian: n_spins must be in [1, 12]");
    const size_t n = p.n_spins;
    const size_t dim = size_t(1) << n;
    auto z_of = [n](size_t index, size_t spin) { return ((index >> (n - 1 - spin)) & 1U) ? -1.0 : 1.0; };
    CMatrix h = CMatrix::Zero(Eigen::Index(dim), Eigen::Index(dim));
    for (size_t i = 0; i < dim; ++i) {
        double diag = 0.0;
        for (size_t s = 0; s + 1 < n; ++s) {
            diag += p.J * z_of(i, s) * z_of(i, s + 1);
        }
        for (size_t s = 0; s < n; ++s) {
            diag += p.hz * z_of(i, s);
            size_t flipped = i ^ (size_t(1) << (n - 1 - s));
            h(Eigen::Index(flipped), Eigen::Index(i)) += p.hx;
        }
        h(Eigen::Index(i), Eigen::Index(i)) += diag;
    }
    return h;
}

/// Central-spin <Z> of the chain under exact propagation by exp(-i H dt).
inline TimeSeries gen_ising_series(size_t len, const IsingParams &p) {
    detail::require(len >= 1, "gen_ising_series: length must be >= 1");
    detail::require(p.n_spins % 2 == 1, "gen_ising_series: n_spins must be odd");
    const CMatrix h = build_ising_hamiltonian(p);
    const UnitaryMatrix step = matrix_exponential_propagator(h, p.dt);
    StateVector psi = p.initial_amplitudes ? StateVector::from_amplitudes(p.n_spins, *p.initial_amplitudes)
                                           : StateVector(p.n_spins);
    const size_t middle = p.n_spins / 2;
    TimeSeries s{std::vector<double>(len), "ising", p.rescale};
    for (size_t t = 0; t < len; ++t) {
        if (t > 0) {
            apply_unitary_inplace(psi, step);
        }
        const double z = expectation_z(psi, middle);
        s.values[t] = p.rescale ? (z + 1.0) / 2.0 : z;
    }
    return s;
}

/// Align inputs with targets y_k = s_{k+tau}, trimming samples without a
/// partner on either side.
inline std::pair<TimeSeries, TimeSeries> make_delay_target(const TimeSeries &series, int tau) {
    const size_t shift = size_t(std::abs(tau));
    detail::require(shift < series.size(), "make_delay_target: |tau| must be smaller than the series length");
    const auto first = series.values.begin();
    const auto last = series.values.end();
    const auto k = std::ptrdiff_t(shift);
    TimeSeries inputs{{}, series.generator, series.normalized};
    TimeSeries targets{{}, series.generator, series.normalized};
    if (tau >= 0) {
        inputs.values.assign(first, last - k);
        targets.values.assign(first + k, last);
    } else {
        inputs.values.assign(first + k, last);
        targets.values.assign(first, last - k);
    }
    return {std::move(inputs), std::move(targets)};
}

/// One value per line under a `t,value` header.
inline void write_series_csv(std::ostream &out, const TimeSeries &s) {
    out << "t,value\n";
    for (size_t t = 0; t < s.size(); ++t) {
        out << t << ',' << format_double(s.values[t]) << '\n';
    }
}

}  // namespace qrcfb
