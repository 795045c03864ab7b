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

// Exact reference results for the feedback model.
//
// With a reset after every measurement each cycle after the first starts from
// |0...0>, so the outcome of cycle k depends only on (s_k, m_{k-1}). The feedback
// string is then a Markov chain over {-1, +1}^N and its law can be propagated
// exactly. Cycle unitaries are assembled here as dense full-register matrix
// products; none of the in-place kernels used by the shot simulator are
// involved.

#include <Eigen/Dense>

#include <cmath>
#include <vector>

#include "qrcfb/errors.hpp"
#include "qrcfb/feature_series.hpp"
#include "qrcfb/qsim.hpp"
#include "qrcfb/reservoirs.hpp"
#include "qrcfb/tasks.hpp"

namespace qrcfb::oracle {

/// Probabilities over measurement strings, indexed by MeasurementString::index().
struct OutcomeDistribution {
    std::vector<double> probs;

    size_t n_qubits() const {
        size_t n = 0;
        while ((size_t(1) << n) < probs.size()) {
            ++n;
        }
        return n;
    }
};

inline constexpr size_t kMaxCycleQubits = 10;
inline constexpr size_t kMaxMarkovQubits = 6;

namespace detail {

inline CMatrix kron(const CMatrix &a, const CMatrix &b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
        for (Eigen::Index c = 0; c < a.cols(); ++c) {
            out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
        }
    }
    return out;
}

/// I x ... x g x ... x I with g on `qubit` (qubit 0 is the leftmost factor).
inline CMatrix embed_single(const CMatrix &g, size_t qubit, size_t n) {
    CMatrix out = CMatrix::Identity(1, 1);
    for (size_t q = 0; q < n; ++q) {
        out = kron(out, q == qubit ? g : CMatrix::Identity(2, 2));
    }
    return out;
}

inline CMatrix embed_cx(size_t control, size_t target, size_t n) {
    const size_t dim = size_t(1) << n;
    const size_t cbit = size_t(1) << (n - 1 - control);
    const size_t tbit = size_t(1) << (n - 1 - target);
    CMatrix out = CMatrix::Zero(Eigen::Index(dim), Eigen::Index(dim));
    for (size_t i = 0; i < dim; ++i) {
        const size_t j = (i & cbit) ? (i ^ tbit) : i;
        out(Eigen::Index(j), Eigen::Index(i)) = 1.0;
    }
    return out;
}

inline CMatrix rx_matrix(double theta) {
    CMatrix m(2, 2);
    m << std::cos(theta / 2), Complex(0, -std::sin(theta / 2)), Complex(0, -std::sin(theta / 2)), std::cos(theta / 2);
    return m;
}

inline CMatrix rz_matrix(double theta) {
    CMatrix m = CMatrix::Zero(2, 2);
    m(0, 0) = std::exp(Complex(0, -theta / 2));
    m(1, 1) = std::exp(Complex(0, theta / 2));
    return m;
}

}  // namespace detail

/// Full-register matrix of R_{i,j}(theta) = CX_ij RZ_j CX_ij RX_j RX_i.
inline CMatrix r_gate_matrix(double theta, size_t i, size_t j, size_t n) {
    const CMatrix cx = detail::embed_cx(i, j, n);
    return cx * detail::embed_single(detail::rz_matrix(theta), j, n) * cx *
           detail::embed_single(detail::rx_matrix(theta), j, n) * detail::embed_single(detail::rx_matrix(theta), i, n);
}

/// Dense matrix of one noiseless cycle before measurement.
inline CMatrix cycle_unitary(double s_k, const MeasurementString &m_prev, const ProposedModelConfig &c,
                             const UnitaryMatrix &u_haar) {
    const size_t n = c.n_qubits;
    CMatrix total = r_gate_matrix(c.a_in * s_k, 0, 1, n);
    for (size_t j = 0; j < n; ++j) {
        auto [p, q] = feedback_pair(j, n);
        total = r_gate_matrix(c.a_fb * double(m_prev[j]), p, q, n) * total;
    }
    return u_haar.matrix() * total;
}

/// Exact Born distribution of one cycle started from `start`.
inline OutcomeDistribution exact_cycle_distribution(double s_k, const MeasurementString &m_prev,
                                                    const ProposedModelConfig &c, const UnitaryMatrix &u_haar,
                                                    const StateVector &start) {
    if (c.noise.enabled) {
        throw Unsupported("exact_cycle_distribution: noise must be disabled");
    }
    qrcfb::detail::require(c.n_qubits >= 2 && c.n_qubits <= kMaxCycleQubits,
                           "exact_cycle_distribution: n_qubits must be in [2, 10]");
    qrcfb::detail::require(m_prev.size() == c.n_qubits, "exact_cycle_distribution: measurement length mismatch");
    qrcfb::detail::require(u_haar.dim() == (size_t(1) << c.n_qubits), "exact_cycle_distribution: unitary dimension mismatch");
    qrcfb::detail::require(start.n_qubits() == c.n_qubits, "exact_cycle_distribution: start state size mismatch");
    const CVector psi = cycle_unitary(s_k, m_prev, c, u_haar) * start.amplitudes();
    OutcomeDistribution d{std::vector<double>(size_t(psi.size()))};
    for (Eigen::Index i = 0; i < psi.size(); ++i) {
        d.probs[size_t(i)] = std::norm(psi[i]);
    }
    return d;
}

/// Same, started from the configured initial state.
inline OutcomeDistribution exact_cycle_distribution(double s_k, const MeasurementString &m_prev,
                                                    const ProposedModelConfig &c, const UnitaryMatrix &u_haar) {
    if (c.noise.enabled) {
        throw Unsupported("exact_cycle_distribution: noise must be disabled");
    }
    qrcfb::detail::require(c.n_qubits >= 2 && c.n_qubits <= kMaxCycleQubits,
                           "exact_cycle_distribution: n_qubits must be in [2, 10]");
    return exact_cycle_distribution(s_k, m_prev, c, u_haar, prepare_initial_state(c));
}

/// sum_m P(m) m[qubit]
inline double expectation_from_distribution(const OutcomeDistribution &d, size_t qubit) {
    const size_t n = d.n_qubits();
    qrcfb::detail::require(qubit < n, "expectation_from_distribution: qubit index out of range");
    const size_t bit = size_t(1) << (n - 1 - qubit);
    double e = 0.0;
    for (size_t i = 0; i < d.probs.size(); ++i) {
        e += (i & bit) ? -d.probs[i] : d.probs[i];
    }
    return e;
}

/// Exact <Z> series of the reset model by propagating the feedback-string law.
inline FeatureSeries exact_feature_series_markov(const ProposedModelConfig &c, const TimeSeries &inputs) {
    if (!c.reset_after_measurement) {
        throw Unsupported("exact_feature_series_markov: requires reset_after_measurement");
    }
    if (c.noise.enabled) {
        throw Unsupported("exact_feature_series_markov: noise must be disabled");
    }
    qrcfb::detail::require(c.n_qubits >= 2 && c.n_qubits <= kMaxMarkovQubits,
                           "exact_feature_series_markov: n_qubits must be in [2, 6]");
    qrcfb::detail::require(!inputs.empty(), "exact_feature_series_markov: empty inputs");
    const size_t n = c.n_qubits, dim = size_t(1) << n;
    const UnitaryMatrix u = reservoir_unitary(c);
    const StateVector rho0 = prepare_initial_state(c);
    const StateVector zero(n);

    std::vector<double> law(dim, 1.0 / double(dim));
    FeatureSeries f{Eigen::MatrixXd(Eigen::Index(inputs.size()), Eigen::Index(n))};
    for (size_t k = 0; k < inputs.size(); ++k) {
        std::vector<double> next(dim, 0.0);
        for (size_t m = 0; m < dim; ++m) {
            if (law[m] == 0.0) {
                continue;
            }
            const auto cycle =
                exact_cycle_distribution(inputs[k], MeasurementString::from_index(n, m), c, u, k == 0 ? rho0 : zero);
            for (size_t i = 0; i < dim; ++i) {
                next[i] += law[m] * cycle.probs[i];
            }
        }
        law = std::move(next);
        const OutcomeDistribution marginal{law};
        for (size_t q = 0; q < n; ++q) {
            f.values(Eigen::Index(k), Eigen::Index(q)) = expectation_from_distribution(marginal, q);
        }
    }
    return f;
}

}  // namespace qrcfb::oracle
