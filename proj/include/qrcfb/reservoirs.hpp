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

// Reservoir models. Each one maps an input series to a FeatureSeries:
//
//   * the feedback model with mid-circuit measurements (with or without
//     post-measurement resets),
//   * the restart-based baseline that feeds back exact expectation values,
//   * the continuously monitored ancilla baseline,
//   * the classical leaky echo state network.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "qrcfb/errors.hpp"
#include "qrcfb/feature_series.hpp"
#include "qrcfb/parallel.hpp"
#include "qrcfb/qsim.hpp"
#include "qrcfb/rng.hpp"
#include "qrcfb/tasks.hpp"

namespace qrcfb {

enum class InitialState { AllZero, HaarRandomPure };

inline StateVector prepare_state(size_t n_qubits, InitialState kind, const RngStream &seed) {
    if (kind == InitialState::AllZero) {
        return StateVector(n_qubits);
    }
    Rng rng(seed);
    return haar_random_state(n_qubits, rng);
}

/// Qubit pair of feedback gate j: a ring over all qubits.
inline std::pair<size_t, size_t> feedback_pair(size_t j, size_t n_qubits) { return {j, (j + 1) % n_qubits}; }

inline MeasurementString random_measurement_string(size_t n, Rng &rng) {
    size_t index = 0;
    for (size_t q = 0; q < n; ++q) {
        index = (index << 1) | (rng.uniform() < 0.5 ? 0U : 1U);
    }
    return MeasurementString::from_index(n, index);
}

// ===========================================================================
// Feedback model with mid-circuit measurements

struct ProposedModelConfig {
    size_t n_qubits = 2;
    double a_in = 1.0;
    double a_fb = 1.3;
    size_t shots = 1000;
    RngStream haar_seed{};
    NoiseSpec noise{};
    bool reset_after_measurement = true;
    /// State of the register before the first cycle; resets always return
    /// to |0...0>.
    InitialState initial_state = InitialState::AllZero;
    RngStream init_seed{};
    /// Shot-level workers inside one model run.
    unsigned threads = 1;

    void validate() const {
        detail::require(n_qubits >= 2 && n_qubits <= kMaxQubits, "ProposedModelConfig: n_qubits must be >= 2");
        detail::require(shots >= 1, "ProposedModelConfig: shots must be >= 1");
        detail::require(std::isfinite(a_in) && std::isfinite(a_fb), "ProposedModelConfig: scalings must be finite");
        noise.validate();
    }
};

inline UnitaryMatrix reservoir_unitary(const ProposedModelConfig &c) {
    return haar_random_unitary(size_t(1) << c.n_qubits, c.haar_seed);
}

inline StateVector prepare_initial_state(const ProposedModelConfig &c) {
    return prepare_state(c.n_qubits, c.initial_state, c.init_seed);
}

/// U(s_k, m_{k-1}): input gate on (0, 1), one feedback gate per qubit, then
/// the fixed reservoir unitary.
inline void apply_proposed_unitary(StateVector &state, double s_k, const MeasurementString &m_prev,
                                   const ProposedModelConfig &c, const UnitaryMatrix &u_haar) {
    const size_t n = c.n_qubits;
    detail::require(m_prev.size() == n, "proposed cycle: previous measurement length must equal n_qubits");
    detail::require(state.n_qubits() == n, "proposed cycle: state size does not match config");
    apply_r_gate_inplace(state, c.a_in * s_k, 0, 1);
    for (size_t j = 0; j < n; ++j) {
        auto [p, q] = feedback_pair(j, n);
        apply_r_gate_inplace(state, c.a_fb * double(m_prev[j]), p, q);
    }
    apply_unitary_inplace(state, u_haar);
}

/// One measurement cycle: unitary, per-qubit depolarizing noise (if enabled),
/// projective readout of every qubit, optional reset to |0...0>.
inline std::pair<MeasurementString, StateVector> run_proposed_cycle(StateVector state, double s_k,
                                                                    const MeasurementString &m_prev,
                                                                    const ProposedModelConfig &c,
                                                                    const UnitaryMatrix &u_haar, Rng &measure_rng,
                                                                    Rng &noise_rng) {
    apply_proposed_unitary(state, s_k, m_prev, c, u_haar);
    if (c.noise.enabled) {
        for (size_t q = 0; q < c.n_qubits; ++q) {
            state = apply_depolarizing(std::move(state), c.noise, q, noise_rng);
        }
    }
    auto [m, collapsed] = measure_all_z(std::move(state), measure_rng);
    if (c.reset_after_measurement) {
        return {std::move(m), reset_all(collapsed)};
    }
    return {std::move(m), std::move(collapsed)};
}

inline std::pair<MeasurementString, StateVector> run_proposed_cycle(StateVector state, double s_k,
                                                                    const MeasurementString &m_prev,
                                                                    const ProposedModelConfig &c,
                                                                    const UnitaryMatrix &u_haar, Rng &rng) {
    return run_proposed_cycle(std::move(state), s_k, m_prev, c, u_haar, rng, rng);
}

namespace detail {

inline void require_inputs(const TimeSeries &inputs, const char *who) {
    require(!inputs.empty(), std::string(who) + ": input series is empty");
    for (double v : inputs.values) {
        require(std::isfinite(v), std::string(who) + ": non-finite input");
    }
}

/// Per-shot streams: measurement draws and noise draws never share a stream,
/// so toggling noise leaves the measurement sequence untouched.
struct ShotStreams {
    Rng measure;
    std::optional<Rng> noise_rng;
    ShotStreams(const RngStream &base, size_t shot, bool with_noise) : measure(base.derive(shot, StreamRole::Shot)) {
        if (with_noise) {
            noise_rng.emplace(base.derive(shot, StreamRole::Noise));
        }
    }
    Rng &noise() { return noise_rng ? *noise_rng : measure; }
};

inline FeatureSeries means_from_counts(const std::vector<int64_t> &minus_counts, size_t steps, size_t cols,
                                       size_t shots) {
    FeatureSeries f{Eigen::MatrixXd(Eigen::Index(steps), Eigen::Index(cols))};
    for (size_t k = 0; k < steps; ++k) {
        for (size_t q = 0; q < cols; ++q) {
            const int64_t minus = minus_counts[k * cols + q];
            f.values(Eigen::Index(k), Eigen::Index(q)) = double(int64_t(shots) - 2 * minus) / double(shots);
        }
    }
    return f;
}

/// Shot-parallel reduction of integer outcome counts; the result does not
/// depend on the number of workers.
template <typename ShotFn>
std::vector<int64_t> count_minus_outcomes(size_t shots, size_t cells, unsigned threads, ShotFn &&run_shot) {
    const size_t chunks = std::min<size_t>(resolve_threads(threads), shots);
    std::vector<std::vector<int64_t>> partial(chunks, std::vector<int64_t>(cells, 0));
    parallel_for(chunks, threads, [&](size_t c) {
        const size_t lo = shots * c / chunks, hi = shots * (c + 1) / chunks;
        for (size_t s = lo; s < hi; ++s) {
            run_shot(s, partial[c]);
        }
    });
    std::vector<int64_t> total(cells, 0);
    for (const auto &p : partial) {
        for (size_t i = 0; i < cells; ++i) {
            total[i] += p[i];
        }
    }
    return total;
}

inline void tally(std::vector<int64_t> &counts, size_t k, size_t n, size_t outcome) {
    for (size_t q = 0; q < n; ++q) {
        counts[k * n + q] += int64_t((outcome >> (n - 1 - q)) & 1U);
    }
}

}  // namespace detail

/// Shot-by-shot simulation that steps every trajectory through
/// run_proposed_cycle. Produces the same bits as run_proposed_model.
inline FeatureSeries run_proposed_model_reference(const ProposedModelConfig &c, const TimeSeries &inputs,
                                                  const RngStream &shot_stream) {
    c.validate();
    detail::require_inputs(inputs, "run_proposed_model");
    const size_t n = c.n_qubits, steps = inputs.size();
    const UnitaryMatrix u = reservoir_unitary(c);
    const StateVector rho0 = prepare_initial_state(c);
    auto counts = detail::count_minus_outcomes(c.shots, steps * n, c.threads, [&](size_t s, std::vector<int64_t> &acc) {
        detail::ShotStreams rng(shot_stream, s, c.noise.enabled);
        MeasurementString m = random_measurement_string(n, rng.measure);
        StateVector state = rho0;
        for (size_t k = 0; k < steps; ++k) {
            auto [next_m, next_state] = run_proposed_cycle(std::move(state), inputs[k], m, c, u, rng.measure, rng.noise());
            detail::tally(acc, k, n, next_m.index());
            m = std::move(next_m);
            state = std::move(next_state);
        }
    });
    return detail::means_from_counts(counts, steps, n, c.shots);
}

namespace detail {

// Above this many cached probabilities the reference path is used instead.
inline constexpr size_t kCycleCacheBudget = size_t(1) << 22;

}  // namespace detail

/// Shot-averaged <Z> per qubit and step.
///
/// Every cycle starts from the initial state (first step), from |0...0>
/// (after a reset) or from the computational basis state left by the previous
/// measurement, so the pre-measurement state is a function of (step, previous
/// outcome) alone. Those states are computed once and each shot only samples
/// from them; noise is applied as a bit flip mask on the cached probabilities.
inline FeatureSeries run_proposed_model(const ProposedModelConfig &c, const TimeSeries &inputs,
                                        const RngStream &shot_stream) {
    c.validate();
    detail::require_inputs(inputs, "run_proposed_model");
    const size_t n = c.n_qubits, steps = inputs.size(), dim = size_t(1) << n;
    if (steps * dim * dim > detail::kCycleCacheBudget) {
        return run_proposed_model_reference(c, inputs, shot_stream);
    }
    const UnitaryMatrix u = reservoir_unitary(c);
    const StateVector rho0 = prepare_initial_state(c);

    // probs[(k * dim + m) * dim + i] = P(outcome i | step k, previous outcome m), before noise.
    std::vector<double> probs(steps * dim * dim);
    std::vector<double> cumulative(probs.size());
    for (size_t k = 0; k < steps; ++k) {
        for (size_t m = 0; m < dim; ++m) {
            StateVector state = k == 0 ? rho0 : StateVector::basis(n, c.reset_after_measurement ? 0 : m);
            apply_proposed_unitary(state, inputs[k], MeasurementString::from_index(n, m), c, u);
            const size_t base = (k * dim + m) * dim;
            double acc = 0.0;
            for (size_t i = 0; i < dim; ++i) {
                probs[base + i] = std::norm(state.amplitudes()[Eigen::Index(i)]);
                acc += probs[base + i];
                cumulative[base + i] = acc;
            }
        }
    }

    const std::array<size_t, 4> flips_bit = {0, 1, 1, 0};  // I, X, Y, Z
    auto counts = detail::count_minus_outcomes(c.shots, steps * n, c.threads, [&](size_t s, std::vector<int64_t> &acc) {
        detail::ShotStreams rng(shot_stream, s, c.noise.enabled);
        size_t m = random_measurement_string(n, rng.measure).index();
        std::vector<double> noisy(dim);
        for (size_t k = 0; k < steps; ++k) {
            const size_t base = (k * dim + m) * dim;
            size_t xmask = 0;
            if (c.noise.enabled) {
                for (size_t q = 0; q < n; ++q) {
                    const int pauli = sample_pauli(c.noise, rng.noise().uniform());
                    xmask |= flips_bit[size_t(pauli)] << (n - 1 - q);
                }
            }
            size_t outcome;
            if (xmask == 0) {
                outcome = sample_from_cumulative(std::span<const double>(&cumulative[base], dim), rng.measure.uniform());
            } else {
                double running = 0.0;
                for (size_t i = 0; i < dim; ++i) {
                    running += probs[base + (i ^ xmask)];
                    noisy[i] = running;
                }
                outcome = sample_from_cumulative(noisy, rng.measure.uniform());
            }
            detail::tally(acc, k, n, outcome);
            m = outcome;
        }
    });
    return detail::means_from_counts(counts, steps, n, c.shots);
}

// ===========================================================================
// Restart-based baseline with expectation-value feedback

struct FeedbackDrivenConfig {
    size_t n_qubits = 2;
    double a_in = 0.001;
    double a_fb = 2.5;
    RngStream haar_seed{};
    /// Draws the first feedback vector, uniform on [-1, 1]^N.
    RngStream init_seed{};

    void validate() const {
        detail::require(n_qubits >= 2 && n_qubits <= kMaxQubits, "FeedbackDrivenConfig: n_qubits must be >= 2");
        detail::require(std::isfinite(a_in) && std::isfinite(a_fb), "FeedbackDrivenConfig: scalings must be finite");
    }
};

/// Exact statevector evolution; each step restarts from |0...0>.
inline FeatureSeries run_feedback_driven_baseline(const FeedbackDrivenConfig &c, const TimeSeries &inputs) {
    c.validate();
    detail::require_inputs(inputs, "run_feedback_driven_baseline");
    const size_t n = c.n_qubits;
    const UnitaryMatrix u = haar_random_unitary(size_t(1) << n, c.haar_seed);
    std::vector<double> feedback(n);
    Rng init(c.init_seed);
    for (double &z : feedback) {
        z = 2.0 * init.uniform() - 1.0;
    }
    FeatureSeries f{Eigen::MatrixXd(Eigen::Index(inputs.size()), Eigen::Index(n))};
    for (size_t k = 0; k < inputs.size(); ++k) {
        StateVector state(n);
        apply_r_gate_inplace(state, c.a_in * inputs[k], 0, 1);
        for (size_t j = 0; j < n; ++j) {
            auto [p, q] = feedback_pair(j, n);
            apply_r_gate_inplace(state, c.a_fb * feedback[j], p, q);
        }
        apply_unitary_inplace(state, u);
        for (size_t q = 0; q < n; ++q) {
            feedback[q] = expectation_z(state, q);
            f.values(Eigen::Index(k), Eigen::Index(q)) = feedback[q];
        }
    }
    return f;
}

// ===========================================================================
// Continuously monitored baseline: persistent system, measured ancillas

struct McmBaselineConfig {
    size_t n_system = 2;
    size_t n_ancilla = 2;
    double a = 5.0;
    size_t shots = 10000;
    RngStream haar_seed{};
    InitialState system_initial_state = InitialState::AllZero;
    RngStream init_seed{};
    unsigned threads = 1;

    size_t n_total() const { return n_system + n_ancilla; }

    void validate() const {
        detail::require(n_system >= 2, "McmBaselineConfig: n_system must be >= 2");
        detail::require(n_ancilla >= 1, "McmBaselineConfig: n_ancilla must be >= 1");
        detail::require(n_total() <= kMaxQubits, "McmBaselineConfig: too many qubits");
        detail::require(shots >= 1, "McmBaselineConfig: shots must be >= 1");
        detail::require(std::isfinite(a), "McmBaselineConfig: a must be finite");
    }
};

/// System register (qubits 0..n_system-1) in the configured state, ancillas in |0>.
inline StateVector mcm_initial_state(const McmBaselineConfig &c) {
    const StateVector sys = prepare_state(c.n_system, c.system_initial_state, c.init_seed);
    CVector amps = CVector::Zero(Eigen::Index(1) << c.n_total());
    for (size_t i = 0; i < sys.dim(); ++i) {
        amps[Eigen::Index(i << c.n_ancilla)] = sys.amplitudes()[Eigen::Index(i)];
    }
    return StateVector::from_amplitudes(c.n_total(), std::move(amps));
}

/// Input gate on the system, ancilla j coupled to system qubit j, reservoir
/// unitary on everything, then measure-and-reset of the ancillas only.
inline std::pair<MeasurementString, StateVector> run_mcm_cycle(StateVector state, double s_k, const McmBaselineConfig &c,
                                                               const UnitaryMatrix &u, Rng &rng) {
    const double angle = c.a * s_k;
    apply_r_gate_inplace(state, angle, 0, 1);
    std::vector<size_t> ancillas(c.n_ancilla);
    for (size_t j = 0; j < c.n_ancilla; ++j) {
        ancillas[j] = c.n_system + j;
        apply_r_gate_inplace(state, angle, j % c.n_system, ancillas[j]);
    }
    apply_unitary_inplace(state, u);
    return measure_and_reset_qubits(std::move(state), ancillas, rng);
}

namespace detail {

/// Dense matrix of the unitary part of an ancilla-baseline cycle, built by
/// pushing each basis vector through the gate kernels.
inline CMatrix mcm_step_matrix(double s_k, const McmBaselineConfig &c, const UnitaryMatrix &u) {
    const size_t n = c.n_total(), dim = size_t(1) << n;
    const double angle = c.a * s_k;
    CMatrix out(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (size_t col = 0; col < dim; ++col) {
        StateVector v = StateVector::basis(n, col);
        apply_r_gate_inplace(v, angle, 0, 1);
        for (size_t j = 0; j < c.n_ancilla; ++j) {
            apply_r_gate_inplace(v, angle, j % c.n_system, c.n_system + j);
        }
        apply_unitary_inplace(v, u);
        out.col(Eigen::Index(col)) = v.amplitudes();
    }
    return out;
}

}  // namespace detail

/// Shot-averaged ancilla <Z> per step. The unitary part of each step is the
/// same for every shot, so it is formed once per step.
inline FeatureSeries run_mcm_baseline(const McmBaselineConfig &c, const TimeSeries &inputs, const RngStream &shot_stream) {
    c.validate();
    detail::require_inputs(inputs, "run_mcm_baseline");
    const size_t steps = inputs.size(), na = c.n_ancilla, n = c.n_total();
    const UnitaryMatrix u = haar_random_unitary(size_t(1) << n, c.haar_seed);
    const StateVector start = mcm_initial_state(c);
    std::vector<CMatrix> step_matrix(steps);
    for (size_t k = 0; k < steps; ++k) {
        step_matrix[k] = detail::mcm_step_matrix(inputs[k], c, u);
    }
    std::vector<size_t> ancillas(na);
    for (size_t j = 0; j < na; ++j) {
        ancillas[j] = c.n_system + j;
    }
    auto counts = detail::count_minus_outcomes(c.shots, steps * na, c.threads, [&](size_t s, std::vector<int64_t> &acc) {
        Rng rng(shot_stream.derive(s, StreamRole::Shot));
        StateVector state = start;
        CVector scratch(start.amplitudes().size());
        for (size_t k = 0; k < steps; ++k) {
            scratch.noalias() = step_matrix[k] * state.amplitudes();
            state.mutable_amplitudes() = scratch;
            auto [m, next] = measure_and_reset_qubits(std::move(state), ancillas, rng);
            detail::tally(acc, k, na, m.index());
            state = std::move(next);
        }
    });
    return detail::means_from_counts(counts, steps, na, c.shots);
}

// ===========================================================================
// Echo state network

namespace detail {

inline double dense_spectral_radius(const Eigen::MatrixXd &w) {
    Eigen::EigenSolver<Eigen::MatrixXd> eig(w, /*computeEigenvectors=*/false);
    if (eig.info() != Eigen::Success) {
        throw NumericError("spectral_radius: eigensolver did not converge");
    }
    return eig.eigenvalues().cwiseAbs().maxCoeff();
}

/// Power iteration; empty when the iteration does not settle on a real
/// dominant eigenpair (complex or tied dominant eigenvalues).
inline std::optional<double> power_spectral_radius(const Eigen::MatrixXd &w, size_t max_iter = 2000) {
    const Eigen::Index n = w.rows();
    const double scale = w.norm();
    if (scale == 0.0) {
        return 0.0;
    }
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        v[i] = 1.0 + 0.5 * std::sin(double(i) + 1.0);
    }
    v.normalize();
    Eigen::VectorXd wv(n);
    for (size_t it = 0; it < max_iter; ++it) {
        wv.noalias() = w * v;
        const double lambda = v.dot(wv);
        if ((wv - lambda * v).norm() <= 1e-13 * scale) {
            return std::abs(lambda);
        }
        const double len = wv.norm();
        if (len == 0.0) {
            return std::nullopt;
        }
        v = wv / len;
    }
    return std::nullopt;
}

}  // namespace detail

/// Largest eigenvalue modulus. Large matrices try power iteration first and
/// fall back to the dense nonsymmetric eigensolver.
inline double spectral_radius(const Eigen::MatrixXd &w) {
    detail::require(w.rows() == w.cols() && w.rows() >= 1, "spectral_radius: matrix must be square");
    if (w.rows() > 64) {
        if (auto rho = detail::power_spectral_radius(w)) {
            return *rho;
        }
    }
    return detail::dense_spectral_radius(w);
}

/// Rescale W so its spectral radius equals `target`.
inline Eigen::MatrixXd renormalize_spectral_radius(const Eigen::MatrixXd &w, double target) {
    detail::require(target > 0.0 && std::isfinite(target), "renormalize_spectral_radius: target must be positive");
    const double rho = spectral_radius(w);
    const double scale = w.norm();
    detail::require(scale > 0.0 && rho > 1e-10 * scale, "renormalize_spectral_radius: matrix has no nonzero eigenvalue");
    return w * (target / rho);
}

struct EsnConfig {
    size_t dim = 1000;
    double alpha = 0.3;
    double spectral_radius = 1.25;
    RngStream weight_seed{};
    RngStream init_seed{};
    /// Entries of W_in, b and W are drawn from N(weight_mean, weight_stddev^2).
    double weight_mean = -0.5;
    double weight_stddev = 1.0;

    void validate() const {
        detail::require(dim >= 1, "EsnConfig: dim must be >= 1");
        detail::require(alpha >= 0.0 && alpha <= 1.0, "EsnConfig: alpha must lie in [0, 1]");
        detail::require(spectral_radius > 0.0, "EsnConfig: spectral radius must be positive");
        detail::require(weight_stddev >= 0.0, "EsnConfig: weight stddev must be non-negative");
    }
};

/// Leaky ESN x <- (1 - alpha) x + alpha tanh(W_in s + b + W x).
class EchoStateNetwork {
   public:
    explicit EchoStateNetwork(const EsnConfig &c) : config_(c) {
        c.validate();
        const auto d = Eigen::Index(c.dim);
        Rng rng(c.weight_seed);
        w_in_.resize(d);
        bias_.resize(d);
        Eigen::MatrixXd w(d, d);
        for (Eigen::Index i = 0; i < d; ++i) {
            w_in_[i] = rng.normal(c.weight_mean, c.weight_stddev);
        }
        for (Eigen::Index i = 0; i < d; ++i) {
            bias_[i] = rng.normal(c.weight_mean, c.weight_stddev);
        }
        for (Eigen::Index r = 0; r < d; ++r) {
            for (Eigen::Index col = 0; col < d; ++col) {
                w(r, col) = rng.normal(c.weight_mean, c.weight_stddev);
            }
        }
        w_ = renormalize_spectral_radius(w, c.spectral_radius);
    }

    const Eigen::MatrixXd &recurrent() const { return w_; }
    const EsnConfig &config() const { return config_; }

    /// x_0 with components uniform on [0, 1).
    Eigen::VectorXd initial_state(const RngStream &seed) const {
        Rng rng(seed);
        Eigen::VectorXd x(w_.rows());
        for (Eigen::Index i = 0; i < x.size(); ++i) {
            x[i] = rng.uniform();
        }
        return x;
    }

    /// Row t is the state after consuming input t.
    FeatureSeries run(const TimeSeries &inputs, Eigen::VectorXd x) const {
        detail::require_inputs(inputs, "run_esn");
        detail::require(x.size() == w_.rows(), "run_esn: initial state has wrong dimension");
        const double alpha = config_.alpha;
        FeatureSeries f{Eigen::MatrixXd(Eigen::Index(inputs.size()), w_.rows())};
        for (size_t t = 0; t < inputs.size(); ++t) {
            if (alpha != 0.0) {
                Eigen::VectorXd pre = w_in_ * inputs[t] + bias_ + w_ * x;
                x = (1.0 - alpha) * x + alpha * pre.array().tanh().matrix();
            }
            f.values.row(Eigen::Index(t)) = x.transpose();
        }
        return f;
    }

   private:
    EsnConfig config_;
    Eigen::VectorXd w_in_;
    Eigen::VectorXd bias_;
    Eigen::MatrixXd w_;
};

inline FeatureSeries run_esn(const EsnConfig &c, const TimeSeries &inputs) {
    EchoStateNetwork esn(c);
    return esn.run(inputs, esn.initial_state(c.init_seed));
}

}  // namespace qrcfb
