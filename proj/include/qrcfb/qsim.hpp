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

// Dense pure-state simulation kernels.
//
// Qubit 0 is the most significant bit of a basis index, so for two qubits the
// amplitude order is |00>, |01>, |10>, |11> with the left label on qubit 0.
// Multi-qubit gate matrices follow the same convention over their target list.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qrcfb/errors.hpp"
#include "qrcfb/rng.hpp"

namespace qrcfb {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr double kNormTolerance = 1e-10;
inline constexpr double kUnitaryTolerance = 1e-10;
inline constexpr size_t kMaxQubits = 16;

class StateVector {
   public:
    /// |0...0> on `n_qubits` qubits.
    explicit StateVector(size_t n_qubits) : n_qubits_(n_qubits) {
        detail::require(n_qubits >= 1 && n_qubits <= kMaxQubits, "StateVector: qubit count out of range");
        amplitudes_ = CVector::Zero(Eigen::Index(1) << n_qubits);
        amplitudes_[0] = 1.0;
    }

    static StateVector basis(size_t n_qubits, size_t index) {
        StateVector s(n_qubits);
        detail::require(index < s.dim(), "StateVector::basis: index out of range");
        s.amplitudes_[0] = 0.0;
        s.amplitudes_[Eigen::Index(index)] = 1.0;
        return s;
    }

    /// Wraps caller-provided amplitudes; they must already be normalized.
    static StateVector from_amplitudes(size_t n_qubits, CVector amplitudes) {
        StateVector s(n_qubits);
        detail::require(size_t(amplitudes.size()) == s.dim(), "StateVector: amplitude count must be 2^n_qubits");
        detail::require(amplitudes.allFinite(), "StateVector: non-finite amplitude");
        detail::require(std::abs(amplitudes.norm() - 1.0) < kNormTolerance, "StateVector: amplitudes not normalized");
        s.amplitudes_ = std::move(amplitudes);
        return s;
    }

    size_t n_qubits() const { return n_qubits_; }
    size_t dim() const { return size_t(amplitudes_.size()); }
    const CVector &amplitudes() const { return amplitudes_; }
    CVector &mutable_amplitudes() { return amplitudes_; }
    double norm() const { return amplitudes_.norm(); }

    std::vector<double> probabilities() const {
        std::vector<double> p(dim());
        for (size_t i = 0; i < dim(); ++i) {
            p[i] = std::norm(amplitudes_[Eigen::Index(i)]);
        }
        return p;
    }

   private:
    size_t n_qubits_;
    CVector amplitudes_;
};

class UnitaryMatrix {
   public:
    /// Validates unitarity to `tol` before accepting the matrix.
    static UnitaryMatrix checked(CMatrix m, double tol = kUnitaryTolerance) {
        detail::require(m.rows() == m.cols() && m.rows() >= 1, "UnitaryMatrix: matrix must be square");
        detail::require(m.allFinite(), "UnitaryMatrix: non-finite entry");
        UnitaryMatrix u(std::move(m));
        detail::require(u.unitarity_residual() < tol, "UnitaryMatrix: matrix is not unitary");
        return u;
    }

    static UnitaryMatrix identity(size_t dim) { return UnitaryMatrix(CMatrix::Identity(Eigen::Index(dim), Eigen::Index(dim))); }

    size_t dim() const { return size_t(m_.rows()); }
    const CMatrix &matrix() const { return m_; }
    Complex operator()(size_t r, size_t c) const { return m_(Eigen::Index(r), Eigen::Index(c)); }

    /// max |U^dagger U - I| over all entries.
    double unitarity_residual() const {
        CMatrix r = m_.adjoint() * m_ - CMatrix::Identity(m_.rows(), m_.cols());
        return r.cwiseAbs().maxCoeff();
    }

    UnitaryMatrix operator*(const UnitaryMatrix &rhs) const { return UnitaryMatrix(m_ * rhs.m_); }

   private:
    template <typename M>
    friend UnitaryMatrix make_unitary_unchecked(M &&m);
    explicit UnitaryMatrix(CMatrix m) : m_(std::move(m)) {}
    CMatrix m_;
};

// Construction path for matrices that are unitary by construction (closed-form
// gates, QR factors, propagators); skips the O(d^3) residual check.
template <typename M>
UnitaryMatrix make_unitary_unchecked(M &&m) {
    return UnitaryMatrix(CMatrix(std::forward<M>(m)));
}

/// Z eigenvalues of a full-register measurement: +1 for bit 0, -1 for bit 1.
class MeasurementString {
   public:
    MeasurementString() = default;

    explicit MeasurementString(std::vector<int> values) {
        bits_.reserve(values.size());
        for (int v : values) {
            detail::require(v == 1 || v == -1, "MeasurementString: entries must be +1 or -1");
            bits_.push_back(static_cast<int8_t>(v));
        }
    }

    static MeasurementString all_plus(size_t n) { return from_index(n, 0); }

    /// Decode a basis index (qubit 0 = most significant bit).
    static MeasurementString from_index(size_t n, size_t index) {
        MeasurementString m;
        m.bits_.resize(n);
        for (size_t q = 0; q < n; ++q) {
            m.bits_[q] = ((index >> (n - 1 - q)) & 1U) ? int8_t(-1) : int8_t(1);
        }
        return m;
    }

    size_t index() const {
        size_t idx = 0;
        for (int8_t b : bits_) {
            idx = (idx << 1) | (b == -1 ? 1U : 0U);
        }
        return idx;
    }

    size_t size() const { return bits_.size(); }
    int operator[](size_t q) const { return bits_[q]; }
    bool operator==(const MeasurementString &) const = default;

   private:
    std::vector<int8_t> bits_;
};

/// Single-qubit depolarizing channel, realized as a random Pauli.
struct NoiseSpec {
    double lambda = 0.0;
    bool enabled = false;

    void validate() const {
        detail::require(std::isfinite(lambda) && lambda >= 0.0 && lambda < 1.0,
                        "NoiseSpec: lambda must lie in [0, 1)");
    }

    /// Probabilities of I, X, Y, Z.
    std::array<double, 4> pauli_probabilities() const {
        double q = lambda / 4.0;
        return {1.0 - 3.0 * q, q, q, q};
    }
};

// ---------------------------------------------------------------------------
// Gates

inline void require_finite_angle(double theta) { detail::require(std::isfinite(theta), "gate angle must be finite"); }

/// exp(-i theta X / 2)
inline UnitaryMatrix rx_gate(double theta) {
    require_finite_angle(theta);
    double c = std::cos(theta / 2), s = std::sin(theta / 2);
    CMatrix m(2, 2);
    m << Complex(c, 0), Complex(0, -s), Complex(0, -s), Complex(c, 0);
    return make_unitary_unchecked(std::move(m));
}

/// exp(-i theta Z / 2)
inline UnitaryMatrix rz_gate(double theta) {
    require_finite_angle(theta);
    double c = std::cos(theta / 2), s = std::sin(theta / 2);
    CMatrix m = CMatrix::Zero(2, 2);
    m(0, 0) = Complex(c, -s);
    m(1, 1) = Complex(c, s);
    return make_unitary_unchecked(std::move(m));
}

/// Controlled-X with the first target as control.
inline UnitaryMatrix cx_gate() {
    CMatrix m = CMatrix::Zero(4, 4);
    m(0, 0) = m(1, 1) = 1.0;
    m(2, 3) = m(3, 2) = 1.0;
    return make_unitary_unchecked(std::move(m));
}

inline UnitaryMatrix hadamard_gate() {
    double h = 1.0 / std::sqrt(2.0);
    CMatrix m(2, 2);
    m << h, h, h, -h;
    return make_unitary_unchecked(std::move(m));
}

/// Pauli by index: 0 = I, 1 = X, 2 = Y, 3 = Z.
inline UnitaryMatrix pauli_gate(int which) {
    CMatrix m = CMatrix::Zero(2, 2);
    switch (which) {
        case 0: m(0, 0) = m(1, 1) = 1.0; break;
        case 1: m(0, 1) = m(1, 0) = 1.0; break;
        case 2: m(0, 1) = Complex(0, -1); m(1, 0) = Complex(0, 1); break;
        case 3: m(0, 0) = 1.0; m(1, 1) = -1.0; break;
        default: throw InvalidArgument("pauli_gate: index must be 0..3");
    }
    return make_unitary_unchecked(std::move(m));
}

// ---------------------------------------------------------------------------
// Kernels

/// In-place application of a 2^k x 2^k gate to the listed target qubits.
inline void apply_gate_inplace(StateVector &state, const UnitaryMatrix &gate, std::span<const size_t> targets) {
    const size_t n = state.n_qubits();
    const size_t k = targets.size();
    detail::require(k >= 1, "apply_gate: empty target list");
    detail::require(gate.dim() == (size_t(1) << k), "apply_gate: gate dimension does not match target count");
    size_t target_mask = 0;
    std::vector<size_t> offsets(size_t(1) << k, 0);
    for (size_t t = 0; t < k; ++t) {
        detail::require(targets[t] < n, "apply_gate: target index out of range");
        size_t bit = size_t(1) << (n - 1 - targets[t]);
        detail::require((target_mask & bit) == 0, "apply_gate: duplicate target");
        target_mask |= bit;
        for (size_t g = 0; g < offsets.size(); ++g) {
            if ((g >> (k - 1 - t)) & 1U) {
                offsets[g] |= bit;
            }
        }
    }

    CVector &a = state.mutable_amplitudes();
    const CMatrix &u = gate.matrix();
    const size_t sub = offsets.size();
    std::vector<Complex> in(sub);
    for (size_t base = 0; base < state.dim(); ++base) {
        if (base & target_mask) {
            continue;
        }
        for (size_t g = 0; g < sub; ++g) {
            in[g] = a[Eigen::Index(base | offsets[g])];
        }
        for (size_t r = 0; r < sub; ++r) {
            Complex acc = 0.0;
            for (size_t c = 0; c < sub; ++c) {
                acc += u(Eigen::Index(r), Eigen::Index(c)) * in[c];
            }
            a[Eigen::Index(base | offsets[r])] = acc;
        }
    }
}

inline void apply_gate_inplace(StateVector &state, const UnitaryMatrix &gate, std::initializer_list<size_t> targets) {
    apply_gate_inplace(state, gate, std::span<const size_t>(targets.begin(), targets.size()));
}

inline StateVector apply_gate(StateVector state, const UnitaryMatrix &gate, std::span<const size_t> targets) {
    apply_gate_inplace(state, gate, targets);
    return state;
}

inline StateVector apply_gate(StateVector state, const UnitaryMatrix &gate, std::initializer_list<size_t> targets) {
    apply_gate_inplace(state, gate, targets);
    return state;
}

/// Full-register unitary (dimension must equal the state dimension).
inline void apply_unitary_inplace(StateVector &state, const UnitaryMatrix &u) {
    detail::require(u.dim() == state.dim(), "apply_unitary: dimension mismatch");
    CVector out = u.matrix() * state.amplitudes();
    state.mutable_amplitudes() = std::move(out);
}

/// R_{i,j}(theta) = CX_ij RZ_j(theta) CX_ij RX_j(theta) RX_i(theta), applied
/// right factor first.
inline void apply_r_gate_inplace(StateVector &state, double theta, size_t i, size_t j) {
    require_finite_angle(theta);
    detail::require(i != j, "apply_r_gate: qubits must differ");
    detail::require(i < state.n_qubits() && j < state.n_qubits(), "apply_r_gate: qubit index out of range");
    const UnitaryMatrix rx = rx_gate(theta);
    const UnitaryMatrix rz = rz_gate(theta);
    const UnitaryMatrix cx = cx_gate();
    apply_gate_inplace(state, rx, {i});
    apply_gate_inplace(state, rx, {j});
    apply_gate_inplace(state, cx, {i, j});
    apply_gate_inplace(state, rz, {j});
    apply_gate_inplace(state, cx, {i, j});
}

inline StateVector apply_r_gate(StateVector state, double theta, size_t i, size_t j) {
    apply_r_gate_inplace(state, theta, i, j);
    return state;
}

/// <Z_q> computed from amplitudes.
inline double expectation_z(const StateVector &state, size_t qubit) {
    detail::require(qubit < state.n_qubits(), "expectation_z: qubit index out of range");
    const size_t bit = size_t(1) << (state.n_qubits() - 1 - qubit);
    double e = 0.0;
    for (size_t i = 0; i < state.dim(); ++i) {
        double p = std::norm(state.amplitudes()[Eigen::Index(i)]);
        e += (i & bit) ? -p : p;
    }
    return e;
}

// ---------------------------------------------------------------------------
// Measurement, reset, noise

/// Index i such that cumulative[i-1] <= u * total < cumulative[i].
inline size_t sample_from_cumulative(std::span<const double> cumulative, double u) {
    const double threshold = u * cumulative.back();
    for (size_t i = 0; i < cumulative.size(); ++i) {
        if (threshold < cumulative[i]) {
            return i;
        }
    }
    // u * total rounded up to total; fall back to the last outcome with weight.
    for (size_t i = cumulative.size(); i-- > 1;) {
        if (cumulative[i] > cumulative[i - 1]) {
            return i;
        }
    }
    return 0;
}

/// Born-rule sample of all qubits in the computational basis.
inline std::pair<MeasurementString, StateVector> measure_all_z(StateVector state, Rng &rng) {
    const CVector &a = state.amplitudes();
    std::vector<double> cumulative(state.dim());
    double acc = 0.0;
    for (size_t i = 0; i < state.dim(); ++i) {
        acc += std::norm(a[Eigen::Index(i)]);
        cumulative[i] = acc;
    }
    if (!(acc > 0.0) || !std::isfinite(acc)) {
        throw InternalError("measure_all_z: state has zero or non-finite norm");
    }
    const size_t outcome = sample_from_cumulative(cumulative, rng.uniform());
    // The global phase of the collapsed state is dropped.
    CVector collapsed = CVector::Zero(a.size());
    collapsed[Eigen::Index(outcome)] = 1.0;
    state.mutable_amplitudes() = std::move(collapsed);
    return {MeasurementString::from_index(state.n_qubits(), outcome), std::move(state)};
}

inline StateVector reset_all(const StateVector &state) { return StateVector(state.n_qubits()); }

/// Measure the listed qubits in Z, then return each of them to |0>. The other
/// qubits keep their (renormalized) post-measurement state.
inline std::pair<MeasurementString, StateVector> measure_and_reset_qubits(StateVector state,
                                                                          std::span<const size_t> qubits, Rng &rng) {
    const size_t n = state.n_qubits();
    const size_t k = qubits.size();
    detail::require(k >= 1, "measure_and_reset_qubits: empty qubit list");
    std::vector<size_t> bits(k);
    size_t mask = 0;
    for (size_t t = 0; t < k; ++t) {
        detail::require(qubits[t] < n, "measure_and_reset_qubits: qubit index out of range");
        bits[t] = size_t(1) << (n - 1 - qubits[t]);
        detail::require((mask & bits[t]) == 0, "measure_and_reset_qubits: duplicate qubit");
        mask |= bits[t];
    }
    auto key_of = [&](size_t index) {
        size_t key = 0;
        for (size_t t = 0; t < k; ++t) {
            key = (key << 1) | ((index & bits[t]) ? 1U : 0U);
        }
        return key;
    };

    const CVector &a = state.amplitudes();
    std::vector<double> marginal(size_t(1) << k, 0.0);
    for (size_t i = 0; i < state.dim(); ++i) {
        marginal[key_of(i)] += std::norm(a[Eigen::Index(i)]);
    }
    std::vector<double> cumulative(marginal.size());
    double acc = 0.0;
    for (size_t m = 0; m < marginal.size(); ++m) {
        acc += marginal[m];
        cumulative[m] = acc;
    }
    if (!(acc > 0.0) || !std::isfinite(acc)) {
        throw InternalError("measure_and_reset_qubits: state has zero or non-finite norm");
    }
    const size_t outcome = sample_from_cumulative(cumulative, rng.uniform());
    const double scale = 1.0 / std::sqrt(marginal[outcome]);
    CVector next = CVector::Zero(a.size());
    for (size_t i = 0; i < state.dim(); ++i) {
        if (key_of(i) == outcome) {
            next[Eigen::Index(i & ~mask)] = a[Eigen::Index(i)] * scale;
        }
    }
    state.mutable_amplitudes() = std::move(next);
    return {MeasurementString::from_index(k, outcome), std::move(state)};
}

/// Map a uniform draw to a Pauli index (0 = I, 1 = X, 2 = Y, 3 = Z).
inline int sample_pauli(const NoiseSpec &spec, double u) {
    const auto p = spec.pauli_probabilities();
    double acc = 0.0;
    for (int k = 0; k < 3; ++k) {
        acc += p[size_t(k)];
        if (u < acc) {
            return k;
        }
    }
    return 3;
}

/// One depolarizing event on `qubit`. Always consumes exactly one draw when
/// enabled, so the stream position does not depend on lambda.
inline StateVector apply_depolarizing(StateVector state, const NoiseSpec &spec, size_t qubit, Rng &rng) {
    spec.validate();
    detail::require(qubit < state.n_qubits(), "apply_depolarizing: qubit index out of range");
    if (!spec.enabled) {
        return state;
    }
    const int pauli = sample_pauli(spec, rng.uniform());
    if (pauli != 0) {
        apply_gate_inplace(state, pauli_gate(pauli), {qubit});
    }
    return state;
}

// ---------------------------------------------------------------------------
// Random unitaries and propagators

/// Haar-random unitary: complex Ginibre matrix, QR, then fix the phases of
/// R's diagonal so the distribution is invariant.
inline UnitaryMatrix haar_random_unitary(size_t dim, Rng &rng) {
    detail::require(dim >= 2, "haar_random_unitary: dim must be >= 2");
    const auto d = Eigen::Index(dim);
    CMatrix a(d, d);
    const double scale = 1.0 / std::sqrt(2.0);
    for (Eigen::Index c = 0; c < d; ++c) {
        for (Eigen::Index r = 0; r < d; ++r) {
            double re = rng.normal(0.0, scale);
            double im = rng.normal(0.0, scale);
            a(r, c) = Complex(re, im);
        }
    }
    Eigen::HouseholderQR<CMatrix> qr(a);
    CMatrix q = qr.householderQ() * CMatrix::Identity(d, d);
    const CMatrix &r = qr.matrixQR();
    for (Eigen::Index k = 0; k < d; ++k) {
        Complex rkk = r(k, k);
        double mag = std::abs(rkk);
        if (!(mag > 0.0)) {
            throw NumericError("haar_random_unitary: singular Ginibre sample");
        }
        q.col(k) *= rkk / mag;
    }
    return make_unitary_unchecked(std::move(q));
}

inline UnitaryMatrix haar_random_unitary(size_t dim, const RngStream &stream) {
    Rng rng(stream);
    return haar_random_unitary(dim, rng);
}

/// Haar-random pure state (normalized complex Gaussian vector).
inline StateVector haar_random_state(size_t n_qubits, Rng &rng) {
    StateVector s(n_qubits);
    CVector v(Eigen::Index(s.dim()));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        double re = rng.normal();
        double im = rng.normal();
        v[i] = Complex(re, im);
    }
    v /= v.norm();
    return StateVector::from_amplitudes(n_qubits, std::move(v));
}

/// exp(-i H dt) via eigendecomposition of the Hermitian matrix H.
inline UnitaryMatrix matrix_exponential_propagator(const CMatrix &h, double dt) {
    detail::require(h.rows() == h.cols() && h.rows() >= 1, "propagator: H must be square");
    detail::require(std::isfinite(dt), "propagator: dt must be finite");
    detail::require(h.allFinite(), "propagator: H has non-finite entries");
    detail::require((h - h.adjoint()).cwiseAbs().maxCoeff() <= 1e-10, "propagator: H is not Hermitian");
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(h);
    if (eig.info() != Eigen::Success) {
        throw NumericError("propagator: eigendecomposition failed");
    }
    const CMatrix &v = eig.eigenvectors();
    CVector phases(eig.eigenvalues().size());
    for (Eigen::Index k = 0; k < phases.size(); ++k) {
        phases[k] = std::exp(Complex(0.0, -eig.eigenvalues()[k] * dt));
    }
    CMatrix u = v * phases.asDiagonal() * v.adjoint();
    return make_unitary_unchecked(std::move(u));
}

}  // namespace qrcfb
