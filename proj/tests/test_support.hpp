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

// Independent reference constructions for the unit tests. Nothing here calls
// the library kernels it is used to check.

#include <Eigen/Dense>
#include <boost/math/distributions/chi_squared.hpp>

#include <cmath>
#include <complex>
#include <vector>

namespace qrcfb::testing {

using C = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline Mat kron2(const Mat &a, const Mat &b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index r = 0; r < a.rows(); ++r)
        for (Eigen::Index c = 0; c < a.cols(); ++c) out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
    return out;
}

inline Mat pauli(char p) {
    Mat m(2, 2);
    switch (p) {
        case 'X': m << 0, 1, 1, 0; break;
        case 'Y': m << 0, C(0, -1), C(0, 1), 0; break;
        case 'Z': m << 1, 0, 0, -1; break;
        default: m = Mat::Identity(2, 2);
    }
    return m;
}

/// Operator `g` on qubit `q` of an n-qubit register, qubit 0 leftmost.
inline Mat on_qubit(const Mat &g, size_t q, size_t n) {
    Mat out = Mat::Identity(1, 1);
    for (size_t k = 0; k < n; ++k) out = kron2(out, k == q ? g : Mat::Identity(2, 2));
    return out;
}

/// exp(-i theta P / 2) = cos(theta/2) I - i sin(theta/2) P
inline Mat rot(char p, double theta) {
    return std::cos(theta / 2) * Mat::Identity(2, 2) - C(0, 1) * std::sin(theta / 2) * pauli(p);
}

/// CX as |0><0| (x) I + |1><1| (x) X on (control, target).
inline Mat cnot(size_t control, size_t target, size_t n) {
    Mat p0 = Mat::Zero(2, 2), p1 = Mat::Zero(2, 2);
    p0(0, 0) = 1;
    p1(1, 1) = 1;
    return on_qubit(p0, control, n) + on_qubit(p1, control, n) * on_qubit(pauli('X'), target, n);
}

inline Mat r_gate(double theta, size_t i, size_t j, size_t n) {
    return cnot(i, j, n) * on_qubit(rot('Z', theta), j, n) * cnot(i, j, n) * on_qubit(rot('X', theta), j, n) *
           on_qubit(rot('X', theta), i, n);
}

/// Pearson chi-square p-value of observed counts against probabilities;
/// cells with expected count below 5 are pooled.
inline double chi_square_p_value(const std::vector<long> &observed, const std::vector<double> &probs) {
    long total = 0;
    for (long o : observed) total += o;
    double stat = 0.0, pooled_e = 0.0, pooled_o = 0.0;
    int cells = 0;
    for (size_t i = 0; i < probs.size(); ++i) {
        const double e = probs[i] * double(total);
        if (e < 5.0) {
            pooled_e += e;
            pooled_o += double(observed[i]);
            continue;
        }
        stat += (double(observed[i]) - e) * (double(observed[i]) - e) / e;
        ++cells;
    }
    if (pooled_e > 0.0) {
        stat += (pooled_o - pooled_e) * (pooled_o - pooled_e) / pooled_e;
        ++cells;
    } else if (pooled_o > 0.0) {
        return 0.0;
    }
    if (cells < 2) return 1.0;
    boost::math::chi_squared dist(cells - 1);
    return boost::math::cdf(boost::math::complement(dist, stat));
}

}  // namespace qrcfb::testing
