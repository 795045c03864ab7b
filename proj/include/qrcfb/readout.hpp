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

// Linear readout: features plus a bias column, minimal-norm least squares.

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <utility>

#include "qrcfb/errors.hpp"
#include "qrcfb/feature_series.hpp"
#include "qrcfb/tasks.hpp"

namespace qrcfb {

/// Feature rows with a trailing all-ones column.
class DesignMatrix {
   public:
    explicit DesignMatrix(Eigen::MatrixXd m) : m_(std::move(m)) {
        detail::require(m_.cols() >= 1 && m_.rows() >= 1, "DesignMatrix: empty matrix");
        detail::require((m_.col(m_.cols() - 1).array() == 1.0).all(), "DesignMatrix: last column must be all ones");
    }

    size_t rows() const { return size_t(m_.rows()); }
    size_t cols() const { return size_t(m_.cols()); }
    const Eigen::MatrixXd &matrix() const { return m_; }

   private:
    Eigen::MatrixXd m_;
};

struct WeightVector {
    Eigen::VectorXd weights;
};

/// Rows [begin, end) of `features`, with the bias column appended.
inline DesignMatrix assemble_design_matrix(const FeatureSeries &features, size_t begin, size_t end) {
    detail::require(begin < end, "assemble_design_matrix: empty row range");
    detail::require(end <= features.steps(), "assemble_design_matrix: row range exceeds feature series");
    const auto rows = Eigen::Index(end - begin);
    const auto m = Eigen::Index(features.components());
    Eigen::MatrixXd x(rows, m + 1);
    x.leftCols(m) = features.values.middleRows(Eigen::Index(begin), rows);
    x.col(m).setOnes();
    return DesignMatrix(std::move(x));
}

inline Eigen::VectorXd as_vector(const TimeSeries &y) {
    return Eigen::Map<const Eigen::VectorXd>(y.values.data(), Eigen::Index(y.size()));
}

/// Relative singular-value cutoff of the pseudoinverse.
inline constexpr double kPinvCutoff = 1e-12;

/// Minimal-norm least-squares weights via the SVD pseudoinverse. A positive
/// `ridge` switches to Tikhonov filtering sigma / (sigma^2 + ridge).
inline WeightVector fit_readout(const DesignMatrix &x, const TimeSeries &y, double ridge = 0.0) {
    detail::require(y.size() == x.rows(), "fit_readout: target length must equal design-matrix rows");
    detail::require(ridge >= 0.0 && std::isfinite(ridge), "fit_readout: ridge must be non-negative");
    const Eigen::VectorXd target = as_vector(y);
    detail::require(target.allFinite() && x.matrix().allFinite(), "fit_readout: non-finite input");

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(x.matrix(), Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd &sigma = svd.singularValues();
    const double cutoff = sigma.size() > 0 ? kPinvCutoff * sigma.maxCoeff() : 0.0;
    Eigen::VectorXd utb = svd.matrixU().transpose() * target;
    for (Eigen::Index k = 0; k < sigma.size(); ++k) {
        const double s = sigma[k];
        if (ridge > 0.0) {
            utb[k] *= s / (s * s + ridge);
        } else {
            utb[k] = s > cutoff ? utb[k] / s : 0.0;
        }
    }
    WeightVector w{svd.matrixV() * utb};
    if (!w.weights.allFinite()) {
        throw NumericError("fit_readout: non-finite weights");
    }
    return w;
}

inline TimeSeries predict(const DesignMatrix &x, const WeightVector &w) {
    detail::require(size_t(w.weights.size()) == x.cols(), "predict: weight length must equal design-matrix columns");
    Eigen::VectorXd y = x.matrix() * w.weights;
    return TimeSeries{std::vector<double>(y.data(), y.data() + y.size()), "prediction", false};
}

}  // namespace qrcfb
