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
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qrcfb/errors.hpp"
#include "qrcfb/tasks.hpp"

namespace qrcfb {

struct MetricReport {
    std::string name;
    double value = 0.0;
    std::optional<int> tau;
    bool degenerate = false;
};

struct RSquared {
    double value = 0.0;
    /// Set when either series has zero variance; value is then 0.
    bool degenerate = false;
};

namespace detail {

inline double mean_of(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) {
        s += x;
    }
    return s / double(v.size());
}

inline void require_finite(std::span<const double> v, const char *who) {
    for (double x : v) {
        require(std::isfinite(x), std::string(who) + ": non-finite value");
    }
}

// Treat variance as zero below this fraction of the squared scale.
inline bool negligible_variance(double var, double mean) { return !(var > 1e-28 * (1.0 + mean * mean)); }

}  // namespace detail

/// Squared Pearson correlation cov^2 / (var_true var_pred).
inline RSquared r_squared(std::span<const double> y_true, std::span<const double> y_pred) {
    detail::require(y_true.size() == y_pred.size(), "r_squared: length mismatch");
    detail::require(y_true.size() >= 2, "r_squared: need at least two samples");
    detail::require_finite(y_true, "r_squared");
    detail::require_finite(y_pred, "r_squared");
    const double mt = detail::mean_of(y_true), mp = detail::mean_of(y_pred);
    double cov = 0.0, vt = 0.0, vp = 0.0;
    for (size_t i = 0; i < y_true.size(); ++i) {
        const double dt = y_true[i] - mt, dp = y_pred[i] - mp;
        cov += dt * dp;
        vt += dt * dt;
        vp += dp * dp;
    }
    const double n = double(y_true.size());
    if (detail::negligible_variance(vt / n, mt) || detail::negligible_variance(vp / n, mp)) {
        return {0.0, true};
    }
    return {std::clamp(cov * cov / (vt * vp), 0.0, 1.0), false};
}

inline RSquared r_squared(const TimeSeries &y_true, const TimeSeries &y_pred) {
    return r_squared(std::span<const double>(y_true.values), std::span<const double>(y_pred.values));
}

/// Sum of R^2 over delays.
inline double memory_capacity(const std::map<int, double> &r2_by_tau) {
    double c = 0.0;
    for (const auto &[tau, r2] : r2_by_tau) {
        c += r2;
    }
    return c;
}

/// Default delay set {0, -1, -2, -3}.
inline std::vector<int> default_memory_taus() { return {0, -1, -2, -3}; }

/// sum (y_true - y_pred)^2 / sum y_true^2
inline double nmse(std::span<const double> y_true, std::span<const double> y_pred) {
    detail::require(y_true.size() == y_pred.size(), "nmse: length mismatch");
    detail::require(!y_true.empty(), "nmse: empty series");
    detail::require_finite(y_true, "nmse");
    detail::require_finite(y_pred, "nmse");
    double err = 0.0, ref = 0.0;
    for (size_t i = 0; i < y_true.size(); ++i) {
        const double d = y_true[i] - y_pred[i];
        err += d * d;
        ref += y_true[i] * y_true[i];
    }
    detail::require(ref > 0.0, "nmse: target series is identically zero");
    return err / ref;
}

inline double nmse(const TimeSeries &y_true, const TimeSeries &y_pred) {
    return nmse(std::span<const double>(y_true.values), std::span<const double>(y_pred.values));
}

/// Per-step mean of |a_t - b_t| over all unordered pairs of runs.
inline std::vector<double> esp_divergence(const std::vector<std::vector<double>> &runs) {
    detail::require(runs.size() >= 2, "esp_divergence: need at least two runs");
    const size_t len = runs.front().size();
    for (const auto &r : runs) {
        detail::require(r.size() == len, "esp_divergence: runs must have equal length");
    }
    std::vector<double> out(len, 0.0);
    const double pairs = double(runs.size() * (runs.size() - 1) / 2);
    for (size_t t = 0; t < len; ++t) {
        double acc = 0.0;
        for (size_t i = 0; i < runs.size(); ++i) {
            for (size_t j = i + 1; j < runs.size(); ++j) {
                acc += std::abs(runs[i][t] - runs[j][t]);
            }
        }
        out[t] = acc / pairs;
    }
    return out;
}

}  // namespace qrcfb
