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

#include <Eigen/Dense>

#include <cstddef>

namespace qrcfb {

/// Reservoir output: one row per input step, one column per state component.
/// For the quantum models the entries are <Z> estimates per qubit.
struct FeatureSeries {
    Eigen::MatrixXd values;

    size_t steps() const { return size_t(values.rows()); }
    size_t components() const { return size_t(values.cols()); }
    double operator()(size_t t, size_t c) const { return values(Eigen::Index(t), Eigen::Index(c)); }
};

}  // namespace qrcfb
