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

#include <stdexcept>
#include <string>

namespace qrcfb {

/// Precondition violated by the caller (bad index, shape, or parameter range).
struct InvalidArgument : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Integration or factorization produced a non-finite or degenerate result.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The requested combination of options has no implementation (e.g. an exact
/// oracle for a noisy channel).
struct Unsupported : std::logic_error {
    using std::logic_error::logic_error;
};

/// An internal invariant broke; indicates a bug rather than bad input.
struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

namespace detail {

inline void require(bool ok, const std::string &what) {
    if (!ok) {
        throw InvalidArgument(what);
    }
}

}  // namespace detail
}  // namespace qrcfb
