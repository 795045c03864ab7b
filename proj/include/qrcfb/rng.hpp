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

#include <cstdint>
#include <initializer_list>
#include <random>

namespace qrcfb {

namespace detail {

// SplitMix64 finalizer; used only to mix seed material, never as a generator.
constexpr uint64_t mix64(uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace detail

/// Roles keep the streams drawn for one work unit apart from each other.
enum class StreamRole : uint64_t {
    Haar = 1,
    Input = 2,
    Shot = 3,
    Noise = 4,
    InitialState = 5,
    Feedback = 6,
    Weights = 7,
    Oracle = 8,
};

/// Seed descriptor for a reproducible random stream.
///
/// Identical (seed, stream_id) pairs produce identical draw sequences. The
/// engine seed is a hash of both fields so neighbouring stream ids land far
/// apart in the engine's state space.
struct RngStream {
    uint64_t seed = 0;
    uint64_t stream_id = 0;

    /// Derive a child descriptor, e.g. `base.derive({unitary, shot, role})`.
    RngStream derive(std::initializer_list<uint64_t> path) const {
        uint64_t id = detail::mix64(stream_id ^ 0x6A09E667F3BCC909ULL);
        for (uint64_t p : path) {
            id = detail::mix64(id ^ detail::mix64(p + 0x3C6EF372FE94F82BULL));
        }
        return {seed, id};
    }

    RngStream derive(uint64_t a, StreamRole role) const { return derive({a, static_cast<uint64_t>(role)}); }
    RngStream derive(uint64_t a, uint64_t b, StreamRole role) const {
        return derive({a, b, static_cast<uint64_t>(role)});
    }

    bool operator==(const RngStream &) const = default;
};

/// Engine plus the two draw shapes the simulator needs.
class Rng {
   public:
    explicit Rng(const RngStream &stream)
        : engine_(detail::mix64(detail::mix64(stream.seed) ^ (stream.stream_id * 0xD1B54A32D192ED03ULL))) {
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double normal(double mean = 0.0, double stddev = 1.0) {
        std::normal_distribution<double> dist(mean, stddev);
        return dist(engine_);
    }

    /// Uniform integer in [0, n).
    uint64_t below(uint64_t n) { return static_cast<uint64_t>(uniform() * static_cast<double>(n)) % n; }

    std::mt19937_64 &engine() { return engine_; }

   private:
    std::mt19937_64 engine_;
};

}  // namespace qrcfb
