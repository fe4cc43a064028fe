// Copyright 2026 The hvkit Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Seeded random streams.
 *
 * Every sampler in hvkit takes an explicit seed or an Rng; there is no
 * global generator. Uniform and normal variates are derived from raw
 * 64-bit draws here rather than through <random> distributions, whose
 * output is implementation-defined, so that reports are bit-identical
 * across standard libraries.
 */

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace hvkit {

/// SplitMix64 finaliser; used to decorrelate user seeds and stream ids.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30U)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27U)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31U);
}

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

    /// Independent sub-stream `index` of the stream rooted at `seed`.
    /// Parallel workers partition work by index; results do not depend on
    /// how the indices are distributed.
    static Rng stream(std::uint64_t seed, std::uint64_t index) {
        return Rng(splitmix64(seed) ^ splitmix64(~index));
    }

    std::uint64_t bits() { return engine_(); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(bits() >> 11U) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller; the second variate is cached.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        do {
            u1 = uniform();
        } while (u1 == 0.0);
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

  private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace hvkit
