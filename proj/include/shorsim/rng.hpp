// Copyright 2026 The shorsim Authors

// Licensed under the Apache License, Version 2.0 (the License);
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

// http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an AS IS BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <cstdint>
#include <random>

namespace shorsim {

/// SplitMix64 finalizer; used to derive independent stream seeds.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Seed for the stream identified by (master seed, realization index, tag).
/// The tag is the multiplier value for the generic model, or a fixed
/// per-model constant for the correlated ones.
constexpr std::uint64_t derive_stream_seed(std::uint64_t master,
                                           std::uint64_t realization,
                                           std::uint64_t tag) noexcept {
    return mix64(mix64(mix64(master) ^ realization) ^ tag);
}

/// mt19937_64 with a portable uniform draw. std::uniform_real_distribution is
/// implementation-defined, which would break cross-platform replay.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Uniform on [-1, 1).
    double uniform_pm1() { return 2.0 * uniform01() - 1.0; }

  private:
    std::mt19937_64 engine_;
};

} // namespace shorsim
