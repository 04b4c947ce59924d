/*
   Copyright 2026 the secop authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace secop::rng {

// Philox4x32-10 counter-based generator (Salmon et al., SC 2011).
// A block is a pure function of (key, counter), so any trial of a Monte
// Carlo run can be generated independently on any thread with identical
// results.
namespace philox {

constexpr std::uint32_t kW32A = 0x9E3779B9u;
constexpr std::uint32_t kW32B = 0xBB67AE85u;
constexpr std::uint32_t kM4x32A = 0xD2511F53u;
constexpr std::uint32_t kM4x32B = 0xCD9E8D57u;

inline void round_once(std::array<std::uint32_t, 4>& ctr, std::array<std::uint32_t, 2>& key) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kM4x32A) * ctr[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kM4x32B) * ctr[2];
    const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
    const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
    const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kW32A;
    key[1] += kW32B;
}

inline std::array<std::uint32_t, 4> block(std::uint64_t key64,
                                          const std::array<std::uint32_t, 4>& counter) {
    std::array<std::uint32_t, 4> ctr = counter;
    std::array<std::uint32_t, 2> key = {static_cast<std::uint32_t>(key64),
                                        static_cast<std::uint32_t>(key64 >> 32)};
    for (int r = 0; r < 10; ++r) round_once(ctr, key);
    return ctr;
}

}  // namespace philox

// Gaussian stream keyed by (seed, stream id, trial index). Consuming code
// advances a per-trial block counter; nothing is shared between trials.
class GaussianStream {
public:
    GaussianStream(std::uint64_t seed, std::uint64_t trial, std::uint32_t stream_id = 0)
        : seed_(seed),
          base_{0u, static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32),
                stream_id} {}

    // Uniform on (0, 1]; two per Philox block.
    double next_uniform() {
        if (uniforms_left_ == 0) refill();
        --uniforms_left_;
        const std::uint64_t bits = uniform_bits_[uniforms_left_];
        return (static_cast<double>(bits >> 11) + 1.0) * 0x1p-53;
    }

    // Standard normal via Box-Muller.
    double next_gaussian() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        const double u1 = next_uniform();
        const double u2 = next_uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double phi = 2.0 * 3.141592653589793238462643383279502884 * u2;
        cached_ = r * std::sin(phi);
        have_cached_ = true;
        return r * std::cos(phi);
    }

private:
    void refill() {
        std::array<std::uint32_t, 4> ctr = base_;
        ctr[0] = block_index_++;
        const auto out = philox::block(seed_, ctr);
        uniform_bits_[1] = (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
        uniform_bits_[0] = (static_cast<std::uint64_t>(out[2]) << 32) | out[3];
        uniforms_left_ = 2;
    }

    std::uint64_t seed_;
    std::array<std::uint32_t, 4> base_;
    std::uint32_t block_index_ = 0;
    std::array<std::uint64_t, 2> uniform_bits_{};
    int uniforms_left_ = 0;
    double cached_ = 0.0;
    bool have_cached_ = false;
};

}  // namespace secop::rng
