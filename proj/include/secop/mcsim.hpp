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

#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "secop/analytic.hpp"
#include "secop/chanmodel.hpp"
#include "secop/combine.hpp"

namespace secop::mc {

// Trial budget and partitioning. Each trial owns a counter-based stream
// keyed by (seed, trial index), so the worker count changes speed only,
// never the estimate.
struct McPlan {
    std::uint64_t trials = 1'000'000;
    std::uint64_t seed = 1;
    unsigned workers = 1;

    void validate() const {
        if (trials < 1'000) throw DomainError("McPlan: trials must be >= 1000");
        if (workers < 1) throw DomainError("McPlan: workers must be >= 1");
    }
};

// Simulates the outage fraction Pr(C_s < r_s). Per trial: N_t independent
// channel draws, per-antenna combining, antenna selection per mode, MRC at
// the eavesdropper. Returns the fraction with a Wilson 95% interval.
analytic::SopEstimate estimate_sop(const chan::SystemConfig& cfg,
                                   const chan::CorrelationSpec& spec, combine::Combiner kind,
                                   combine::TasMode mode, const McPlan& plan);

// Conditional draws of the combined legitimate SNR with the shared
// component fixed at power t (uniform random phase; the model is
// rotationally symmetric). Sorted output doubles as an empirical CDF for
// goodness-of-fit tests. `phase` overrides the random phase when set to a
// finite value (used to assert phase immateriality).
std::vector<double> estimate_conditional_cdf(const chan::SystemConfig& cfg,
                                             const chan::CorrelationSpec& spec,
                                             combine::Combiner kind, double t,
                                             std::size_t samples, std::uint64_t seed,
                                             double phase = std::numeric_limits<double>::quiet_NaN());

// Wilson score interval at 95% for k successes out of n.
std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t n);

}  // namespace secop::mc
