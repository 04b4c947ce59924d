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

#include "secop/mcsim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <thread>

#include "secop/rng.hpp"

namespace secop::mc {

using combine::Combiner;
using combine::TasMode;

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kInvSqrt2 = 0.70710678118654752440;

struct TrialScratch {
    std::vector<double> branch;       // per-branch legitimate SNRs
    std::vector<double> per_ant_b;    // combined legitimate SNR per antenna
    std::vector<double> per_ant_e;    // eavesdropper MRC SNR per antenna
};

// One secrecy outage indicator. Streams are consumed in a fixed order
// (shared pair, M legitimate pairs, N_E eavesdropper pairs, per antenna),
// so a trial's outcome depends only on (seed, trial).
bool trial_is_outage(const chan::SystemConfig& cfg, const chan::CorrelationSpec& spec,
                     Combiner kind, TasMode mode, std::uint64_t seed, std::uint64_t trial,
                     TrialScratch& scratch) {
    const double pow2rs = std::exp2(cfg.r_s);
    rng::GaussianStream stream(seed, trial);

    for (std::size_t n = 0; n < cfg.n_t; ++n) {
        chan::ChannelDraw draw = chan::sample_channel(spec, cfg, stream);
        for (std::size_t m = 0; m < cfg.m; ++m)
            scratch.branch[m] = cfg.gamma_bar_b * std::norm(draw.h_b[m]);
        scratch.per_ant_b[n] = combine::combined_snr(kind, scratch.branch);
        double ge = 0.0;
        for (const auto& h : draw.h_e) ge += std::norm(h);
        scratch.per_ant_e[n] = cfg.gamma_bar_e * ge;
    }
    const std::size_t sel = combine::select_antenna(mode, scratch.per_ant_b, scratch.per_ant_e);
    // C_s < r_s  <=>  1 + gamma_b < 2^{r_s} (1 + gamma_e)
    return 1.0 + scratch.per_ant_b[sel] < pow2rs * (1.0 + scratch.per_ant_e[sel]);
}

}  // namespace

std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t n) {
    const double z = 1.959963984540054;  // Phi^{-1}(0.975)
    const double nn = static_cast<double>(n);
    const double p = static_cast<double>(successes) / nn;
    const double z2n = z * z / nn;
    const double center = (p + 0.5 * z2n) / (1.0 + z2n);
    const double half =
        z * std::sqrt(p * (1.0 - p) / nn + 0.25 * z2n / nn) / (1.0 + z2n);
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

analytic::SopEstimate estimate_sop(const chan::SystemConfig& cfg,
                                   const chan::CorrelationSpec& spec, Combiner kind,
                                   TasMode mode, const McPlan& plan) {
    cfg.validate();
    spec.validate(cfg.m);
    plan.validate();
    if (mode == TasMode::Simo && cfg.n_t != 1)
        throw DomainError("estimate_sop: SIMO mode requires N_t = 1");

    const unsigned workers = std::min<std::uint64_t>(plan.workers, plan.trials);
    std::vector<std::uint64_t> counts(workers, 0);
    auto run_range = [&](unsigned w, std::uint64_t lo, std::uint64_t hi) {
        TrialScratch scratch;
        scratch.branch.resize(cfg.m);
        scratch.per_ant_b.resize(cfg.n_t);
        scratch.per_ant_e.resize(cfg.n_t);
        std::uint64_t outages = 0;
        for (std::uint64_t trial = lo; trial < hi; ++trial)
            if (trial_is_outage(cfg, spec, kind, mode, plan.seed, trial, scratch)) ++outages;
        counts[w] = outages;
    };

    if (workers == 1) {
        run_range(0, 0, plan.trials);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            const std::uint64_t lo = plan.trials * w / workers;
            const std::uint64_t hi = plan.trials * (w + 1) / workers;
            pool.emplace_back(run_range, w, lo, hi);
        }
        for (auto& th : pool) th.join();
    }

    std::uint64_t outages = 0;
    for (std::uint64_t c : counts) outages += c;  // order-free integer merge
    analytic::SopEstimate est;
    est.value = static_cast<double>(outages) / static_cast<double>(plan.trials);
    est.method = analytic::Method::MonteCarlo;
    est.ci95 = wilson_interval(outages, plan.trials);
    char meta[200];
    std::snprintf(meta, sizeof meta,
                  "montecarlo-%s-%s m=%zu nt=%zu ne=%zu gamma_b=%.6g gamma_e=%.6g rs=%g "
                  "lambda_e=%g trials=%llu seed=%llu",
                  combine::name(kind), combine::name(mode), cfg.m, cfg.n_t, cfg.n_e,
                  cfg.gamma_bar_b, cfg.gamma_bar_e, cfg.r_s, spec.lambda_e,
                  static_cast<unsigned long long>(plan.trials),
                  static_cast<unsigned long long>(plan.seed));
    est.meta = meta;
    return est;
}

std::vector<double> estimate_conditional_cdf(const chan::SystemConfig& cfg,
                                             const chan::CorrelationSpec& spec, Combiner kind,
                                             double t, std::size_t samples, std::uint64_t seed,
                                             double phase) {
    cfg.validate();
    spec.validate(cfg.m);
    if (t < 0.0) throw DomainError("estimate_conditional_cdf: t >= 0");
    if (samples == 0) throw DomainError("estimate_conditional_cdf: samples >= 1");

    const double rt = std::sqrt(t);
    std::vector<double> out;
    out.reserve(samples);
    std::vector<double> branch(cfg.m);
    for (std::size_t i = 0; i < samples; ++i) {
        rng::GaussianStream stream(seed, i, /*stream_id=*/1);
        const double phi = std::isnan(phase) ? kTwoPi * stream.next_uniform() : phase;
        const double x0 = rt * std::cos(phi);
        const double y0 = rt * std::sin(phi);
        for (std::size_t m = 0; m < cfg.m; ++m) {
            const double shared_w = spec.fully_correlated_main ? 1.0 : spec.eta[m];
            const double private_w =
                spec.fully_correlated_main ? 0.0
                                           : std::sqrt(1.0 - spec.eta[m] * spec.eta[m]);
            const double re = private_w * stream.next_gaussian() * kInvSqrt2 + shared_w * x0;
            const double im = private_w * stream.next_gaussian() * kInvSqrt2 + shared_w * y0;
            branch[m] = cfg.gamma_bar_b * (re * re + im * im);
        }
        out.push_back(combine::combined_snr(kind, branch));
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace secop::mc
