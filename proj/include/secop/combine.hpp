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

#include <algorithm>
#include <cmath>
#include <span>
#include <string>

#include "secop/errors.hpp"

namespace secop::combine {

enum class Combiner { MRC, SC, EGC };

enum class TasMode { Simo, TasNoEveCsi, TasWithEveCsi };

// Effective branch count in the fully-correlated closed form: M for MRC and
// EGC, 1 for SC.
inline double epsilon(Combiner kind, std::size_t m) {
    return kind == Combiner::SC ? 1.0 : static_cast<double>(m);
}

inline const char* name(Combiner kind) {
    switch (kind) {
        case Combiner::MRC: return "MRC";
        case Combiner::SC: return "SC";
        case Combiner::EGC: return "EGC";
    }
    return "?";
}

inline const char* name(TasMode mode) {
    switch (mode) {
        case TasMode::Simo: return "simo";
        case TasMode::TasNoEveCsi: return "tas_no_csi";
        case TasMode::TasWithEveCsi: return "tas_with_csi";
    }
    return "?";
}

// Post-combining SNR: MRC sums, SC takes the best branch, EGC co-phases
// amplitudes, (sum sqrt(g_m))^2 / M.
inline double combined_snr(Combiner kind, std::span<const double> branch_snrs) {
    if (branch_snrs.empty()) throw DomainError("combined_snr: empty branch vector");
    for (double g : branch_snrs)
        if (!(g >= 0.0) || !std::isfinite(g))
            throw DomainError("combined_snr: branch SNRs must be finite and nonnegative");
    switch (kind) {
        case Combiner::MRC: {
            double sum = 0.0;
            for (double g : branch_snrs) sum += g;
            return sum;
        }
        case Combiner::SC:
            return *std::max_element(branch_snrs.begin(), branch_snrs.end());
        case Combiner::EGC: {
            double amp = 0.0;
            for (double g : branch_snrs) amp += std::sqrt(g);
            return amp * amp / static_cast<double>(branch_snrs.size());
        }
    }
    throw DomainError("combined_snr: unknown combiner");
}

// max(0, log2(1+g_b) - log2(1+g_e)), bits/s/Hz.
inline double secrecy_capacity(double gamma_b, double gamma_e) {
    if (!(gamma_b >= 0.0) || !(gamma_e >= 0.0))
        throw DomainError("secrecy_capacity: SNRs must be nonnegative");
    if (gamma_b <= gamma_e) return 0.0;
    return std::log2((1.0 + gamma_b) / (1.0 + gamma_e));
}

// Transmit antenna choice. Without eavesdropper CSI the best legitimate SNR
// wins; with CSI the best ratio (1+g_b)/(1+g_e) wins. Ties go to the lowest
// index so reruns are reproducible.
inline std::size_t select_antenna(TasMode mode, std::span<const double> per_antenna_b,
                                  std::span<const double> per_antenna_e) {
    if (per_antenna_b.empty() || per_antenna_b.size() != per_antenna_e.size())
        throw DomainError("select_antenna: need equal-length nonempty SNR vectors");
    std::size_t best = 0;
    if (mode == TasMode::TasWithEveCsi) {
        double best_ratio = (1.0 + per_antenna_b[0]) / (1.0 + per_antenna_e[0]);
        for (std::size_t n = 1; n < per_antenna_b.size(); ++n) {
            double ratio = (1.0 + per_antenna_b[n]) / (1.0 + per_antenna_e[n]);
            if (ratio > best_ratio) {
                best_ratio = ratio;
                best = n;
            }
        }
    } else {
        for (std::size_t n = 1; n < per_antenna_b.size(); ++n)
            if (per_antenna_b[n] > per_antenna_b[best]) best = n;
    }
    return best;
}

}  // namespace secop::combine
