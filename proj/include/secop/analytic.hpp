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

#include <optional>
#include <string>
#include <utility>

#include "secop/chanmodel.hpp"
#include "secop/combine.hpp"
#include "secop/specfun.hpp"

namespace secop::analytic {

enum class Method { Exact, Asymptotic, MonteCarlo };

inline const char* name(Method m) {
    switch (m) {
        case Method::Exact: return "exact";
        case Method::Asymptotic: return "asymptotic";
        case Method::MonteCarlo: return "montecarlo";
    }
    return "?";
}

// A secrecy outage probability with its provenance. Exact values lie in
// [0,1]; asymptotic values are returned raw and may exceed 1 where the
// expansion is invalid (low legitimate SNR) — the CLI flags those instead
// of clamping them silently. `meta` echoes the producing configuration.
struct SopEstimate {
    double value = 0.0;
    Method method = Method::Exact;
    std::optional<std::pair<double, double>> ci95;
    std::string meta;
};

enum class SpecialCase { LambdaZero, Independent, FullyCorrelatedMain, FullyCorrelatedEve };

enum class RatioComparison { CorrVsCmc, CorrVsIndep };

// Exact SOP for equally correlated main channels with MRC, N_t = N_E = 1.
// Nested Gauss-Laguerre over the shared-component power t and the
// eavesdropper SNR y of the conditional outage CDF
// 1 - Q_M(sqrt(2 M rho^2 t/(1-rho^2)), sqrt(2 thr/(gamma_b (1-rho^2)))),
// thr = 2^{r_s}(y+1) - 1.
SopEstimate exact_sop_mrc_equicorrelated(const chan::SystemConfig& cfg, double rho,
                                         double lambda_e, const specfun::Precision& prec = {});

// Exact SOP for SC with an arbitrary eta vector, N_t = N_E = 1: the product
// of the per-branch conditional CDFs integrated against the conditional
// eavesdropper density and e^{-t}.
SopEstimate exact_sop_sc(const chan::SystemConfig& cfg, const chan::CorrelationSpec& spec,
                         const specfun::Precision& prec = {});

// Leading-order SOP as gamma_b -> inf for a SIMO link (N_t = N_E = 1):
//   pref(kind) * gamma_e^M / (det(U) gamma_b^M) *
//   sum_{k=0}^{M} W^k (2^{r_s})^k ((2^{r_s}-1)/gamma_e)^{M-k} / (M-k)!
// with W = (1+S_lambda)/(1+S) and pref 1 (MRC), M! (SC), M!(2M)^M/(2M)! (EGC).
// lambda_e may be +-1, which reproduces the lower-bound forms (S_lambda = 0).
SopEstimate asymptotic_sop_simo(combine::Combiner kind, const chan::SystemConfig& cfg,
                                const chan::DerivedFactors& factors, double lambda_e);

// Dedicated special-case forms. FullyCorrelatedMain ignores `factors`
// (det(U) = 0 there) and has secrecy diversity order one.
SopEstimate asymptotic_sop_simo_special(combine::Combiner kind, const chan::SystemConfig& cfg,
                                        const chan::DerivedFactors& factors, SpecialCase sc);

// High-SNR SOP ratios: correlated-vs-CMC-only is W^M, correlated-vs-all-
// independent is W^M / det(U). Combiner-independent (the prefactors cancel).
double sop_ratio(combine::Combiner kind, const chan::SystemConfig& cfg,
                 const chan::DerivedFactors& factors, double lambda_e, RatioComparison cmp);

// TAS by best legitimate SNR (no eavesdropper CSI), MRC at the
// eavesdropper: the order-MN_t omega-sum with 2F1 factors. Log-space
// accumulation keeps MN_t up to ~32 alive.
SopEstimate asymptotic_sop_tas_no_csi(combine::Combiner kind, const chan::SystemConfig& cfg,
                                      const chan::DerivedFactors& factors, double lambda_e,
                                      const specfun::Precision& prec = {});

// TAS by best secrecy capacity: per-antenna SOP of order M raised to the
// N_t power.
SopEstimate asymptotic_sop_tas_with_csi(combine::Combiner kind, const chan::SystemConfig& cfg,
                                        const chan::DerivedFactors& factors, double lambda_e,
                                        const specfun::Precision& prec = {});

// All channels fully correlated (eta = 1 and lambda_e = 1):
// (1 - exp(-(2^{r_s}-1)/(eps gamma_b - 2^{r_s} N_E gamma_e)))^{N_t}.
// Throws SecrecyInfeasible unless eps gamma_b > 2^{r_s} N_E gamma_e.
SopEstimate sop_tas_fully_correlated(combine::Combiner kind, const chan::SystemConfig& cfg);

// SOP penalty of an N_E-antenna eavesdropper relative to N_E = 1 for TAS
// without eavesdropper CSI, in the gamma_e >> 1 regime (the scale terms
// cancel). Equals 1 at N_E = 1 and grows with N_E.
double eve_antenna_penalty(const chan::SystemConfig& cfg, const chan::DerivedFactors& factors,
                           double lambda_e, const specfun::Precision& prec = {});

// Array-gain gap between the two TAS schemes (no-CSI over with-CSI) as
// gamma_b -> inf and gamma_e >> 1. Reduces to (MN_t)!/(M!)^{N_t} at N_E=1.
double sop_gap_tas_schemes(const chan::SystemConfig& cfg, const chan::DerivedFactors& factors,
                           double lambda_e, const specfun::Precision& prec = {});

// Leading-order conditional densities of the combined legitimate SNR given
// the shared-component power t.
double pdf_conditional_mrc_asym(double x, double t, const chan::SystemConfig& cfg,
                                const chan::DerivedFactors& factors);
double pdf_conditional_egc_asym(double x, double t, const chan::SystemConfig& cfg,
                                const chan::DerivedFactors& factors);

// Joint density of the selected-antenna legitimate MRC SNR and the
// eavesdropper MRC SNR (TAS without eavesdropper CSI), leading order.
double joint_pdf_tas_mrc(double x, double y, const chan::SystemConfig& cfg,
                         const chan::DerivedFactors& factors, double lambda_e,
                         const specfun::Precision& prec = {});

// Numeric double integral of the joint density over the outage region
// {x <= 2^{r_s}(y+1)-1}; must reproduce asymptotic_sop_tas_no_csi(MRC).
double sop_tas_mrc_by_joint_pdf_quadrature(const chan::SystemConfig& cfg,
                                           const chan::DerivedFactors& factors, double lambda_e,
                                           const specfun::Precision& prec = {});

}  // namespace secop::analytic
