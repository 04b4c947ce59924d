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

#include <complex>
#include <cstddef>
#include <vector>

#include "secop/errors.hpp"
#include "secop/rng.hpp"
#include "secop/specfun.hpp"

namespace secop::chan {

// System sizes and average branch SNRs (linear). Transmit power and noise
// variances only ever enter the formulas through these averages, so they
// are not separate knobs.
struct SystemConfig {
    std::size_t m = 1;        // legitimate receive antennas
    std::size_t n_t = 1;      // transmit antennas
    std::size_t n_e = 1;      // eavesdropper antennas
    double gamma_bar_b = 1.0; // average legitimate branch SNR, linear
    double gamma_bar_e = 1.0; // average eavesdropper branch SNR, linear
    double r_s = 1.0;         // target secrecy rate, bits/s/Hz

    void validate() const;
};

// Branch correlation parameters. Every gain is a private complex Gaussian
// plus a weighted shared one; the legitimate branch m carries weight eta[m]
// on the shared part, every eavesdropper branch carries lambda_e. Pairwise
// correlations come out as eta_m*eta_m' (main/main), lambda_e^2 (eve/eve)
// and eta_m*lambda_e (main/eve).
//
// |eta| = 1 and |lambda_e| = 1 are modeled by the degenerate flags, never by
// near-one values: every (1 - eta^2) division in the formulas is guarded by
// the flag, not by an epsilon test.
struct CorrelationSpec {
    std::vector<double> eta;
    double lambda_e = 0.0;
    bool fully_correlated_main = false;
    bool fully_correlated_eve = false;

    void validate(std::size_t m) const;
    bool equicorrelated() const;
};

// Aggregates every closed form consumes: the correlation matrix U, its
// determinant, and the recurring sums
//   S        = sum_m eta_m^2 / (1 - eta_m^2)
//   S_lambda = sum_m eta_m^2 (1 - lambda_e^2) / (1 - eta_m^2)
//   alpha    = 1 + S + N_E lambda_e^2 / (1 - lambda_e^2)
struct DerivedFactors {
    std::vector<double> u;  // M x M, row-major, unit diagonal
    std::size_t m = 0;
    double det_u = 1.0;
    double s = 0.0;
    double s_lambda = 0.0;
    double alpha = 1.0;

    double at(std::size_t r, std::size_t c) const { return u[r * m + c]; }
};

// One realization of the channels seen from a single transmit antenna.
struct ChannelDraw {
    std::vector<std::complex<double>> h_b;  // legitimate gains, unit mean square
    std::vector<std::complex<double>> h_e;  // eavesdropper gains
    double t = 0.0;                         // shared-component power X0^2 + Y0^2
};

// Assembles U (off-diagonals eta_m*eta_m'), its determinant via the
// rank-one-update product identity, and the aggregate factors. Throws
// DegenerateCorrelation when a fully-correlated flag is set; the degenerate
// cases have dedicated formula paths that do not use these factors.
DerivedFactors build_factors(const CorrelationSpec& spec, const SystemConfig& cfg);

// Plain Gaussian-elimination determinant, kept as an independent
// cross-check of the product identity.
double determinant_direct(const std::vector<double>& matrix, std::size_t m);

// Draws the private and shared Gaussian components for one transmit antenna
// and combines them per the correlation model. A full selection draw is n_t
// independent calls (one shared component per transmit antenna).
ChannelDraw sample_channel(const CorrelationSpec& spec, const SystemConfig& cfg,
                           rng::GaussianStream& stream);

// Conditional CDF of a single branch SNR given the shared-component power t:
// 1 - Q_1(sqrt(2 eta^2 t/(1-eta^2)), sqrt(2 x/(gamma_bar (1-eta^2)))).
double conditional_branch_cdf(double x, double t, double eta_m, double gamma_bar,
                              const specfun::Precision& prec = {});

}  // namespace secop::chan
