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

#include "secop/chanmodel.hpp"

#include <cmath>

namespace secop::chan {

void SystemConfig::validate() const {
    if (m < 1 || n_t < 1 || n_e < 1)
        throw DomainError("SystemConfig: antenna counts must be >= 1");
    if (!(gamma_bar_b > 0.0) || !std::isfinite(gamma_bar_b) || !(gamma_bar_e > 0.0) ||
        !std::isfinite(gamma_bar_e))
        throw DomainError("SystemConfig: average SNRs must be positive and finite");
    if (!(r_s >= 0.0) || !std::isfinite(r_s))
        throw DomainError("SystemConfig: r_s must be nonnegative and finite");
}

void CorrelationSpec::validate(std::size_t m) const {
    if (eta.size() != m)
        throw DomainError("CorrelationSpec: eta length must equal the receive antenna count");
    for (double e : eta) {
        if (!std::isfinite(e)) throw DomainError("CorrelationSpec: eta must be finite");
        if (!fully_correlated_main && std::fabs(e) >= 1.0)
            throw DomainError("CorrelationSpec: |eta| must be < 1 unless fully_correlated_main");
    }
    if (!std::isfinite(lambda_e)) throw DomainError("CorrelationSpec: lambda_e must be finite");
    if (!fully_correlated_eve && std::fabs(lambda_e) >= 1.0)
        throw DomainError("CorrelationSpec: |lambda_e| must be < 1 unless fully_correlated_eve");
}

bool CorrelationSpec::equicorrelated() const {
    for (double e : eta)
        if (e != eta.front()) return false;
    return true;
}

DerivedFactors build_factors(const CorrelationSpec& spec, const SystemConfig& cfg) {
    cfg.validate();
    spec.validate(cfg.m);
    if (spec.fully_correlated_main || spec.fully_correlated_eve)
        throw DegenerateCorrelation(
            "build_factors: fully correlated cases use their dedicated formula paths");

    DerivedFactors f;
    f.m = cfg.m;
    f.u.assign(cfg.m * cfg.m, 0.0);
    for (std::size_t r = 0; r < cfg.m; ++r) {
        f.u[r * cfg.m + r] = 1.0;
        for (std::size_t c = r + 1; c < cfg.m; ++c) {
            double rho = spec.eta[r] * spec.eta[c];
            f.u[r * cfg.m + c] = rho;
            f.u[c * cfg.m + r] = rho;
        }
    }

    const double lam2 = spec.lambda_e * spec.lambda_e;
    double prod = 1.0;
    for (double e : spec.eta) {
        double one_minus = 1.0 - e * e;
        prod *= one_minus;
        f.s += e * e / one_minus;
    }
    f.s_lambda = f.s * (1.0 - lam2);
    f.alpha = 1.0 + f.s + static_cast<double>(cfg.n_e) * lam2 / (1.0 - lam2);
    f.det_u = prod * (1.0 + f.s);
    return f;
}

double determinant_direct(const std::vector<double>& matrix, std::size_t m) {
    if (matrix.size() != m * m) throw DomainError("determinant_direct: bad matrix size");
    std::vector<double> a = matrix;
    double det = 1.0;
    for (std::size_t col = 0; col < m; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < m; ++r)
            if (std::fabs(a[r * m + col]) > std::fabs(a[pivot * m + col])) pivot = r;
        if (a[pivot * m + col] == 0.0) return 0.0;
        if (pivot != col) {
            for (std::size_t c = 0; c < m; ++c) std::swap(a[pivot * m + c], a[col * m + c]);
            det = -det;
        }
        det *= a[col * m + col];
        for (std::size_t r = col + 1; r < m; ++r) {
            double factor = a[r * m + col] / a[col * m + col];
            for (std::size_t c = col; c < m; ++c) a[r * m + c] -= factor * a[col * m + c];
        }
    }
    return det;
}

ChannelDraw sample_channel(const CorrelationSpec& spec, const SystemConfig& cfg,
                           rng::GaussianStream& stream) {
    cfg.validate();
    spec.validate(cfg.m);

    constexpr double kInvSqrt2 = 0.70710678118654752440;  // N(0,1) -> N(0,1/2)
    const double x0 = stream.next_gaussian() * kInvSqrt2;
    const double y0 = stream.next_gaussian() * kInvSqrt2;

    ChannelDraw draw;
    draw.t = x0 * x0 + y0 * y0;
    draw.h_b.resize(cfg.m);
    draw.h_e.resize(cfg.n_e);

    for (std::size_t m = 0; m < cfg.m; ++m) {
        const double shared_w = spec.fully_correlated_main ? 1.0 : spec.eta[m];
        const double private_w =
            spec.fully_correlated_main ? 0.0 : std::sqrt(1.0 - spec.eta[m] * spec.eta[m]);
        const double xp = stream.next_gaussian() * kInvSqrt2;
        const double yp = stream.next_gaussian() * kInvSqrt2;
        draw.h_b[m] = {private_w * xp + shared_w * x0, private_w * yp + shared_w * y0};
    }
    for (std::size_t k = 0; k < cfg.n_e; ++k) {
        const double shared_w = spec.fully_correlated_eve ? 1.0 : spec.lambda_e;
        const double private_w =
            spec.fully_correlated_eve ? 0.0 : std::sqrt(1.0 - spec.lambda_e * spec.lambda_e);
        const double xp = stream.next_gaussian() * kInvSqrt2;
        const double yp = stream.next_gaussian() * kInvSqrt2;
        draw.h_e[k] = {private_w * xp + shared_w * x0, private_w * yp + shared_w * y0};
    }
    return draw;
}

double conditional_branch_cdf(double x, double t, double eta_m, double gamma_bar,
                              const specfun::Precision& prec) {
    if (std::fabs(eta_m) >= 1.0)
        throw DomainError("conditional_branch_cdf: |eta| must be < 1");
    if (x < 0.0 || t < 0.0 || !(gamma_bar > 0.0))
        throw DomainError("conditional_branch_cdf: bad arguments");
    const double one_minus = 1.0 - eta_m * eta_m;
    const double a = std::sqrt(2.0 * eta_m * eta_m * t / one_minus);
    const double b = std::sqrt(2.0 * x / (gamma_bar * one_minus));
    return specfun::marcum_p(1, a, b, prec);
}

}  // namespace secop::chan
