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

#include "secop/analytic.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace secop::analytic {

using combine::Combiner;
using specfun::Precision;

namespace {

constexpr double kLn2 = 0.69314718055994530942;
// exp() underflows to zero below -745; terms with log-prefactor under this
// cannot contribute and their (expensive) CDF factors are skipped.
constexpr double kLogNegligible = -745.0;

double logsumexp(const std::vector<double>& logs) {
    double mx = -std::numeric_limits<double>::infinity();
    for (double v : logs) mx = std::max(mx, v);
    if (!std::isfinite(mx)) return mx;
    double sum = 0.0;
    for (double v : logs) sum += std::exp(v - mx);
    return mx + std::log(sum);
}

// one-line configuration echo carried in SopEstimate::meta
std::string config_echo(const char* op, const chan::SystemConfig& cfg, double lambda_e) {
    char buf[176];
    std::snprintf(buf, sizeof buf,
                  "%s m=%zu nt=%zu ne=%zu gamma_b=%.6g gamma_e=%.6g rs=%g lambda_e=%g", op,
                  cfg.m, cfg.n_t, cfg.n_e, cfg.gamma_bar_b, cfg.gamma_bar_e, cfg.r_s,
                  lambda_e);
    return buf;
}

// log Pi_m (1 - eta_m^2), recovered from the determinant identity
// det(U) = Pi_m (1 - eta_m^2) (1 + S).
double log_prod_one_minus_eta2(const chan::DerivedFactors& f) {
    return std::log(f.det_u) - std::log1p(f.s);
}

void require_simo(const chan::SystemConfig& cfg, const char* op) {
    if (cfg.n_t != 1 || cfg.n_e != 1)
        throw DomainError(std::string(op) + ": requires N_t = 1 and N_E = 1");
}

// log of sum_{k=0}^{M} W^k (2^{r_s})^k ((2^{r_s}-1)/gamma_e)^{M-k} / (M-k)!
double log_base_sum(std::size_t m, double w_ratio, double gamma_e, double r_s) {
    const double excess = std::exp2(r_s) - 1.0;
    std::vector<double> terms;
    terms.reserve(m + 1);
    for (std::size_t k = 0; k <= m; ++k) {
        if (excess == 0.0 && k < m) continue;  // r_s = 0: only k = M survives
        double lt = -specfun::log_factorial(m - k) +
                    static_cast<double>(k) * (std::log(w_ratio) + r_s * kLn2);
        if (k < m) lt += static_cast<double>(m - k) * std::log(excess / gamma_e);
        terms.push_back(lt);
    }
    return logsumexp(terms);
}

double log_combiner_prefactor(Combiner kind, std::size_t m) {
    switch (kind) {
        case Combiner::MRC:
            return 0.0;
        case Combiner::SC:
            return specfun::log_factorial(m);
        case Combiner::EGC:
            return specfun::log_factorial(m) +
                   static_cast<double>(m) * std::log(2.0 * static_cast<double>(m)) -
                   specfun::log_factorial(2 * m);
    }
    throw DomainError("unknown combiner");
}

double asym_simo_kernel(Combiner kind, const chan::SystemConfig& cfg, double det_u,
                        double w_ratio) {
    const double log_p = log_combiner_prefactor(kind, cfg.m) +
                         static_cast<double>(cfg.m) *
                             (std::log(cfg.gamma_bar_e) - std::log(cfg.gamma_bar_b)) -
                         std::log(det_u) +
                         log_base_sum(cfg.m, w_ratio, cfg.gamma_bar_e, cfg.r_s);
    return std::exp(log_p);
}

// Shared nested quadrature for the exact SIMO forms. `cond_cdf(t, thr)` is
// the conditional outage CDF of the combined legitimate SNR. The inner
// integral substitutes y = u/r with r = 1/(gamma_e (1-lambda^2)) so the
// eavesdropper density's e^{-ry} becomes the Laguerre weight; what remains
// of the density is exp(-lam2 t/(1-lam2)) e^{z} i0e(z), folded in log form
// so large t never overflows.
double exact_sop_nested(const chan::SystemConfig& cfg, double lambda_e,
                        const std::function<double(double, double)>& cond_cdf,
                        const Precision& prec) {
    prec.validate();
    const double lam2 = lambda_e * lambda_e;
    const double ge = cfg.gamma_bar_e;
    const double pow2rs = std::exp2(cfg.r_s);
    const double r = 1.0 / (ge * (1.0 - lam2));

    auto eval = [&](std::size_t n) {
        const auto& outer = specfun::laguerre_rule(n);
        const auto& inner = specfun::laguerre_rule(n);
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double t = outer.node[i];
            if (outer.log_weight[i] < kLogNegligible) continue;
            const double log_c = (lam2 > 0.0) ? -lam2 * t / (1.0 - lam2) : 0.0;
            double g = 0.0;  // E[cond_cdf | t], in [0,1]
            for (std::size_t j = 0; j < n; ++j) {
                const double u = inner.node[j];
                const double z = (lam2 > 0.0) ? 2.0 * std::sqrt(lam2 * t * u / (1.0 - lam2)) : 0.0;
                double log_pref = inner.log_weight[j] + log_c + z;
                if (z > 0.0) log_pref += std::log(specfun::bessel_i_scaled(0, z, prec));
                if (log_pref < kLogNegligible) continue;
                const double thr = pow2rs * (u / r + 1.0) - 1.0;
                const double cdf = cond_cdf(t, thr);
                if (cdf > 0.0) g += cdf * std::exp(log_pref);
            }
            total += std::exp(outer.log_weight[i]) * g;
        }
        return total;
    };

    constexpr std::size_t kMaxNodes = 6400;
    std::size_t n = std::max<std::size_t>(prec.quad_nodes, 8);
    double prev = eval(n);
    while (n * 2 <= kMaxNodes) {
        n *= 2;
        double cur = eval(n);
        if (std::fabs(cur - prev) < std::max(prec.abs_tol, prec.rel_tol * std::fabs(cur)))
            return std::min(std::max(cur, 0.0), 1.0);
        prev = cur;
    }
    throw NonConvergence("exact SOP quadrature did not converge within 6400 nodes");
}

}  // namespace

SopEstimate exact_sop_mrc_equicorrelated(const chan::SystemConfig& cfg, double rho,
                                         double lambda_e, const Precision& prec) {
    cfg.validate();
    require_simo(cfg, "exact_sop_mrc_equicorrelated");
    if (std::fabs(rho) >= 1.0 || std::fabs(lambda_e) >= 1.0)
        throw DomainError("exact_sop_mrc_equicorrelated: fully correlated inputs use the "
                          "degenerate paths");
    const double rho2 = rho * rho;
    const double one_minus = 1.0 - rho2;
    const double md = static_cast<double>(cfg.m);
    const unsigned order = static_cast<unsigned>(cfg.m);
    auto cdf = [&](double t, double thr) {
        const double a = std::sqrt(2.0 * md * rho2 * t / one_minus);
        const double b = std::sqrt(2.0 * thr / (cfg.gamma_bar_b * one_minus));
        return specfun::marcum_p(order, a, b, prec);
    };
    return {exact_sop_nested(cfg, lambda_e, cdf, prec), Method::Exact, std::nullopt,
            config_echo("exact-mrc-equicorrelated", cfg, lambda_e) + " rho=" +
                std::to_string(rho)};
}

SopEstimate exact_sop_sc(const chan::SystemConfig& cfg, const chan::CorrelationSpec& spec,
                         const Precision& prec) {
    cfg.validate();
    spec.validate(cfg.m);
    require_simo(cfg, "exact_sop_sc");
    if (spec.fully_correlated_main || spec.fully_correlated_eve)
        throw DomainError("exact_sop_sc: fully correlated inputs use the degenerate paths");
    auto cdf = [&](double t, double thr) {
        double prod = 1.0;
        for (double eta : spec.eta) {
            prod *= chan::conditional_branch_cdf(thr, t, eta, cfg.gamma_bar_b, prec);
            if (prod == 0.0) break;
        }
        return prod;
    };
    return {exact_sop_nested(cfg, spec.lambda_e, cdf, prec), Method::Exact, std::nullopt,
            config_echo("exact-sc", cfg, spec.lambda_e)};
}

SopEstimate asymptotic_sop_simo(Combiner kind, const chan::SystemConfig& cfg,
                                const chan::DerivedFactors& factors, double lambda_e) {
    cfg.validate();
    require_simo(cfg, "asymptotic_sop_simo");
    if (std::fabs(lambda_e) > 1.0)
        throw DomainError("asymptotic_sop_simo: |lambda_e| must be <= 1");
    const double lam2 = lambda_e * lambda_e;
    const double w_ratio = (1.0 + factors.s * (1.0 - lam2)) / (1.0 + factors.s);
    return {asym_simo_kernel(kind, cfg, factors.det_u, w_ratio), Method::Asymptotic,
            std::nullopt,
            config_echo((std::string("asymptotic-simo-") + combine::name(kind)).c_str(), cfg,
                        lambda_e)};
}

SopEstimate asymptotic_sop_simo_special(Combiner kind, const chan::SystemConfig& cfg,
                                        const chan::DerivedFactors& factors, SpecialCase sc) {
    cfg.validate();
    require_simo(cfg, "asymptotic_sop_simo_special");
    switch (sc) {
        case SpecialCase::LambdaZero:
            return {asym_simo_kernel(kind, cfg, factors.det_u, 1.0), Method::Asymptotic,
                    std::nullopt, config_echo("asymptotic-simo-lambda-zero", cfg, 0.0)};
        case SpecialCase::Independent:
            return {asym_simo_kernel(kind, cfg, 1.0, 1.0), Method::Asymptotic, std::nullopt,
                    config_echo("asymptotic-simo-independent", cfg, 0.0)};
        case SpecialCase::FullyCorrelatedEve: {
            const double w = 1.0 / (1.0 + factors.s);
            return {asym_simo_kernel(kind, cfg, factors.det_u, w), Method::Asymptotic,
                    std::nullopt, config_echo("asymptotic-simo-eve-bound", cfg, 1.0)};
        }
        case SpecialCase::FullyCorrelatedMain: {
            // Diversity collapses to one effective branch.
            const double eps = combine::epsilon(kind, cfg.m);
            const double pow2rs = std::exp2(cfg.r_s);
            const double v = cfg.gamma_bar_e / (eps * cfg.gamma_bar_b) *
                             (pow2rs + (pow2rs - 1.0) / cfg.gamma_bar_e);
            return {v, Method::Asymptotic, std::nullopt,
                    config_echo("asymptotic-simo-fully-correlated-main", cfg, 0.0)};
        }
    }
    throw DomainError("asymptotic_sop_simo_special: unknown case");
}

double sop_ratio(Combiner kind, const chan::SystemConfig& cfg,
                 const chan::DerivedFactors& factors, double lambda_e, RatioComparison cmp) {
    (void)kind;  // prefactors cancel in the ratios
    cfg.validate();
    if (std::fabs(lambda_e) > 1.0) throw DomainError("sop_ratio: |lambda_e| must be <= 1");
    const double lam2 = lambda_e * lambda_e;
    const double w_ratio = (1.0 + factors.s * (1.0 - lam2)) / (1.0 + factors.s);
    const double wm = std::pow(w_ratio, static_cast<double>(cfg.m));
    return cmp == RatioComparison::CorrVsCmc ? wm : wm / factors.det_u;
}

namespace {

// omega-sum shared by the TAS forms: terms omega = 0..n of
// C(n,w) (2^{r_s}-1)^{n-w} Gamma(N_E+w) (2^{r_s} gamma_e (1-lam^2))^w
//   2F1(1, N_E+w; N_E; z)
double log_tas_omega_sum(std::size_t n, const chan::SystemConfig& cfg, double lam2, double z,
                         const Precision& prec) {
    const double excess = std::exp2(cfg.r_s) - 1.0;
    const double log_scale = cfg.r_s * kLn2 + std::log(cfg.gamma_bar_e) + std::log1p(-lam2);
    const double ne = static_cast<double>(cfg.n_e);
    std::vector<double> terms;
    terms.reserve(n + 1);
    for (std::size_t w = 0; w <= n; ++w) {
        if (excess == 0.0 && w < n) continue;
        double lt = specfun::log_choose(n, w) +
                    std::lgamma(ne + static_cast<double>(w)) +
                    static_cast<double>(w) * log_scale +
                    std::log(specfun::hyp2f1(1.0, ne + static_cast<double>(w), ne, z, prec));
        if (w < n) lt += static_cast<double>(n - w) * std::log(excess);
        terms.push_back(lt);
    }
    return logsumexp(terms);
}

void require_tas_inputs(const chan::SystemConfig& cfg, double lambda_e, const char* op) {
    cfg.validate();
    if (std::fabs(lambda_e) >= 1.0)
        throw DegenerateCorrelation(std::string(op) +
                                    ": |lambda_e| = 1 uses sop_tas_fully_correlated");
}

}  // namespace

SopEstimate asymptotic_sop_tas_no_csi(Combiner kind, const chan::SystemConfig& cfg,
                                      const chan::DerivedFactors& factors, double lambda_e,
                                      const Precision& prec) {
    require_tas_inputs(cfg, lambda_e, "asymptotic_sop_tas_no_csi");
    const double lam2 = lambda_e * lambda_e;
    const double ne = static_cast<double>(cfg.n_e);
    const double alpha = 1.0 + factors.s + ne * lam2 / (1.0 - lam2);
    const double z = ne * lam2 / (alpha * (1.0 - lam2));
    const std::size_t mnt = cfg.m * cfg.n_t;

    double log_p = -log_prod_one_minus_eta2(factors) -
                   static_cast<double>(cfg.n_t - 1) * std::log(factors.det_u) -
                   std::lgamma(ne) - std::log(alpha) -
                   static_cast<double>(mnt) * std::log(cfg.gamma_bar_b);
    switch (kind) {
        case Combiner::MRC:
            log_p -= static_cast<double>(cfg.n_t) *
                     specfun::log_factorial(cfg.m);
            break;
        case Combiner::SC:
            break;
        case Combiner::EGC:
            log_p += static_cast<double>(mnt) * std::log(2.0 * static_cast<double>(cfg.m)) -
                     static_cast<double>(cfg.n_t) *
                         specfun::log_factorial(2 * cfg.m);
            break;
    }
    log_p += log_tas_omega_sum(mnt, cfg, lam2, z, prec);
    return {std::exp(log_p), Method::Asymptotic, std::nullopt,
            config_echo((std::string("asymptotic-tas-no-csi-") + combine::name(kind)).c_str(),
                        cfg, lambda_e)};
}

SopEstimate asymptotic_sop_tas_with_csi(Combiner kind, const chan::SystemConfig& cfg,
                                        const chan::DerivedFactors& factors, double lambda_e,
                                        const Precision& prec) {
    require_tas_inputs(cfg, lambda_e, "asymptotic_sop_tas_with_csi");
    const double lam2 = lambda_e * lambda_e;
    const double ne = static_cast<double>(cfg.n_e);
    const double alpha = 1.0 + factors.s + ne * lam2 / (1.0 - lam2);
    const double z = ne * lam2 / (alpha * (1.0 - lam2));

    // SOP of a randomly chosen antenna, order M; selection by secrecy
    // capacity multiplies N_t independent copies.
    double log_pa = -log_prod_one_minus_eta2(factors) - std::lgamma(ne) - std::log(alpha) -
                    static_cast<double>(cfg.m) * std::log(cfg.gamma_bar_b);
    switch (kind) {
        case Combiner::MRC:
            log_pa -= specfun::log_factorial(cfg.m);
            break;
        case Combiner::SC:
            break;
        case Combiner::EGC:
            log_pa += static_cast<double>(cfg.m) * std::log(2.0 * static_cast<double>(cfg.m)) -
                      specfun::log_factorial(2 * cfg.m);
            break;
    }
    log_pa += log_tas_omega_sum(cfg.m, cfg, lam2, z, prec);
    return {std::exp(static_cast<double>(cfg.n_t) * log_pa), Method::Asymptotic,
            std::nullopt,
            config_echo((std::string("asymptotic-tas-with-csi-") + combine::name(kind)).c_str(),
                        cfg, lambda_e)};
}

SopEstimate sop_tas_fully_correlated(Combiner kind, const chan::SystemConfig& cfg) {
    cfg.validate();
    const double eps = combine::epsilon(kind, cfg.m);
    const double pow2rs = std::exp2(cfg.r_s);
    const double denom =
        eps * cfg.gamma_bar_b - pow2rs * static_cast<double>(cfg.n_e) * cfg.gamma_bar_e;
    if (!(denom > 0.0))
        throw SecrecyInfeasible("sop_tas_fully_correlated: requires eps*gamma_b > "
                                "2^{r_s}*N_E*gamma_e");
    const double per_antenna = -std::expm1(-(pow2rs - 1.0) / denom);
    return {std::pow(per_antenna, static_cast<double>(cfg.n_t)), Method::Asymptotic,
            std::nullopt,
            config_echo((std::string("fully-correlated-tas-") + combine::name(kind)).c_str(),
                        cfg, 1.0)};
}

double eve_antenna_penalty(const chan::SystemConfig& cfg, const chan::DerivedFactors& factors,
                           double lambda_e, const Precision& prec) {
    cfg.validate();
    if (std::fabs(lambda_e) >= 1.0) throw DomainError("eve_antenna_penalty: |lambda_e| < 1");
    const double lam2 = lambda_e * lambda_e;
    const double ne = static_cast<double>(cfg.n_e);
    const double mnt = static_cast<double>(cfg.m * cfg.n_t);
    const double alpha_n = 1.0 + factors.s + ne * lam2 / (1.0 - lam2);
    const double alpha_1 = 1.0 + factors.s + lam2 / (1.0 - lam2);
    const double z = ne * lam2 / (alpha_n * (1.0 - lam2));
    const double log_ratio = std::lgamma(mnt + ne) - std::lgamma(ne) - std::lgamma(mnt + 1.0) +
                             (mnt + 1.0) * std::log1p(factors.s) - std::log(alpha_n) -
                             mnt * std::log(alpha_1) +
                             std::log(specfun::hyp2f1(1.0, mnt + ne, ne, z, prec));
    return std::exp(log_ratio);
}

double sop_gap_tas_schemes(const chan::SystemConfig& cfg, const chan::DerivedFactors& factors,
                           double lambda_e, const Precision& prec) {
    cfg.validate();
    if (std::fabs(lambda_e) >= 1.0) throw DomainError("sop_gap_tas_schemes: |lambda_e| < 1");
    const double lam2 = lambda_e * lambda_e;
    const double ne = static_cast<double>(cfg.n_e);
    const double md = static_cast<double>(cfg.m);
    const double nt = static_cast<double>(cfg.n_t);
    const double mnt = md * nt;
    const double alpha = 1.0 + factors.s + ne * lam2 / (1.0 - lam2);
    const double z = ne * lam2 / (alpha * (1.0 - lam2));
    const double log_gap =
        std::lgamma(mnt + ne) + (nt - 1.0) * std::lgamma(ne) - nt * std::lgamma(md + ne) +
        (nt - 1.0) * (std::log(alpha) - std::log1p(factors.s)) +
        std::log(specfun::hyp2f1(1.0, mnt + ne, ne, z, prec)) -
        nt * std::log(specfun::hyp2f1(1.0, md + ne, ne, z, prec));
    return std::exp(log_gap);
}

double pdf_conditional_mrc_asym(double x, double t, const chan::SystemConfig& cfg,
                                const chan::DerivedFactors& factors) {
    if (x < 0.0 || t < 0.0) throw DomainError("pdf_conditional_mrc_asym: x, t >= 0");
    const double md = static_cast<double>(cfg.m);
    const double prod_inv = (1.0 + factors.s) / factors.det_u;  // Pi 1/(1-eta^2)
    return std::exp(-factors.s * t) * prod_inv * std::pow(x, md - 1.0) /
           (std::tgamma(md) * std::pow(cfg.gamma_bar_b, md));
}

double pdf_conditional_egc_asym(double x, double t, const chan::SystemConfig& cfg,
                                const chan::DerivedFactors& factors) {
    if (x < 0.0 || t < 0.0) throw DomainError("pdf_conditional_egc_asym: x, t >= 0");
    const double md = static_cast<double>(cfg.m);
    const double prod_inv = (1.0 + factors.s) / factors.det_u;
    return std::pow(2.0 * md, md) * std::exp(-factors.s * t) * prod_inv *
           std::pow(x, md - 1.0) /
           (2.0 * std::tgamma(2.0 * md) * std::pow(cfg.gamma_bar_b, md));
}

namespace {

// log of the constant in the joint TAS/MRC density.
double log_joint_pdf_const(const chan::SystemConfig& cfg, const chan::DerivedFactors& factors,
                           double lam2, double alpha) {
    const double ne = static_cast<double>(cfg.n_e);
    const double nt = static_cast<double>(cfg.n_t);
    const double mnt = static_cast<double>(cfg.m * cfg.n_t);
    return (nt - 1.0) * (-specfun::log_factorial(cfg.m) -
                         std::log(factors.det_u)) +
           std::log(nt) - log_prod_one_minus_eta2(factors) - ne * std::log1p(-lam2) -
           std::lgamma(static_cast<double>(cfg.m)) - mnt * std::log(cfg.gamma_bar_b) -
           ne * std::log(cfg.gamma_bar_e) - std::lgamma(ne) - std::log(alpha);
}

}  // namespace

double joint_pdf_tas_mrc(double x, double y, const chan::SystemConfig& cfg,
                         const chan::DerivedFactors& factors, double lambda_e,
                         const Precision& prec) {
    cfg.validate();
    if (x < 0.0 || y < 0.0) throw DomainError("joint_pdf_tas_mrc: x, y >= 0");
    if (std::fabs(lambda_e) >= 1.0) throw DomainError("joint_pdf_tas_mrc: |lambda_e| < 1");
    const double lam2 = lambda_e * lambda_e;
    const double ne = static_cast<double>(cfg.n_e);
    const double alpha = 1.0 + factors.s + ne * lam2 / (1.0 - lam2);
    const double mnt = static_cast<double>(cfg.m * cfg.n_t);
    const double r = 1.0 / (cfg.gamma_bar_e * (1.0 - lam2));
    const double z = ne * lam2 / (alpha * (1.0 - lam2));
    const double kappa = z * r;  // N_E lam^2 / (alpha gamma_e (1-lam^2)^2)

    double lf = log_joint_pdf_const(cfg, factors, lam2, alpha);
    if (mnt > 1.0) lf += (mnt - 1.0) * std::log(x);
    if (ne > 1.0) lf += (ne - 1.0) * std::log(y);
    lf += -r * y + kappa * y +
          std::log(specfun::hyp1f1_scaled_unit_a(static_cast<unsigned>(cfg.n_e), kappa * y, prec));
    return std::exp(lf);
}

double sop_tas_mrc_by_joint_pdf_quadrature(const chan::SystemConfig& cfg,
                                           const chan::DerivedFactors& factors, double lambda_e,
                                           const Precision& prec) {
    cfg.validate();
    prec.validate();
    if (std::fabs(lambda_e) >= 1.0)
        throw DomainError("sop_tas_mrc_by_joint_pdf_quadrature: |lambda_e| < 1");
    const double lam2 = lambda_e * lambda_e;
    const double ne = static_cast<double>(cfg.n_e);
    const double alpha = 1.0 + factors.s + ne * lam2 / (1.0 - lam2);
    const double z = ne * lam2 / (alpha * (1.0 - lam2));
    const std::size_t mnt = cfg.m * cfg.n_t;
    const double mntd = static_cast<double>(mnt);
    const double pow2rs = std::exp2(cfg.r_s);
    const double r = 1.0 / (cfg.gamma_bar_e * (1.0 - lam2));
    const double kappa = z * r;         // 1F1 growth rate in y
    const double rate = (1.0 - z) * r;  // net outer decay rate
    const double log_const = log_joint_pdf_const(cfg, factors, lam2, alpha);

    // inner integral over x in [0, thr]: Gauss-Legendre on the unit interval,
    // exact for the pure power x^{MN_t-1}
    const auto& gl = specfun::legendre_rule(std::max<std::size_t>(32, mnt / 2 + 2));
    double unit_power_integral = 0.0;  // integral_0^1 s^{mnt-1} ds, numerically
    for (std::size_t j = 0; j < gl.node.size(); ++j)
        unit_power_integral +=
            0.5 * gl.weight[j] * std::pow(0.5 * (gl.node[j] + 1.0), mntd - 1.0);
    const double log_unit_inner = std::log(unit_power_integral);

    auto eval = [&](std::size_t n) {
        const auto& rule = specfun::laguerre_rule(n);
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double u = rule.node[i];
            const double y = u / rate;
            const double thr = pow2rs * (y + 1.0) - 1.0;
            double lt = rule.log_weight[i] - std::log(rate) + log_const + log_unit_inner +
                        mntd * std::log(thr);
            if (ne > 1.0) lt += (ne - 1.0) * std::log(y);
            lt += std::log(
                specfun::hyp1f1_scaled_unit_a(static_cast<unsigned>(cfg.n_e), kappa * y, prec));
            total += std::exp(lt);
        }
        return total;
    };

    constexpr std::size_t kMaxNodes = 6400;
    std::size_t n = std::max<std::size_t>(prec.quad_nodes, 8);
    double prev = eval(n);
    while (n * 2 <= kMaxNodes) {
        n *= 2;
        double cur = eval(n);
        if (std::fabs(cur - prev) < std::max(prec.abs_tol, prec.rel_tol * std::fabs(cur)))
            return cur;
        prev = cur;
    }
    throw NonConvergence("joint-pdf quadrature did not converge within 6400 nodes");
}

}  // namespace secop::analytic
