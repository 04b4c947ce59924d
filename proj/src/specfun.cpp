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

#include "secop/specfun.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <string>

namespace secop::specfun {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

void require_finite(double v, const char* name) {
    if (!std::isfinite(v)) throw DomainError(std::string(name) + " must be finite");
}

}  // namespace

double log_factorial(std::size_t n) {
    return std::lgamma(static_cast<double>(n) + 1.0);
}

double log_choose(std::size_t n, std::size_t k) {
    if (k > n) throw DomainError("log_choose: k > n");
    return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

// ---------------------------------------------------------------------------
// Regularized incomplete gamma, NR-style series + Lentz continued fraction.

static double gamma_p_series(double s, double x, const Precision& prec) {
    // P(s,x) = x^s e^-x / Gamma(s+1) * sum_k prod_{i<=k} x/(s+i)
    double term = 1.0, sum = 1.0;
    for (std::size_t k = 1; k <= prec.max_terms; ++k) {
        term *= x / (s + static_cast<double>(k));
        sum += term;
        if (term < sum * 1e-17) {
            double lg = s * std::log(x) - x - std::lgamma(s + 1.0);
            return std::exp(lg) * sum;
        }
    }
    throw NonConvergence("gamma_p: series did not converge");
}

static double gamma_q_cf(double s, double x, const Precision& prec) {
    // Q(s,x) = x^s e^-x / Gamma(s) * 1/CF (modified Lentz)
    const double tiny = 1e-300;
    double b = x + 1.0 - s;
    double c = 1.0 / tiny;
    double d = 1.0 / (b == 0.0 ? tiny : b);
    double h = d;
    for (std::size_t k = 1; k <= prec.max_terms; ++k) {
        double an = -static_cast<double>(k) * (static_cast<double>(k) - s);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < 1e-16) {
            double lg = s * std::log(x) - x - std::lgamma(s);
            return std::exp(lg) * h;
        }
    }
    throw NonConvergence("gamma_q: continued fraction did not converge");
}

double gamma_p(double s, double x, const Precision& prec) {
    require_finite(s, "s");
    require_finite(x, "x");
    if (!(s > 0.0) || x < 0.0) throw DomainError("gamma_p: need s > 0, x >= 0");
    if (x == 0.0) return 0.0;
    if (x < s + 1.0) return gamma_p_series(s, x, prec);
    return 1.0 - gamma_q_cf(s, x, prec);
}

double gamma_q(double s, double x, const Precision& prec) {
    require_finite(s, "s");
    require_finite(x, "x");
    if (!(s > 0.0) || x < 0.0) throw DomainError("gamma_q: need s > 0, x >= 0");
    if (x == 0.0) return 1.0;
    if (x < s + 1.0) return 1.0 - gamma_p_series(s, x, prec);
    return gamma_q_cf(s, x, prec);
}

// ---------------------------------------------------------------------------
// Scaled modified Bessel I.

static double bessel_i_scaled_series(unsigned nu, double x, const Precision& prec) {
    // Positive-term series summed outward from its peak so the working
    // values stay near 1 regardless of magnitude.
    const double lhalf = std::log(0.5 * x);
    auto log_term = [&](double k) {
        return (nu + 2.0 * k) * lhalf - std::lgamma(k + 1.0) - std::lgamma(nu + k + 1.0);
    };
    double np1 = nu + 1.0;
    double kpeak = 0.5 * (std::sqrt(np1 * np1 + x * x) - np1);
    double k0 = std::floor(std::max(0.0, kpeak));
    double lt0 = log_term(k0);

    double sum = 1.0;  // term at k0, relative units
    double term = 1.0;
    for (std::size_t i = 1; i <= prec.max_terms; ++i) {
        double k = k0 + static_cast<double>(i);
        term *= (0.25 * x * x) / (k * (nu + k));
        sum += term;
        if (term < sum * 1e-17) break;
        if (i == prec.max_terms) throw NonConvergence("bessel_i_scaled: series stalled");
    }
    term = 1.0;
    for (double k = k0; k >= 1.0; k -= 1.0) {
        term *= (k * (nu + k)) / (0.25 * x * x);
        sum += term;
        if (term < sum * 1e-17) break;
    }
    return std::exp(lt0 + std::log(sum) - x);
}

static double bessel_i_scaled_asym(unsigned nu, double x) {
    // e^-x I_nu(x) ~ (2 pi x)^{-1/2} sum_j (-1)^j a_j(nu)/x^j; truncated at the
    // smallest term. Past the series switch point the remainder is O(e^{-2x}).
    const double mu = 4.0 * static_cast<double>(nu) * static_cast<double>(nu);
    double term = 1.0, sum = 1.0, prev = std::numeric_limits<double>::max();
    for (unsigned j = 1; j < 64; ++j) {
        double num = mu - (2.0 * j - 1.0) * (2.0 * j - 1.0);
        term *= -num / (8.0 * j * x);
        if (std::fabs(term) >= prev) break;  // asymptotic tail starts growing
        sum += term;
        prev = std::fabs(term);
        if (std::fabs(term) < 1e-17 * std::fabs(sum)) break;
    }
    return sum / std::sqrt(2.0 * kPi * x);
}

double bessel_i_scaled(unsigned nu, double x, const Precision& prec) {
    require_finite(x, "x");
    if (x < 0.0) throw DomainError("bessel_i_scaled: x must be nonnegative");
    if (x == 0.0) return nu == 0 ? 1.0 : 0.0;
    double switch_x = std::max(30.0, 2.0 * static_cast<double>(nu) * static_cast<double>(nu));
    if (x < switch_x) return bessel_i_scaled_series(nu, x, prec);
    return bessel_i_scaled_asym(nu, x);
}

// ---------------------------------------------------------------------------
// Marcum Q / P.

namespace {

struct MarcumPQ {
    double p, q;
};

MarcumPQ marcum_pq(unsigned order, double a, double b, const Precision& prec) {
    prec.validate();
    if (order < 1) throw DomainError("marcum: order must be >= 1");
    require_finite(a, "a");
    require_finite(b, "b");
    if (a < 0.0 || b < 0.0) throw DomainError("marcum: arguments must be nonnegative");

    const double x = 0.5 * b * b;       // chi-square evaluation point
    const double theta = 0.5 * a * a;   // Poisson mixing mean
    if (b == 0.0) return {0.0, 1.0};
    if (theta == 0.0) return {gamma_p(order, x, prec), gamma_q(order, x, prec)};

    const double m = static_cast<double>(order);
    const long j0 = static_cast<long>(theta);  // Poisson mode
    const double log_pois0 =
        j0 * std::log(theta) - theta - std::lgamma(static_cast<double>(j0) + 1.0);
    const double s0 = m + static_cast<double>(j0);
    const double p0 = gamma_p(s0, x, prec);
    const double q0 = gamma_q(s0, x, prec);
    // T(s) = x^s e^-x / Gamma(s+1); Q(s+1,x) = Q(s,x) + T(s)
    const double t0 = std::exp(s0 * std::log(x) - x - std::lgamma(s0 + 1.0));
    // Weights past this point bound the unsummed Poisson tail by ~abs_tol.
    const double w_cut = 0.5 * prec.abs_tol / (1.0 + std::sqrt(theta));

    double sum_p = 0.0, sum_q = 0.0;

    {   // upward sweep, j = j0, j0+1, ...
        double w = std::exp(log_pois0);
        double p = p0, q = q0, t = t0;
        for (std::size_t it = 0;; ++it) {
            if (it > prec.max_terms) throw NonConvergence("marcum: upward sweep stalled");
            const long j = j0 + static_cast<long>(it);
            if (it > 0) {
                const double s = m + static_cast<double>(j - 1);
                q += t;
                p -= t;
                if (p < 0.0) p = 0.0;
                if (q > 1.0) q = 1.0;
                t *= x / (s + 1.0);
                w *= theta / static_cast<double>(j);
            }
            sum_p += w * p;
            sum_q += w * q;
            if (w == 0.0) break;
            if (static_cast<double>(j) > theta && w < w_cut) break;
        }
    }
    if (j0 > 0) {  // downward sweep, j = j0-1, ..., 0
        double w = std::exp(log_pois0);
        double p = p0, q = q0, t = t0;
        std::size_t it = 0;
        for (long j = j0 - 1; j >= 0; --j, ++it) {
            if (it > prec.max_terms) throw NonConvergence("marcum: downward sweep stalled");
            const double s = m + static_cast<double>(j);
            w *= static_cast<double>(j + 1) / theta;
            t *= (s + 1.0) / x;
            p += t;
            q -= t;
            if (q < 0.0) q = 0.0;
            if (p > 1.0) p = 1.0;
            sum_p += w * p;
            sum_q += w * q;
            if (w == 0.0 || w < w_cut) break;
        }
    }
    return {std::min(sum_p, 1.0), std::min(sum_q, 1.0)};
}

}  // namespace

double marcum_q(unsigned order, double a, double b, const Precision& prec) {
    return marcum_pq(order, a, b, prec).q;
}

double marcum_p(unsigned order, double a, double b, const Precision& prec) {
    return marcum_pq(order, a, b, prec).p;
}

// ---------------------------------------------------------------------------
// Hypergeometric series.

double hyp1f1(double a, double c, double z, const Precision& prec) {
    require_finite(a, "a");
    require_finite(c, "c");
    require_finite(z, "z");
    if (c <= 0.0 && c == std::floor(c))
        throw DomainError("hyp1f1: c must not be a nonpositive integer");
    double term = 1.0, sum = 1.0;
    std::size_t small_streak = 0;
    for (std::size_t n = 0; n < prec.max_terms; ++n) {
        double dn = static_cast<double>(n);
        term *= (a + dn) / (c + dn) * z / (dn + 1.0);
        sum += term;
        if (!std::isfinite(sum)) throw NonConvergence("hyp1f1: series overflow");
        if (std::fabs(term) < 1e-16 * std::fabs(sum)) {
            if (++small_streak >= 2) return sum;
        } else {
            small_streak = 0;
        }
    }
    // Machine precision unreachable within max_terms; the stated tolerance
    // still counts as converged.
    if (std::fabs(term) < prec.abs_tol + prec.rel_tol * std::fabs(sum)) return sum;
    throw NonConvergence("hyp1f1: series did not converge");
}

double hyp1f1_scaled_unit_a(unsigned c, double z, const Precision& prec) {
    if (c < 1) throw DomainError("hyp1f1_scaled_unit_a: c must be >= 1");
    require_finite(z, "z");
    if (z < 0.0) throw DomainError("hyp1f1_scaled_unit_a: z must be nonnegative");
    if (z == 0.0) return 1.0;
    const double cd = static_cast<double>(c);
    if (z < std::max(60.0, 4.0 * cd)) {
        // 1F1(1;c;z) = sum_n z^n / (c)_n, all terms positive
        double term = 1.0, sum = 1.0;
        for (std::size_t n = 0; n < prec.max_terms; ++n) {
            term *= z / (cd + static_cast<double>(n));
            sum += term;
            if (term < 1e-17 * sum) return sum * std::exp(-z);
        }
        throw NonConvergence("hyp1f1_scaled_unit_a: series did not converge");
    }
    // Integer-c closed form: (c-1)! z^{1-c} (e^z - sum_{k<c-1} z^k/k!), scaled.
    double correction = 0.0;  // e^-z * sum_{k=0}^{c-2} z^k/k!
    for (unsigned k = 0; k + 1 < c; ++k)
        correction += std::exp(k * std::log(z) - z - log_factorial(k));
    return std::exp(std::lgamma(cd) + (1.0 - cd) * std::log(z)) * (1.0 - correction);
}

double hyp2f1(double a, double b, double c, double z, const Precision& prec) {
    require_finite(a, "a");
    require_finite(b, "b");
    require_finite(c, "c");
    require_finite(z, "z");
    auto is_nonpos_int = [](double v) { return v <= 0.0 && v == std::floor(v); };
    const bool polynomial = is_nonpos_int(a) || is_nonpos_int(b);
    if (is_nonpos_int(c)) {
        // Allowed only when the series terminates first.
        double n = is_nonpos_int(a) ? -a : (is_nonpos_int(b) ? -b : -1.0);
        if (n < 0.0 || -c < n)
            throw DomainError("hyp2f1: c is a nonpositive integer");
    }
    if (!polynomial && std::fabs(z) >= 1.0)
        throw DomainError("hyp2f1: |z| >= 1 requires a polynomial case");

    double term = 1.0, sum = 1.0;
    std::size_t small_streak = 0;
    for (std::size_t n = 0; n < prec.max_terms; ++n) {
        double dn = static_cast<double>(n);
        if (a + dn == 0.0 || b + dn == 0.0) return sum;  // polynomial complete
        term *= (a + dn) * (b + dn) / ((c + dn) * (dn + 1.0)) * z;
        sum += term;
        if (!std::isfinite(sum)) throw NonConvergence("hyp2f1: series overflow");
        if (std::fabs(term) < 1e-16 * std::fabs(sum)) {
            if (++small_streak >= 2) return sum;
        } else {
            small_streak = 0;
        }
    }
    if (std::fabs(term) < prec.abs_tol + prec.rel_tol * std::fabs(sum)) return sum;
    throw NonConvergence("hyp2f1: series did not converge");
}

// ---------------------------------------------------------------------------
// Gauss-Laguerre rule: nodes are eigenvalues of the Jacobi matrix
// (diag 2k+1, offdiag k), located by Sturm bisection and polished with
// Newton on a rescaled three-term recurrence.

namespace {

// Number of eigenvalues of the n x n Laguerre Jacobi matrix below x.
std::size_t sturm_count_below(std::size_t n, double x) {
    std::size_t cnt = 0;
    double d = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        double diag = 2.0 * static_cast<double>(k) + 1.0 - x;
        double off2 = (k > 0) ? static_cast<double>(k) * static_cast<double>(k) : 0.0;
        d = diag - off2 / d;
        if (d == 0.0) d = -1e-300;
        if (d < 0.0) ++cnt;
    }
    return cnt;
}

struct LagTriple {
    double lnm1, ln, lnp1;  // L_{n-1}, L_n, L_{n+1} up to a common scale
    double log_scale;
};

LagTriple eval_laguerre_triple(std::size_t n, double x) {
    double pm = 1.0;        // L_0
    double p = 1.0 - x;     // L_1
    double log_scale = 0.0;
    for (std::size_t k = 1; k <= n; ++k) {
        double dk = static_cast<double>(k);
        double pn = ((2.0 * dk + 1.0 - x) * p - dk * pm) / (dk + 1.0);
        pm = p;
        p = pn;
        double mag = std::max(std::fabs(p), std::fabs(pm));
        if (mag > 1e250) {
            p *= 1e-250;
            pm *= 1e-250;
            log_scale += std::log(1e250);
        } else if (mag < 1e-250 && mag > 0.0) {
            p *= 1e250;
            pm *= 1e250;
            log_scale -= std::log(1e250);
        }
    }
    // loop leaves p = L_{n+1}, pm = L_n; recover L_{n-1} from the recurrence
    double dn = static_cast<double>(n);
    double lnm1 = ((2.0 * dn + 1.0 - x) * pm - (dn + 1.0) * p) / dn;
    return {lnm1, pm, p, log_scale};
}

std::unique_ptr<LaguerreRule> build_laguerre_rule(std::size_t n) {
    auto rule = std::make_unique<LaguerreRule>();
    rule->node.resize(n);
    rule->log_weight.resize(n);
    const double hi0 = 4.0 * static_cast<double>(n) + 10.0;
    double lo_prev = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double lo = lo_prev, hi = hi0;
        while (hi - lo > 1e-9 * (1.0 + hi)) {
            double mid = 0.5 * (lo + hi);
            if (sturm_count_below(n, mid) <= i)
                lo = mid;
            else
                hi = mid;
        }
        double x = 0.5 * (lo + hi);
        for (int it = 0; it < 8; ++it) {  // Newton polish on L_n
            LagTriple t = eval_laguerre_triple(n, x);
            double deriv = static_cast<double>(n) * (t.ln - t.lnm1) / x;
            double step = t.ln / deriv;
            x -= step;
            if (std::fabs(step) < 1e-15 * (1.0 + x)) break;
        }
        LagTriple t = eval_laguerre_triple(n, x);
        double log_lnp1 = std::log(std::fabs(t.lnp1)) + t.log_scale;
        rule->node[i] = x;
        rule->log_weight[i] =
            std::log(x) - 2.0 * std::log(static_cast<double>(n) + 1.0) - 2.0 * log_lnp1;
        lo_prev = lo;  // roots are ordered; reuse as the next lower bracket
    }
    return rule;
}

std::unique_ptr<LegendreRule> build_legendre_rule(std::size_t n) {
    auto rule = std::make_unique<LegendreRule>();
    rule->node.resize(n);
    rule->weight.resize(n);
    const std::size_t m = (n + 1) / 2;
    for (std::size_t i = 0; i < m; ++i) {
        double x = std::cos(kPi * (static_cast<double>(i) + 0.75) /
                            (static_cast<double>(n) + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 64; ++it) {
            double p0 = 1.0, p1 = x;
            for (std::size_t k = 2; k <= n; ++k) {
                double dk = static_cast<double>(k);
                double p2 = ((2.0 * dk - 1.0) * x * p1 - (dk - 1.0) * p0) / dk;
                p0 = p1;
                p1 = p2;
            }
            pp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
            double step = p1 / pp;
            x -= step;
            if (std::fabs(step) < 1e-15) break;
        }
        rule->node[i] = -x;
        rule->node[n - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * pp * pp);
        rule->weight[i] = w;
        rule->weight[n - 1 - i] = w;
    }
    return rule;
}

}  // namespace

const LaguerreRule& laguerre_rule(std::size_t n) {
    if (n < 1) throw DomainError("laguerre_rule: n must be >= 1");
    static std::mutex mu;
    static std::map<std::size_t, std::unique_ptr<LaguerreRule>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, build_laguerre_rule(n)).first;
    return *it->second;
}

const LegendreRule& legendre_rule(std::size_t n) {
    if (n < 1) throw DomainError("legendre_rule: n must be >= 1");
    static std::mutex mu;
    static std::map<std::size_t, std::unique_ptr<LegendreRule>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, build_legendre_rule(n)).first;
    return *it->second;
}

double quad_semi_infinite(const std::function<double(double)>& f, const Precision& prec) {
    prec.validate();
    constexpr std::size_t kMaxNodes = 6400;
    std::size_t n = std::max<std::size_t>(prec.quad_nodes, 8);

    auto eval = [&f](std::size_t nodes) {
        const LaguerreRule& rule = laguerre_rule(nodes);
        double sum = 0.0;
        for (std::size_t i = 0; i < nodes; ++i) {
            // total weight w_i e^{x_i} applied to the raw integrand
            sum += std::exp(rule.log_weight[i] + rule.node[i]) * f(rule.node[i]);
        }
        return sum;
    };

    double prev = eval(n);
    while (n * 2 <= kMaxNodes) {
        n *= 2;
        double cur = eval(n);
        if (std::fabs(cur - prev) < std::max(prec.abs_tol, prec.rel_tol * std::fabs(cur)))
            return cur;
        prev = cur;
    }
    throw NonConvergence("quad_semi_infinite: no convergence up to 6400 nodes");
}

}  // namespace secop::specfun
