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

#include <cstddef>
#include <functional>
#include <vector>

#include "secop/errors.hpp"

namespace secop::specfun {

struct Precision {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    std::size_t max_terms = 10'000;
    std::size_t quad_nodes = 200;

    void validate() const {
        if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
            throw DomainError("Precision: tolerances must be positive");
        if (max_terms < 1 || quad_nodes < 8)
            throw DomainError("Precision: max_terms >= 1 and quad_nodes >= 8 required");
    }
};

// log(n!) without overflow.
double log_factorial(std::size_t n);

// log of the binomial coefficient C(n, k).
double log_choose(std::size_t n, std::size_t k);

// Regularized incomplete gamma functions P(s,x) and Q(s,x), P + Q = 1.
// Series for x < s+1, continued fraction otherwise; each is accurate in
// its own tail.
double gamma_p(double s, double x, const Precision& prec = {});
double gamma_q(double s, double x, const Precision& prec = {});

// Exponentially scaled modified Bessel function e^{-x} I_nu(x), integer
// nu >= 0. The unscaled function overflows near x ~ 700 and every integrand
// here pairs I_nu with a decaying exponential, so only the scaled form is
// exposed.
double bessel_i_scaled(unsigned nu, double x, const Precision& prec = {});

// Marcum Q_M(a,b) and its complement P = 1 - Q, the survival/distribution
// functions of a noncentral chi-square with 2M degrees of freedom and
// noncentrality a^2, evaluated at b^2. Summed as a Poisson mixture of
// central chi-square tails, starting at the Poisson mode so that large
// noncentralities neither underflow nor need O(a^2) terms.
double marcum_q(unsigned order, double a, double b, const Precision& prec = {});
double marcum_p(unsigned order, double a, double b, const Precision& prec = {});

// Confluent hypergeometric 1F1(a;c;z) by direct series.
double hyp1f1(double a, double c, double z, const Precision& prec = {});

// e^{-z} 1F1(1;c;z) for integer c >= 1, stable for large z (the unscaled
// value grows like e^z).
double hyp1f1_scaled_unit_a(unsigned c, double z, const Precision& prec = {});

// Gauss hypergeometric 2F1(a,b;c;z) for |z| < 1, or any z when a or b is a
// nonpositive integer (polynomial case).
double hyp2f1(double a, double b, double c, double z, const Precision& prec = {});

// Gauss-Laguerre rule of size n for the weight e^{-x} on [0, inf).
// Weights are kept in log form: the natural weights underflow past
// x ~ 745 while their logs stay usable for log-space integrands.
struct LaguerreRule {
    std::vector<double> node;
    std::vector<double> log_weight;  // log w_i,  sum_i w_i g(x_i) ~ integral e^-x g
};

// Rules are computed once per size and cached; thread-safe.
const LaguerreRule& laguerre_rule(std::size_t n);

// Gauss-Legendre rule on [-1, 1].
struct LegendreRule {
    std::vector<double> node;
    std::vector<double> weight;
};

const LegendreRule& legendre_rule(std::size_t n);

// integral_0^inf f(t) dt for integrands with exponential decay, via
// Gauss-Laguerre with node-count doubling until two successive estimates
// agree within max(abs_tol, rel_tol*|estimate|).
double quad_semi_infinite(const std::function<double(double)>& f, const Precision& prec = {});

}  // namespace secop::specfun
