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

#include <doctest.h>

#include <cmath>

#include "secop/analytic.hpp"
#include "secop/mcsim.hpp"
#include "test_support.hpp"

using namespace secop;
using namespace secop::analytic;
using combine::Combiner;
using combine::TasMode;
using testutil::db;

TEST_SUITE_BEGIN("analytic");

namespace {

const specfun::Precision kPrec;

chan::DerivedFactors factors_of(const std::vector<double>& eta, double lambda_e,
                                const chan::SystemConfig& cfg) {
    chan::CorrelationSpec s;
    s.eta = eta;
    s.lambda_e = lambda_e;
    return chan::build_factors(s, cfg);
}

}  // namespace

TEST_CASE("asymptotic SIMO hand-evaluated values") {
    // (10/100) * (2 + 0.1) = 0.21
    chan::SystemConfig cfg{1, 1, 1, 100.0, 10.0, 1.0};
    auto f = factors_of({0.0}, 0.0, cfg);
    CHECK(asymptotic_sop_simo(Combiner::MRC, cfg, f, 0.0).value ==
          doctest::Approx(0.21).epsilon(1e-13));

    // fully correlated main: (10/300) * (2 + 0.1) = 0.07
    chan::SystemConfig cfg3{3, 1, 1, 100.0, 10.0, 1.0};
    auto f3 = factors_of({0.0, 0.0, 0.0}, 0.0, cfg3);
    CHECK(asymptotic_sop_simo_special(Combiner::MRC, cfg3, f3,
                                      SpecialCase::FullyCorrelatedMain)
              .value == doctest::Approx(0.07).epsilon(1e-13));
}

TEST_CASE("combiner ratio identities are exact") {
    for (std::size_t m = 1; m <= 5; ++m) {
        chan::SystemConfig cfg{m, 1, 1, db(30), db(10), 1.0};
        auto f = factors_of(std::vector<double>(m, 0.5), 0.4, cfg);
        const double mrc = asymptotic_sop_simo(Combiner::MRC, cfg, f, 0.4).value;
        const double sc = asymptotic_sop_simo(Combiner::SC, cfg, f, 0.4).value;
        const double egc = asymptotic_sop_simo(Combiner::EGC, cfg, f, 0.4).value;
        const double mfact = std::tgamma(static_cast<double>(m) + 1.0);
        CHECK(sc / mrc == doctest::Approx(mfact).epsilon(1e-9));
        const double egc_want = mfact * std::pow(2.0 * m, static_cast<double>(m)) /
                                std::tgamma(2.0 * m + 1.0);
        CHECK(egc / mrc == doctest::Approx(egc_want).epsilon(1e-9));
    }
}

TEST_CASE("reduction lattice: special cases and TAS at N_t=N_E=1") {
    chan::SystemConfig cfg{3, 1, 1, db(30), db(10), 1.0};
    auto f = factors_of({0.6, -0.7, 0.8}, 0.0, cfg);

    // lambda_e = 0
    CHECK(asymptotic_sop_simo(Combiner::MRC, cfg, f, 0.0).value ==
          asymptotic_sop_simo_special(Combiner::MRC, cfg, f, SpecialCase::LambdaZero).value);

    // independent
    auto fi = factors_of({0.0, 0.0, 0.0}, 0.0, cfg);
    CHECK(asymptotic_sop_simo(Combiner::MRC, cfg, fi, 0.0).value ==
          asymptotic_sop_simo_special(Combiner::MRC, cfg, fi, SpecialCase::Independent).value);

    // lambda^2 = 1 lower bound
    CHECK(asymptotic_sop_simo(Combiner::MRC, cfg, f, 1.0).value ==
          asymptotic_sop_simo_special(Combiner::MRC, cfg, f, SpecialCase::FullyCorrelatedEve)
              .value);

    // TAS omega-sum route equals the SIMO k-sum route
    for (Combiner kind : {Combiner::MRC, Combiner::SC, Combiner::EGC}) {
        for (double lam : {0.0, 0.5, 0.9}) {
            const double simo = asymptotic_sop_simo(kind, cfg, f, lam).value;
            const double tas = asymptotic_sop_tas_no_csi(kind, cfg, f, lam, kPrec).value;
            const double tas_csi =
                asymptotic_sop_tas_with_csi(kind, cfg, f, lam, kPrec).value;
            CHECK(tas == doctest::Approx(simo).epsilon(1e-12));
            CHECK(tas_csi == doctest::Approx(simo).epsilon(1e-12));
        }
    }
}

TEST_CASE("lower/upper bound ordering in lambda") {
    chan::SystemConfig cfg{3, 1, 1, db(25), db(5), 1.0};
    auto f = factors_of({0.85, 0.9, -0.95}, 0.0, cfg);
    const double upper =
        asymptotic_sop_simo_special(Combiner::MRC, cfg, f, SpecialCase::LambdaZero).value;
    const double lower =
        asymptotic_sop_simo_special(Combiner::MRC, cfg, f, SpecialCase::FullyCorrelatedEve)
            .value;
    for (double lam : {0.2, 0.5, 0.8}) {
        const double mid = asymptotic_sop_simo(Combiner::MRC, cfg, f, lam).value;
        CHECK(lower <= mid);
        CHECK(mid <= upper);
    }
}

TEST_CASE("sop_ratio identities") {
    chan::SystemConfig cfg{3, 1, 1, db(30), db(10), 1.0};
    auto f = factors_of({0.6, -0.7, 0.8}, 0.0, cfg);
    CHECK(sop_ratio(Combiner::MRC, cfg, f, 0.0, RatioComparison::CorrVsCmc) == 1.0);
    for (double lam : {0.1, 0.4, 0.8})
        CHECK(sop_ratio(Combiner::MRC, cfg, f, lam, RatioComparison::CorrVsCmc) <= 1.0);
    auto fi = factors_of({0.0, 0.0, 0.0}, 0.0, cfg);
    CHECK(sop_ratio(Combiner::MRC, cfg, fi, 0.5, RatioComparison::CorrVsIndep) == 1.0);
    // the ratio is the gamma_e >> 1 array-gain gap: quotient of the closed
    // forms once gamma_e dominates the rate excess
    chan::SystemConfig cfg_bige{3, 1, 1, 1e14, 1e10, 1.0};
    auto f_bige = factors_of({0.6, -0.7, 0.8}, 0.0, cfg_bige);
    const double lam = 0.6;
    const double quotient =
        asymptotic_sop_simo(Combiner::MRC, cfg_bige, f_bige, lam).value /
        asymptotic_sop_simo_special(Combiner::MRC, cfg_bige, f_bige, SpecialCase::LambdaZero)
            .value;
    CHECK(sop_ratio(Combiner::MRC, cfg_bige, f_bige, lam, RatioComparison::CorrVsCmc) ==
          doctest::Approx(quotient).epsilon(1e-9));
    // and the independent-reference version stacks the 1/det(U) penalty on top
    const double quotient_ind =
        asymptotic_sop_simo(Combiner::MRC, cfg_bige, f_bige, lam).value /
        asymptotic_sop_simo_special(Combiner::MRC, cfg_bige, f_bige, SpecialCase::Independent)
            .value;
    CHECK(sop_ratio(Combiner::MRC, cfg_bige, f_bige, lam, RatioComparison::CorrVsIndep) ==
          doctest::Approx(quotient_ind).epsilon(1e-9));
}

TEST_CASE("correlation signs only matter for sampling, not for the forms") {
    chan::SystemConfig cfg{3, 1, 1, db(15), db(5), 1.0};
    const double pos = exact_sop_mrc_equicorrelated(cfg, 0.5, 0.4, kPrec).value;
    const double neg = exact_sop_mrc_equicorrelated(cfg, -0.5, -0.4, kPrec).value;
    CHECK(pos == doctest::Approx(neg).epsilon(1e-12));
    auto f_pos = factors_of({0.6, -0.7, 0.8}, 0.4, cfg);
    auto f_neg = factors_of({-0.6, 0.7, -0.8}, -0.4, cfg);
    CHECK(asymptotic_sop_simo(Combiner::MRC, cfg, f_pos, 0.4).value ==
          asymptotic_sop_simo(Combiner::MRC, cfg, f_neg, -0.4).value);
}

TEST_CASE("exact SOP trivial symmetry case") {
    chan::SystemConfig cfg{1, 1, 1, 5.0, 5.0, 0.0};
    CHECK(exact_sop_mrc_equicorrelated(cfg, 0.0, 0.0, kPrec).value ==
          doctest::Approx(0.5).epsilon(1e-9));
    chan::CorrelationSpec s{{0.0}, 0.0, false, false};
    CHECK(exact_sop_sc(cfg, s, kPrec).value == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("exact SOP against Monte Carlo") {
    chan::SystemConfig cfg{3, 1, 1, db(10), db(5), 1.0};
    const double exact = exact_sop_mrc_equicorrelated(cfg, 0.5, 0.5, kPrec).value;
    chan::CorrelationSpec s{{0.5, 0.5, 0.5}, 0.5, false, false};
    mc::McPlan plan{2'000'000, 7, 2};
    auto sim = mc::estimate_sop(cfg, s, Combiner::MRC, TasMode::Simo, plan);
    const double sigma =
        std::sqrt(sim.value * (1.0 - sim.value) / static_cast<double>(plan.trials));
    CHECK(std::fabs(exact - sim.value) < 3.0 * sigma);

    // SC with the bundled correlated eta vector (one recipe-style point)
    chan::SystemConfig cfg_sc{3, 1, 1, db(20), db(10), 1.0};
    chan::CorrelationSpec u1{{0.85, 0.9, -0.95}, 0.0, false, false};
    const double exact_sc = exact_sop_sc(cfg_sc, u1, kPrec).value;
    auto sim_sc = mc::estimate_sop(cfg_sc, u1, Combiner::SC, TasMode::Simo, plan);
    const double sigma_sc =
        std::sqrt(sim_sc.value * (1.0 - sim_sc.value) / static_cast<double>(plan.trials));
    CHECK(std::fabs(exact_sc - sim_sc.value) < 3.0 * sigma_sc);
}

TEST_CASE("exact SC is M! times exact MRC for independent branches at high SNR") {
    chan::SystemConfig cfg{3, 1, 1, db(40), db(10), 1.0};
    chan::CorrelationSpec ind{{0.0, 0.0, 0.0}, 0.0, false, false};
    const double sc = exact_sop_sc(cfg, ind, kPrec).value;
    const double mrc = exact_sop_mrc_equicorrelated(cfg, 0.0, 0.0, kPrec).value;
    CHECK(sc / mrc == doctest::Approx(6.0).epsilon(0.05));
}

TEST_CASE("exact converges to the asymptotic form as gamma_b grows") {
    // rho = 0.9 pushes the asymptotic regime out: the relative gap shrinks
    // like 1/gamma_b and is ~7% at 35 dB (23% at 30 dB, 2% at 40 dB).
    chan::SystemConfig cfg35{3, 1, 1, db(35), db(10), 1.0};
    auto f = factors_of({0.9, 0.9, 0.9}, 0.0, cfg35);
    const double exact35 = exact_sop_mrc_equicorrelated(cfg35, 0.9, 0.0, kPrec).value;
    const double asym35 = asymptotic_sop_simo(Combiner::MRC, cfg35, f, 0.0).value;
    CHECK(std::fabs(asym35 - exact35) / exact35 < 0.10);

    chan::SystemConfig cfg30{3, 1, 1, db(30), db(10), 1.0};
    chan::SystemConfig cfg40{3, 1, 1, db(40), db(10), 1.0};
    const double gap30 =
        std::fabs(asymptotic_sop_simo(Combiner::MRC, cfg30, f, 0.0).value -
                  exact_sop_mrc_equicorrelated(cfg30, 0.9, 0.0, kPrec).value) /
        exact_sop_mrc_equicorrelated(cfg30, 0.9, 0.0, kPrec).value;
    const double gap40 =
        std::fabs(asymptotic_sop_simo(Combiner::MRC, cfg40, f, 0.0).value -
                  exact_sop_mrc_equicorrelated(cfg40, 0.9, 0.0, kPrec).value) /
        exact_sop_mrc_equicorrelated(cfg40, 0.9, 0.0, kPrec).value;
    CHECK(gap40 < 0.35 * gap30);  // ~1/gamma_b decay
}

TEST_CASE("asymptotic value is returned raw below the valid regime") {
    chan::SystemConfig cfg{2, 1, 1, 1.0, 10.0, 1.0};  // gamma_b far below gamma_e
    auto f = factors_of({0.0, 0.0}, 0.0, cfg);
    CHECK(asymptotic_sop_simo(Combiner::MRC, cfg, f, 0.0).value > 1.0);
}

TEST_CASE("TAS forms reduce to the independent-Rayleigh omega sum") {
    // eta = 0, lambda = 0, N_E = 1: direct recomputation of the closed form
    chan::SystemConfig cfg{2, 2, 1, db(30), db(10), 1.0};
    auto f = factors_of({0.0, 0.0}, 0.0, cfg);
    const double got = asymptotic_sop_tas_no_csi(Combiner::MRC, cfg, f, 0.0, kPrec).value;
    const std::size_t mnt = cfg.m * cfg.n_t;
    double sum = 0.0;
    for (std::size_t w = 0; w <= mnt; ++w)
        sum += std::exp(specfun::log_choose(static_cast<unsigned>(mnt),
                                            static_cast<unsigned>(w))) *
               std::pow(std::exp2(cfg.r_s) - 1.0, static_cast<double>(mnt - w)) *
               std::tgamma(1.0 + static_cast<double>(w)) *
               std::pow(std::exp2(cfg.r_s) * cfg.gamma_bar_e, static_cast<double>(w));
    const double want = sum / (std::pow(std::tgamma(cfg.m + 1.0), 2.0) *
                               std::pow(cfg.gamma_bar_b, static_cast<double>(mnt)));
    CHECK(got == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("TAS combiner gaps match the factorial identities") {
    chan::SystemConfig cfg{3, 2, 2, db(30), db(5), 1.0};
    auto f = factors_of({0.6, -0.7, 0.8}, 0.5, cfg);
    const double mrc = asymptotic_sop_tas_no_csi(Combiner::MRC, cfg, f, 0.5, kPrec).value;
    const double sc = asymptotic_sop_tas_no_csi(Combiner::SC, cfg, f, 0.5, kPrec).value;
    const double egc = asymptotic_sop_tas_no_csi(Combiner::EGC, cfg, f, 0.5, kPrec).value;
    const double m = static_cast<double>(cfg.m);
    const double nt = static_cast<double>(cfg.n_t);
    // MRC/SC = 1/Gamma^{N_t}(M+1); MRC/EGC = Gamma^{N_t}(2M+1)/((2M)^{MN_t} Gamma^{N_t}(M+1))
    CHECK(mrc / sc ==
          doctest::Approx(1.0 / std::pow(std::tgamma(m + 1.0), nt)).epsilon(1e-9));
    const double want_egc = std::pow(std::tgamma(2.0 * m + 1.0), nt) /
                            (std::pow(2.0 * m, m * nt) * std::pow(std::tgamma(m + 1.0), nt));
    CHECK(mrc / egc == doctest::Approx(want_egc).epsilon(1e-9));
}

TEST_CASE("with-CSI TAS never does worse than no-CSI TAS") {
    for (std::size_t m : {1u, 2u, 3u})
        for (std::size_t nt : {1u, 2u, 3u})
            for (std::size_t ne : {1u, 2u})
                for (double lam : {0.0, 0.5, 0.8}) {
                    chan::SystemConfig cfg{m, nt, ne, db(30), db(8), 1.0};
                    auto f = factors_of(std::vector<double>(m, 0.6), lam, cfg);
                    const double no_csi =
                        asymptotic_sop_tas_no_csi(Combiner::MRC, cfg, f, lam, kPrec).value;
                    const double with_csi =
                        asymptotic_sop_tas_with_csi(Combiner::MRC, cfg, f, lam, kPrec).value;
                    CHECK(with_csi <= no_csi * (1.0 + 1e-12));
                }
}

TEST_CASE("TAS scheme gap identity at N_E=1") {
    for (std::size_t m : {1u, 2u, 3u})
        for (std::size_t nt : {1u, 2u, 3u}) {
            chan::SystemConfig cfg{m, nt, 1, db(30), db(10), 1.0};
            auto f = factors_of(std::vector<double>(m, 0.55), 0.4, cfg);
            const double gap = sop_gap_tas_schemes(cfg, f, 0.4, kPrec);
            const double want =
                std::exp(specfun::log_factorial(m * nt) -
                         static_cast<double>(nt) *
                             specfun::log_factorial(m));
            CHECK(gap == doctest::Approx(want).epsilon(1e-9));
        }
    // e.g. M=2, N_t=2: 4!/(2!)^2 = 6
    chan::SystemConfig cfg{2, 2, 1, db(30), db(10), 1.0};
    auto f = factors_of({0.5, 0.5}, 0.3, cfg);
    CHECK(sop_gap_tas_schemes(cfg, f, 0.3, kPrec) == doctest::Approx(6.0).epsilon(1e-9));
}

TEST_CASE("direct quotient of TAS schemes approaches the gap at large gamma_e") {
    chan::SystemConfig cfg{2, 2, 1, db(60), 1e10, 1.0};
    auto f = factors_of({0.5, 0.5}, 0.3, cfg);
    const double quotient =
        asymptotic_sop_tas_no_csi(Combiner::MRC, cfg, f, 0.3, kPrec).value /
        asymptotic_sop_tas_with_csi(Combiner::MRC, cfg, f, 0.3, kPrec).value;
    CHECK(quotient == doctest::Approx(6.0).epsilon(1e-8));
}

TEST_CASE("fully correlated closed form") {
    chan::SystemConfig cfg{2, 2, 1, 100.0, 10.0, 1.0};
    const double want = std::pow(-std::expm1(-1.0 / 180.0), 2.0);
    CHECK(sop_tas_fully_correlated(Combiner::MRC, cfg).value ==
          doctest::Approx(want).epsilon(1e-13));

    chan::SystemConfig zero_rate{2, 1, 1, 100.0, 10.0, 0.0};
    CHECK(sop_tas_fully_correlated(Combiner::MRC, zero_rate).value == 0.0);

    chan::SystemConfig infeasible{2, 2, 1, 10.0, 10.0, 1.0};  // eps*gb = 2^rs*N_E*ge
    CHECK_THROWS_AS(sop_tas_fully_correlated(Combiner::MRC, infeasible), SecrecyInfeasible);
    chan::SystemConfig sc_infeasible{2, 1, 1, 15.0, 10.0, 1.0};  // eps=1 for SC
    CHECK_THROWS_AS(sop_tas_fully_correlated(Combiner::SC, sc_infeasible), SecrecyInfeasible);
    CHECK_NOTHROW(sop_tas_fully_correlated(Combiner::MRC, sc_infeasible));
}

TEST_CASE("eve antenna penalty") {
    {   // N_E = 1 is the reference point
        chan::SystemConfig cfg{2, 2, 1, db(30), db(10), 1.0};
        auto f = factors_of({0.5, 0.5}, 0.4, cfg);
        CHECK(eve_antenna_penalty(cfg, f, 0.4, kPrec) == doctest::Approx(1.0).epsilon(1e-12));
    }
    {   // frozen from the quotient oracle: Gamma(4)/(Gamma(2)Gamma(3)) = 3
        chan::SystemConfig cfg{2, 1, 2, db(40), 1e12, 1.0};
        auto f = factors_of({0.0, 0.0}, 0.0, cfg);
        CHECK(eve_antenna_penalty(cfg, f, 0.0, kPrec) == doctest::Approx(3.0).epsilon(1e-12));
        chan::SystemConfig ref = cfg;
        ref.n_e = 1;
        const double quotient =
            asymptotic_sop_tas_no_csi(Combiner::MRC, cfg, f, 0.0, kPrec).value /
            asymptotic_sop_tas_no_csi(Combiner::MRC, ref, f, 0.0, kPrec).value;
        CHECK(eve_antenna_penalty(cfg, f, 0.0, kPrec) ==
              doctest::Approx(quotient).epsilon(1e-9));
    }
    {   // correlated case against the same quotient oracle
        chan::SystemConfig cfg{2, 2, 3, db(40), 1e12, 1.0};
        auto f = factors_of({0.6, 0.7}, 0.5, cfg);
        chan::SystemConfig ref = cfg;
        ref.n_e = 1;
        const double quotient =
            asymptotic_sop_tas_no_csi(Combiner::MRC, cfg, f, 0.5, kPrec).value /
            asymptotic_sop_tas_no_csi(Combiner::MRC, ref, f, 0.5, kPrec).value;
        CHECK(eve_antenna_penalty(cfg, f, 0.5, kPrec) ==
              doctest::Approx(quotient).epsilon(1e-9));
    }
    {   // more eavesdropper antennas never help the eavesdropper's victim
        double prev = 0.0;
        for (std::size_t ne : {1u, 2u, 3u, 4u}) {
            chan::SystemConfig cfg{2, 2, ne, db(30), db(10), 1.0};
            auto f = factors_of({0.5, 0.5}, 0.4, cfg);
            const double pen = eve_antenna_penalty(cfg, f, 0.4, kPrec);
            CHECK(pen >= prev - 1e-12);
            prev = pen;
        }
    }
}

TEST_CASE("conditional density leading terms") {
    chan::SystemConfig cfg{1, 1, 1, 50.0, 10.0, 1.0};
    auto f = factors_of({0.0}, 0.0, cfg);
    // M=1, eta=0: density constant 1/gamma_b at leading order, any t
    CHECK(pdf_conditional_mrc_asym(1.0, 0.7, cfg, f) ==
          doctest::Approx(1.0 / 50.0).epsilon(1e-13));
    CHECK(pdf_conditional_egc_asym(1.0, 0.7, cfg, f) ==
          doctest::Approx(1.0 / 50.0).epsilon(1e-13));

    chan::SystemConfig cfg2{2, 1, 1, 50.0, 10.0, 1.0};
    auto f2 = factors_of({0.5, -0.5}, 0.0, cfg2);
    // t = 0 drops the exponential factor
    CHECK(pdf_conditional_mrc_asym(2.0, 0.0, cfg2, f2) ==
          doctest::Approx((1.0 + f2.s) / f2.det_u * 2.0 / (50.0 * 50.0)).epsilon(1e-13));
    // exp(-S t) scaling in t
    CHECK(pdf_conditional_mrc_asym(2.0, 1.5, cfg2, f2) /
              pdf_conditional_mrc_asym(2.0, 0.0, cfg2, f2) ==
          doctest::Approx(std::exp(-f2.s * 1.5)).epsilon(1e-12));
}

TEST_CASE("conditional MRC density integrates to the small-x conditional CDF") {
    // large gamma_b, small x: integral_0^X pdf dx should match conditional MC
    const double t = 1.0;
    chan::SystemConfig cfg{2, 1, 1, 1e4, 10.0, 1.0};
    auto f = factors_of({0.5, 0.5}, 0.0, cfg);
    const double X = 40.0;  // CDF ~ 1e-4 regime
    const double analytic_mass = std::exp(-f.s * t) * (1.0 + f.s) / f.det_u * X * X /
                                 (2.0 * cfg.gamma_bar_b * cfg.gamma_bar_b);
    chan::CorrelationSpec s{{0.5, 0.5}, 0.0, false, false};
    auto samples = mc::estimate_conditional_cdf(cfg, s, Combiner::MRC, t, 4'000'000, 17);
    const auto below =
        std::lower_bound(samples.begin(), samples.end(), X) - samples.begin();
    const double empirical = static_cast<double>(below) / static_cast<double>(samples.size());
    CHECK(analytic_mass == doctest::Approx(empirical).epsilon(0.15));
}

TEST_CASE("conditional EGC density integrates to the small-x conditional CDF") {
    const double t = 1.0;
    chan::SystemConfig cfg{2, 1, 1, 1e4, 10.0, 1.0};
    auto f = factors_of({0.5, 0.5}, 0.0, cfg);
    const double X = 40.0;
    const double analytic_mass = std::pow(4.0, 2.0) * std::exp(-f.s * t) * (1.0 + f.s) /
                                 f.det_u * X * X /
                                 (2.0 * 2.0 * std::tgamma(4.0) * cfg.gamma_bar_b *
                                  cfg.gamma_bar_b);
    chan::CorrelationSpec s{{0.5, 0.5}, 0.0, false, false};
    auto samples = mc::estimate_conditional_cdf(cfg, s, Combiner::EGC, t, 4'000'000, 18);
    const auto below =
        std::lower_bound(samples.begin(), samples.end(), X) - samples.begin();
    const double empirical = static_cast<double>(below) / static_cast<double>(samples.size());
    CHECK(analytic_mass == doctest::Approx(empirical).epsilon(0.15));
}

TEST_CASE("joint TAS/MRC density: outage integral reproduces the closed form") {
    for (double lam : {0.0, 0.5, 0.8}) {
        chan::SystemConfig cfg{2, 2, 2, db(25), db(5), 1.0};
        auto f = factors_of({0.6, 0.7}, lam, cfg);
        const double closed =
            asymptotic_sop_tas_no_csi(Combiner::MRC, cfg, f, lam, kPrec).value;
        const double quad = sop_tas_mrc_by_joint_pdf_quadrature(cfg, f, lam, kPrec);
        CHECK(quad == doctest::Approx(closed).epsilon(1e-6));
    }
    {   // many eavesdropper branches, strong cross correlation
        chan::SystemConfig cfg{2, 1, 3, db(25), db(5), 1.0};
        auto f = factors_of({0.6, 0.7}, 0.8, cfg);
        const double closed =
            asymptotic_sop_tas_no_csi(Combiner::MRC, cfg, f, 0.8, kPrec).value;
        const double quad = sop_tas_mrc_by_joint_pdf_quadrature(cfg, f, 0.8, kPrec);
        CHECK(quad == doctest::Approx(closed).epsilon(1e-6));
    }
}

TEST_CASE("TAS forms track Monte Carlo with cross-correlated eavesdropper branches") {
    // lambda != 0 and N_E > 1 exercise the full 2F1 content of the
    // omega sums; 35/5 dB keeps the outage rate within MC reach
    chan::SystemConfig cfg{1, 2, 3, db(35), db(5), 1.0};
    chan::CorrelationSpec s{{0.7}, 0.6, false, false};
    auto f = factors_of({0.7}, 0.6, cfg);
    const double asym_no = asymptotic_sop_tas_no_csi(Combiner::MRC, cfg, f, 0.6, kPrec).value;
    const double asym_with =
        asymptotic_sop_tas_with_csi(Combiner::MRC, cfg, f, 0.6, kPrec).value;
    mc::McPlan plan{10'000'000, 61, 2};
    auto sim_no = mc::estimate_sop(cfg, s, Combiner::MRC, TasMode::TasNoEveCsi, plan);
    auto sim_with = mc::estimate_sop(cfg, s, Combiner::MRC, TasMode::TasWithEveCsi, plan);
    CHECK(asym_no == doctest::Approx(sim_no.value).epsilon(0.20));
    CHECK(asym_with == doctest::Approx(sim_with.value).epsilon(0.20));
    CHECK(sim_with.value < sim_no.value);  // CSI at the transmitter helps
}

TEST_CASE("joint TAS/MRC density reduces to the conditional product at N_t=1") {
    // f(x,y) = integral e^{-t} f_B(x|t) f_E(y|t) dt with the Appendix forms
    chan::SystemConfig cfg{2, 1, 2, db(25), db(5), 1.0};
    const double lam = 0.5;
    auto f = factors_of({0.6, 0.7}, lam, cfg);
    const double lam2 = lam * lam;
    const double ne = 2.0;
    auto f_eve_cond = [&](double y, double t) {
        // conditional eavesdropper MRC density (noncentral chi-square, 2 N_E dof)
        const double ge = cfg.gamma_bar_e;
        const double scale = ge * (1.0 - lam2);
        const double z = 2.0 * std::sqrt(ne * lam2 * t * y / (ge * (1.0 - lam2) * (1.0 - lam2)));
        const double log_v = -(y + ne * ge * lam2 * t) / scale - std::log(scale) +
                             0.5 * (ne - 1.0) * std::log(y / (ne * ge * lam2 * t)) + z +
                             std::log(specfun::bessel_i_scaled(1, z));
        return std::exp(log_v);
    };
    for (double x : {5.0, 30.0})
        for (double y : {0.5, 3.0}) {
            const double joint = joint_pdf_tas_mrc(x, y, cfg, f, lam, kPrec);
            const double composed = specfun::quad_semi_infinite(
                [&](double t) {
                    if (t <= 0.0) return 0.0;
                    return std::exp(-t) * pdf_conditional_mrc_asym(x, t, cfg, f) *
                           f_eve_cond(y, t);
                },
                kPrec);
            CHECK(joint == doctest::Approx(composed).epsilon(1e-6));
        }
}

TEST_CASE("joint density 1F1 factor is unity on the y=0 slice") {
    chan::SystemConfig cfg{2, 2, 1, db(25), db(5), 1.0};
    const double lam = 0.5;
    auto f = factors_of({0.6, 0.7}, lam, cfg);
    const double with_corr = joint_pdf_tas_mrc(3.0, 0.0, cfg, f, lam, kPrec);
    // at y = 0 only the constant and x-power survive; compare against the
    // same expression with the 1F1 factor dropped by construction
    const double lam2 = lam * lam;
    const double alpha = 1.0 + f.s + lam2 / (1.0 - lam2);
    const double expect =
        std::exp(std::log(2.0) - std::log(std::tgamma(3.0)) - std::log(f.det_u) +
                 std::log((1.0 + f.s) / f.det_u) - std::log(1.0 - lam2) -
                 std::log(std::tgamma(2.0)) - 4.0 * std::log(cfg.gamma_bar_b) -
                 std::log(cfg.gamma_bar_e) - std::log(alpha) + 3.0 * std::log(3.0));
    CHECK(with_corr == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("domain guards") {
    chan::SystemConfig cfg{2, 2, 1, db(30), db(10), 1.0};
    auto f = factors_of({0.5, 0.5}, 0.0, cfg);
    CHECK_THROWS_AS(asymptotic_sop_tas_no_csi(Combiner::MRC, cfg, f, 1.0, kPrec),
                    DegenerateCorrelation);
    chan::SystemConfig simo{2, 1, 1, db(30), db(10), 1.0};
    CHECK_THROWS_AS(exact_sop_mrc_equicorrelated(simo, 1.0, 0.0, kPrec), DomainError);
    chan::SystemConfig not_simo{2, 2, 1, db(30), db(10), 1.0};
    CHECK_THROWS_AS(exact_sop_mrc_equicorrelated(not_simo, 0.5, 0.0, kPrec), DomainError);
    CHECK_THROWS_AS(asymptotic_sop_simo(Combiner::MRC, not_simo, f, 0.0), DomainError);
}

TEST_SUITE_END();
