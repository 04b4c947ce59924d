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
#include <vector>

#include "secop/analytic.hpp"
#include "secop/mcsim.hpp"

namespace secop::sweep {

// A figure-reproduction run: evaluate the selected methods and combiners on
// a gamma_b grid (dB) or, alternatively, on a lambda_e grid at fixed
// gamma_b. dB values convert to linear exactly once, here at config time;
// everything downstream is linear.
struct SweepSpec {
    std::size_t m = 1;
    std::size_t n_t = 1;
    std::size_t n_e = 1;
    double r_s = 1.0;
    std::vector<double> gamma_b_db_grid;
    double gamma_e_db = 0.0;
    std::vector<combine::Combiner> combiners;
    combine::TasMode tas_mode = combine::TasMode::Simo;
    std::vector<analytic::Method> methods;
    chan::CorrelationSpec correlation;
    std::vector<double> lambda_e_grid;  // empty: sweep gamma_b
    mc::McPlan mcplan;
    specfun::Precision precision;

    bool sweeps_lambda() const { return !lambda_e_grid.empty(); }
};

struct CurvePoint {
    double axis_value = 0.0;  // gamma_b in dB, or lambda_e for lambda sweeps
    combine::Combiner combiner = combine::Combiner::MRC;
    combine::TasMode tas_mode = combine::TasMode::Simo;
    analytic::Method method = analytic::Method::Asymptotic;
    double sop = 0.0;
    std::optional<std::pair<double, double>> ci;
    bool outside_asymptotic_regime = false;
};

// Parses and fully validates a JSON sweep config. Unknown keys are
// rejected; diagnostics name the offending field.
SweepSpec parse_config(const std::string& text);
SweepSpec load_config(const std::string& path);

// Evaluates every (grid point x combiner x method) cell. Rows come back in
// grid order regardless of which worker finished first.
std::vector<CurvePoint> run_sweep(const SweepSpec& spec);

// CSV with the fixed column set
//   gamma_b_db,combiner,tas_mode,method,sop,ci_low,ci_high,regime_flag
// (first header cell reads lambda_e for lambda sweeps). 9 significant
// digits, LF endings, written atomically via rename.
void write_csv(const std::vector<CurvePoint>& points, bool lambda_axis,
               const std::string& path);
std::string to_csv(const std::vector<CurvePoint>& points, bool lambda_axis);

// One cross-check of the built-in validation suite.
struct Check {
    std::string name;
    bool pass = false;
    double got = 0.0;
    double want = 0.0;
    double tol = 0.0;
    std::string detail;
};

bool check_rel(Check& c);  // fills c.pass from |got-want| <= tol*max(|want|,tiny)

// The cross-validation suite behind `secop validate`: determinant
// reproduction, ratio identities, reduction lattice, correlation-effect
// orderings, diversity slopes, and MC-vs-closed-form agreement. mc_trials
// sizes the Monte Carlo checks.
std::vector<Check> run_validation(std::uint64_t mc_trials, std::uint64_t seed, unsigned workers);

std::string checks_to_json(const std::vector<Check>& checks);

}  // namespace secop::sweep
