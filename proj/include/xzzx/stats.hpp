// Copyright 2026 xzzxsim Contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef XZZX_STATS_H
#define XZZX_STATS_H

#include <optional>
#include <string>
#include <vector>

#include "xzzx/decoder.hpp"

namespace xzzx {

enum class DecoderId { Mwpm2D, InfiniteBias, Mwpm3D, MaxLikelihood };

std::string decoder_id_to_string(DecoderId id);
DecoderId decoder_id_from_string(const std::string& s);

/// One Monte Carlo cell: a geometry, a noise setting and a decoder.
/// Code-capacity cells sample a single perfect-measurement round;
/// fault-tolerant cells run `rounds` noisy measurement rounds and decode
/// the full spacetime volume.
struct BatchParams {
    LatticeGeometry geometry = Periodic{3, 3};
    DecoderId decoder = DecoderId::Mwpm2D;
    bool fault_tolerant = false;
    double p = 0.0;
    double eta = 0.5;  // kInfiniteBias for pure axis noise
    Pauli axis = Pauli::Z;
    int rounds = 1;
    TemporalClosure closure = TemporalClosure::Periodic;
};

struct TrialBatch {
    BatchParams params;
    uint64_t trials = 0;
    uint64_t failures_logical = 0;
    uint64_t failures_temporal = 0;
    uint64_t master_seed = 0;
    double wall_time_s = 0.0;

    uint64_t failures() const { return failures_logical + failures_temporal; }
    double failure_rate() const { return trials ? double(failures()) / double(trials) : 0.0; }
    /// Binomial standard error, clipped away from zero for fitting.
    double std_error() const;
};

/// Runs `trials` independent samples. Every trial derives its own seed from
/// (master_seed, trial index), so failure counts are identical for any
/// worker count.
TrialBatch run_batch(const BatchParams& params, uint64_t trials, uint64_t master_seed,
                     int workers = 1);

// --- Threshold estimation (critical exponent method) ---------------------

struct ThresholdPoint {
    int d = 0;
    double p = 0.0;
    uint64_t trials = 0;
    uint64_t failures = 0;
};

struct ThresholdFit {
    double p_c = 0.0, nu = 0.0;
    double p_c_err = 0.0, nu_err = 0.0;  // jackknife over code distance
    double a = 0.0, b = 0.0, c = 0.0;    // quadratic coefficients
    double chi2 = 0.0;
    int dof = 0;
    std::vector<double> jackknife_p_c;
    double window_lo = 0.0, window_hi = 0.0;
};

struct ThresholdFitOptions {
    /// With no explicit window, points within +-30% of the visually
    /// estimated crossing are kept.
    std::optional<std::pair<double, double>> window;
};

/// Fits the failure rate to A + B x + C x^2 with x = (p - p_c) d^(1/nu).
/// Needs >= 3 distances and >= 4 error rates spanning a crossing; throws
/// std::invalid_argument with a diagnostic otherwise.
ThresholdFit fit_threshold(const std::vector<ThresholdPoint>& points,
                           const ThresholdFitOptions& options = {});

// --- Sub-threshold scaling ------------------------------------------------

enum class SubthresholdModel { LinearExponent, QuadraticExponent };

struct SubthresholdPoint {
    int d = 0;
    double failure_rate = 0.0;
    double sigma = 0.0;
};

struct SubthresholdFit {
    SubthresholdModel model;
    double log_a = 0.0, b = 0.0;
    double log_a_err = 0.0, b_err = 0.0;
    double chi2 = 0.0;
    int dof = 0;
    std::vector<std::string> warnings;
};

/// Log-linear least squares of log P against d (linear-exponent model) or
/// d^2 (quadratic-exponent model). Zero-failure points are dropped with a
/// warning; fewer than 3 usable distances is an error.
SubthresholdFit fit_subthreshold(const std::vector<SubthresholdPoint>& points,
                                 SubthresholdModel model);

// --- Ansatz gradient / intercept analysis ---------------------------------

struct GradientPoint {
    double p = 0.0;
    double gradient = 0.0;  // G(p, eta) = d log P / d d
    double sigma = 0.0;
};

struct AnsatzFit {
    double slope = 0.0, slope_err = 0.0;          // expected ~ 1/2
    double intercept = 0.0, intercept_err = 0.0;  // I(eta)
    double chi2 = 0.0;
    int dof = 0;
};

/// Fits G(p, eta) against log(p/(1-p)); the intercept is I(eta).
AnsatzFit fit_gradient_vs_logit(const std::vector<GradientPoint>& points);

/// Entropy bias term (1/4) log[(eta+1/2)/(eta+1)^2] from the linear ansatz.
double intercept_bias_term(double eta);

/// gamma from a single-bias intercept, assuming the ansatz coefficient 1/4.
double gamma_from_intercept(double eta, double intercept);

struct GammaFit {
    double slope = 0.0, slope_err = 0.0;  // against the 1/4-log term, ~ 1
    double gamma = 0.0, gamma_err = 0.0;
};

struct InterceptPoint {
    double eta = 0.0;
    double intercept = 0.0;
    double sigma = 0.0;
};

/// Linear fit of I(eta) against the entropy bias term over >= 3 biases;
/// gamma comes from the fit intercept divided by log 2.
GammaFit estimate_gamma(const std::vector<InterceptPoint>& points);

// --- Weight-stratified rare-event estimator -------------------------------

struct StratumStat {
    int weight = 0;
    uint64_t samples = 0;
    uint64_t failures = 0;
};

struct RareEventEstimate {
    double value = 0.0;
    double sigma = 0.0;
    /// Upper bound on the probability mass of the truncated strata.
    double truncation_bound = 0.0;
    std::vector<StratumStat> strata;
    std::vector<std::string> warnings;
};

/// Unbiased logical-failure estimate for code-capacity noise at low p:
/// error weights w are stratified with exact binomial stratum probabilities
/// and the conditional failure probability per stratum is estimated by
/// Monte Carlo.
RareEventEstimate rare_event_estimate(const BatchParams& params, int max_weight,
                                      uint64_t samples_per_stratum, uint64_t master_seed,
                                      int workers = 1);

/// Optimal code aspect ratio d_Z/d_X = 1 - log(eta)/log(p) at low error
/// rates. Throws for p outside (0, 1) or eta < 1/2.
double aspect_ratio_optimum(double p, double eta);

}  // namespace xzzx

#endif
