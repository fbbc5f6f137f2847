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

#include "xzzx/stats.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <thread>

#include "xzzx/fits.hpp"

namespace xzzx {

namespace {

double clipped_sigma(double failures, double trials) {
    double f = failures / trials;
    double fc = std::clamp(f, 0.25 / trials, 1.0 - 0.25 / trials);
    return std::max(std::sqrt(fc * (1 - fc) / trials), 1e-9);
}

void solve3(double m[3][3], double v[3], double out[3]) {
    // Gaussian elimination with partial pivoting on a 3x3 system.
    int idx[3] = {0, 1, 2};
    for (int c = 0; c < 3; c++) {
        int piv = c;
        for (int r = c + 1; r < 3; r++)
            if (std::abs(m[idx[r]][c]) > std::abs(m[idx[piv]][c])) piv = r;
        std::swap(idx[c], idx[piv]);
        if (std::abs(m[idx[c]][c]) < 1e-300) throw std::invalid_argument("singular fit system");
        for (int r = c + 1; r < 3; r++) {
            double f = m[idx[r]][c] / m[idx[c]][c];
            for (int cc = c; cc < 3; cc++) m[idx[r]][cc] -= f * m[idx[c]][cc];
            v[idx[r]] -= f * v[idx[c]];
        }
    }
    for (int c = 2; c >= 0; c--) {
        double acc = v[idx[c]];
        for (int cc = c + 1; cc < 3; cc++) acc -= m[idx[c]][cc] * out[cc];
        out[c] = acc / m[idx[c]][c];
    }
}

struct QuadFitResult {
    double coeff[3];
    double chi2;
};

QuadFitResult quadratic_wls(const std::vector<double>& x, const std::vector<double>& y,
                            const std::vector<double>& w) {
    double m[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
    double v[3] = {0, 0, 0};
    for (std::size_t i = 0; i < x.size(); i++) {
        double b[3] = {1.0, x[i], x[i] * x[i]};
        for (int r = 0; r < 3; r++) {
            for (int c = 0; c < 3; c++) m[r][c] += w[i] * b[r] * b[c];
            v[r] += w[i] * b[r] * y[i];
        }
    }
    QuadFitResult res{};
    solve3(m, v, res.coeff);
    res.chi2 = 0;
    for (std::size_t i = 0; i < x.size(); i++) {
        double pred = res.coeff[0] + res.coeff[1] * x[i] + res.coeff[2] * x[i] * x[i];
        res.chi2 += w[i] * (y[i] - pred) * (y[i] - pred);
    }
    return res;
}

}  // namespace

std::string decoder_id_to_string(DecoderId id) {
    switch (id) {
        case DecoderId::Mwpm2D: return "mwpm";
        case DecoderId::InfiniteBias: return "infinite-bias";
        case DecoderId::Mwpm3D: return "mwpm-3d";
        case DecoderId::MaxLikelihood: return "ml";
    }
    return "?";
}

DecoderId decoder_id_from_string(const std::string& s) {
    if (s == "mwpm") return DecoderId::Mwpm2D;
    if (s == "infinite-bias") return DecoderId::InfiniteBias;
    if (s == "mwpm-3d") return DecoderId::Mwpm3D;
    if (s == "ml") return DecoderId::MaxLikelihood;
    throw std::invalid_argument("unknown decoder id: " + s);
}

double TrialBatch::std_error() const {
    if (trials == 0) return 0.0;
    return clipped_sigma(double(failures()), double(trials));
}

TrialBatch run_batch(const BatchParams& params, uint64_t trials, uint64_t master_seed,
                     int workers) {
    const auto t_start = std::chrono::steady_clock::now();
    const StabilizerCode code = build_xzzx_code(params.geometry);
    const BiasSpec bias{params.p, params.eta, params.axis};
    bias.validate();

    if (params.fault_tolerant && params.decoder != DecoderId::Mwpm3D)
        throw std::invalid_argument("fault-tolerant batches use the mwpm-3d decoder");
    if (!params.fault_tolerant && params.decoder == DecoderId::Mwpm3D)
        throw std::invalid_argument("mwpm-3d requires a fault-tolerant batch");

    const PauliChannel channel = bias_to_channel(bias);
    const PhenomenologicalNoise noise =
        params.fault_tolerant
            ? PhenomenologicalNoise::from_bias(params.p, params.eta, params.rounds, params.axis)
            : PhenomenologicalNoise{};

    auto run_trial = [&](uint64_t index) -> Outcome {
        Rng rng(derive_seed(master_seed, index));
        if (params.fault_tolerant) {
            auto sample = sample_spacetime(noise, code, rng, params.closure);
            auto correction = decode_3d(code, sample, noise);
            return adjudicate(code, sample.cumulative.back(), correction);
        }
        PauliOperator error = sample_error(channel, code.n, rng);
        Syndrome s = syndrome(code, error);
        Correction correction;
        switch (params.decoder) {
            case DecoderId::Mwpm2D: correction = decode_2d(code, s, bias); break;
            case DecoderId::InfiniteBias: correction = decode_infinite_bias(code, s); break;
            case DecoderId::MaxLikelihood: correction = ml_decode(code, s, channel); break;
            default: throw std::logic_error("unreachable decoder branch");
        }
        return adjudicate(code, error, correction);
    };

    workers = std::max(1, workers);
    std::vector<uint64_t> logical(workers, 0), temporal(workers, 0);
    std::vector<std::string> errors(workers);
    auto worker_fn = [&](int w) {
        try {
            for (uint64_t i = w; i < trials; i += uint64_t(workers)) {
                Outcome o = run_trial(i);
                if (o == Outcome::LogicalFailure) logical[w]++;
                if (o == Outcome::TemporalFailure) temporal[w]++;
            }
        } catch (const std::exception& e) {
            errors[w] = e.what();
        }
    };
    if (workers == 1) {
        worker_fn(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; w++) pool.emplace_back(worker_fn, w);
        for (auto& t : pool) t.join();
    }
    for (const auto& e : errors)
        if (!e.empty()) throw std::runtime_error("trial failed: " + e);

    TrialBatch batch;
    batch.params = params;
    batch.trials = trials;
    batch.master_seed = master_seed;
    for (int w = 0; w < workers; w++) {
        batch.failures_logical += logical[w];
        batch.failures_temporal += temporal[w];
    }
    batch.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return batch;
}

ThresholdFit fit_threshold(const std::vector<ThresholdPoint>& points,
                           const ThresholdFitOptions& options) {
    std::set<int> dset;
    std::set<double> pset;
    for (const auto& pt : points) {
        dset.insert(pt.d);
        pset.insert(pt.p);
    }
    if (dset.size() < 3)
        throw std::invalid_argument("fit_threshold needs at least 3 code distances");
    if (pset.size() < 4)
        throw std::invalid_argument("fit_threshold needs at least 4 error rates");

    // Failure-rate table.
    auto rate = [&](const ThresholdPoint& pt) { return double(pt.failures) / double(pt.trials); };

    double win_lo, win_hi;
    if (options.window) {
        win_lo = options.window->first;
        win_hi = options.window->second;
    } else {
        // Visual crossing estimate: where the smallest- and largest-distance
        // curves change order.
        int dmin = *dset.begin(), dmax = *dset.rbegin();
        std::map<double, double> fmin, fmax;
        for (const auto& pt : points) {
            if (pt.d == dmin) fmin[pt.p] = rate(pt);
            if (pt.d == dmax) fmax[pt.p] = rate(pt);
        }
        std::vector<std::pair<double, double>> gap;  // p -> f_max - f_min
        for (const auto& [p, f] : fmin) {
            auto it = fmax.find(p);
            if (it != fmax.end()) gap.push_back({p, it->second - f});
        }
        double crossing = -1;
        for (std::size_t i = 0; i + 1 < gap.size(); i++) {
            if (gap[i].second == 0) crossing = gap[i].first;
            if (gap[i].second * gap[i + 1].second < 0) {
                double t = gap[i].second / (gap[i].second - gap[i + 1].second);
                crossing = gap[i].first + t * (gap[i + 1].first - gap[i].first);
                break;
            }
        }
        if (crossing <= 0)
            throw std::invalid_argument(
                "no crossing of failure-rate curves in the sampled range; cannot fit a threshold");
        win_lo = 0.7 * crossing;
        win_hi = 1.3 * crossing;
    }

    std::vector<ThresholdPoint> kept;
    for (const auto& pt : points)
        if (pt.p >= win_lo && pt.p <= win_hi) kept.push_back(pt);
    {
        std::set<int> dk;
        std::set<double> pk;
        for (const auto& pt : kept) {
            dk.insert(pt.d);
            pk.insert(pt.p);
        }
        if (dk.size() < 3 || pk.size() < 4)
            throw std::invalid_argument("too few points inside the fit window");
    }

    double pmin = 1e300, pmax = -1e300;
    for (const auto& pt : kept) {
        pmin = std::min(pmin, pt.p);
        pmax = std::max(pmax, pt.p);
    }

    auto chi2_of = [&](const std::vector<ThresholdPoint>& pts, double pc, double nu,
                       QuadFitResult* out) -> double {
        if (pc < pmin || pc > pmax || nu < 0.3 || nu > 10.0)
            return 1e18 * (1 + std::abs(pc) + std::abs(nu));
        std::vector<double> x, y, w;
        for (const auto& pt : pts) {
            x.push_back((pt.p - pc) * std::pow(double(pt.d), 1.0 / nu));
            y.push_back(rate(pt));
            double s = clipped_sigma(double(pt.failures), double(pt.trials));
            w.push_back(1.0 / (s * s));
        }
        try {
            auto res = quadratic_wls(x, y, w);
            if (out) *out = res;
            return res.chi2;
        } catch (const std::exception&) {
            return 1e18;
        }
    };

    auto fit_once = [&](const std::vector<ThresholdPoint>& pts, double pc0) {
        double best_pc = pc0, best_nu = 1.5, best_val = 1e300;
        for (double nu0 : {1.0, 1.5, 2.5}) {
            auto [sol, val] = nelder_mead_2d(
                [&](double pc, double nu) { return chi2_of(pts, pc, nu, nullptr); }, pc0, nu0,
                0.05 * (pmax - pmin), 0.4, 400);
            if (val < best_val) {
                best_val = val;
                best_pc = sol[0];
                best_nu = sol[1];
            }
        }
        return std::make_pair(best_pc, best_nu);
    };

    double pc0 = 0.5 * (win_lo + win_hi);
    auto [pc, nu] = fit_once(kept, pc0);

    ThresholdFit fit;
    fit.window_lo = win_lo;
    fit.window_hi = win_hi;
    fit.p_c = pc;
    fit.nu = nu;
    QuadFitResult quad{};
    fit.chi2 = chi2_of(kept, pc, nu, &quad);
    fit.a = quad.coeff[0];
    fit.b = quad.coeff[1];
    fit.c = quad.coeff[2];
    fit.dof = int(kept.size()) - 5;

    // Jackknife over code distance.
    std::vector<int> ds;
    for (const auto& pt : kept) ds.push_back(pt.d);
    std::sort(ds.begin(), ds.end());
    ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
    std::vector<double> jk_pc, jk_nu;
    for (int leave : ds) {
        std::vector<ThresholdPoint> subset;
        for (const auto& pt : kept)
            if (pt.d != leave) subset.push_back(pt);
        std::set<int> sd;
        for (const auto& pt : subset) sd.insert(pt.d);
        if (sd.size() < 2) continue;
        try {
            auto [jpc, jnu] = fit_once(subset, pc);
            jk_pc.push_back(jpc);
            jk_nu.push_back(jnu);
        } catch (const std::exception&) {
        }
    }
    fit.jackknife_p_c = jk_pc;
    auto jack_err = [](const std::vector<double>& vals) {
        if (vals.size() < 2) return 0.0;
        double mean = 0;
        for (double v : vals) mean += v;
        mean /= double(vals.size());
        double ss = 0;
        for (double v : vals) ss += (v - mean) * (v - mean);
        double m = double(vals.size());
        return std::sqrt((m - 1) / m * ss);
    };
    fit.p_c_err = jack_err(jk_pc);
    fit.nu_err = jack_err(jk_nu);
    return fit;
}

SubthresholdFit fit_subthreshold(const std::vector<SubthresholdPoint>& points,
                                 SubthresholdModel model) {
    SubthresholdFit fit;
    fit.model = model;
    std::vector<double> x, y, s;
    for (const auto& pt : points) {
        if (pt.failure_rate <= 0) {
            fit.warnings.push_back("dropping zero-failure batch at d=" + std::to_string(pt.d));
            continue;
        }
        double xv = model == SubthresholdModel::QuadraticExponent ? double(pt.d) * pt.d
                                                                  : double(pt.d);
        x.push_back(xv);
        y.push_back(std::log(pt.failure_rate));
        s.push_back(std::max(pt.sigma / pt.failure_rate, 1e-9));
    }
    if (x.size() < 3)
        throw std::invalid_argument("fit_subthreshold needs >= 3 distances with failures");
    auto lin = weighted_linear_fit(x, y, s);
    fit.log_a = lin.intercept;
    fit.b = lin.slope;
    fit.log_a_err = lin.intercept_err;
    fit.b_err = lin.slope_err;
    fit.chi2 = lin.chi2;
    fit.dof = lin.dof;
    return fit;
}

AnsatzFit fit_gradient_vs_logit(const std::vector<GradientPoint>& points) {
    if (points.size() < 2) throw std::invalid_argument("need >= 2 gradient points");
    std::vector<double> x, y, s;
    for (const auto& pt : points) {
        x.push_back(std::log(pt.p / (1 - pt.p)));
        y.push_back(pt.gradient);
        s.push_back(std::max(pt.sigma, 1e-9));
    }
    auto lin = weighted_linear_fit(x, y, s);
    AnsatzFit fit;
    fit.slope = lin.slope;
    fit.slope_err = lin.slope_err;
    fit.intercept = lin.intercept;
    fit.intercept_err = lin.intercept_err;
    fit.chi2 = lin.chi2;
    fit.dof = lin.dof;
    return fit;
}

double intercept_bias_term(double eta) {
    return 0.25 * std::log((eta + 0.5) / ((eta + 1) * (eta + 1)));
}

double gamma_from_intercept(double eta, double intercept) {
    return (intercept - intercept_bias_term(eta)) / std::log(2.0);
}

GammaFit estimate_gamma(const std::vector<InterceptPoint>& points) {
    if (points.size() < 3) throw std::invalid_argument("estimate_gamma needs >= 3 biases");
    std::vector<double> x, y, s;
    for (const auto& pt : points) {
        x.push_back(intercept_bias_term(pt.eta));
        y.push_back(pt.intercept);
        s.push_back(std::max(pt.sigma, 1e-9));
    }
    auto lin = weighted_linear_fit(x, y, s);
    GammaFit fit;
    fit.slope = lin.slope;
    fit.slope_err = lin.slope_err;
    fit.gamma = lin.intercept / std::log(2.0);
    fit.gamma_err = lin.intercept_err / std::log(2.0);
    return fit;
}

RareEventEstimate rare_event_estimate(const BatchParams& params, int max_weight,
                                      uint64_t samples_per_stratum, uint64_t master_seed,
                                      int workers) {
    if (params.fault_tolerant)
        throw std::invalid_argument("rare_event_estimate covers code-capacity noise only");
    const StabilizerCode code = build_xzzx_code(params.geometry);
    const BiasSpec bias{params.p, params.eta, params.axis};
    const PauliChannel channel = bias_to_channel(bias);
    const int n = code.n;
    max_weight = std::min(max_weight, n);

    // Conditional letter thresholds given that an error happened.
    const double cx = channel.r_x;
    const double cxy = channel.r_x + channel.r_y;

    RareEventEstimate est;
    workers = std::max(1, workers);

    for (int w = 0; w <= max_weight; w++) {
        std::vector<uint64_t> fails(workers, 0);
        auto worker_fn = [&](int wk) {
            std::vector<int> deck(n);
            for (uint64_t s = wk; s < samples_per_stratum; s += uint64_t(workers)) {
                Rng rng(derive_seed(master_seed ^ (uint64_t(w) * 0x9E3779B97F4A7C15ULL), s));
                for (int i = 0; i < n; i++) deck[i] = i;
                PauliOperator error(n);
                for (int i = 0; i < w; i++) {
                    int j = i + int(rng.below(uint64_t(n - i)));
                    std::swap(deck[i], deck[j]);
                    double u = rng.uniform();
                    Pauli letter = u < cx ? Pauli::X : (u < cxy ? Pauli::Y : Pauli::Z);
                    error.set(deck[i], letter);
                }
                Syndrome synd = syndrome(code, error);
                Correction corr;
                switch (params.decoder) {
                    case DecoderId::Mwpm2D: corr = decode_2d(code, synd, bias); break;
                    case DecoderId::InfiniteBias: corr = decode_infinite_bias(code, synd); break;
                    case DecoderId::MaxLikelihood: corr = ml_decode(code, synd, channel); break;
                    default: throw std::invalid_argument("unsupported decoder for rare events");
                }
                if (adjudicate(code, error, corr) != Outcome::Success) fails[wk]++;
            }
        };
        if (workers == 1) {
            worker_fn(0);
        } else {
            std::vector<std::thread> pool;
            for (int t = 0; t < workers; t++) pool.emplace_back(worker_fn, t);
            for (auto& t : pool) t.join();
        }
        StratumStat stat;
        stat.weight = w;
        stat.samples = samples_per_stratum;
        for (auto f : fails) stat.failures += f;
        est.strata.push_back(stat);
    }

    // Combine with exact binomial stratum probabilities.
    const double p = params.p;
    auto log_choose = [&](int w) {
        return std::lgamma(n + 1.0) - std::lgamma(w + 1.0) - std::lgamma(n - w + 1.0);
    };
    double value = 0, var = 0;
    for (const auto& st : est.strata) {
        if (st.weight == 0) continue;  // identity errors never fail
        double coeff = std::exp(log_choose(st.weight) + st.weight * std::log(p) +
                                (n - st.weight) * std::log1p(-p));
        double f = double(st.failures) / double(st.samples);
        value += coeff * f;
        double fvar = f * (1 - f);
        if (st.failures > 0 && st.failures < 10) {
            fvar += 1.0 / double(st.samples);  // widened bar for a starved stratum
            est.warnings.push_back("stratum w=" + std::to_string(st.weight) + " has only " +
                                   std::to_string(st.failures) + " failures");
        }
        var += coeff * coeff * fvar / double(st.samples);
    }
    double tail = 0;
    for (int w = max_weight + 1; w <= n; w++)
        tail += std::exp(log_choose(w) + w * std::log(p) + (n - w) * std::log1p(-p));
    est.value = value;
    est.sigma = std::sqrt(var);
    est.truncation_bound = tail;
    if (tail > est.sigma && tail > 1e-3 * std::max(value, 1e-300))
        est.warnings.push_back("truncated strata may contribute up to " + std::to_string(tail));
    return est;
}

double aspect_ratio_optimum(double p, double eta) {
    if (!(p > 0.0 && p < 1.0))
        throw std::invalid_argument("aspect_ratio_optimum needs 0 < p < 1");
    if (!(eta >= 0.5)) throw std::invalid_argument("aspect_ratio_optimum needs eta >= 1/2");
    return 1.0 - std::log(eta) / std::log(p);
}

}  // namespace xzzx
