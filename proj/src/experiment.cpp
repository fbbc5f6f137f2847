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

#include "xzzx/experiment.hpp"

#include <cmath>
#include <functional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace xzzx {

using nlohmann::json;

namespace {

const char* kind_names[] = {"code-capacity",     "fault-tolerant", "threshold-scan",
                            "subthreshold-scan", "hashing-bound",  "aspect-ratio"};

ExperimentKind kind_from_string(const std::string& s) {
    for (int i = 0; i < 6; i++)
        if (s == kind_names[i]) return static_cast<ExperimentKind>(i);
    throw std::invalid_argument("unknown experiment kind: " + s);
}

void reject_unknown_keys(const json& j, const std::vector<std::string>& allowed,
                         const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
            throw std::invalid_argument("unknown config field '" + it.key() + "' in " + where);
    }
}

double eta_from_json(const json& j) {
    if (j.is_string()) {
        if (j.get<std::string>() == "inf") return kInfiniteBias;
        throw std::invalid_argument("eta must be a number or \"inf\"");
    }
    return j.get<double>();
}

json eta_to_json(double eta) {
    if (eta == kInfiniteBias) return "inf";
    return eta;
}

LatticeGeometry make_geometry(const ExperimentConfig& cfg, int d) {
    if (cfg.geometry_type == "periodic") {
        return Periodic{d, cfg.coprime ? d + 1 : d};
    }
    return OpenRectangular{d, d};
}

json geometry_json(const LatticeGeometry& g) {
    if (const auto* p = std::get_if<Periodic>(&g))
        return {{"type", "periodic"}, {"rows", p->rows}, {"cols", p->cols}};
    const auto& o = std::get<OpenRectangular>(g);
    return {{"type", "open"}, {"d_x", o.d_x}, {"d_z", o.d_z}};
}

json batch_record(const TrialBatch& b, int d) {
    json noise;
    if (b.params.fault_tolerant) {
        auto pn = PhenomenologicalNoise::from_bias(b.params.p, b.params.eta, b.params.rounds,
                                                   b.params.axis);
        noise = {{"model", "phenomenological"},
                 {"p", b.params.p},
                 {"eta", eta_to_json(b.params.eta)},
                 {"q", pn.q},
                 {"axis", std::string(1, pauli_char(b.params.axis))},
                 {"closure", b.params.closure == TemporalClosure::Periodic ? "periodic"
                                                                           : "perfect-final"}};
    } else {
        noise = {{"model", "code-capacity"},
                 {"p", b.params.p},
                 {"eta", eta_to_json(b.params.eta)},
                 {"axis", std::string(1, pauli_char(b.params.axis))}};
    }
    return {{"record", "batch"},
            {"geometry", geometry_json(b.params.geometry)},
            {"noise", noise},
            {"decoder", decoder_id_to_string(b.params.decoder)},
            {"p", b.params.p},
            {"eta", eta_to_json(b.params.eta)},
            {"d", d},
            {"rounds", b.params.fault_tolerant ? b.params.rounds : 0},
            {"trials", b.trials},
            {"failures_logical", b.failures_logical},
            {"failures_temporal", b.failures_temporal},
            {"seed", b.master_seed},
            {"wall_time", b.wall_time_s}};
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
    json j = json::parse(text);
    reject_unknown_keys(j,
                        {"schema_version", "experiment", "geometry", "decoder", "d_list", "p_list",
                         "eta", "eta_list", "axis", "rounds", "closure", "trials", "seed",
                         "workers", "fit_window", "out"},
                        "config");
    ExperimentConfig cfg;
    cfg.schema_version = j.at("schema_version").get<int>();
    if (cfg.schema_version != 1) throw std::invalid_argument("unsupported schema_version");
    cfg.kind = kind_from_string(j.at("experiment").get<std::string>());
    if (j.contains("geometry")) {
        const auto& g = j["geometry"];
        reject_unknown_keys(g, {"type", "coprime"}, "geometry");
        cfg.geometry_type = g.at("type").get<std::string>();
        if (cfg.geometry_type != "periodic" && cfg.geometry_type != "open")
            throw std::invalid_argument("geometry type must be 'periodic' or 'open'");
        if (g.contains("coprime")) cfg.coprime = g["coprime"].get<bool>();
    }
    if (j.contains("decoder")) cfg.decoder = decoder_id_from_string(j["decoder"].get<std::string>());
    if (j.contains("d_list")) cfg.d_list = j["d_list"].get<std::vector<int>>();
    if (j.contains("p_list")) cfg.p_list = j["p_list"].get<std::vector<double>>();
    if (j.contains("eta")) cfg.eta = eta_from_json(j["eta"]);
    if (j.contains("eta_list")) {
        for (const auto& e : j["eta_list"]) cfg.eta_list.push_back(eta_from_json(e));
    }
    if (j.contains("axis")) cfg.axis = pauli_from_char(j["axis"].get<std::string>().at(0));
    if (j.contains("rounds")) cfg.rounds = j["rounds"].get<int>();
    if (j.contains("closure")) {
        std::string c = j["closure"].get<std::string>();
        if (c == "periodic")
            cfg.closure = TemporalClosure::Periodic;
        else if (c == "perfect-final")
            cfg.closure = TemporalClosure::PerfectFinal;
        else
            throw std::invalid_argument("closure must be 'periodic' or 'perfect-final'");
    }
    if (j.contains("trials")) cfg.trials = j["trials"].get<uint64_t>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<uint64_t>();
    if (j.contains("workers")) cfg.workers = j["workers"].get<int>();
    if (j.contains("fit_window")) {
        auto w = j["fit_window"].get<std::vector<double>>();
        if (w.size() != 2) throw std::invalid_argument("fit_window must be [lo, hi]");
        cfg.fit_window = {{w[0], w[1]}};
    }
    if (j.contains("out")) cfg.out_path = j["out"].get<std::string>();

    // Per-kind requirements.
    switch (cfg.kind) {
        case ExperimentKind::HashingBound:
            if (cfg.eta_list.empty()) throw std::invalid_argument("hashing-bound needs eta_list");
            break;
        case ExperimentKind::AspectRatio:
            if (cfg.eta_list.empty() || cfg.p_list.empty())
                throw std::invalid_argument("aspect-ratio needs p_list and eta_list");
            break;
        default:
            if (cfg.d_list.empty() || cfg.p_list.empty() || cfg.trials == 0)
                throw std::invalid_argument("sampling experiments need d_list, p_list and trials");
    }
    return cfg;
}

std::string ExperimentConfig::to_json_text() const {
    json j;
    j["schema_version"] = schema_version;
    j["experiment"] = kind_names[int(kind)];
    j["geometry"] = {{"type", geometry_type}, {"coprime", coprime}};
    j["decoder"] = decoder_id_to_string(decoder);
    j["d_list"] = d_list;
    j["p_list"] = p_list;
    j["eta"] = eta_to_json(eta);
    json etas = json::array();
    for (double e : eta_list) etas.push_back(eta_to_json(e));
    j["eta_list"] = etas;
    j["axis"] = std::string(1, pauli_char(axis));
    j["rounds"] = rounds;
    j["closure"] = closure == TemporalClosure::Periodic ? "periodic" : "perfect-final";
    j["trials"] = trials;
    j["seed"] = seed;
    j["workers"] = workers;
    if (fit_window) j["fit_window"] = {fit_window->first, fit_window->second};
    if (!out_path.empty()) j["out"] = out_path;
    return j.dump();
}

void run_experiment(const ExperimentConfig& cfg, std::ostream& results, std::ostream& summary) {
    json config_line = json::parse(cfg.to_json_text());
    config_line["record"] = "config";
    results << config_line.dump() << "\n";

    if (cfg.kind == ExperimentKind::HashingBound) {
        summary << "hashing bound:\n";
        for (double eta : cfg.eta_list) {
            PauliChannel c = bias_to_channel(BiasSpec{0.1, eta, cfg.axis});
            double hb = hashing_bound(c);
            results << json{{"record", "hashing"}, {"eta", eta_to_json(eta)}, {"p_hb", hb}}.dump()
                    << "\n";
            summary << "  eta=" << (eta == kInfiniteBias ? std::string("inf") : std::to_string(eta))
                    << "  p_hb=" << hb << "\n";
        }
        return;
    }
    if (cfg.kind == ExperimentKind::AspectRatio) {
        summary << "optimal aspect ratios d_Z/d_X:\n";
        for (double p : cfg.p_list) {
            for (double eta : cfg.eta_list) {
                double ratio = aspect_ratio_optimum(p, eta);
                results << json{{"record", "aspect"},
                                {"p", p},
                                {"eta", eta_to_json(eta)},
                                {"ratio", ratio}}
                               .dump()
                        << "\n";
                summary << "  p=" << p << " eta=" << eta << " ratio=" << ratio << "\n";
            }
        }
        return;
    }

    const bool ft = cfg.kind == ExperimentKind::FaultTolerant ||
                    (cfg.kind == ExperimentKind::ThresholdScan && cfg.decoder == DecoderId::Mwpm3D);
    std::vector<ThresholdPoint> fit_points;
    std::vector<TrialBatch> batches;
    for (int d : cfg.d_list) {
        for (double p : cfg.p_list) {
            BatchParams params;
            params.geometry = make_geometry(cfg, d);
            params.decoder = cfg.decoder;
            params.fault_tolerant = ft;
            params.p = p;
            params.eta = cfg.eta;
            params.axis = cfg.axis;
            params.rounds = cfg.rounds > 0 ? cfg.rounds : d;
            params.closure = cfg.closure;
            TrialBatch b = run_batch(params, cfg.trials, cfg.seed, cfg.workers);
            batches.push_back(b);
            results << batch_record(b, d).dump() << "\n";
            results.flush();
            summary << "  d=" << d << " p=" << p << "  failures=" << b.failures() << "/"
                    << b.trials << "  rate=" << b.failure_rate() << " +- " << b.std_error()
                    << "\n";
            summary.flush();
            fit_points.push_back({d, p, b.trials, b.failures()});
        }
    }

    if (cfg.kind == ExperimentKind::ThresholdScan) {
        ThresholdFitOptions opt;
        opt.window = cfg.fit_window;
        ThresholdFit fit = fit_threshold(fit_points, opt);
        results << json{{"record", "threshold_fit"}, {"p_c", fit.p_c},
                        {"p_c_err", fit.p_c_err},    {"nu", fit.nu},
                        {"nu_err", fit.nu_err},      {"chi2", fit.chi2},
                        {"dof", fit.dof},            {"window", {fit.window_lo, fit.window_hi}}}
                       .dump()
                << "\n";
        summary << "threshold fit: p_c = " << fit.p_c << " +- " << fit.p_c_err
                << ", nu = " << fit.nu << " +- " << fit.nu_err << " (chi2/dof = "
                << (fit.dof > 0 ? fit.chi2 / fit.dof : fit.chi2) << ")\n";
    } else if (cfg.kind == ExperimentKind::SubthresholdScan) {
        for (double p : cfg.p_list) {
            std::vector<SubthresholdPoint> pts;
            for (std::size_t i = 0; i < batches.size(); i++) {
                if (batches[i].params.p != p) continue;
                pts.push_back({cfg.d_list[i / cfg.p_list.size()], batches[i].failure_rate(),
                               batches[i].std_error()});
            }
            auto quad = fit_subthreshold(pts, SubthresholdModel::QuadraticExponent);
            auto lin = fit_subthreshold(pts, SubthresholdModel::LinearExponent);
            results << json{{"record", "subthreshold_fit"},
                            {"p", p},
                            {"quadratic", {{"logA", quad.log_a}, {"B", quad.b},
                                           {"chi2", quad.chi2}, {"dof", quad.dof}}},
                            {"linear", {{"logA", lin.log_a}, {"B", lin.b},
                                        {"chi2", lin.chi2}, {"dof", lin.dof}}}}
                           .dump()
                    << "\n";
            summary << "subthreshold p=" << p << ": quadratic chi2=" << quad.chi2
                    << " vs linear chi2=" << lin.chi2
                    << (quad.chi2 < lin.chi2 ? "  [quadratic preferred]" : "  [linear preferred]")
                    << "\n";
        }
    }
}

std::string refit_from_jsonl(const std::string& jsonl_text,
                             std::optional<std::pair<double, double>> window) {
    std::istringstream in(jsonl_text);
    std::string line;
    std::vector<ThresholdPoint> points;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        json j = json::parse(line);
        if (j.value("record", "") != "batch") continue;
        ThresholdPoint pt;
        pt.d = j.at("d").get<int>();
        pt.p = j.at("p").get<double>();
        pt.trials = j.at("trials").get<uint64_t>();
        pt.failures =
            j.at("failures_logical").get<uint64_t>() + j.at("failures_temporal").get<uint64_t>();
        points.push_back(pt);
    }
    ThresholdFitOptions opt;
    opt.window = window;
    ThresholdFit fit = fit_threshold(points, opt);
    return json{{"p_c", fit.p_c}, {"p_c_err", fit.p_c_err}, {"nu", fit.nu},
                {"nu_err", fit.nu_err}, {"chi2", fit.chi2}, {"dof", fit.dof}}
        .dump();
}

std::string jsonl_to_csv(const std::string& jsonl_text) {
    std::istringstream in(jsonl_text);
    std::string line;
    std::ostringstream out;
    out << "geometry,decoder,p,eta,d,rounds,trials,failures_logical,failures_temporal,seed\n";
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        json j = json::parse(line);
        if (j.value("record", "") != "batch") continue;
        const auto& g = j["geometry"];
        std::string geom = g["type"].get<std::string>();
        if (geom == "periodic")
            geom += ":" + std::to_string(g["rows"].get<int>()) + "x" +
                    std::to_string(g["cols"].get<int>());
        else
            geom += ":" + std::to_string(g["d_x"].get<int>()) + "x" +
                    std::to_string(g["d_z"].get<int>());
        std::string eta = j["eta"].is_string() ? j["eta"].get<std::string>()
                                               : std::to_string(j["eta"].get<double>());
        out << geom << ',' << j["decoder"].get<std::string>() << ',' << j["p"].get<double>() << ','
            << eta << ',' << j["d"].get<int>() << ',' << j["rounds"].get<int>() << ','
            << j["trials"].get<uint64_t>() << ',' << j["failures_logical"].get<uint64_t>() << ','
            << j["failures_temporal"].get<uint64_t>() << ',' << j["seed"].get<uint64_t>() << "\n";
    }
    return out.str();
}

double exact_failure_probability(const StabilizerCode& code, const PauliChannel& channel,
                                 DecoderId decoder) {
    if (code.n > 14) throw std::invalid_argument("exact enumeration limited to n <= 14");
    const std::size_t F = code.stabilizers.size();
    // Achievable syndromes: the span of the single-qubit error syndromes.
    std::vector<BitVec> basis;
    {
        std::vector<BitVec> gens;
        for (int q = 0; q < code.n; q++) {
            for (Pauli letter : {Pauli::X, Pauli::Z}) {
                BitVec s(F);
                for (int f : code.defect_faces(q, letter)) s.flip(f);
                gens.push_back(s);
            }
        }
        BitMatrix m(gens);
        auto pivots = m.rref();
        for (std::size_t i = 0; i < pivots.size(); i++) basis.push_back(m.row(i));
    }
    BiasSpec bias;
    bool can_mwpm = true;
    try {
        bias = channel_to_bias(channel);
    } catch (const std::exception&) {
        can_mwpm = false;
    }
    if (decoder == DecoderId::Mwpm2D && !can_mwpm)
        throw std::invalid_argument("channel is not expressible as a bias for the mwpm decoder");

    auto label_bits = [&](const PauliOperator& p) {
        uint64_t bits = 0;
        for (int i = 0; i < code.k; i++) {
            if (p.anticommutes_with(code.logical_x_reps[i])) bits |= uint64_t(1) << (2 * i);
            if (p.anticommutes_with(code.logical_z_reps[i])) bits |= uint64_t(1) << (2 * i + 1);
        }
        return bits;
    };

    double fail = 0.0, total = 0.0;
    const uint64_t count = uint64_t(1) << basis.size();
    Syndrome synd;
    synd.defects = BitVec(F);
    for (uint64_t i = 0;; i++) {
        auto probs = coset_probabilities(code, synd, channel);
        double mass = 0.0;
        for (double p : probs) mass += p;
        // Syndromes outside the channel's support (e.g. parity-violating
        // patterns under pure-axis noise) carry no probability and never
        // reach the decoder.
        if (mass > 0.0) {
            Correction corr;
            switch (decoder) {
                case DecoderId::Mwpm2D: corr = decode_2d(code, synd, bias); break;
                case DecoderId::InfiniteBias: corr = decode_infinite_bias(code, synd); break;
                case DecoderId::MaxLikelihood: corr = ml_decode(code, synd, channel); break;
                default: throw std::invalid_argument("unsupported decoder for exact enumeration");
            }
            uint64_t chosen = label_bits(corr.pauli);
            for (uint64_t label = 0; label < probs.size(); label++) {
                total += probs[label];
                if (label != chosen) fail += probs[label];
            }
        }
        if (i + 1 >= count) break;
        synd.defects ^= basis[std::size_t(__builtin_ctzll(i + 1))];
    }
    if (std::abs(total - 1.0) > 1e-6)
        throw std::logic_error("exact enumeration lost probability mass");
    return fail;
}

bool run_verification_suite(std::ostream& report) {
    bool ok = true;
    auto check = [&](const std::string& name, bool pass) {
        report << (pass ? "ok   " : "FAIL ") << name << "\n";
        ok = ok && pass;
    };

    // Matching against brute force on small random graphs.
    {
        Rng rng(12345);
        bool pass = true;
        for (int trial = 0; trial < 200 && pass; trial++) {
            int v = 2 * (1 + int(rng.below(4)));
            WeightedGraph g(v);
            for (int b = 1; b < v; b++)
                for (int a = 0; a < b; a++) g.set_weight(a, b, rng.uniform() * 10);
            std::function<double(std::vector<int>&)> rec = [&](std::vector<int>& rem) -> double {
                if (rem.empty()) return 0.0;
                int a = rem[0];
                double best = 1e300;
                for (std::size_t j = 1; j < rem.size(); j++) {
                    std::vector<int> next;
                    for (std::size_t t = 1; t < rem.size(); t++)
                        if (t != j) next.push_back(rem[t]);
                    best = std::min(best, g.weight(a, rem[j]) + rec(next));
                }
                return best;
            };
            std::vector<int> all;
            for (int i = 0; i < v; i++) all.push_back(i);
            double brute = rec(all);
            auto m = min_weight_perfect_matching(g);
            pass = std::abs(m.total_weight - brute) < 1e-6;
        }
        check("matching oracle equivalence (200 random graphs)", pass);
    }

    // Diagonal parity conservation under Z noise.
    {
        auto code = build_xzzx_code(Periodic{4, 5});
        Rng rng(777);
        bool pass = true;
        for (int trial = 0; trial < 2000 && pass; trial++) {
            PauliOperator err(code.n);
            for (int q = 0; q < code.n; q++)
                if (rng.bernoulli(0.3)) err.set(q, Pauli::Z);
            auto s = syndrome(code, err);
            for (const auto& d : code.diagonals(DiagonalDirection::ZSymmetry)) {
                int parity = 0;
                for (auto f : d.faces) parity ^= s.defects.get(f) ? 1 : 0;
                if (parity) pass = false;
            }
        }
        check("diagonal parity conservation (2000 Z-only samples)", pass);
    }

    // Open-boundary distances.
    {
        bool pass = true;
        for (auto [dx, dz] : std::vector<std::pair<int, int>>{{1, 3}, {2, 3}, {3, 3}, {2, 5}}) {
            auto code = build_xzzx_code(OpenRectangular{dx, dz});
            pass = pass && min_logical_weight(code, LogicalRestrict::ZOnly) == dz &&
                   min_logical_weight(code, LogicalRestrict::XOnly) == dx;
        }
        check("open-boundary distance checks", pass);
    }

    // Negative control: a corrupted boundary stabilizer must break the
    // distance check.
    {
        auto code = build_xzzx_code(OpenRectangular{2, 3});
        int boundary = -1;
        for (int f = 0; f < code.num_faces(); f++)
            if (code.stabilizers[f].weight() == 3) boundary = f;
        bool detected = false;
        if (boundary >= 0) {
            auto broken = code;
            for (const auto& [q, p] : code.stabilizers[boundary].support()) {
                if (p == Pauli::X) {
                    broken.stabilizers[boundary].set(q, Pauli::I);
                    break;
                }
            }
            try {
                detected = min_logical_weight(broken, LogicalRestrict::ZOnly) != 3;
            } catch (const std::exception&) {
                detected = true;
            }
        }
        check("negative control: corrupted stabilizer detected", detected);
    }

    // Exact ML dominance on a small patch.
    {
        auto code = build_xzzx_code(OpenRectangular{2, 3});
        PauliChannel depolarizing{0.1, 1.0 / 3, 1.0 / 3, 1.0 / 3};
        double ml = exact_failure_probability(code, depolarizing, DecoderId::MaxLikelihood);
        double mwpm = exact_failure_probability(code, depolarizing, DecoderId::Mwpm2D);
        check("ML dominance (exact, OpenRectangular(2,3), depolarising p=0.1)",
              ml <= mwpm + 1e-12);
    }

    // Hashing-bound spot values.
    {
        double pure = hashing_bound(0, 0, 1);
        double depol = hashing_bound(1.0 / 3, 1.0 / 3, 1.0 / 3);
        bool pass = pure == 0.5 && std::abs(depol - 0.18929) < 5e-4;
        auto hb = [&](double eta) { return hashing_bound(bias_to_channel(BiasSpec{0.1, eta})); };
        pass = pass && hb(0.5) <= hb(1.0) && hb(1.0) <= hb(10.0) && hb(10.0) <= hb(100.0);
        check("hashing bound values and monotonicity", pass);
    }

    // Determinism across worker counts.
    {
        BatchParams params;
        params.geometry = Periodic{3, 4};
        params.decoder = DecoderId::Mwpm2D;
        params.p = 0.1;
        params.eta = 3.0;
        auto b1 = run_batch(params, 500, 99, 1);
        auto b2 = run_batch(params, 500, 99, 3);
        check("determinism across worker counts",
              b1.failures_logical == b2.failures_logical &&
                  b1.failures_temporal == b2.failures_temporal);
    }

    return ok;
}

}  // namespace xzzx
