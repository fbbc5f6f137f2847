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

#ifndef XZZX_EXPERIMENT_H
#define XZZX_EXPERIMENT_H

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "xzzx/stats.hpp"

namespace xzzx {

enum class ExperimentKind {
    CodeCapacity,
    FaultTolerant,
    ThresholdScan,
    SubthresholdScan,
    HashingBound,
    AspectRatio,
};

/// Validated experiment description. The JSON schema is versioned and
/// strict: unknown fields are rejected so typos cannot silently change a
/// run.
struct ExperimentConfig {
    int schema_version = 1;
    ExperimentKind kind = ExperimentKind::CodeCapacity;
    std::string geometry_type = "periodic";  // "periodic" | "open"
    std::vector<int> d_list;                 // builds d x d, d x (d+1) or open(d_x, aspect*d_x)
    bool coprime = false;                    // periodic d x (d+1)
    DecoderId decoder = DecoderId::Mwpm2D;
    std::vector<double> p_list;
    std::vector<double> eta_list;  // hashing-bound / aspect-ratio scans
    double eta = 0.5;              // bias for sampling experiments
    Pauli axis = Pauli::Z;
    int rounds = 0;  // 0 = one round per code distance
    TemporalClosure closure = TemporalClosure::Periodic;
    uint64_t trials = 0;
    uint64_t seed = 0;
    int workers = 1;
    std::optional<std::pair<double, double>> fit_window;
    std::string out_path;

    static ExperimentConfig from_json_text(const std::string& text);
    std::string to_json_text() const;
};

/// Runs the experiment, streaming JSON-lines records to `results` and a
/// human-readable summary to `summary`. The first record echoes the config
/// so any result file can be re-derived from it.
void run_experiment(const ExperimentConfig& config, std::ostream& results, std::ostream& summary);

/// Re-fits a threshold scan from stored JSON-lines content.
std::string refit_from_jsonl(const std::string& jsonl_text,
                             std::optional<std::pair<double, double>> window);

/// Projects JSON-lines batch records to CSV for plotting tools.
std::string jsonl_to_csv(const std::string& jsonl_text);

/// Exact decoder failure probability on a small code: enumerates every
/// achievable syndrome, weighs each logical coset exactly and charges the
/// mass of all cosets the decoder's correction misses. The oracle behind
/// the ML-dominance checks.
double exact_failure_probability(const StabilizerCode& code, const PauliChannel& channel,
                                 DecoderId decoder);

/// Small-instance oracle suite behind the `verify` subcommand: matching
/// brute-force equivalence, diagonal parity conservation, open-boundary
/// distance checks with a corrupted-stabilizer negative control, ML
/// optimality on a small patch and hashing-bound spot checks. Appends one
/// line per check to `report`; returns false if any check fails.
bool run_verification_suite(std::ostream& report);

}  // namespace xzzx

#endif
