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

#ifndef XZZX_NOISE_H
#define XZZX_NOISE_H

#include <limits>
#include <vector>

#include "xzzx/code.hpp"
#include "xzzx/pauli.hpp"
#include "xzzx/rng.hpp"

namespace xzzx {

/// General single-qubit Pauli channel: identity with probability 1-p, else
/// X/Y/Z with probabilities p*r_x, p*r_y, p*r_z.
struct PauliChannel {
    double p = 0.0;
    double r_x = 0.0, r_y = 0.0, r_z = 1.0;

    void validate() const;
};

constexpr double kInfiniteBias = std::numeric_limits<double>::infinity();

/// Biased channel: the high-rate axis carries eta/(eta+1) of the error
/// probability, the two low-rate Paulis 1/(2(eta+1)) each. eta = 1/2 is
/// depolarising, eta = infinity is pure axis noise.
struct BiasSpec {
    double p = 0.0;
    double eta = 0.5;
    Pauli axis = Pauli::Z;

    void validate() const;
    double p_high_rate() const { return eta == kInfiniteBias ? p : p * eta / (eta + 1); }
    double p_low_rate() const { return eta == kInfiniteBias ? 0.0 : p / (2 * (eta + 1)); }
};

PauliChannel bias_to_channel(const BiasSpec& spec);
/// Inverse conversion; requires the two low-rate components to agree within
/// 1e-12 and throws std::invalid_argument otherwise.
BiasSpec channel_to_bias(const PauliChannel& channel);

/// Phenomenological noise: per round, each qubit gets the high-rate Pauli
/// with probability p_hr and each of the two low-rate Paulis with p_lr;
/// every stabilizer readout flips independently with probability q. The
/// physical model ties q = p_hr + p_lr and eta = p_hr / (2 p_lr), which is
/// what from_bias constructs; q can be set independently for debugging
/// (e.g. q = 0 reproduces per-round code-capacity statistics).
struct PhenomenologicalNoise {
    double p_hr = 0.0;
    double p_lr = 0.0;
    double q = 0.0;
    int rounds = 1;
    Pauli axis = Pauli::Z;

    static PhenomenologicalNoise from_bias(double p, double eta, int rounds,
                                           Pauli axis = Pauli::Z);
    void validate() const;
    double total_p() const { return p_hr + 2 * p_lr; }
    double eta() const { return p_lr == 0.0 ? kInfiniteBias : p_hr / (2 * p_lr); }
};

/// i.i.d. channel sample over n qubits; deterministic given the generator.
PauliOperator sample_error(const PauliChannel& channel, std::size_t n, Rng& rng);

/// How the spacetime volume is closed at the last round. Threshold studies
/// use the temporally periodic identification; the perfect final readout is
/// the standard code-capacity-style closure used for debugging.
enum class TemporalClosure { Periodic, PerfectFinal };

struct SpacetimeSample {
    TemporalClosure closure = TemporalClosure::Periodic;
    /// cumulative[t] is the data error accumulated up to round t inclusive.
    std::vector<PauliOperator> cumulative;
    /// measured[t][f] is the (possibly flipped) outcome of stabilizer f.
    std::vector<BitVec> measured;
    /// flips[t][f] records which outcomes were flipped at round t.
    std::vector<BitVec> flips;
    /// True syndrome of cumulative.back(), needed to close the volume.
    BitVec final_true_syndrome;
};

/// Runs `rounds` noisy measurement rounds: fresh data errors accumulate
/// before each round, all stabilizers are measured, and each outcome flips
/// independently with probability q.
SpacetimeSample sample_spacetime(const PhenomenologicalNoise& noise, const StabilizerCode& code,
                                 Rng& rng, TemporalClosure closure = TemporalClosure::Periodic);

/// Zero-rate hashing bound: the p solving H(p r) = 1 bit, where H is the
/// Shannon entropy of (1-p, p r_x, p r_y, p r_z). Bisection to 1e-10.
double hashing_bound(double r_x, double r_y, double r_z);
inline double hashing_bound(const PauliChannel& c) { return hashing_bound(c.r_x, c.r_y, c.r_z); }

}  // namespace xzzx

#endif
