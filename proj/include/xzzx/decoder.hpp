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

#ifndef XZZX_DECODER_H
#define XZZX_DECODER_H

#include "xzzx/code.hpp"
#include "xzzx/matching.hpp"
#include "xzzx/noise.hpp"

namespace xzzx {

/// Negative log-likelihood weights of the matching decoder. A high-rate
/// step costs w_hr = -log(p_hr/(1-p)), a low-rate step w_lr, a temporal
/// step w_t = -log(q/(1-q)). Weights are floored at zero (the log-ratio
/// loses meaning above p = 1/2) and are +infinity for zero-rate processes.
struct WeightParams {
    double w_hr = 0.0;
    double w_lr = 0.0;
    double w_t = 0.0;

    static WeightParams code_capacity(const BiasSpec& bias);
    static WeightParams fault_tolerant(const PhenomenologicalNoise& noise);
};

/// Manhattan separations along the diagonal axes x' (high-rate string
/// direction), y' and time.
struct DiagonalCoords {
    int l_xp = 0;
    int l_yp = 0;
    int l_t = 0;
};

/// Optimal displacement class between two faces: signed main-diagonal steps
/// `a`, anti-diagonal steps `b`, and the resulting weight. `valid` is false
/// when no error string can connect the pair (disconnected parity classes).
struct SeparationClass {
    double weight = 0.0;
    int a = 0;
    int b = 0;
    bool valid = false;

    DiagonalCoords coords() const { return {std::abs(a), std::abs(b), 0}; }
};

/// Minimum over all candidate displacement classes (direct and torus
/// wrapping paths) for a periodic lattice of the given dimensions.
/// w_main weighs a main-diagonal step, w_anti an anti-diagonal step.
SeparationClass best_separation_periodic(int rows, int cols, int dr, int dc, double w_main,
                                         double w_anti);

/// Per-lattice lookup table of the optimal separation classes, indexed by
/// the coordinate difference; exploits translational invariance.
class SeparationTable {
  public:
    static SeparationTable build(int rows, int cols, double w_main, double w_anti);
    const SeparationClass& at(int dr, int dc) const {
        return entries_[std::size_t(((dr % rows_) + rows_) % rows_) * cols_ +
                        ((dc % cols_) + cols_) % cols_];
    }
    int rows() const { return rows_; }
    int cols() const { return cols_; }

  private:
    int rows_ = 0, cols_ = 0;
    std::vector<SeparationClass> entries_;
};

/// Matching-graph edge weight between two defects (2D code capacity).
double edge_weight(const StabilizerCode& code, int face_u, int face_v,
                   const WeightParams& params, Pauli axis = Pauli::Z);

/// Fault-tolerant edge weight including the temporal term.
double edge_weight_3d(const StabilizerCode& code, int face_u, int t_u, int face_v, int t_v,
                      const WeightParams& params, int rounds, TemporalClosure closure,
                      Pauli axis = Pauli::Z);

struct Correction {
    PauliOperator pauli;
    /// Parity of temporal cycles of the combined error + correction chains
    /// (3D decoding only; always 0 for 2D decoders).
    int temporal_cycle_parity = 0;
};

/// Minimum-weight perfect-matching decoder for code-capacity noise.
/// Supports Z- and X-axis bias, including eta = infinity.
Correction decode_2d(const StabilizerCode& code, const Syndrome& syndrome, const BiasSpec& bias);

/// Infinite-bias fast path: decodes each Z-symmetry diagonal independently
/// by majority vote. Throws std::invalid_argument if the syndrome violates
/// diagonal parity (which signals non-Z noise).
Correction decode_infinite_bias(const StabilizerCode& code, const Syndrome& syndrome);

/// Spacetime matching decoder for phenomenological noise. Detection events
/// are the XOR of consecutive measured syndromes; matched strings carry
/// spatial and temporal segments. The returned temporal_cycle_parity is the
/// parity of temporal cycles of the sampled error combined with the
/// correction (computable here because the sample records its flips).
Correction decode_3d(const StabilizerCode& code, const SpacetimeSample& sample,
                     const PhenomenologicalNoise& noise);

/// Exact maximum-likelihood decoder by exhaustive coset enumeration:
/// computes every logical coset's total probability and returns a
/// representative of the most probable one. Ties break toward the trivial
/// class, then to the lexicographically smallest label. Guarded to small
/// codes (n <= 14, 2^(n-k) stabilizer elements <= 2^26).
Correction ml_decode(const StabilizerCode& code, const Syndrome& syndrome,
                     const PauliChannel& channel);

/// Per-coset probabilities for a syndrome, indexed by logical class label;
/// the exhaustive sum behind ml_decode, exposed for the exact-failure
/// oracles.
std::vector<double> coset_probabilities(const StabilizerCode& code, const Syndrome& syndrome,
                                        const PauliChannel& channel);

enum class Outcome { Success, LogicalFailure, TemporalFailure };

/// Success iff the residual error*correction lies in the trivial logical
/// class and no temporal cycle was introduced. Throws if the correction
/// does not reproduce the error syndrome.
Outcome adjudicate(const StabilizerCode& code, const PauliOperator& error,
                   const Correction& correction);

}  // namespace xzzx

#endif
