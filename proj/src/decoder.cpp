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

#include "xzzx/decoder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace xzzx {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double neg_log_ratio(double numerator, double denominator) {
    if (numerator <= 0.0) return kInf;
    if (denominator <= 0.0) return 0.0;
    return std::max(0.0, -std::log(numerator / denominator));
}

/// Weight per main-diagonal step (a Pauli-Z error) and per anti-diagonal
/// step (a Pauli-X error) for the given bias axis.
std::pair<double, double> axis_weights(const WeightParams& p, Pauli axis) {
    switch (axis) {
        case Pauli::Z: return {p.w_hr, p.w_lr};
        case Pauli::X: return {p.w_lr, p.w_hr};
        default:
            throw std::invalid_argument("matching decoder supports Z- or X-axis bias only");
    }
}

struct EventNode {
    int face;
    int t;
};

int temporal_distance(int t1, int t2, int layers, TemporalClosure closure) {
    int d = std::abs(t1 - t2);
    if (closure == TemporalClosure::Periodic) d = std::min(d, layers - d);
    return d;
}

}  // namespace

WeightParams WeightParams::code_capacity(const BiasSpec& bias) {
    bias.validate();
    WeightParams w;
    w.w_hr = neg_log_ratio(bias.p_high_rate(), 1 - bias.p);
    w.w_lr = neg_log_ratio(bias.p_low_rate(), 1 - bias.p);
    w.w_t = kInf;
    return w;
}

WeightParams WeightParams::fault_tolerant(const PhenomenologicalNoise& noise) {
    noise.validate();
    WeightParams w;
    double p = noise.total_p();
    w.w_hr = neg_log_ratio(noise.p_hr, 1 - p);
    w.w_lr = neg_log_ratio(noise.p_lr, 1 - p);
    w.w_t = neg_log_ratio(noise.q, 1 - noise.q);
    return w;
}

SeparationClass best_separation_periodic(int rows, int cols, int dr0, int dc0, double w_main,
                                         double w_anti) {
    dr0 = ((dr0 % rows) + rows) % rows;
    dc0 = ((dc0 % cols) + cols) % cols;
    SeparationClass best;
    best.weight = kInf;
    double wmin = std::min(w_main, w_anti);
    if (wmin == kInf) {
        // No error process moves defects; only coincident faces connect.
        if (dr0 == 0 && dc0 == 0) return {0.0, 0, 0, true};
        return best;
    }
    // A candidate displacement (dr, dc) decomposes into a = (dr+dc)/2 main
    // steps and b = (dc-dr)/2 anti steps when dr+dc is even; its weight is
    // at least wmin*max(|dr|, |dc|), which bounds the wrap search.
    const int hard_cap = rows + cols + 2;
    auto consider = [&](int dr, int dc) {
        if (((dr + dc) & 1) != 0) return;
        int a = (dr + dc) / 2;
        int b = (dc - dr) / 2;
        double w = 0.0;
        if (a != 0) {
            if (w_main == kInf) return;
            w += w_main * std::abs(a);
        }
        if (b != 0) {
            if (w_anti == kInf) return;
            w += w_anti * std::abs(b);
        }
        if (w < best.weight) best = {w, a, b, true};
    };
    for (int m = 0; m <= hard_cap; m++) {
        int min_abs_dr = m == 0 ? 0 : m * rows - dr0;
        if (best.valid && wmin > 0 && wmin * min_abs_dr > best.weight) break;
        for (int si = 0; si < (m == 0 ? 1 : 2); si++) {
            int dr = si == 0 ? dr0 - m * rows : dr0 + m * rows;
            for (int mm = 0; mm <= hard_cap; mm++) {
                int min_abs_dc = mm == 0 ? 0 : mm * cols - dc0;
                if (best.valid && wmin > 0 &&
                    wmin * std::max(std::abs(dr), min_abs_dc) > best.weight)
                    break;
                for (int sj = 0; sj < (mm == 0 ? 1 : 2); sj++) {
                    int dc = sj == 0 ? dc0 - mm * cols : dc0 + mm * cols;
                    consider(dr, dc);
                }
            }
        }
    }
    return best;
}

SeparationTable SeparationTable::build(int rows, int cols, double w_main, double w_anti) {
    SeparationTable t;
    t.rows_ = rows;
    t.cols_ = cols;
    t.entries_.resize(std::size_t(rows) * cols);
    for (int dr = 0; dr < rows; dr++) {
        for (int dc = 0; dc < cols; dc++) {
            t.entries_[std::size_t(dr) * cols + dc] =
                best_separation_periodic(rows, cols, dr, dc, w_main, w_anti);
        }
    }
    return t;
}

namespace {

/// Open-lattice pair separation; valid only within one parity class.
SeparationClass open_separation(int du, int dv, double w_main, double w_anti) {
    SeparationClass s;
    if ((du & 1) || (dv & 1)) return s;  // cross-class, unreachable
    s.a = du / 2;
    s.b = dv / 2;
    s.weight = 0.0;
    if (s.a != 0) {
        if (w_main == kInf) return s;
        s.weight += w_main * std::abs(s.a);
    }
    if (s.b != 0) {
        if (w_anti == kInf) return s;
        s.weight += w_anti * std::abs(s.b);
    }
    s.valid = true;
    return s;
}

/// Cost of absorbing an open-lattice defect at the boundary, and the step
/// count to the nearer side (negative side if `toward_low`).
struct BoundaryRoute {
    double weight = kInf;
    int steps = 0;        // number of single steps to apply
    bool toward_low = true;
};

BoundaryRoute boundary_route(const StabilizerCode& code, int face, double w_main, double w_anti) {
    const auto& open = code.open();
    const int U = 2 * (open.d_z - 1), V = 2 * (open.d_x - 1);
    auto [u, v] = code.face_coord(face);
    BoundaryRoute r;
    if (v % 2 == 0) {
        // Z-string exits through the left/right ends of the u line.
        if (w_main == kInf) return r;
        int left = (u + 1) / 2, right = (U - u + 1) / 2;
        r.toward_low = left <= right;
        r.steps = std::min(left, right);
        r.weight = w_main * r.steps;
    } else {
        if (w_anti == kInf) return r;
        int low = (v + 1) / 2, high = (V - v + 1) / 2;
        r.toward_low = low <= high;
        r.steps = std::min(low, high);
        r.weight = w_anti * r.steps;
    }
    return r;
}

class VolumeDecoder {
  public:
    VolumeDecoder(const StabilizerCode& code, double w_main, double w_anti, double w_t, int layers,
                  TemporalClosure closure)
        : code_(code),
          w_main_(w_main),
          w_anti_(w_anti),
          w_t_(w_t),
          layers_(layers),
          closure_(closure),
          correction_(code.n) {
        if (code.is_periodic()) {
            table_ = SeparationTable::build(code.periodic().rows, code.periodic().cols, w_main,
                                            w_anti);
            has_table_ = true;
        }
    }

    Correction run(const std::vector<EventNode>& events) {
        std::map<int64_t, std::vector<int>> components;
        for (int i = 0; i < int(events.size()); i++)
            components[component_key(events[i])].push_back(i);
        for (auto& [key, members] : components) decode_component(events, members);
        Correction out;
        out.pauli = correction_;
        out.temporal_cycle_parity = seam_crossings_ & 1;
        return out;
    }

  private:
    int64_t component_key(const EventNode& e) const {
        int spatial_class = 0;
        auto [a, b] = code_.face_coord(e.face);
        if (code_.is_periodic()) {
            const auto& per = code_.periodic();
            if (per.rows % 2 == 0 && per.cols % 2 == 0) spatial_class = (a + b) & 1;
        } else {
            spatial_class = b & 1;
        }
        int diag = -1;
        if (w_main_ == kInf && w_anti_ == kInf)
            diag = e.face + code_.num_faces();  // immobile defects
        else if (w_anti_ == kInf)
            diag = code_.face_diagonal(DiagonalDirection::ZSymmetry, e.face);
        else if (w_main_ == kInf)
            diag = code_.face_diagonal(DiagonalDirection::XSymmetry, e.face);
        int layer = (w_t_ == kInf && layers_ > 1) ? e.t : -1;
        // Pack the three restrictions into one key.
        return (int64_t(layer + 1) << 40) | (int64_t(diag + 1) << 4) | spatial_class;
    }

    SeparationClass pair_separation(int f1, int f2) const {
        auto [a1, b1] = code_.face_coord(f1);
        auto [a2, b2] = code_.face_coord(f2);
        if (has_table_) return table_.at(a2 - a1, b2 - b1);
        return open_separation(a2 - a1, b2 - b1, w_main_, w_anti_);
    }

    double pair_weight(const EventNode& e1, const EventNode& e2) const {
        auto sep = pair_separation(e1.face, e2.face);
        if (!sep.valid) throw std::logic_error("unreachable defect pair inside a component");
        double w = sep.weight;
        int dt = temporal_distance(e1.t, e2.t, layers_, closure_);
        if (dt != 0) w += w_t_ * dt;
        return w;
    }

    void apply_main_step(int& a, int& b, int sign) {
        // Moves a defect one step along the main diagonal with a Z error.
        if (code_.is_periodic()) {
            int q = sign > 0 ? code_.qubit_at(mod_r(a + 1), mod_c(b + 1)) : code_.qubit_at(a, b);
            toggle(q, Pauli::Z);
            a = mod_r(a + sign);
            b = mod_c(b + sign);
        } else {
            int q = code_.qubit_at(a + sign, b);
            toggle(q, Pauli::Z);
            a += 2 * sign;
        }
    }
    void apply_anti_step(int& a, int& b, int sign) {
        if (code_.is_periodic()) {
            int q = sign > 0 ? code_.qubit_at(a, mod_c(b + 1)) : code_.qubit_at(mod_r(a + 1), b);
            toggle(q, Pauli::X);
            a = mod_r(a - sign);
            b = mod_c(b + sign);
        } else {
            int q = code_.qubit_at(a, b + sign);
            toggle(q, Pauli::X);
            b += 2 * sign;
        }
    }
    int mod_r(int r) const { return ((r % code_.periodic().rows) + code_.periodic().rows) % code_.periodic().rows; }
    int mod_c(int c) const { return ((c % code_.periodic().cols) + code_.periodic().cols) % code_.periodic().cols; }

    void toggle(int qubit, Pauli letter) {
        if (qubit < 0) throw std::logic_error("correction path left the lattice");
        correction_.set(qubit, static_cast<Pauli>(uint8_t(correction_.at(qubit)) ^ uint8_t(letter)));
    }

    /// Connects the pair with the minimum-weight staircase string: high-rate
    /// (main diagonal) segments first, then the anti-diagonal remainder.
    void connect_pair(int f1, int f2) {
        auto sep = pair_separation(f1, f2);
        auto [a, b] = code_.face_coord(f1);
        int sa = sep.a >= 0 ? 1 : -1;
        for (int i = 0; i < std::abs(sep.a); i++) apply_main_step(a, b, sa);
        int sb = sep.b >= 0 ? 1 : -1;
        for (int i = 0; i < std::abs(sep.b); i++) apply_anti_step(a, b, sb);
    }

    void connect_boundary(int face) {
        auto route = boundary_route(code_, face, w_main_, w_anti_);
        if (route.weight == kInf) throw std::logic_error("no boundary route for defect");
        auto [a, b] = code_.face_coord(face);
        const bool main_axis = (b % 2 == 0);
        int sign = route.toward_low ? -1 : 1;
        for (int i = 0; i < route.steps; i++) {
            if (main_axis) {
                // Final step annihilates at the patch edge.
                int q = code_.qubit_at(a + sign, b);
                if (q < 0) throw std::logic_error("boundary walk left the lattice");
                toggle(q, Pauli::Z);
                a += 2 * sign;
            } else {
                int q = code_.qubit_at(a, b + sign);
                if (q < 0) throw std::logic_error("boundary walk left the lattice");
                toggle(q, Pauli::X);
                b += 2 * sign;
            }
        }
    }

    void decode_component(const std::vector<EventNode>& events, const std::vector<int>& members) {
        const int m = int(members.size());
        if (m == 0) return;
        bool boundary = false;
        if (!code_.is_periodic()) {
            auto route = boundary_route(code_, events[members[0]].face, w_main_, w_anti_);
            boundary = route.weight < kInf;
        }
        if (!boundary && (m % 2) != 0)
            throw std::invalid_argument("odd defect count in a region with no boundary");

        if (m == 2 && !boundary) {
            finish_pair(events[members[0]], events[members[1]]);
            return;
        }
        const int total = boundary ? 2 * m : m;
        WeightedGraph g(total);
        for (int i = 0; i < m; i++) {
            for (int j = i + 1; j < m; j++)
                g.set_weight(i, j, pair_weight(events[members[i]], events[members[j]]));
            if (boundary) {
                double wb = boundary_route(code_, events[members[i]].face, w_main_, w_anti_).weight;
                for (int j = m; j < total; j++)
                    g.set_weight(i, j, j == m + i ? wb : wb);
            }
        }
        if (boundary) {
            for (int i = m; i < total; i++)
                for (int j = i + 1; j < total; j++) g.set_weight(i, j, 0.0);
        }
        auto matching = min_weight_perfect_matching(g);
        for (int i = 0; i < total; i++) {
            int j = matching.mate[i];
            if (j < i) continue;
            if (i >= m) continue;  // virtual-virtual
            if (j >= m) {
                connect_boundary(events[members[i]].face);
            } else {
                finish_pair(events[members[i]], events[members[j]]);
            }
        }
    }

    void finish_pair(const EventNode& e1, const EventNode& e2) {
        connect_pair(e1.face, e2.face);
        if (closure_ == TemporalClosure::Periodic && layers_ > 1) {
            int dt = std::abs(e1.t - e2.t);
            if (layers_ - dt < dt) seam_crossings_++;  // wrapped temporal path
        }
    }

    const StabilizerCode& code_;
    double w_main_, w_anti_, w_t_;
    int layers_;
    TemporalClosure closure_;
    SeparationTable table_;
    bool has_table_ = false;
    PauliOperator correction_;
    int seam_crossings_ = 0;
};

}  // namespace

double edge_weight(const StabilizerCode& code, int face_u, int face_v, const WeightParams& params,
                   Pauli axis) {
    auto [w_main, w_anti] = axis_weights(params, axis);
    auto [a1, b1] = code.face_coord(face_u);
    auto [a2, b2] = code.face_coord(face_v);
    if (code.is_periodic()) {
        const auto& per = code.periodic();
        return best_separation_periodic(per.rows, per.cols, a2 - a1, b2 - b1, w_main, w_anti)
            .weight;
    }
    return open_separation(a2 - a1, b2 - b1, w_main, w_anti).weight;
}

double edge_weight_3d(const StabilizerCode& code, int face_u, int t_u, int face_v, int t_v,
                      const WeightParams& params, int rounds, TemporalClosure closure, Pauli axis) {
    double spatial = edge_weight(code, face_u, face_v, params, axis);
    int layers = closure == TemporalClosure::Periodic ? rounds : rounds + 1;
    int dt = temporal_distance(t_u, t_v, layers, closure);
    return dt == 0 ? spatial : spatial + params.w_t * dt;
}

namespace {

/// Canonicalizes an infinite-bias correction: where a diagonal admits two
/// complementary minimum-weight patterns, pick the lighter one, and on
/// exact ties the pattern leaving the diagonal's first qubit untouched.
/// This matches the majority-vote convention of decode_infinite_bias.
void canonicalize_pure_axis(const StabilizerCode& code, PauliOperator& corr,
                            DiagonalDirection dir, Pauli letter) {
    for (const auto& diag : code.diagonals(dir)) {
        const std::size_t nq = diag.qubits.size();
        if (nq == 0) continue;
        const bool complement_free = diag.closed || diag.faces.size() + 1 == nq;
        if (!complement_free) continue;
        std::size_t w = 0;
        for (auto q : diag.qubits)
            if (corr.at(q) == letter) w++;
        bool flip = 2 * w > nq || (2 * w == nq && corr.at(diag.qubits[0]) == letter);
        if (flip) {
            for (auto q : diag.qubits)
                corr.set(q, static_cast<Pauli>(uint8_t(corr.at(q)) ^ uint8_t(letter)));
        }
    }
}

}  // namespace

Correction decode_2d(const StabilizerCode& code, const Syndrome& syndrome, const BiasSpec& bias) {
    auto params = WeightParams::code_capacity(bias);
    auto [w_main, w_anti] = axis_weights(params, bias.axis);
    VolumeDecoder dec(code, w_main, w_anti, kInf, 1, TemporalClosure::PerfectFinal);
    std::vector<EventNode> events;
    for (int f = 0; f < code.num_faces(); f++)
        if (syndrome.defects.get(f)) events.push_back({f, 0});
    Correction out = dec.run(events);
    if (w_anti == kInf)
        canonicalize_pure_axis(code, out.pauli, DiagonalDirection::ZSymmetry, Pauli::Z);
    else if (w_main == kInf)
        canonicalize_pure_axis(code, out.pauli, DiagonalDirection::XSymmetry, Pauli::X);
    return out;
}

Correction decode_infinite_bias(const StabilizerCode& code, const Syndrome& syndrome) {
    Correction out;
    out.pauli = PauliOperator(code.n);
    for (const auto& diag : code.diagonals(DiagonalDirection::ZSymmetry)) {
        const std::size_t nf = diag.faces.size();
        const std::size_t nq = diag.qubits.size();
        int parity = 0;
        for (auto f : diag.faces) parity ^= syndrome.defects.get(f) ? 1 : 0;
        if (diag.closed || nf == nq + 1) {
            // Closed rings and fully-terminated open chains must balance.
            if (parity != 0)
                throw std::invalid_argument(
                    "syndrome violates diagonal parity (non-Z noise on the lattice?)");
        }
        if (nq == 0) continue;
        std::vector<char> z(nq, 0);
        if (diag.closed) {
            // qubits[t] sits between faces[t-1] and faces[t].
            std::size_t weight = 0;
            for (std::size_t t = 0; t + 1 < nq; t++) {
                z[t + 1] = z[t] ^ (syndrome.defects.get(diag.faces[t]) ? 1 : 0);
                weight += z[t + 1];
            }
            // Majority vote between the two complementary patterns.
            if (2 * weight > nq) {
                for (auto& b : z) b ^= 1;
            }
        } else if (nf + 1 == nq) {
            // Free ends: faces[i] sits between qubits[i] and qubits[i+1].
            std::size_t weight = 0;
            for (std::size_t i = 0; i < nf; i++) {
                z[i + 1] = z[i] ^ (syndrome.defects.get(diag.faces[i]) ? 1 : 0);
                weight += z[i + 1];
            }
            if (2 * weight > nq) {
                for (auto& b : z) b ^= 1;
            }
        } else {
            // Terminated ends: faces[0] precedes qubits[0], so the pattern
            // is unique.
            z[0] = syndrome.defects.get(diag.faces[0]) ? 1 : 0;
            for (std::size_t i = 1; i < nq; i++)
                z[i] = z[i - 1] ^ (syndrome.defects.get(diag.faces[i]) ? 1 : 0);
        }
        for (std::size_t t = 0; t < nq; t++) {
            if (z[t]) out.pauli.set(diag.qubits[t], Pauli::Z);
        }
    }
    return out;
}

Correction decode_3d(const StabilizerCode& code, const SpacetimeSample& sample,
                     const PhenomenologicalNoise& noise) {
    auto params = WeightParams::fault_tolerant(noise);
    auto [w_main, w_anti] = axis_weights(params, noise.axis);
    const int T = int(sample.measured.size());
    const int F = code.num_faces();
    const bool periodic_time = sample.closure == TemporalClosure::Periodic;
    const int layers = periodic_time ? T : T + 1;

    std::vector<EventNode> events;
    BitVec layer(F);
    for (int t = 0; t < layers; t++) {
        if (periodic_time) {
            layer = sample.measured[t];
            if (t == 0) {
                layer ^= sample.measured[T - 1];
                layer ^= sample.final_true_syndrome;
            } else {
                layer ^= sample.measured[t - 1];
            }
        } else {
            if (t == 0) {
                layer = sample.measured[0];
            } else if (t < T) {
                layer = sample.measured[t];
                layer ^= sample.measured[t - 1];
            } else {
                layer = sample.final_true_syndrome;
                layer ^= sample.measured[T - 1];
            }
        }
        for (int f = 0; f < F; f++)
            if (layer.get(f)) events.push_back({f, t});
    }

    VolumeDecoder dec(code, w_main, w_anti, params.w_t, layers, sample.closure);
    Correction out = dec.run(events);
    if (periodic_time) {
        // The sampled error contributes its own temporal seam crossings: one
        // per measurement flip in the last round.
        out.temporal_cycle_parity ^= int(sample.flips[T - 1].popcount() & 1);
    } else {
        out.temporal_cycle_parity = 0;
    }
    return out;
}

std::vector<double> coset_probabilities(const StabilizerCode& code, const Syndrome& syndrome,
                                        const PauliChannel& channel) {
    channel.validate();
    const int n = code.n;
    const int k = code.k;
    const std::size_t F = code.stabilizers.size();
    if (n > 14) throw std::invalid_argument("ml_decode is limited to n <= 14");
    if (n - k > 26) throw std::invalid_argument("stabilizer group too large to enumerate");

    // One Pauli consistent with the syndrome, from a linear solve against
    // the stabilizer anticommutation matrix.
    BitMatrix dual(F, 2 * std::size_t(n));
    for (std::size_t i = 0; i < F; i++) {
        for (int q = 0; q < n; q++) {
            dual.set(i, q, code.stabilizers[i].z_bit(q));
            dual.set(i, std::size_t(n) + q, code.stabilizers[i].x_bit(q));
        }
    }
    BitMatrix rhs(F, 1);
    for (std::size_t f = 0; f < F; f++) rhs.set(f, 0, syndrome.defects.get(f));
    auto sol = dual.solve_all_columns(rhs);
    if (sol.empty()) throw std::invalid_argument("no Pauli is consistent with this syndrome");
    PauliOperator base = PauliOperator::from_symplectic_row(sol[0]);

    // Independent stabilizer generators.
    std::vector<uint64_t> gen_x, gen_z;
    {
        std::vector<BitVec> rows;
        for (const auto& s : code.stabilizers) rows.push_back(s.symplectic_row());
        BitMatrix m(rows);
        std::size_t rank = m.rref().size();
        for (std::size_t i = 0; i < rank; i++) {
            auto op = PauliOperator::from_symplectic_row(m.row(i));
            gen_x.push_back(op.x_mask().words()[0]);
            gen_z.push_back(op.z_mask().words()[0]);
        }
    }

    // Probability tables: the chance of a configuration depends only on its
    // per-letter counts.
    const double pI = 1 - channel.p;
    const double pX = channel.p * channel.r_x;
    const double pY = channel.p * channel.r_y;
    const double pZ = channel.p * channel.r_z;
    std::vector<double> powI(n + 1, 1), powX(n + 1, 1), powY(n + 1, 1), powZ(n + 1, 1);
    for (int i = 1; i <= n; i++) {
        powI[i] = powI[i - 1] * pI;
        powX[i] = powX[i - 1] * pX;
        powY[i] = powY[i - 1] * pY;
        powZ[i] = powZ[i - 1] * pZ;
    }

    auto label_bits = [&](const PauliOperator& p) {
        uint64_t bits = 0;
        for (int i = 0; i < k; i++) {
            if (p.anticommutes_with(code.logical_x_reps[i])) bits |= uint64_t(1) << (2 * i);
            if (p.anticommutes_with(code.logical_z_reps[i])) bits |= uint64_t(1) << (2 * i + 1);
        }
        return bits;
    };
    const uint64_t base_label = label_bits(base);
    const std::size_t num_classes = std::size_t(1) << (2 * k);
    std::vector<double> probs(num_classes, 0.0);
    const uint64_t group_size = uint64_t(1) << gen_x.size();

    for (uint64_t label = 0; label < num_classes; label++) {
        PauliOperator rep = base;
        uint64_t delta = label ^ base_label;
        for (int i = 0; i < k; i++) {
            if ((delta >> (2 * i)) & 1) rep.mul_inplace(code.logical_z_reps[i]);
            if ((delta >> (2 * i + 1)) & 1) rep.mul_inplace(code.logical_x_reps[i]);
        }
        uint64_t x = rep.x_mask().words()[0];
        uint64_t z = rep.z_mask().words()[0];
        double sum = 0.0;
        for (uint64_t g = 0;; g++) {
            int ny = __builtin_popcountll(x & z);
            int nx = __builtin_popcountll(x) - ny;
            int nz = __builtin_popcountll(z) - ny;
            sum += powI[n - nx - ny - nz] * powX[nx] * powY[ny] * powZ[nz];
            if (g + 1 >= group_size) break;
            int bit = __builtin_ctzll(g + 1);
            x ^= gen_x[bit];
            z ^= gen_z[bit];
        }
        probs[label] = sum;
    }
    return probs;
}

Correction ml_decode(const StabilizerCode& code, const Syndrome& syndrome,
                     const PauliChannel& channel) {
    auto probs = coset_probabilities(code, syndrome, channel);
    // Argmax with ties toward the trivial class, then the smallest label;
    // scanning labels in ascending order makes that the first maximum.
    std::size_t best = 0;
    for (std::size_t label = 1; label < probs.size(); label++) {
        if (probs[label] > probs[best] * (1 + 1e-12) &&
            probs[label] > probs[best] + 1e-300)
            best = label;
    }

    // Rebuild the representative of the winning class.
    const int n = code.n;
    const std::size_t F = code.stabilizers.size();
    BitMatrix dual(F, 2 * std::size_t(n));
    for (std::size_t i = 0; i < F; i++) {
        for (int q = 0; q < n; q++) {
            dual.set(i, q, code.stabilizers[i].z_bit(q));
            dual.set(i, std::size_t(n) + q, code.stabilizers[i].x_bit(q));
        }
    }
    BitMatrix rhs(F, 1);
    for (std::size_t f = 0; f < F; f++) rhs.set(f, 0, syndrome.defects.get(f));
    PauliOperator rep = PauliOperator::from_symplectic_row(dual.solve_all_columns(rhs)[0]);
    uint64_t bits = 0;
    for (int i = 0; i < code.k; i++) {
        if (rep.anticommutes_with(code.logical_x_reps[i])) bits |= uint64_t(1) << (2 * i);
        if (rep.anticommutes_with(code.logical_z_reps[i])) bits |= uint64_t(1) << (2 * i + 1);
    }
    uint64_t delta = uint64_t(best) ^ bits;
    for (int i = 0; i < code.k; i++) {
        if ((delta >> (2 * i)) & 1) rep.mul_inplace(code.logical_z_reps[i]);
        if ((delta >> (2 * i + 1)) & 1) rep.mul_inplace(code.logical_x_reps[i]);
    }
    Correction out;
    out.pauli = rep;
    return out;
}

Outcome adjudicate(const StabilizerCode& code, const PauliOperator& error,
                   const Correction& correction) {
    if (!(syndrome(code, error) == syndrome(code, correction.pauli)))
        throw std::invalid_argument("correction does not reproduce the error syndrome");
    uint64_t label = logical_class(code, error * correction.pauli);
    if (label != 0) return Outcome::LogicalFailure;
    if (correction.temporal_cycle_parity & 1) return Outcome::TemporalFailure;
    return Outcome::Success;
}

}  // namespace xzzx
