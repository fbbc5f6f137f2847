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

#include "xzzx/code.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

namespace xzzx {

namespace {

int mod(int a, int m) { return ((a % m) + m) % m; }

/// Maintains a reduced basis for incremental row-space membership tests.
struct IncrementalSpan {
    std::vector<BitVec> rows;
    std::vector<std::size_t> pivots;

    // Reduces v against the basis; returns the residual.
    BitVec reduce(BitVec v) const {
        for (std::size_t i = 0; i < rows.size(); i++) {
            if (v.get(pivots[i])) v ^= rows[i];
        }
        return v;
    }
    bool contains(const BitVec& v) const { return !reduce(v).any(); }
    // Returns false if v was already in the span.
    bool add(const BitVec& v) {
        BitVec r = reduce(v);
        if (!r.any()) return false;
        std::size_t pivot = 0;
        while (!r.get(pivot)) pivot++;
        for (std::size_t i = 0; i < rows.size(); i++) {
            if (rows[i].get(pivot)) rows[i] ^= r;
        }
        rows.push_back(std::move(r));
        pivots.push_back(pivot);
        return true;
    }
};

bool anticommute_rows(const PauliOperator& a, const PauliOperator& b) {
    return a.anticommutes_with(b);
}

void compute_logicals(StabilizerCode& code, const std::vector<PauliOperator>& candidates) {
    const int n = code.n;
    const auto& stabs = code.stabilizers;

    // k from the GF(2) rank of the stabilizer symplectic matrix.
    std::vector<BitVec> stab_rows;
    stab_rows.reserve(stabs.size());
    for (const auto& s : stabs) stab_rows.push_back(s.symplectic_row());
    IncrementalSpan stab_span;
    for (const auto& r : stab_rows) stab_span.add(r);
    const int rank = int(stab_span.rows.size());
    code.k = n - rank;

    // Normalizer N(S): null space of the matrix whose i-th row is the
    // symplectic dual (z_i | x_i) of stabilizer i.
    BitMatrix dual(stabs.size(), 2 * std::size_t(n));
    for (std::size_t i = 0; i < stabs.size(); i++) {
        for (int q = 0; q < n; q++) {
            dual.set(i, q, stabs[i].z_bit(q));
            dual.set(i, std::size_t(n) + q, stabs[i].x_bit(q));
        }
    }
    std::vector<BitVec> normalizer = dual.null_space();

    // Collect 2k coset representatives, preferring the geometric candidates.
    IncrementalSpan combined = stab_span;
    std::vector<PauliOperator> reps;
    auto consider = [&](const PauliOperator& op) {
        if (int(reps.size()) == 2 * code.k) return;
        for (const auto& s : stabs) {
            if (anticommute_rows(op, s)) return;  // not in N(S)
        }
        if (combined.add(op.symplectic_row())) reps.push_back(op);
    };
    for (const auto& c : candidates) consider(c);
    for (const auto& v : normalizer) consider(PauliOperator::from_symplectic_row(v));
    if (int(reps.size()) != 2 * code.k)
        throw std::logic_error("failed to find a complete set of logical representatives");

    // Symplectic Gram-Schmidt: pair the representatives so that exactly the
    // paired ones anticommute.
    std::vector<PauliOperator> pool = reps;
    code.logical_x_reps.clear();
    code.logical_z_reps.clear();
    while (!pool.empty()) {
        PauliOperator a = pool.front();
        pool.erase(pool.begin());
        int partner = -1;
        for (std::size_t i = 0; i < pool.size(); i++) {
            if (anticommute_rows(a, pool[i])) {
                partner = int(i);
                break;
            }
        }
        if (partner < 0) throw std::logic_error("symplectic pairing failed");
        PauliOperator b = pool[partner];
        pool.erase(pool.begin() + partner);
        for (auto& u : pool) {
            bool ub = anticommute_rows(u, b);
            bool ua = anticommute_rows(u, a);
            if (ub) u.mul_inplace(a);
            if (ua) u.mul_inplace(b);
        }
        // The operator with the heavier Z content is recorded as the Z
        // representative of the pair.
        std::size_t az = a.z_mask().popcount(), bz = b.z_mask().popcount();
        if (az >= bz) {
            code.logical_z_reps.push_back(a);
            code.logical_x_reps.push_back(b);
        } else {
            code.logical_z_reps.push_back(b);
            code.logical_x_reps.push_back(a);
        }
    }

    // Canonical representatives on small codes: lexicographically smallest
    // member of each stabilizer coset.
    if (n <= 12 && rank <= 20) {
        std::vector<PauliOperator> gens;
        for (const auto& r : stab_span.rows) gens.push_back(PauliOperator::from_symplectic_row(r));
        auto canonicalize = [&](PauliOperator rep) {
            PauliOperator best = rep;
            PauliOperator cur = rep;
            uint64_t count = uint64_t(1) << gens.size();
            for (uint64_t i = 1; i < count; i++) {
                int bit = __builtin_ctzll(i);  // Gray-code walk of the group
                cur.mul_inplace(gens[bit]);
                if (cur.lex_less(best)) best = cur;
            }
            return best;
        };
        for (auto& l : code.logical_z_reps) l = canonicalize(l);
        for (auto& l : code.logical_x_reps) l = canonicalize(l);
    }
}

void verify_code(const StabilizerCode& code) {
    const auto& stabs = code.stabilizers;
    for (std::size_t i = 0; i < stabs.size(); i++) {
        for (std::size_t j = i + 1; j < stabs.size(); j++) {
            if (stabs[i].anticommutes_with(stabs[j]))
                throw std::logic_error("stabilizers do not commute");
        }
    }
    for (int i = 0; i < code.k; i++) {
        for (const auto& s : stabs) {
            if (code.logical_z_reps[i].anticommutes_with(s) ||
                code.logical_x_reps[i].anticommutes_with(s))
                throw std::logic_error("logical representative fails to commute with stabilizers");
        }
        for (int j = 0; j < code.k; j++) {
            bool zx = code.logical_z_reps[i].anticommutes_with(code.logical_x_reps[j]);
            if (zx != (i == j)) throw std::logic_error("logical pairing is wrong");
            if (code.logical_z_reps[i].anticommutes_with(code.logical_z_reps[j]) ||
                code.logical_x_reps[i].anticommutes_with(code.logical_x_reps[j]))
                throw std::logic_error("logical representatives of like type must commute");
        }
    }
}

}  // namespace

std::string geometry_to_string(const LatticeGeometry& g) {
    if (const auto* p = std::get_if<Periodic>(&g))
        return "periodic(" + std::to_string(p->rows) + "x" + std::to_string(p->cols) + ")";
    const auto& o = std::get<OpenRectangular>(g);
    return "open(" + std::to_string(o.d_x) + "x" + std::to_string(o.d_z) + ")";
}

std::vector<int32_t> Syndrome::face_indices() const {
    std::vector<int32_t> out;
    for (std::size_t f = 0; f < defects.size(); f++) {
        if (defects.get(f)) out.push_back(int32_t(f));
    }
    return out;
}

const std::vector<int32_t>& StabilizerCode::defect_faces(int qubit, Pauli p) const {
    return anti_[std::size_t(p)][qubit];
}

const std::vector<Diagonal>& StabilizerCode::diagonals(DiagonalDirection dir) const {
    return diagonals_[dir == DiagonalDirection::ZSymmetry ? 0 : 1];
}

int StabilizerCode::face_diagonal(DiagonalDirection dir, int face) const {
    return face_diag_[dir == DiagonalDirection::ZSymmetry ? 0 : 1][face];
}

int StabilizerCode::face_diagonal_pos(DiagonalDirection dir, int face) const {
    return face_diag_pos_[dir == DiagonalDirection::ZSymmetry ? 0 : 1][face];
}

int StabilizerCode::qubit_at(int a, int b) const {
    if (a < 0 || b < 0 || a >= coord_rows_ || b >= coord_stride_) return -1;
    return coord_to_qubit_[std::size_t(a) * coord_stride_ + b];
}

int StabilizerCode::face_at(int a, int b) const {
    if (a < 0 || b < 0 || a >= coord_rows_ || b >= coord_stride_) return -1;
    return coord_to_face_[std::size_t(a) * coord_stride_ + b];
}

void StabilizerCode::finalize() {
    for (int letter = 0; letter < 4; letter++) {
        anti_[letter].assign(n, {});
    }
    for (int f = 0; f < num_faces(); f++) {
        for (const auto& [q, p] : stabilizers[f].support()) {
            // X_q anticommutes with a stabilizer carrying Z at q, and vice
            // versa; Y_q anticommutes with either.
            if (p == Pauli::Z) {
                anti_[std::size_t(Pauli::X)][q].push_back(f);
                anti_[std::size_t(Pauli::Y)][q].push_back(f);
            } else if (p == Pauli::X) {
                anti_[std::size_t(Pauli::Z)][q].push_back(f);
                anti_[std::size_t(Pauli::Y)][q].push_back(f);
            }
        }
    }
    for (int dir = 0; dir < 2; dir++) {
        face_diag_[dir].assign(num_faces(), -1);
        face_diag_pos_[dir].assign(num_faces(), -1);
        for (const auto& d : diagonals_[dir]) {
            for (std::size_t t = 0; t < d.faces.size(); t++) {
                face_diag_[dir][d.faces[t]] = d.index;
                face_diag_pos_[dir][d.faces[t]] = int32_t(t);
            }
        }
    }
}

StabilizerCode build_xzzx_code(const LatticeGeometry& geometry) {
    StabilizerCode code;
    code.geometry = geometry;
    std::vector<PauliOperator> candidates;

    if (const auto* per = std::get_if<Periodic>(&geometry)) {
        const int R = per->rows, C = per->cols;
        if (R < 2 || C < 2) throw std::invalid_argument("Periodic lattice needs rows, cols >= 2");
        const int n = R * C;
        code.n = n;
        auto qidx = [&](int r, int c) { return mod(r, R) * C + mod(c, C); };
        code.qubit_coords_.resize(n);
        code.face_coords_.resize(n);
        code.coord_rows_ = R;
        code.coord_stride_ = C;
        code.coord_to_qubit_.resize(n);
        code.coord_to_face_.resize(n);
        for (int r = 0; r < R; r++) {
            for (int c = 0; c < C; c++) {
                code.qubit_coords_[qidx(r, c)] = {r, c};
                code.face_coords_[qidx(r, c)] = {r, c};
                code.coord_to_qubit_[qidx(r, c)] = qidx(r, c);
                code.coord_to_face_[qidx(r, c)] = qidx(r, c);
            }
        }
        code.stabilizers.reserve(n);
        for (int r = 0; r < R; r++) {
            for (int c = 0; c < C; c++) {
                PauliOperator s(n);
                s.set(qidx(r, c), Pauli::X);          // NW
                s.set(qidx(r, c + 1), Pauli::Z);      // NE
                s.set(qidx(r + 1, c), Pauli::Z);      // SW
                s.set(qidx(r + 1, c + 1), Pauli::X);  // SE
                code.stabilizers.push_back(std::move(s));
            }
        }

        const int g = std::gcd(R, C);
        const int L = n / g;
        for (int j = 0; j < g; j++) {
            Diagonal dz;
            dz.index = j;
            dz.closed = true;
            for (int t = 0; t < L; t++) {
                dz.faces.push_back(qidx(t, j + t));
                dz.qubits.push_back(qidx(t, j + t));
            }
            code.diagonals_[0].push_back(std::move(dz));

            Diagonal dx;
            dx.index = j;
            dx.closed = true;
            for (int t = 0; t < L; t++) {
                dx.faces.push_back(qidx(-t, j + t));
                dx.qubits.push_back(qidx(1 - t, j + t));
            }
            code.diagonals_[1].push_back(std::move(dx));
        }

        // Geometric logical candidates: Pauli-Z strings wound along the main
        // diagonal and Pauli-X strings along the anti-diagonal.
        for (int j = 0; j < g; j++) {
            PauliOperator zc(n), xc(n);
            for (int t = 0; t < L; t++) {
                zc.set(qidx(t, j + t), Pauli::Z);
                xc.set(qidx(1 - t, j + t), Pauli::X);
            }
            candidates.push_back(std::move(zc));
            candidates.push_back(std::move(xc));
        }
    } else {
        const auto& open = std::get<OpenRectangular>(geometry);
        const int dx = open.d_x, dz = open.d_z;
        if (dx < 1 || dz < 1) throw std::invalid_argument("OpenRectangular needs d_x, d_z >= 1");
        const int U = 2 * (dz - 1), V = 2 * (dx - 1);
        code.coord_rows_ = U + 1;
        code.coord_stride_ = V + 1;
        code.coord_to_qubit_.assign(std::size_t(U + 1) * (V + 1), -1);
        code.coord_to_face_.assign(std::size_t(U + 1) * (V + 1), -1);
        for (int v = 0; v <= V; v++) {
            for (int u = v % 2; u <= U; u += 2) {
                code.coord_to_qubit_[std::size_t(u) * (V + 1) + v] = int32_t(code.qubit_coords_.size());
                code.qubit_coords_.push_back({u, v});
            }
        }
        code.n = int(code.qubit_coords_.size());
        const int n = code.n;
        for (int v = 0; v <= V; v++) {
            for (int u = (v % 2) ^ 1; u <= U; u += 2) {
                code.coord_to_face_[std::size_t(u) * (V + 1) + v] = int32_t(code.face_coords_.size());
                code.face_coords_.push_back({u, v});
            }
        }
        auto qat = [&](int u, int v) -> int {
            if (u < 0 || v < 0 || u > U || v > V) return -1;
            return code.coord_to_qubit_[std::size_t(u) * (V + 1) + v];
        };
        for (auto [u, v] : code.face_coords_) {
            PauliOperator s(n);
            if (int q = qat(u - 1, v); q >= 0) s.set(q, Pauli::X);
            if (int q = qat(u + 1, v); q >= 0) s.set(q, Pauli::X);
            if (int q = qat(u, v - 1); q >= 0) s.set(q, Pauli::Z);
            if (int q = qat(u, v + 1); q >= 0) s.set(q, Pauli::Z);
            code.stabilizers.push_back(std::move(s));
        }

        auto fat = [&](int u, int v) -> int {
            if (u < 0 || v < 0 || u > U || v > V) return -1;
            return code.coord_to_face_[std::size_t(u) * (V + 1) + v];
        };
        for (int v = 0; v <= V; v++) {
            Diagonal d;
            d.index = v;
            for (int u = (v % 2) ^ 1; u <= U; u += 2) d.faces.push_back(fat(u, v));
            for (int u = v % 2; u <= U; u += 2) d.qubits.push_back(qat(u, v));
            code.diagonals_[0].push_back(std::move(d));
        }
        for (int u = 0; u <= U; u++) {
            Diagonal d;
            d.index = u;
            for (int v = (u % 2) ^ 1; v <= V; v += 2) d.faces.push_back(fat(u, v));
            for (int v = u % 2; v <= V; v += 2) d.qubits.push_back(qat(u, v));
            code.diagonals_[1].push_back(std::move(d));
        }

        PauliOperator zline(n), xline(n);
        for (int u = 0; u <= U; u += 2) zline.set(qat(u, 0), Pauli::Z);
        for (int v = 0; v <= V; v += 2) xline.set(qat(0, v), Pauli::X);
        candidates.push_back(std::move(zline));
        candidates.push_back(std::move(xline));
    }

    compute_logicals(code, candidates);
    code.finalize();
    verify_code(code);
    return code;
}

Syndrome syndrome(const StabilizerCode& code, const PauliOperator& error) {
    Syndrome s;
    s.defects = BitVec(code.num_faces());
    for (int f = 0; f < code.num_faces(); f++) {
        if (code.stabilizers[f].anticommutes_with(error)) s.defects.set(f, true);
    }
    return s;
}

uint64_t logical_class(const StabilizerCode& code, const PauliOperator& residual) {
    if (!syndrome(code, residual).empty())
        throw std::invalid_argument("logical_class requires an empty-syndrome residual");
    uint64_t bits = 0;
    for (int i = 0; i < code.k; i++) {
        if (residual.anticommutes_with(code.logical_x_reps[i])) bits |= uint64_t(1) << (2 * i);
        if (residual.anticommutes_with(code.logical_z_reps[i])) bits |= uint64_t(1) << (2 * i + 1);
    }
    return bits;
}

namespace {

int min_weight_in_null_space(const std::vector<BitVec>& basis,
                             const std::vector<BitVec>& excluded_span_rows,
                             std::size_t nbits) {
    if (basis.size() > 26) throw std::invalid_argument("min_logical_weight search space exceeds 2^26");
    std::vector<BitVec> excl_rows = excluded_span_rows;
    std::vector<std::size_t> excl_pivots;
    {
        BitMatrix m(excl_rows);
        excl_pivots = m.rref();
        excl_rows.clear();
        for (std::size_t i = 0; i < excl_pivots.size(); i++) excl_rows.push_back(m.row(i));
    }
    BitVec cur(nbits);
    int best = -1;
    const uint64_t total = uint64_t(1) << basis.size();
    for (uint64_t i = 1; i < total; i++) {
        cur ^= basis[std::size_t(__builtin_ctzll(i))];
        int w = int(cur.popcount());
        if (best >= 0 && w >= best) continue;
        if (BitMatrix::in_row_space(excl_rows, excl_pivots, cur)) continue;
        best = w;
    }
    return best;
}

}  // namespace

int min_logical_weight(const StabilizerCode& code, LogicalRestrict restrict) {
    const int n = code.n;
    const std::size_t F = code.stabilizers.size();

    if (restrict == LogicalRestrict::Any) {
        BitMatrix dual(F, 2 * std::size_t(n));
        for (std::size_t i = 0; i < F; i++) {
            for (int q = 0; q < n; q++) {
                dual.set(i, q, code.stabilizers[i].z_bit(q));
                dual.set(i, std::size_t(n) + q, code.stabilizers[i].x_bit(q));
            }
        }
        std::vector<BitVec> basis = dual.null_space();
        if (basis.size() > 26)
            throw std::invalid_argument("min_logical_weight search space exceeds 2^26");
        std::vector<BitVec> stab_rows;
        for (const auto& s : code.stabilizers) stab_rows.push_back(s.symplectic_row());

        std::vector<std::size_t> pivots;
        {
            BitMatrix m(stab_rows);
            pivots = m.rref();
            stab_rows.clear();
            for (std::size_t i = 0; i < pivots.size(); i++) stab_rows.push_back(m.row(i));
        }
        BitVec cur(2 * std::size_t(n));
        int best = -1;
        const uint64_t total = uint64_t(1) << basis.size();
        for (uint64_t i = 1; i < total; i++) {
            cur ^= basis[std::size_t(__builtin_ctzll(i))];
            int w = 0;
            for (int q = 0; q < n; q++) w += (cur.get(q) || cur.get(std::size_t(n) + q)) ? 1 : 0;
            if (best >= 0 && w >= best) continue;
            if (BitMatrix::in_row_space(stab_rows, pivots, cur)) continue;
            best = w;
        }
        if (best < 0) throw std::logic_error("no nontrivial logical found");
        return best;
    }

    const bool zonly = restrict == LogicalRestrict::ZOnly;
    // Z-only patterns are undetected iff they have even overlap with every
    // stabilizer's X support (and symmetrically for X-only patterns).
    BitMatrix detect(F, std::size_t(n));
    for (std::size_t i = 0; i < F; i++) {
        const auto& mask = zonly ? code.stabilizers[i].x_mask() : code.stabilizers[i].z_mask();
        detect.row(i) = mask;
    }
    std::vector<BitVec> basis = detect.null_space();

    // Pure-Z (pure-X) elements of the stabilizer group: combinations whose
    // X (Z) parts cancel.
    BitMatrix opposite(std::size_t(n), F);
    for (std::size_t i = 0; i < F; i++) {
        const auto& mask = zonly ? code.stabilizers[i].x_mask() : code.stabilizers[i].z_mask();
        for (int q = 0; q < n; q++) opposite.set(q, i, mask.get(q));
    }
    std::vector<BitVec> combos = opposite.null_space();
    std::vector<BitVec> pure_rows;
    for (const auto& c : combos) {
        BitVec acc{std::size_t(n)};
        for (std::size_t i = 0; i < F; i++) {
            if (c.get(i)) acc ^= zonly ? code.stabilizers[i].z_mask() : code.stabilizers[i].x_mask();
        }
        if (acc.any()) pure_rows.push_back(std::move(acc));
    }
    int best = min_weight_in_null_space(basis, pure_rows, std::size_t(n));
    if (best < 0) throw std::logic_error("no nontrivial restricted logical found");
    return best;
}

std::string describe_json(const StabilizerCode& code) {
    nlohmann::json j;
    j["n"] = code.n;
    j["k"] = code.k;
    if (code.is_periodic()) {
        j["geometry"] = {{"type", "periodic"},
                         {"rows", code.periodic().rows},
                         {"cols", code.periodic().cols}};
    } else {
        j["geometry"] = {{"type", "open_rectangular"},
                         {"d_x", code.open().d_x},
                         {"d_z", code.open().d_z}};
    }
    auto op_to_json = [](const PauliOperator& op) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& [q, p] : op.support())
            arr.push_back({int(q), std::string(1, pauli_char(p))});
        return arr;
    };
    j["stabilizers"] = nlohmann::json::array();
    for (const auto& s : code.stabilizers) j["stabilizers"].push_back(op_to_json(s));
    j["logical_z"] = nlohmann::json::array();
    for (const auto& l : code.logical_z_reps) j["logical_z"].push_back(op_to_json(l));
    j["logical_x"] = nlohmann::json::array();
    for (const auto& l : code.logical_x_reps) j["logical_x"].push_back(op_to_json(l));
    j["qubit_coords"] = nlohmann::json::array();
    for (auto [a, b] : code.qubit_coords_) j["qubit_coords"].push_back({a, b});
    j["face_coords"] = nlohmann::json::array();
    for (auto [a, b] : code.face_coords_) j["face_coords"].push_back({a, b});
    return j.dump(2);
}

}  // namespace xzzx
