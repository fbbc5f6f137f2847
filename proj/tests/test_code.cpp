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

#include <doctest.h>

#include <json.hpp>
#include <map>
#include <set>

#include "helpers.hpp"
#include "xzzx/code.hpp"
#include "xzzx/rng.hpp"

using namespace xzzx;
using namespace xzzx::testing;

TEST_CASE("periodic construction basics") {
    auto code = build_xzzx_code(Periodic{2, 3});
    CHECK(code.n == 6);
    CHECK(code.stabilizers.size() == 6);
    CHECK(code.k == 1);
    for (const auto& s : code.stabilizers) CHECK(s.weight() == 4);
    CHECK_THROWS_AS(build_xzzx_code(Periodic{1, 5}), std::invalid_argument);
    CHECK_THROWS_AS(build_xzzx_code(Periodic{3, 1}), std::invalid_argument);
}

TEST_CASE("min-weight Z-only logical on Periodic(2,3) via brute force") {
    auto code = build_xzzx_code(Periodic{2, 3});
    // Oracle: enumerate all 2^6 Z patterns, keep the undetected ones that are
    // not stabilizer products, take the minimum weight.
    auto group = stabilizer_group_keys(code);
    int best = -1;
    int undetected = 0;
    for (uint64_t mask = 0; mask < 64; mask++) {
        PauliOperator p(code.n);
        for (int q = 0; q < 6; q++)
            if ((mask >> q) & 1) p.set(q, Pauli::Z);
        if (!syndrome(code, p).empty()) continue;
        undetected++;
        if (mask != 0 && !group.count(pauli_key(p))) {
            int w = int(p.weight());
            if (best < 0 || w < best) best = w;
        }
    }
    CHECK(best == 6);
    CHECK(undetected == 2);  // identity and the single wound Z operator
    CHECK(min_logical_weight(code, LogicalRestrict::ZOnly) == 6);
}

TEST_CASE("Periodic(d,d+1) has a single Z-only logical class for d=2,3") {
    for (int d : {2, 3}) {
        auto code = build_xzzx_code(Periodic{d, d + 1});
        const int n = code.n;
        CHECK(n == d * (d + 1));
        // GF(2) oracle: dimension of the undetected Z-only space minus the
        // pure-Z stabilizer subspace should be exactly 1.
        std::vector<BitVec> rows;
        for (const auto& s : code.stabilizers) rows.push_back(s.x_mask());
        BitMatrix m(rows);
        auto null_basis = m.null_space();
        CHECK(null_basis.size() == 1);
        // That lone generator has weight n = d(d+1).
        CHECK(null_basis[0].popcount() == std::size_t(n));
        CHECK(min_logical_weight(code, LogicalRestrict::ZOnly) == n);
    }
}

TEST_CASE("repetition-code limit OpenRectangular(1, d_z)") {
    for (int dz : {2, 5}) {
        auto code = build_xzzx_code(OpenRectangular{1, dz});
        CHECK(code.n == dz);
        CHECK(code.k == 1);
        for (const auto& s : code.stabilizers) CHECK(s.weight() == 2);
        CHECK(min_logical_weight(code, LogicalRestrict::XOnly) == 1);
        CHECK(min_logical_weight(code, LogicalRestrict::ZOnly) == dz);
    }
}

TEST_CASE("syndrome of single-qubit errors on the periodic lattice") {
    auto code = build_xzzx_code(Periodic{4, 5});
    const int C = 5;
    auto qidx = [&](int r, int c) { return ((r % 4 + 4) % 4) * C + ((c % C + C) % C); };

    SUBCASE("identity error gives the empty syndrome") {
        CHECK(syndrome(code, PauliOperator::identity(code.n)).empty());
    }
    SUBCASE("single Z makes two defects along the main diagonal") {
        auto s = syndrome(code, PauliOperator::single(code.n, qidx(2, 3), Pauli::Z));
        auto faces = s.face_indices();
        REQUIRE(faces.size() == 2);
        std::set<int32_t> expect = {qidx(2, 3), qidx(1, 2)};
        CHECK(std::set<int32_t>(faces.begin(), faces.end()) == expect);
    }
    SUBCASE("single Y makes four defects on the adjacent faces") {
        auto s = syndrome(code, PauliOperator::single(code.n, qidx(2, 3), Pauli::Y));
        CHECK(s.count() == 4);
    }
    SUBCASE("single X makes two defects along the anti-diagonal") {
        auto s = syndrome(code, PauliOperator::single(code.n, qidx(2, 3), Pauli::X));
        auto faces = s.face_indices();
        REQUIRE(faces.size() == 2);
        std::set<int32_t> expect = {qidx(2, 2), qidx(1, 3)};
        CHECK(std::set<int32_t>(faces.begin(), faces.end()) == expect);
    }
}

TEST_CASE("syndrome is linear under Pauli multiplication") {
    auto code = build_xzzx_code(Periodic{3, 4});
    Rng rng(1234);
    for (int trial = 0; trial < 200; trial++) {
        PauliOperator a(code.n), b(code.n);
        for (int q = 0; q < code.n; q++) {
            a.set(q, static_cast<Pauli>(rng.below(4)));
            b.set(q, static_cast<Pauli>(rng.below(4)));
        }
        auto sa = syndrome(code, a).defects;
        auto sb = syndrome(code, b).defects;
        auto sab = syndrome(code, a * b).defects;
        sa ^= sb;
        CHECK(sa == sab);
    }
}

TEST_CASE("logical_class fundamentals") {
    auto code = build_xzzx_code(Periodic{2, 3});
    SUBCASE("stabilizer generators have the identity label") {
        for (const auto& s : code.stabilizers) CHECK(logical_class(code, s) == 0);
    }
    SUBCASE("a logical Z representative anticommutes with its paired X only") {
        CHECK(logical_class(code, code.logical_z_reps[0]) == 1);
        CHECK(logical_class(code, code.logical_x_reps[0]) == 2);
    }
    SUBCASE("nonempty syndromes are rejected") {
        CHECK_THROWS_AS(logical_class(code, PauliOperator::single(code.n, 0, Pauli::Z)),
                        std::invalid_argument);
    }
}

TEST_CASE("logical_class partitions all empty-syndrome Paulis on Periodic(2,3)") {
    auto code = build_xzzx_code(Periodic{2, 3});
    const int n = code.n;  // 4^6 = 4096 Paulis
    std::map<uint64_t, int> counts;
    int empty_count = 0;
    for (uint64_t counter = 0; counter < (uint64_t(1) << (2 * n)); counter++) {
        PauliOperator p = pauli_from_counter(n, counter);
        if (!syndrome(code, p).empty()) continue;
        empty_count++;
        counts[logical_class(code, p)]++;
    }
    const int k = code.k;
    CHECK(empty_count == (1 << (n + k)));
    CHECK(counts.size() == std::size_t(1) << (2 * k));
    for (const auto& [label, c] : counts) CHECK(c == (1 << (n - k)));
}

TEST_CASE("diagonals partition the faces in both directions") {
    for (LatticeGeometry g :
         {LatticeGeometry{Periodic{4, 5}}, LatticeGeometry{Periodic{4, 4}},
          LatticeGeometry{OpenRectangular{3, 5}}}) {
        auto code = build_xzzx_code(g);
        for (auto dir : {DiagonalDirection::ZSymmetry, DiagonalDirection::XSymmetry}) {
            std::vector<int> seen(code.num_faces(), 0);
            for (const auto& d : code.diagonals(dir)) {
                for (auto f : d.faces) seen[f]++;
            }
            for (int f = 0; f < code.num_faces(); f++) CHECK(seen[f] == 1);
        }
    }
}

TEST_CASE("diagonal stabilizer products commute with pure-axis errors on the torus") {
    auto code = build_xzzx_code(Periodic{4, 5});
    SUBCASE("Z-symmetry diagonals") {
        for (const auto& d : code.diagonals(DiagonalDirection::ZSymmetry)) {
            PauliOperator prod(code.n);
            for (auto f : d.faces) prod.mul_inplace(code.stabilizers[f]);
            // The product must commute with every single-qubit Z.
            for (int q = 0; q < code.n; q++)
                CHECK(prod.commutes_with(PauliOperator::single(code.n, q, Pauli::Z)));
        }
    }
    SUBCASE("X-symmetry diagonals") {
        for (const auto& d : code.diagonals(DiagonalDirection::XSymmetry)) {
            PauliOperator prod(code.n);
            for (auto f : d.faces) prod.mul_inplace(code.stabilizers[f]);
            for (int q = 0; q < code.n; q++)
                CHECK(prod.commutes_with(PauliOperator::single(code.n, q, Pauli::X)));
        }
    }
}

TEST_CASE("diagonal parity conservation for Z-only errors") {
    auto code = build_xzzx_code(Periodic{4, 5});
    Rng rng(99);
    for (int trial = 0; trial < 1000; trial++) {
        PauliOperator err(code.n);
        for (int q = 0; q < code.n; q++) {
            if (rng.bernoulli(0.3)) err.set(q, Pauli::Z);
        }
        auto s = syndrome(code, err);
        for (const auto& d : code.diagonals(DiagonalDirection::ZSymmetry)) {
            int parity = 0;
            for (auto f : d.faces) parity ^= s.defects.get(f) ? 1 : 0;
            CHECK(parity == 0);
        }
    }
    // Identity error: zero defects on every diagonal.
    auto s0 = syndrome(code, PauliOperator::identity(code.n));
    CHECK(s0.empty());
}

TEST_CASE("qubit neighbourhood of diagonals matches the defect rule") {
    // qubits[t] of a closed Z diagonal must toggle faces[t-1] and faces[t].
    auto code = build_xzzx_code(Periodic{3, 4});
    for (const auto& d : code.diagonals(DiagonalDirection::ZSymmetry)) {
        const std::size_t L = d.faces.size();
        for (std::size_t t = 0; t < L; t++) {
            auto s = syndrome(code, PauliOperator::single(code.n, d.qubits[t], Pauli::Z));
            std::set<int32_t> expect = {d.faces[t], d.faces[(t + L - 1) % L]};
            auto faces = s.face_indices();
            CHECK(std::set<int32_t>(faces.begin(), faces.end()) == expect);
        }
    }
    for (const auto& d : code.diagonals(DiagonalDirection::XSymmetry)) {
        const std::size_t L = d.faces.size();
        for (std::size_t t = 0; t < L; t++) {
            auto s = syndrome(code, PauliOperator::single(code.n, d.qubits[t], Pauli::X));
            std::set<int32_t> expect = {d.faces[t], d.faces[(t + L - 1) % L]};
            auto faces = s.face_indices();
            CHECK(std::set<int32_t>(faces.begin(), faces.end()) == expect);
        }
    }
}

TEST_CASE("open rectangular distances match (d_x, d_z) exhaustively") {
    for (int dx = 1; dx <= 5; dx++) {
        for (int dz = 1; dz <= 5; dz++) {
            auto code = build_xzzx_code(OpenRectangular{dx, dz});
            CHECK(code.n == dx * dz + (dx - 1) * (dz - 1));
            CHECK(code.k == 1);
            CHECK(min_logical_weight(code, LogicalRestrict::ZOnly) == dz);
            CHECK(min_logical_weight(code, LogicalRestrict::XOnly) == dx);
        }
    }
}

TEST_CASE("OpenRectangular(3,5) distances validate the boundary layout") {
    auto code = build_xzzx_code(OpenRectangular{3, 5});
    CHECK(min_logical_weight(code, LogicalRestrict::ZOnly) == 5);
    CHECK(min_logical_weight(code, LogicalRestrict::XOnly) == 3);
}

TEST_CASE("corrupting a boundary stabilizer breaks the distance check") {
    // Negative control for the verification suite: flip one letter of a
    // boundary stabilizer and the Z distance collapses below d_z.
    auto code = build_xzzx_code(OpenRectangular{2, 3});
    int boundary = -1;
    for (int f = 0; f < code.num_faces(); f++) {
        if (code.stabilizers[f].weight() == 3) boundary = f;
    }
    REQUIRE(boundary >= 0);
    auto broken = code;
    for (const auto& [q, p] : code.stabilizers[boundary].support()) {
        if (p == Pauli::X) {
            broken.stabilizers[boundary].set(q, Pauli::I);
            break;
        }
    }
    bool detected = false;
    try {
        int w = min_logical_weight(broken, LogicalRestrict::ZOnly);
        detected = (w != 3);
    } catch (const std::exception&) {
        detected = true;
    }
    CHECK(detected);
}

TEST_CASE("k equals n minus GF(2) rank, independently computed") {
    for (LatticeGeometry g : {LatticeGeometry{Periodic{3, 3}}, LatticeGeometry{Periodic{4, 4}},
                              LatticeGeometry{Periodic{4, 5}}, LatticeGeometry{OpenRectangular{3, 4}}}) {
        auto code = build_xzzx_code(g);
        std::vector<BitVec> rows;
        for (const auto& s : code.stabilizers) rows.push_back(s.symplectic_row());
        BitMatrix m(rows);
        CHECK(code.k == code.n - int(m.rank()));
        CHECK(int(code.logical_z_reps.size()) == code.k);
        CHECK(int(code.logical_x_reps.size()) == code.k);
    }
}

TEST_CASE("describe_json round trips the construction") {
    auto code = build_xzzx_code(Periodic{2, 3});
    auto j = nlohmann::json::parse(describe_json(code));
    CHECK(j["n"] == 6);
    CHECK(j["k"] == 1);
    CHECK(j["geometry"]["type"] == "periodic");
    CHECK(j["stabilizers"].size() == 6);
    // Rebuild each stabilizer from its serialized support.
    for (int f = 0; f < 6; f++) {
        std::map<std::size_t, Pauli> support;
        for (const auto& term : j["stabilizers"][f]) {
            support[term[0].get<std::size_t>()] =
                pauli_from_char(term[1].get<std::string>()[0]);
        }
        CHECK(PauliOperator::from_support(6, support) == code.stabilizers[f]);
    }
}
