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

#ifndef XZZX_TESTS_HELPERS_H
#define XZZX_TESTS_HELPERS_H

#include <cstdint>
#include <set>
#include <vector>

#include "xzzx/code.hpp"
#include "xzzx/pauli.hpp"

namespace xzzx::testing {

// Brute-force oracles, kept definitional and independent of the production
// GF(2) machinery. Only usable on small codes.

using PauliKey = std::pair<std::vector<uint64_t>, std::vector<uint64_t>>;

inline PauliKey pauli_key(const PauliOperator& p) {
    return {p.x_mask().words(), p.z_mask().words()};
}

inline std::set<PauliKey> stabilizer_group_keys(const StabilizerCode& code) {
    std::set<PauliKey> group;
    const std::size_t m = code.stabilizers.size();
    if (m > 24) throw std::runtime_error("stabilizer group too large for brute force");
    for (uint64_t mask = 0; mask < (uint64_t(1) << m); mask++) {
        PauliOperator p(code.n);
        for (std::size_t i = 0; i < m; i++) {
            if ((mask >> i) & 1) p.mul_inplace(code.stabilizers[i]);
        }
        group.insert(pauli_key(p));
    }
    return group;
}

/// All Paulis on n qubits, counted 0..4^n-1 with two bits per qubit.
inline PauliOperator pauli_from_counter(std::size_t n, uint64_t counter) {
    PauliOperator p(n);
    for (std::size_t q = 0; q < n; q++) {
        p.set(q, static_cast<Pauli>((counter >> (2 * q)) & 3));
    }
    return p;
}

/// Logical-class bits without the empty-syndrome precondition, for oracles
/// that bucket arbitrary Paulis by their anticommutation pattern.
inline uint64_t class_bits_oracle(const StabilizerCode& code, const PauliOperator& p) {
    uint64_t bits = 0;
    for (int i = 0; i < code.k; i++) {
        if (p.anticommutes_with(code.logical_x_reps[i])) bits |= uint64_t(1) << (2 * i);
        if (p.anticommutes_with(code.logical_z_reps[i])) bits |= uint64_t(1) << (2 * i + 1);
    }
    return bits;
}

}  // namespace xzzx::testing

#endif
