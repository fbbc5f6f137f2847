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

#include "xzzx/pauli.hpp"

#include <sstream>
#include <stdexcept>

namespace xzzx {

char pauli_char(Pauli p) {
    switch (p) {
        case Pauli::I: return 'I';
        case Pauli::X: return 'X';
        case Pauli::Z: return 'Z';
        case Pauli::Y: return 'Y';
    }
    return '?';
}

Pauli pauli_from_char(char c) {
    switch (c) {
        case 'I': return Pauli::I;
        case 'X': return Pauli::X;
        case 'Z': return Pauli::Z;
        case 'Y': return Pauli::Y;
        default: throw std::invalid_argument(std::string("not a Pauli letter: ") + c);
    }
}

PauliOperator PauliOperator::single(std::size_t n, std::size_t qubit, Pauli p) {
    if (qubit >= n) throw std::out_of_range("qubit index out of range");
    PauliOperator op(n);
    op.set(qubit, p);
    return op;
}

PauliOperator PauliOperator::from_support(std::size_t n,
                                          const std::map<std::size_t, Pauli>& support) {
    PauliOperator op(n);
    for (const auto& [q, p] : support) {
        if (q >= n) throw std::out_of_range("qubit index out of range");
        op.set(q, p);
    }
    return op;
}

PauliOperator PauliOperator::from_string(std::size_t n, const std::string& s) {
    PauliOperator op(n);
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) {
        Pauli p = pauli_from_char(tok[0]);
        std::size_t q = std::stoul(tok.substr(1));
        if (q >= n) throw std::out_of_range("qubit index out of range");
        op.set(q, p);
    }
    return op;
}

std::size_t PauliOperator::weight() const {
    std::size_t c = 0;
    const auto& xw = x_.words();
    const auto& zw = z_.words();
    for (std::size_t i = 0; i < xw.size(); i++) c += std::size_t(__builtin_popcountll(xw[i] | zw[i]));
    return c;
}

std::map<std::size_t, Pauli> PauliOperator::support() const {
    std::map<std::size_t, Pauli> m;
    for (std::size_t q = 0; q < n_; q++) {
        Pauli p = at(q);
        if (p != Pauli::I) m[q] = p;
    }
    return m;
}

std::string PauliOperator::to_string() const {
    std::ostringstream out;
    bool first = true;
    for (const auto& [q, p] : support()) {
        if (!first) out << ' ';
        out << pauli_char(p) << q;
        first = false;
    }
    if (first) out << 'I';
    return out.str();
}

bool PauliOperator::lex_less(const PauliOperator& o) const {
    const auto &az = z_.words(), &bz = o.z_.words();
    const auto &ax = x_.words(), &bx = o.x_.words();
    for (std::size_t i = 0; i < az.size(); i++)
        if (az[i] != bz[i]) return az[i] < bz[i];
    for (std::size_t i = 0; i < ax.size(); i++)
        if (ax[i] != bx[i]) return ax[i] < bx[i];
    return false;
}

BitVec PauliOperator::symplectic_row() const {
    BitVec row(2 * n_);
    for (std::size_t q = 0; q < n_; q++) {
        if (x_.get(q)) row.set(q, true);
        if (z_.get(q)) row.set(n_ + q, true);
    }
    return row;
}

PauliOperator PauliOperator::from_symplectic_row(const BitVec& row) {
    std::size_t n = row.size() / 2;
    PauliOperator op(n);
    for (std::size_t q = 0; q < n; q++) {
        op.x_mask().set(q, row.get(q));
        op.z_mask().set(q, row.get(n + q));
    }
    return op;
}

}  // namespace xzzx
