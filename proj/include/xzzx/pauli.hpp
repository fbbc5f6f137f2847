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

#ifndef XZZX_PAULI_H
#define XZZX_PAULI_H

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "xzzx/gf2.hpp"

namespace xzzx {

enum class Pauli : uint8_t { I = 0, X = 1, Z = 2, Y = 3 };

char pauli_char(Pauli p);
Pauli pauli_from_char(char c);

/// An n-qubit Pauli operator modulo global phase, stored as X/Z bit masks.
/// Multiplication is the group product with phases dropped, so P*P = I and
/// the product is abelian at this level.
class PauliOperator {
  public:
    PauliOperator() = default;
    explicit PauliOperator(std::size_t n) : n_(n), x_(n), z_(n) {}

    static PauliOperator identity(std::size_t n) { return PauliOperator(n); }
    static PauliOperator single(std::size_t n, std::size_t qubit, Pauli p);
    static PauliOperator from_support(std::size_t n, const std::map<std::size_t, Pauli>& support);
    /// Parses strings like "X0 Z3 Y5".
    static PauliOperator from_string(std::size_t n, const std::string& s);

    std::size_t num_qubits() const { return n_; }

    Pauli at(std::size_t q) const {
        return static_cast<Pauli>((uint8_t(x_.get(q)) | (uint8_t(z_.get(q)) << 1)));
    }
    void set(std::size_t q, Pauli p) {
        x_.set(q, uint8_t(p) & 1);
        z_.set(q, (uint8_t(p) >> 1) & 1);
    }

    bool x_bit(std::size_t q) const { return x_.get(q); }
    bool z_bit(std::size_t q) const { return z_.get(q); }
    const BitVec& x_mask() const { return x_; }
    const BitVec& z_mask() const { return z_; }
    BitVec& x_mask() { return x_; }
    BitVec& z_mask() { return z_; }

    /// Number of non-identity sites.
    std::size_t weight() const;
    bool is_identity() const { return !x_.any() && !z_.any(); }

    void mul_inplace(const PauliOperator& o) {
        x_ ^= o.x_;
        z_ ^= o.z_;
    }
    PauliOperator operator*(const PauliOperator& o) const {
        PauliOperator r = *this;
        r.mul_inplace(o);
        return r;
    }
    bool operator==(const PauliOperator& o) const { return x_ == o.x_ && z_ == o.z_; }

    /// Symplectic inner product: true iff the operators anticommute.
    bool anticommutes_with(const PauliOperator& o) const {
        return BitVec::dot(x_, o.z_) ^ BitVec::dot(z_, o.x_);
    }
    bool commutes_with(const PauliOperator& o) const { return !anticommutes_with(o); }

    std::map<std::size_t, Pauli> support() const;
    std::string to_string() const;

    /// Total order used for canonical coset representatives: compares the
    /// (z, x) words as little-endian integers, qubit 0 most significant.
    bool lex_less(const PauliOperator& o) const;

    /// Flattened symplectic row (x | z) of length 2n.
    BitVec symplectic_row() const;
    static PauliOperator from_symplectic_row(const BitVec& row);

  private:
    std::size_t n_ = 0;
    BitVec x_, z_;
};

}  // namespace xzzx

#endif
