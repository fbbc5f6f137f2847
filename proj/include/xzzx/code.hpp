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

#ifndef XZZX_CODE_H
#define XZZX_CODE_H

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "xzzx/pauli.hpp"

namespace xzzx {

// Qubits sit on the vertices of a square lattice and every face carries the
// same XZZX stabilizer: X on the NW/SE corners, Z on the NE/SW corners.
// Pauli-Z error strings therefore run along the main diagonal of the lattice
// and Pauli-X strings along the anti-diagonal.
//
// Coordinate conventions (fixed so syndromes are reproducible bit-for-bit):
//
// Periodic(rows, cols): qubit (r, c) has index r*cols + c. Face (r, c) has
// index r*cols + c and corners NW=(r,c), NE=(r,c+1), SW=(r+1,c),
// SE=(r+1,c+1), all mod (rows, cols). A Z error on qubit (r,c) creates
// defects at faces (r,c) and (r-1,c-1); an X error at faces (r,c-1) and
// (r-1,c); a Y error at all four.
//
// OpenRectangular(d_x, d_z): the planar patch is described in rotated
// coordinates (u, v) where u runs along the Z-string direction and v along
// the X-string direction. Qubits occupy (u, v) with u+v even, 0 <= u <= U,
// 0 <= v <= V, U = 2(d_z-1), V = 2(d_x-1); faces occupy the u+v odd points
// of the same box. The face at (u, v) carries X on qubits (u-1,v), (u+1,v)
// and Z on (u,v-1), (u,v+1), truncated at the patch boundary (weight-3 on
// edges, weight-2 in the d_x = 1 repetition limit). Qubit count is
// n = d_x*d_z + (d_x-1)(d_z-1); the minimum-weight Z-only logical runs along
// a v-even line (weight d_z) and the X-only one along a u-even line
// (weight d_x), both verified by exhaustive search in the test suite.

struct Periodic {
    int rows = 0;
    int cols = 0;
    bool operator==(const Periodic&) const = default;
};

struct OpenRectangular {
    int d_x = 0;
    int d_z = 0;
    bool operator==(const OpenRectangular&) const = default;
};

using LatticeGeometry = std::variant<Periodic, OpenRectangular>;

std::string geometry_to_string(const LatticeGeometry& g);

/// Defect pattern: one bit per face.
struct Syndrome {
    BitVec defects;

    bool empty() const { return !defects.any(); }
    std::size_t count() const { return defects.popcount(); }
    std::vector<int32_t> face_indices() const;
    bool operator==(const Syndrome&) const = default;
};

enum class DiagonalDirection { ZSymmetry, XSymmetry };

/// Faces along one symmetry diagonal, in traversal order. On periodic
/// lattices the diagonal closes into a cycle and qubits[t] sits between
/// faces[t-1] and faces[t]; on open lattices the line is a chain and
/// `closed` is false.
struct Diagonal {
    int index = 0;
    bool closed = false;
    std::vector<int32_t> faces;
    std::vector<int32_t> qubits;
};

class StabilizerCode {
  public:
    LatticeGeometry geometry;
    int n = 0;  // qubits
    int k = 0;  // logical qubits
    std::vector<PauliOperator> stabilizers;
    std::vector<PauliOperator> logical_x_reps;  // paired: <Z_i, X_i> anticommute
    std::vector<PauliOperator> logical_z_reps;

    bool is_periodic() const { return std::holds_alternative<Periodic>(geometry); }
    const Periodic& periodic() const { return std::get<Periodic>(geometry); }
    const OpenRectangular& open() const { return std::get<OpenRectangular>(geometry); }

    int num_faces() const { return int(stabilizers.size()); }

    /// Faces whose stabilizer anticommutes with the given single-qubit Pauli.
    const std::vector<int32_t>& defect_faces(int qubit, Pauli p) const;

    /// Diagonals along one symmetry direction; every face appears in exactly
    /// one diagonal per direction.
    const std::vector<Diagonal>& diagonals(DiagonalDirection dir) const;
    int face_diagonal(DiagonalDirection dir, int face) const;
    int face_diagonal_pos(DiagonalDirection dir, int face) const;

    // Coordinate maps. Periodic: (row, col) pairs for qubits and faces.
    // Open: rotated (u, v) pairs.
    std::pair<int, int> qubit_coord(int q) const { return qubit_coords_[q]; }
    std::pair<int, int> face_coord(int f) const { return face_coords_[f]; }
    int qubit_at(int a, int b) const;  // -1 if no qubit at that coordinate
    int face_at(int a, int b) const;

    // Internal builders (used by build_xzzx_code).
    void finalize();

    std::vector<std::pair<int, int>> qubit_coords_;
    std::vector<std::pair<int, int>> face_coords_;
    std::vector<int32_t> coord_to_qubit_, coord_to_face_;
    int coord_stride_ = 0, coord_rows_ = 0;
    std::vector<std::vector<int32_t>> anti_[4];  // per Pauli letter
    std::vector<Diagonal> diagonals_[2];
    std::vector<int32_t> face_diag_[2], face_diag_pos_[2];
};

/// Builds the XZZX surface code on the requested geometry. Rejects
/// Periodic lattices with rows or cols < 2 and open patches with
/// d_x or d_z < 1. Construction postconditions (mutually commuting
/// stabilizers, valid anticommuting logical pairs, k from GF(2) rank)
/// are checked and violations throw std::logic_error.
StabilizerCode build_xzzx_code(const LatticeGeometry& geometry);

/// Defects of `error`: the faces whose stabilizer anticommutes with it.
Syndrome syndrome(const StabilizerCode& code, const PauliOperator& error);

/// Coset label of an empty-syndrome residual in N(S)/S. Bit 2i is the
/// anticommutation with logical_x_reps[i] (a logical-Z component), bit 2i+1
/// with logical_z_reps[i]. Zero iff the residual is a stabilizer.
/// Throws std::invalid_argument if the residual has a nonempty syndrome.
uint64_t logical_class(const StabilizerCode& code, const PauliOperator& residual);

enum class LogicalRestrict { ZOnly, XOnly, Any };

/// Exact minimum weight of a nontrivial logical operator under the given
/// restriction, by exhaustive enumeration of the relevant GF(2) null space.
/// Throws std::invalid_argument when the search space exceeds 2^26.
int min_logical_weight(const StabilizerCode& code, LogicalRestrict restrict);

/// JSON document with n, k, geometry, stabilizer supports and logical
/// representatives; consumed by tests and the CLI `describe` subcommand.
std::string describe_json(const StabilizerCode& code);

}  // namespace xzzx

#endif
