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

#ifndef XZZX_GF2_H
#define XZZX_GF2_H

#include <cstddef>
#include <cstdint>
#include <vector>

namespace xzzx {

/// Packed bit vector over GF(2), 64 bits per word.
class BitVec {
  public:
    BitVec() = default;
    explicit BitVec(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    std::size_t size() const { return n_; }
    bool get(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
    void set(std::size_t i, bool v) {
        uint64_t m = uint64_t(1) << (i & 63);
        if (v)
            w_[i >> 6] |= m;
        else
            w_[i >> 6] &= ~m;
    }
    void flip(std::size_t i) { w_[i >> 6] ^= uint64_t(1) << (i & 63); }

    void operator^=(const BitVec& o) {
        for (std::size_t i = 0; i < w_.size(); i++) w_[i] ^= o.w_[i];
    }
    std::size_t popcount() const {
        std::size_t c = 0;
        for (uint64_t w : w_) c += std::size_t(__builtin_popcountll(w));
        return c;
    }
    bool any() const {
        for (uint64_t w : w_)
            if (w) return true;
        return false;
    }
    /// Parity of the AND of two vectors of equal length.
    static bool dot(const BitVec& a, const BitVec& b) {
        uint64_t acc = 0;
        for (std::size_t i = 0; i < a.w_.size(); i++) acc ^= a.w_[i] & b.w_[i];
        return __builtin_popcountll(acc) & 1;
    }
    bool operator==(const BitVec& o) const { return n_ == o.n_ && w_ == o.w_; }

    const std::vector<uint64_t>& words() const { return w_; }
    std::vector<uint64_t>& words() { return w_; }

  private:
    std::size_t n_ = 0;
    std::vector<uint64_t> w_;
};

/// Dense GF(2) matrix with row operations, used for rank, null space and
/// linear solves on stabilizer data.
class BitMatrix {
  public:
    BitMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, BitVec(cols)) {}
    explicit BitMatrix(std::vector<BitVec> rows)
        : cols_(rows.empty() ? 0 : rows[0].size()), rows_(std::move(rows)) {}

    std::size_t num_rows() const { return rows_.size(); }
    std::size_t num_cols() const { return cols_; }
    BitVec& row(std::size_t i) { return rows_[i]; }
    const BitVec& row(std::size_t i) const { return rows_[i]; }
    bool get(std::size_t r, std::size_t c) const { return rows_[r].get(c); }
    void set(std::size_t r, std::size_t c, bool v) { rows_[r].set(c, v); }

    /// In-place reduced row echelon form; returns pivot columns.
    std::vector<std::size_t> rref();
    std::size_t rank() const;
    /// Basis of {v : M v = 0}.
    std::vector<BitVec> null_space() const;
    /// True iff v lies in the row space. Matrix must already be in RREF with
    /// the given pivot columns.
    static bool in_row_space(const std::vector<BitVec>& rref_rows,
                             const std::vector<std::size_t>& pivots, const BitVec& v);
    /// Solve M^T y ... not needed; solve x with M x = b (column-vector form),
    /// returns empty on inconsistency.
    std::vector<BitVec> solve_all_columns(const BitMatrix& rhs) const;

  private:
    std::size_t cols_;
    std::vector<BitVec> rows_;
};

}  // namespace xzzx

#endif
