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

#include "xzzx/gf2.hpp"

#include <stdexcept>

namespace xzzx {

std::vector<std::size_t> BitMatrix::rref() {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_.size(); c++) {
        std::size_t pivot = r;
        while (pivot < rows_.size() && !rows_[pivot].get(c)) pivot++;
        if (pivot == rows_.size()) continue;
        std::swap(rows_[r], rows_[pivot]);
        for (std::size_t i = 0; i < rows_.size(); i++) {
            if (i != r && rows_[i].get(c)) rows_[i] ^= rows_[r];
        }
        pivots.push_back(c);
        r++;
    }
    return pivots;
}

std::size_t BitMatrix::rank() const {
    BitMatrix copy = *this;
    return copy.rref().size();
}

std::vector<BitVec> BitMatrix::null_space() const {
    BitMatrix copy = *this;
    std::vector<std::size_t> pivots = copy.rref();
    std::vector<bool> is_pivot(cols_, false);
    for (std::size_t c : pivots) is_pivot[c] = true;

    std::vector<BitVec> basis;
    for (std::size_t c = 0; c < cols_; c++) {
        if (is_pivot[c]) continue;
        BitVec v(cols_);
        v.set(c, true);
        for (std::size_t i = 0; i < pivots.size(); i++) {
            if (copy.rows_[i].get(c)) v.set(pivots[i], true);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

bool BitMatrix::in_row_space(const std::vector<BitVec>& rref_rows,
                             const std::vector<std::size_t>& pivots, const BitVec& v) {
    BitVec residual = v;
    for (std::size_t i = 0; i < pivots.size(); i++) {
        if (residual.get(pivots[i])) residual ^= rref_rows[i];
    }
    return !residual.any();
}

std::vector<BitVec> BitMatrix::solve_all_columns(const BitMatrix& rhs) const {
    if (rhs.num_rows() != num_rows()) throw std::invalid_argument("rhs row count mismatch");
    // Augment [M | rhs] and eliminate.
    std::size_t k = rhs.num_cols();
    BitMatrix aug(num_rows(), cols_ + k);
    for (std::size_t i = 0; i < num_rows(); i++) {
        for (std::size_t c = 0; c < cols_; c++) aug.set(i, c, get(i, c));
        for (std::size_t c = 0; c < k; c++) aug.set(i, cols_ + c, rhs.get(i, c));
    }
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < num_rows(); c++) {
        std::size_t pivot = r;
        while (pivot < num_rows() && !aug.get(pivot, c)) pivot++;
        if (pivot == num_rows()) continue;
        std::swap(aug.rows_[r], aug.rows_[pivot]);
        for (std::size_t i = 0; i < num_rows(); i++) {
            if (i != r && aug.get(i, c)) aug.rows_[i] ^= aug.rows_[r];
        }
        pivots.push_back(c);
        r++;
    }
    // Inconsistent if a zero row of M has a nonzero rhs.
    for (std::size_t i = r; i < num_rows(); i++) {
        for (std::size_t c = 0; c < k; c++) {
            if (aug.get(i, cols_ + c)) return {};
        }
    }
    std::vector<BitVec> solutions(k, BitVec(cols_));
    for (std::size_t c = 0; c < k; c++) {
        for (std::size_t i = 0; i < pivots.size(); i++) {
            if (aug.get(i, cols_ + c)) solutions[c].set(pivots[i], true);
        }
    }
    return solutions;
}

}  // namespace xzzx
