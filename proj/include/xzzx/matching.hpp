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

#ifndef XZZX_MATCHING_H
#define XZZX_MATCHING_H

#include <string>
#include <vector>

namespace xzzx {

/// Complete weighted graph on V vertices; weights stored as a dense
/// triangular array. Weights must be finite and nonnegative.
class WeightedGraph {
  public:
    explicit WeightedGraph(int vertices);

    int num_vertices() const { return v_; }
    double weight(int u, int v) const { return w_[index(u, v)]; }
    void set_weight(int u, int v, double w);

    /// Debug dump (vertex count + weight matrix) for failure reproduction.
    std::string dump_json() const;

  private:
    std::size_t index(int u, int v) const {
        if (u > v) std::swap(u, v);
        return std::size_t(v) * (v - 1) / 2 + u;
    }
    int v_;
    std::vector<double> w_;
    friend class BlossomMatcher;
};

/// A perfect matching: pairs[i] is the mate of vertex i.
struct Matching {
    std::vector<int> mate;
    double total_weight = 0.0;
    std::vector<std::pair<int, int>> pairs() const;
};

/// Exact minimum-weight perfect matching (primal-dual blossom algorithm,
/// O(V^3)-style on dense graphs). Throws std::invalid_argument for odd V.
Matching min_weight_perfect_matching(const WeightedGraph& g);

}  // namespace xzzx

#endif
