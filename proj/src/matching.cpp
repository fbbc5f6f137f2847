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
//
// Exact minimum-weight perfect matching via the primal-dual blossom
// algorithm on a dense edge-slack representation. Vertices occupy indices
// [0, n); contracted blossoms occupy [n, 2n). The structure follows the
// classic formulation: grow alternating forests over tight edges, contract
// odd cycles, expand blossoms whose dual hits zero, and adjust duals by the
// minimum slack when the forest is stuck.

#include "xzzx/matching.hpp"

#include <cmath>
#include <list>
#include <sstream>
#include <stdexcept>

namespace xzzx {

namespace {

constexpr double kEps = 1e-9;
constexpr int kUnlabeled = 0;
constexpr int kOdd = 1;
constexpr int kEven = 2;

class BlossomMatcher {
  public:
    explicit BlossomMatcher(const WeightedGraph& g)
        : n_(g.num_vertices()),
          graph_(g),
          slack_(std::size_t(n_) * (n_ - 1) / 2),
          outer_(2 * n_),
          deep_(2 * n_),
          shallow_(2 * n_),
          tip_(2 * n_),
          active_(2 * n_),
          type_(2 * n_),
          forest_(2 * n_),
          root_(2 * n_),
          blocked_(2 * n_),
          dual_(2 * n_),
          mate_(2 * n_),
          visited_(2 * n_) {}

    Matching solve();

  private:
    std::size_t edge_index(int u, int v) const {
        if (u > v) std::swap(u, v);
        return std::size_t(v) * (v - 1) / 2 + u;
    }
    bool edge_blocked(int u, int v) const { return slack_[edge_index(u, v)] > kEps; }

    void initialize();
    void greedy_seed();
    bool grow();
    void update_duals();
    void reset_forest();
    int contract_blossom(int u, int v);
    void expand(int u, bool expand_blocked);
    void destroy_blossom(int t);
    void augment(int u, int v);

    int n_;
    const WeightedGraph& graph_;
    std::vector<double> slack_;
    std::vector<int> outer_;
    std::vector<std::vector<int>> deep_;
    std::vector<std::list<int>> shallow_;
    std::vector<int> tip_;
    std::vector<char> active_;
    std::vector<int> type_;
    std::vector<int> forest_;
    std::vector<int> root_;
    std::vector<char> blocked_;
    std::vector<double> dual_;
    std::vector<int> mate_;
    std::vector<char> visited_;
    std::vector<int> free_slots_;
    std::vector<int> frontier_;
};

void BlossomMatcher::initialize() {
    free_slots_.clear();
    for (int i = n_; i < 2 * n_; i++) free_slots_.push_back(i);
    for (int i = 0; i < 2 * n_; i++) {
        outer_[i] = i;
        deep_[i].clear();
        if (i < n_) deep_[i].push_back(i);
        shallow_[i].clear();
        tip_[i] = i;
        active_[i] = i < n_;
        type_[i] = kUnlabeled;
        forest_[i] = -1;
        root_[i] = i;
        blocked_[i] = false;
        dual_[i] = 0;
        mate_[i] = -1;
    }
    for (int v = 1; v < n_; v++)
        for (int u = 0; u < v; u++) slack_[edge_index(u, v)] = graph_.weight(u, v);
    // Shift so all reduced costs start nonnegative.
    double min_edge = 0;
    for (double s : slack_) min_edge = std::min(min_edge, s);
    if (min_edge < 0)
        for (double& s : slack_) s -= min_edge;
}

void BlossomMatcher::greedy_seed() {
    for (int u = 0; u < n_; u++) {
        if (mate_[outer_[u]] != -1) continue;
        for (int v = 0; v < n_; v++) {
            if (u == v || edge_blocked(u, v)) continue;
            if (outer_[u] == outer_[v] || mate_[outer_[v]] != -1) continue;
            mate_[outer_[u]] = v;
            mate_[outer_[v]] = u;
            break;
        }
    }
}

void BlossomMatcher::destroy_blossom(int t) {
    if (t < n_ || (blocked_[t] && dual_[t] > kEps)) return;
    for (int s : shallow_[t]) {
        outer_[s] = s;
        for (int j : deep_[s]) outer_[j] = s;
        destroy_blossom(s);
    }
    active_[t] = false;
    blocked_[t] = false;
    free_slots_.push_back(t);
    mate_[t] = -1;
}

void BlossomMatcher::expand(int u, bool expand_blocked) {
    int v = outer_[mate_[u]];
    // Pick the lowest-index tight edge between the two (possibly contracted)
    // endpoints so both sides agree on the connecting pair.
    std::size_t best_index = slack_.size() + 1;
    int p = -1, q = -1;
    for (int di : deep_[u]) {
        for (int dj : deep_[v]) {
            if (di == dj || edge_blocked(di, dj)) continue;
            std::size_t idx = edge_index(di, dj);
            if (idx < best_index) {
                best_index = idx;
                p = di;
                q = dj;
            }
        }
    }
    if (p < 0) throw std::logic_error("blossom expansion found no tight edge");
    mate_[u] = q;
    mate_[v] = p;
    if (u < n_ || (blocked_[u] && !expand_blocked)) return;

    // Rotate the odd cycle until its head contains the new tip.
    bool found = false;
    for (auto it = shallow_[u].begin(); it != shallow_[u].end() && !found;) {
        int si = *it;
        for (int j : deep_[si]) {
            if (j == p) {
                found = true;
                break;
            }
        }
        ++it;
        if (!found) {
            shallow_[u].push_back(si);
            shallow_[u].pop_front();
        }
    }
    auto it = shallow_[u].begin();
    mate_[*it] = mate_[u];
    ++it;
    while (it != shallow_[u].end()) {
        auto next = std::next(it);
        mate_[*it] = *next;
        mate_[*next] = *it;
        it = std::next(next);
    }
    for (int s : shallow_[u]) {
        outer_[s] = s;
        for (int j : deep_[s]) outer_[j] = s;
    }
    active_[u] = false;
    free_slots_.push_back(u);
    for (int s : shallow_[u]) expand(s, expand_blocked);
}

void BlossomMatcher::augment(int u, int v) {
    int p = outer_[u];
    int q = outer_[v];
    int outv = q;
    int fp = forest_[p];
    mate_[p] = q;
    mate_[q] = p;
    expand(p, false);
    expand(q, false);
    while (fp != -1) {
        q = outer_[forest_[p]];
        p = outer_[forest_[q]];
        fp = forest_[p];
        mate_[p] = q;
        mate_[q] = p;
        expand(p, false);
        expand(q, false);
    }
    p = outv;
    fp = forest_[p];
    while (fp != -1) {
        q = outer_[forest_[p]];
        p = outer_[forest_[q]];
        fp = forest_[p];
        mate_[p] = q;
        mate_[q] = p;
        expand(p, false);
        expand(q, false);
    }
}

int BlossomMatcher::contract_blossom(int u, int v) {
    int t = free_slots_.back();
    free_slots_.pop_back();

    std::vector<char> in_path(2 * n_, false);
    int cur = u;
    while (cur != -1) {
        in_path[outer_[cur]] = true;
        cur = forest_[outer_[cur]];
    }
    int tip = outer_[v];
    while (!in_path[tip]) tip = outer_[forest_[tip]];
    tip_[t] = tip;

    std::list<int> circuit;
    cur = outer_[u];
    circuit.push_front(cur);
    while (cur != tip) {
        cur = outer_[forest_[cur]];
        circuit.push_front(cur);
    }
    shallow_[t].clear();
    deep_[t].clear();
    for (int s : circuit) shallow_[t].push_back(s);
    cur = outer_[v];
    while (cur != tip) {
        shallow_[t].push_back(cur);
        cur = outer_[forest_[cur]];
    }
    for (int s : shallow_[t]) {
        outer_[s] = t;
        for (int j : deep_[s]) {
            deep_[t].push_back(j);
            outer_[j] = t;
        }
    }
    forest_[t] = forest_[tip_[t]];
    type_[t] = kEven;
    root_[t] = root_[tip_[t]];
    active_[t] = true;
    outer_[t] = t;
    mate_[t] = mate_[tip_[t]];
    return t;
}

void BlossomMatcher::reset_forest() {
    for (int i = 0; i < 2 * n_; i++) {
        forest_[i] = -1;
        root_[i] = i;
        if (i >= n_ && active_[i] && outer_[i] == i) destroy_blossom(i);
    }
    std::fill(visited_.begin(), visited_.end(), 0);
    frontier_.clear();
    for (int i = 0; i < n_; i++) {
        if (mate_[outer_[i]] == -1) {
            type_[outer_[i]] = kEven;
            if (!visited_[outer_[i]]) frontier_.push_back(i);
            visited_[outer_[i]] = true;
        } else {
            type_[outer_[i]] = kUnlabeled;
        }
    }
}

bool BlossomMatcher::grow() {
    reset_forest();
    while (!frontier_.empty()) {
        int w = outer_[frontier_.back()];
        frontier_.pop_back();
        bool restart = false;
        for (std::size_t di = 0; di < deep_[w].size() && !restart; di++) {
            int u = deep_[w][di];
            for (int v = 0; v < n_; v++) {
                if (u == v || edge_blocked(u, v)) continue;
                if (type_[outer_[v]] == kOdd) continue;
                if (type_[outer_[v]] != kEven) {
                    // Extend the tree through the matched edge of v.
                    int vm = mate_[outer_[v]];
                    forest_[outer_[v]] = u;
                    type_[outer_[v]] = kOdd;
                    root_[outer_[v]] = root_[outer_[u]];
                    forest_[outer_[vm]] = v;
                    type_[outer_[vm]] = kEven;
                    root_[outer_[vm]] = root_[outer_[u]];
                    if (!visited_[outer_[vm]]) {
                        frontier_.push_back(vm);
                        visited_[outer_[vm]] = true;
                    }
                } else if (root_[outer_[v]] != root_[outer_[u]]) {
                    augment(u, v);
                    reset_forest();
                    restart = true;
                    break;
                } else if (outer_[u] != outer_[v]) {
                    int b = contract_blossom(u, v);
                    frontier_.push_back(b);
                    visited_[b] = true;
                    restart = true;
                    break;
                }
            }
        }
    }
    for (int i = 0; i < n_; i++)
        if (mate_[outer_[i]] == -1) return false;
    return true;
}

void BlossomMatcher::update_duals() {
    double e1 = 0, e2 = 0, e3 = 0;
    bool has1 = false, has2 = false, has3 = false;
    for (int u = 0; u < n_; u++) {
        for (int v = u + 1; v < n_; v++) {
            std::size_t i = edge_index(u, v);
            int tu = type_[outer_[u]], tv = type_[outer_[v]];
            if ((tu == kEven && tv == kUnlabeled) || (tv == kEven && tu == kUnlabeled)) {
                if (!has1 || e1 > slack_[i]) {
                    e1 = slack_[i];
                    has1 = true;
                }
            } else if (outer_[u] != outer_[v] && tu == kEven && tv == kEven) {
                if (!has2 || e2 > slack_[i]) {
                    e2 = slack_[i];
                    has2 = true;
                }
            }
        }
    }
    for (int i = n_; i < 2 * n_; i++) {
        if (active_[i] && i == outer_[i] && type_[outer_[i]] == kOdd && (!has3 || e3 > dual_[i])) {
            e3 = dual_[i];
            has3 = true;
        }
    }
    double e = 0;
    if (has1)
        e = e1;
    else if (has2)
        e = e2;
    else if (has3)
        e = e3;
    if (has2 && e > e2 / 2) e = e2 / 2;
    if (has3 && e > e3) e = e3;

    for (int i = 0; i < 2 * n_; i++) {
        if (i != outer_[i] || !active_[i]) continue;
        if (type_[i] == kEven)
            dual_[i] += e;
        else if (type_[i] == kOdd)
            dual_[i] -= e;
    }
    for (int u = 0; u < n_; u++) {
        for (int v = u + 1; v < n_; v++) {
            if (outer_[u] == outer_[v]) continue;
            std::size_t i = edge_index(u, v);
            int tu = type_[outer_[u]], tv = type_[outer_[v]];
            if (tu == kEven && tv == kEven)
                slack_[i] -= 2 * e;
            else if (tu == kOdd && tv == kOdd)
                slack_[i] += 2 * e;
            else if ((tu == kEven && tv == kUnlabeled) || (tv == kEven && tu == kUnlabeled))
                slack_[i] -= e;
            else if ((tu == kOdd && tv == kUnlabeled) || (tv == kOdd && tu == kUnlabeled))
                slack_[i] += e;
        }
    }
    for (int i = n_; i < 2 * n_; i++) {
        if (dual_[i] > kEps) {
            blocked_[i] = true;
        } else if (active_[i] && blocked_[i]) {
            if (mate_[i] == -1)
                destroy_blossom(i);
            else {
                blocked_[i] = false;
                expand(i, false);
            }
        }
    }
}

Matching BlossomMatcher::solve() {
    initialize();
    bool perfect = false;
    while (!perfect) {
        greedy_seed();
        perfect = grow();
        if (!perfect) {
            update_duals();
            // Clear the forest now so the next greedy pass never pairs a
            // blossom that this reset is about to dissolve.
            reset_forest();
        }
    }
    for (int i = 0; i < 2 * n_; i++) {
        if (active_[i] && mate_[i] != -1 && outer_[i] == i) expand(i, true);
    }
    Matching m;
    m.mate.assign(n_, -1);
    for (int u = 0; u < n_; u++) {
        if (m.mate[u] != -1) continue;
        int v = mate_[u];
        m.mate[u] = v;
        m.mate[v] = u;
        m.total_weight += graph_.weight(u, v);
    }
    return m;
}

}  // namespace

WeightedGraph::WeightedGraph(int vertices)
    : v_(vertices), w_(std::size_t(vertices) * (vertices > 0 ? vertices - 1 : 0) / 2, 0.0) {
    if (vertices < 0) throw std::invalid_argument("vertex count must be nonnegative");
}

void WeightedGraph::set_weight(int u, int v, double w) {
    if (u == v) throw std::invalid_argument("no self loops");
    if (!(w >= 0.0) || !std::isfinite(w))
        throw std::invalid_argument("edge weights must be finite and nonnegative");
    w_[index(u, v)] = w;
}

std::string WeightedGraph::dump_json() const {
    std::ostringstream out;
    out << "{\"vertices\":" << v_ << ",\"weights\":[";
    for (int v = 0; v < v_; v++) {
        for (int u = 0; u < v; u++) {
            if (v > 1 || u > 0) out << ',';
            out << '[' << u << ',' << v << ',' << weight(u, v) << ']';
        }
    }
    out << "]}";
    return out.str();
}

std::vector<std::pair<int, int>> Matching::pairs() const {
    std::vector<std::pair<int, int>> out;
    for (int u = 0; u < int(mate.size()); u++) {
        if (mate[u] > u) out.push_back({u, mate[u]});
    }
    return out;
}

Matching min_weight_perfect_matching(const WeightedGraph& g) {
    if (g.num_vertices() % 2 != 0)
        throw std::invalid_argument("perfect matching requires an even vertex count");
    if (g.num_vertices() == 0) return Matching{};
    if (g.num_vertices() == 2) {
        Matching m;
        m.mate = {1, 0};
        m.total_weight = g.weight(0, 1);
        return m;
    }
    BlossomMatcher matcher(g);
    return matcher.solve();
}

}  // namespace xzzx
