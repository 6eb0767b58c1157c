// Copyright 2026 The ifm Authors
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

#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ifm/circuit.hpp"

namespace ifm {

/// Undirected physical connectivity of a device.
class CouplingMap {
  public:
    using Edge = std::pair<std::size_t, std::size_t>;

    CouplingMap(std::size_t num_physical, std::string name = {})
        : num_physical_{num_physical}, name_{std::move(name)}, adjacency_(num_physical) {
        if (num_physical < 1) {
            throw std::invalid_argument("coupling map needs at least one physical qubit");
        }
    }

    /// Adds edge {a, b}; repeated edges (either orientation) are merged.
    void add_edge(std::size_t a, std::size_t b) {
        if (a >= num_physical_ || b >= num_physical_) {
            throw std::out_of_range("coupling edge (" + std::to_string(a) + ", " +
                                    std::to_string(b) + ") references a missing qubit");
        }
        if (a == b) {
            throw std::invalid_argument("coupling map cannot contain self-loops");
        }
        if (edges_.insert(std::minmax(a, b)).second) {
            adjacency_[a].push_back(b);
            adjacency_[b].push_back(a);
            std::sort(adjacency_[a].begin(), adjacency_[a].end());
            std::sort(adjacency_[b].begin(), adjacency_[b].end());
        }
    }

    [[nodiscard]] std::size_t num_physical() const noexcept { return num_physical_; }
    [[nodiscard]] const std::string &name() const noexcept { return name_; }
    [[nodiscard]] const std::set<Edge> &edges() const noexcept { return edges_; }

    [[nodiscard]] bool connected(std::size_t a, std::size_t b) const {
        return edges_.contains(std::minmax(a, b));
    }

    [[nodiscard]] const std::vector<std::size_t> &neighbors(std::size_t q) const {
        return adjacency_.at(q);
    }

    [[nodiscard]] std::size_t degree(std::size_t q) const { return adjacency_.at(q).size(); }

    /// Shortest path from `from` to `to` inclusive, empty if disconnected.
    [[nodiscard]] std::vector<std::size_t> shortest_path(std::size_t from, std::size_t to) const {
        std::vector<std::size_t> parent(num_physical_, num_physical_);
        std::deque<std::size_t> queue{from};
        parent.at(from) = from;
        while (!queue.empty()) {
            const std::size_t at = queue.front();
            queue.pop_front();
            if (at == to) {
                break;
            }
            for (std::size_t n : adjacency_[at]) {
                if (parent[n] == num_physical_) {
                    parent[n] = at;
                    queue.push_back(n);
                }
            }
        }
        if (parent.at(to) == num_physical_) {
            return {};
        }
        std::vector<std::size_t> path{to};
        while (path.back() != from) {
            path.push_back(parent[path.back()]);
        }
        std::reverse(path.begin(), path.end());
        return path;
    }

  private:
    std::size_t num_physical_;
    std::string name_;
    std::set<Edge> edges_;
    std::vector<std::vector<std::size_t>> adjacency_;
};

/// Parses `n <count>` followed by one `a b` edge per line; `#` comments.
inline CouplingMap parse_coupling_map(const std::string &text, std::string name = {}) {
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    std::optional<CouplingMap> map;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream fields(line);
        std::string first;
        if (!(fields >> first)) {
            continue;
        }
        auto bad = [&](const std::string &what) {
            return std::invalid_argument("coupling map line " + std::to_string(line_no) + ": " +
                                         what);
        };
        std::string extra;
        if (!map) {
            long long n = 0;
            if (first != "n" || !(fields >> n) || (fields >> extra) || n < 1) {
                throw bad("expected header 'n <num_physical>'");
            }
            map.emplace(static_cast<std::size_t>(n), name);
            continue;
        }
        long long a = 0;
        long long b = 0;
        std::istringstream afield(first);
        if (!(afield >> a) || !afield.eof() || !(fields >> b) || (fields >> extra) || a < 0 ||
            b < 0) {
            throw bad("expected edge 'a b'");
        }
        try {
            map->add_edge(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
        } catch (const std::exception &e) {
            throw bad(e.what());
        }
    }
    if (!map) {
        throw std::invalid_argument("coupling map is empty (missing 'n <num_physical>' header)");
    }
    return *map;
}

inline CouplingMap load_coupling_map(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open coupling map file " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_coupling_map(buf.str(), path.stem().string());
}

/// Path 0 - 1 - ... - (n-1).
inline CouplingMap line_coupling(std::size_t n) {
    CouplingMap map(n, "line" + std::to_string(n));
    for (std::size_t i = 0; i + 1 < n; ++i) {
        map.add_edge(i, i + 1);
    }
    return map;
}

/// rows x cols grid, qubit index r * cols + c.
inline CouplingMap grid_coupling(std::size_t rows, std::size_t cols) {
    CouplingMap map(rows * cols, "grid" + std::to_string(rows) + "x" + std::to_string(cols));
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            const std::size_t q = r * cols + c;
            if (c + 1 < cols) {
                map.add_edge(q, q + 1);
            }
            if (r + 1 < rows) {
                map.add_edge(q, q + cols);
            }
        }
    }
    return map;
}

/// Logical-to-physical assignment; entry i is the physical home of qubit i.
using Layout = std::vector<std::size_t>;

/// Undirected qubit pairs touched by some CNOT (conditional ones included).
inline std::set<CouplingMap::Edge> interaction_edges(const Circuit &circuit) {
    std::set<CouplingMap::Edge> edges;
    auto add = [&](const GateOp &op) {
        if (const auto *c = std::get_if<Cnot>(&op)) {
            edges.insert(std::minmax(c->control, c->target));
        }
    };
    for (const Instruction &instr : circuit.instructions()) {
        if (const auto *c = std::get_if<Cnot>(&instr)) {
            add(*c);
        } else if (const auto *k = std::get_if<Conditional>(&instr)) {
            add(k->op);
        }
    }
    return edges;
}

namespace detail {

inline void require_valid_layout(const Circuit &circuit, const CouplingMap &coupling,
                                 const Layout &layout) {
    if (layout.size() != circuit.num_qubits()) {
        throw std::invalid_argument("layout must assign every logical qubit");
    }
    std::vector<bool> used(coupling.num_physical(), false);
    for (std::size_t p : layout) {
        if (p >= coupling.num_physical()) {
            throw std::invalid_argument("layout references physical qubit " + std::to_string(p) +
                                        " outside the coupling map");
        }
        if (used[p]) {
            throw std::invalid_argument("layout is not injective (physical qubit " +
                                        std::to_string(p) + " used twice)");
        }
        used[p] = true;
    }
}

inline const Cnot *cnot_of(const Instruction &instr) {
    if (const auto *c = std::get_if<Cnot>(&instr)) {
        return c;
    }
    if (const auto *k = std::get_if<Conditional>(&instr)) {
        return std::get_if<Cnot>(&k->op);
    }
    return nullptr;
}

} // namespace detail

/// Indices of instructions whose CNOT does not lie on a coupling edge.
inline std::vector<std::size_t> validate_layout(const Circuit &circuit, const CouplingMap &coupling,
                                                const Layout &layout) {
    detail::require_valid_layout(circuit, coupling, layout);
    std::vector<std::size_t> violations;
    const auto &instrs = circuit.instructions();
    for (std::size_t i = 0; i < instrs.size(); ++i) {
        if (const Cnot *c = detail::cnot_of(instrs[i])) {
            if (!coupling.connected(layout[c->control], layout[c->target])) {
                violations.push_back(i);
            }
        }
    }
    return violations;
}

namespace detail {

/// Backtracking embedding of the interaction graph into the coupling graph.
class LayoutSearch {
  public:
    LayoutSearch(const Circuit &circuit, const CouplingMap &coupling)
        : coupling_{coupling}, n_{circuit.num_qubits()}, adjacency_(n_) {
        for (const auto &[a, b] : interaction_edges(circuit)) {
            adjacency_[a].push_back(b);
            adjacency_[b].push_back(a);
        }
        order_ = placement_order();
    }

    std::optional<Layout> run() {
        if (n_ > coupling_.num_physical()) {
            return std::nullopt;
        }
        layout_.assign(n_, kUnplaced);
        used_.assign(coupling_.num_physical(), false);
        if (place(0)) {
            return layout_;
        }
        return std::nullopt;
    }

  private:
    static constexpr std::size_t kUnplaced = static_cast<std::size_t>(-1);

    // Most-constrained first: each next qubit maximizes already-placed
    // neighbors, ties broken by degree, so adjacency checks prune early.
    std::vector<std::size_t> placement_order() const {
        std::vector<std::size_t> order;
        std::vector<bool> taken(n_, false);
        std::vector<std::size_t> placed_neighbors(n_, 0);
        for (std::size_t step = 0; step < n_; ++step) {
            std::size_t best = n_;
            for (std::size_t q = 0; q < n_; ++q) {
                if (taken[q]) {
                    continue;
                }
                if (best == n_ || placed_neighbors[q] > placed_neighbors[best] ||
                    (placed_neighbors[q] == placed_neighbors[best] &&
                     adjacency_[q].size() > adjacency_[best].size())) {
                    best = q;
                }
            }
            taken[best] = true;
            order.push_back(best);
            for (std::size_t nb : adjacency_[best]) {
                ++placed_neighbors[nb];
            }
        }
        return order;
    }

    bool place(std::size_t depth) {
        if (depth == n_) {
            return true;
        }
        const std::size_t q = order_[depth];
        for (std::size_t p = 0; p < coupling_.num_physical(); ++p) {
            if (used_[p] || coupling_.degree(p) < adjacency_[q].size()) {
                continue;
            }
            bool fits = true;
            for (std::size_t nb : adjacency_[q]) {
                if (layout_[nb] != kUnplaced && !coupling_.connected(p, layout_[nb])) {
                    fits = false;
                    break;
                }
            }
            if (!fits) {
                continue;
            }
            layout_[q] = p;
            used_[p] = true;
            if (place(depth + 1)) {
                return true;
            }
            layout_[q] = kUnplaced;
            used_[p] = false;
        }
        return false;
    }

    const CouplingMap &coupling_;
    std::size_t n_;
    std::vector<std::vector<std::size_t>> adjacency_;
    std::vector<std::size_t> order_;
    Layout layout_;
    std::vector<bool> used_;
};

} // namespace detail

/**
 * Exact search for a layout under which every CNOT lies on a coupling edge
 * (an injective embedding of the CNOT interaction graph). Returns nullopt
 * when none exists.
 */
inline std::optional<Layout> find_layout(const Circuit &circuit, const CouplingMap &coupling) {
    return detail::LayoutSearch(circuit, coupling).run();
}

struct RoutedCircuit {
    /// Circuit over the device's physical qubits.
    Circuit circuit;
    /// Logical-to-physical assignment after the last instruction.
    Layout final_layout;
    std::size_t swaps = 0;
};

/**
 * Rewrites `circuit` onto physical qubits, moving the control of each
 * non-adjacent CNOT along a shortest path with SWAPs (3 CNOTs each) until
 * it neighbors the target. Measurements keep their cbits, so the routed
 * circuit's outcome distribution equals the original's.
 */
inline RoutedCircuit insert_swaps(const Circuit &circuit, const CouplingMap &coupling,
                                  const Layout &layout) {
    detail::require_valid_layout(circuit, coupling, layout);
    if (coupling.num_physical() > kMaxQubits) {
        throw std::invalid_argument("coupling map too large to simulate");
    }
    Layout pos = layout;
    std::vector<std::optional<std::size_t>> occupant(coupling.num_physical());
    for (std::size_t q = 0; q < pos.size(); ++q) {
        occupant[pos[q]] = q;
    }
    RoutedCircuit routed{Circuit(coupling.num_physical(), circuit.num_cbits(), circuit.label()),
                         {}, 0};
    Circuit &out = routed.circuit;

    auto swap_physical = [&](std::size_t a, std::size_t b) {
        out.cx(a, b).cx(b, a).cx(a, b);
        std::swap(occupant[a], occupant[b]);
        if (occupant[a]) {
            pos[*occupant[a]] = a;
        }
        if (occupant[b]) {
            pos[*occupant[b]] = b;
        }
        ++routed.swaps;
    };
    auto bring_adjacent = [&](const Cnot &c) {
        const std::size_t from = pos[c.control];
        const std::size_t to = pos[c.target];
        if (coupling.connected(from, to)) {
            return;
        }
        const std::vector<std::size_t> path = coupling.shortest_path(from, to);
        if (path.empty()) {
            throw std::runtime_error("qubits " + std::to_string(c.control) + " and " +
                                     std::to_string(c.target) +
                                     " interact but sit in disconnected coupling components");
        }
        for (std::size_t i = 0; i + 2 < path.size(); ++i) {
            swap_physical(path[i], path[i + 1]);
        }
    };
    auto physical = [&](const GateOp &op) -> GateOp {
        return std::visit(overloaded{[&](const Unitary &u) -> GateOp {
                                         return Unitary{u.gate, pos[u.qubit]};
                                     },
                                     [&](const Cnot &c) -> GateOp {
                                         return Cnot{pos[c.control], pos[c.target]};
                                     }},
                          op);
    };

    for (const Instruction &instr : circuit.instructions()) {
        std::visit(overloaded{
                       [&](const Unitary &u) { out.append(std::get<Unitary>(physical(u))); },
                       [&](const Cnot &c) {
                           bring_adjacent(c);
                           out.append(std::get<Cnot>(physical(c)));
                       },
                       [&](const Measure &m) { out.measure(pos[m.qubit], m.cbit); },
                       [&](const Conditional &k) {
                           if (const auto *c = std::get_if<Cnot>(&k.op)) {
                               // SWAPs are relabelings and run unconditionally.
                               bring_adjacent(*c);
                           }
                           out.when(k.cbit, k.required, physical(k.op));
                       },
                   },
                   instr);
    }
    routed.final_layout = pos;
    return routed;
}

} // namespace ifm
