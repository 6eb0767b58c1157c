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

#include "ifm/layout.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <numeric>
#include <random>

#include "ifm/builders.hpp"
#include "ifm/exact.hpp"

using namespace ifm;

namespace {

CouplingMap bundled(const char *name) {
    return load_coupling_map(std::filesystem::path(IFM_DATA_DIR) / "coupling" / name);
}

// Tries every injective assignment of logical qubits to physical qubits.
bool layout_exists_brute_force(const Circuit &c, const CouplingMap &m) {
    const std::size_t nl = c.num_qubits();
    const std::size_t np = m.num_physical();
    if (nl > np) {
        return false;
    }
    const auto edges = interaction_edges(c);
    std::vector<std::size_t> perm(np);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool ok = true;
        for (const auto &[a, b] : edges) {
            if (!m.connected(perm[a], perm[b])) {
                ok = false;
                break;
            }
        }
        if (ok) {
            return true;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

Circuit random_cnot_circuit(std::mt19937_64 &gen, std::size_t nq, int cnots) {
    Circuit c(nq, 0);
    for (int i = 0; i < cnots; ++i) {
        const std::size_t a = gen() % nq;
        const std::size_t b = (a + 1 + gen() % (nq - 1)) % nq;
        c.cx(a, b);
    }
    return c;
}

CouplingMap random_coupling(std::mt19937_64 &gen, std::size_t n) {
    CouplingMap m(n);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            if (gen() % 2 == 0) {
                m.add_edge(a, b);
            }
        }
    }
    return m;
}

} // namespace

TEST(CouplingMap, EdgesAreUndirectedAndMerged) {
    CouplingMap m(3);
    m.add_edge(0, 1);
    m.add_edge(1, 0);
    EXPECT_TRUE(m.connected(1, 0));
    EXPECT_EQ(m.degree(0), 1u);
    EXPECT_FALSE(m.connected(0, 2));
    EXPECT_THROW(m.add_edge(2, 2), std::invalid_argument);
    EXPECT_THROW(m.add_edge(0, 3), std::out_of_range);
}

TEST(CouplingMap, ParsesHeaderAndEdges) {
    const auto m = parse_coupling_map("# device\nn 3\n0 1  # first\n1 2\n");
    EXPECT_EQ(m.num_physical(), 3u);
    EXPECT_TRUE(m.connected(2, 1));
    EXPECT_THROW(parse_coupling_map("0 1\n"), std::invalid_argument);
    EXPECT_THROW(parse_coupling_map("n 2\n0 2\n"), std::invalid_argument);
    EXPECT_THROW(parse_coupling_map("n 2\n0\n"), std::invalid_argument);
    EXPECT_THROW(parse_coupling_map("n 2\n1 1\n"), std::invalid_argument);
    EXPECT_THROW(parse_coupling_map(""), std::invalid_argument);
    EXPECT_THROW(load_coupling_map("/nonexistent/map.txt"), std::runtime_error);
}

TEST(CouplingMap, BundledMaps) {
    const auto bowtie = bundled("bowtie5.txt");
    EXPECT_EQ(bowtie.num_physical(), 5u);
    EXPECT_EQ(bowtie.degree(2), 4u);
    const auto tee = bundled("tee5.txt");
    EXPECT_EQ(tee.degree(1), 3u);
    EXPECT_EQ(bundled("line6.txt").num_physical(), 6u);
    EXPECT_EQ(bundled("grid3x3.txt").degree(4), 4u);
}

TEST(CouplingMap, ShortestPath) {
    const auto line = line_coupling(5);
    EXPECT_EQ(line.shortest_path(0, 4), (std::vector<std::size_t>{0, 1, 2, 3, 4}));
    EXPECT_EQ(line.shortest_path(3, 3), (std::vector<std::size_t>{3}));
    CouplingMap split(4);
    split.add_edge(0, 1);
    split.add_edge(2, 3);
    EXPECT_TRUE(split.shortest_path(0, 3).empty());
}

TEST(FindLayout, StarNeedsDegreeFour) {
    // The conditional circuit only couples q0-q1; the ancilla circuit for
    // N = 4 needs a star with four leaves.
    const Circuit star = build_jozsa_ancilla({4, 1});
    const auto bowtie = bundled("bowtie5.txt");
    const auto layout = find_layout(star, bowtie);
    ASSERT_TRUE(layout);
    EXPECT_EQ((*layout)[0], 2u);
    EXPECT_TRUE(validate_layout(star, bowtie, *layout).empty());
    EXPECT_FALSE(find_layout(star, bundled("tee5.txt")));
    EXPECT_FALSE(find_layout(star, line_coupling(5)));
    EXPECT_TRUE(find_layout(build_jozsa_conditional({9, 1}), line_coupling(2)));
}

TEST(FindLayout, TooFewPhysicalQubits) {
    EXPECT_FALSE(find_layout(build_jozsa_ancilla({5, 1}), bundled("bowtie5.txt")));
}

TEST(FindLayout, AgreesWithBruteForce) {
    std::mt19937_64 gen(31);
    int found = 0;
    for (int i = 0; i < 300; ++i) {
        const std::size_t np = 2 + gen() % 5;
        const std::size_t nl = 2 + gen() % (np - 1);
        const Circuit c = random_cnot_circuit(gen, nl, 1 + static_cast<int>(gen() % 6));
        const CouplingMap m = random_coupling(gen, np);
        const auto layout = find_layout(c, m);
        ASSERT_EQ(layout.has_value(), layout_exists_brute_force(c, m)) << "case " << i;
        if (layout) {
            ++found;
            EXPECT_TRUE(validate_layout(c, m, *layout).empty());
        }
    }
    EXPECT_GT(found, 30);
    EXPECT_LT(found, 270);
}

TEST(ValidateLayout, ReportsViolatingInstructions) {
    const Circuit c = build_jozsa_ancilla({3, 1});
    // Instruction indices: u3 0, cx 1, measure 2, u3 3, cx 4, ...
    const auto v = validate_layout(c, line_coupling(4), {0, 1, 2, 3});
    EXPECT_EQ(v, (std::vector<std::size_t>{4, 7}));
}

TEST(ValidateLayout, RejectsMalformedLayouts) {
    const Circuit c = build_jozsa_ancilla({2, 1});
    EXPECT_THROW(validate_layout(c, line_coupling(3), {0, 1}), std::invalid_argument);
    EXPECT_THROW(validate_layout(c, line_coupling(3), {0, 1, 1}), std::invalid_argument);
    EXPECT_THROW(validate_layout(c, line_coupling(3), {0, 1, 3}), std::invalid_argument);
}

TEST(InsertSwaps, RoutedCircuitIsValidAndEquivalent) {
    for (std::size_t n = 2; n <= 5; ++n) {
        const Circuit c = build_jozsa_ancilla({n, 1});
        const auto line = line_coupling(n + 1);
        Layout identity(n + 1);
        std::iota(identity.begin(), identity.end(), 0);
        const RoutedCircuit routed = insert_swaps(c, line, identity);
        Layout phys(line.num_physical());
        std::iota(phys.begin(), phys.end(), 0);
        EXPECT_TRUE(validate_layout(routed.circuit, line, phys).empty());
        EXPECT_GT(routed.swaps, 0u);
        EXPECT_LE(max_abs_difference(exact_distribution(routed.circuit), exact_distribution(c)),
                  1e-12);
    }
}

TEST(InsertSwaps, ConditionalCircuitOnGrid) {
    const Circuit c = build_jozsa_conditional({4, 1});
    const auto grid = grid_coupling(3, 3);
    const RoutedCircuit routed = insert_swaps(c, grid, {0, 8});
    EXPECT_GT(routed.swaps, 0u);
    EXPECT_LE(max_abs_difference(exact_distribution(routed.circuit), exact_distribution(c)), 1e-12);
}

TEST(InsertSwaps, RandomCircuitsPreserveDistribution) {
    std::mt19937_64 gen(8);
    std::uniform_real_distribution<double> angle(-3, 3);
    for (int i = 0; i < 30; ++i) {
        Circuit c(4, 4);
        for (int k = 0; k < 10; ++k) {
            const std::size_t a = gen() % 4;
            c.u3(angle(gen), angle(gen), angle(gen), a);
            c.cx(a, (a + 1 + gen() % 3) % 4);
        }
        for (std::size_t q = 0; q < 4; ++q) {
            c.measure(q, q);
        }
        Layout layout{0, 1, 2, 3};
        std::shuffle(layout.begin(), layout.end(), gen);
        const auto routed = insert_swaps(c, line_coupling(4), layout);
        EXPECT_LE(max_abs_difference(exact_distribution(routed.circuit), exact_distribution(c)), 1e-12);
    }
}

TEST(InsertSwaps, DisconnectedComponentsFail) {
    CouplingMap split(4);
    split.add_edge(0, 1);
    split.add_edge(2, 3);
    Circuit c(2, 0);
    c.cx(0, 1);
    EXPECT_THROW(insert_swaps(c, split, {0, 3}), std::runtime_error);
}

TEST(ValidateLayout, StarExamples) {
    CouplingMap star(5, "star");
    for (std::size_t q = 1; q < 5; ++q) {
        star.add_edge(0, q);
    }
    const Circuit c = build_jozsa_ancilla({4, 1});
    EXPECT_TRUE(validate_layout(c, star, {0, 1, 2, 3, 4}).empty());
    EXPECT_GE(validate_layout(c, star, {1, 0, 2, 3, 4}).size(), 3u);
    EXPECT_TRUE(find_layout(c, star));
    Circuit no_cnots(3, 3);
    no_cnots.h(0).measure(0, 0);
    EXPECT_TRUE(validate_layout(no_cnots, line_coupling(3), {2, 0, 1}).empty());
}

TEST(FindLayout, SingleQubitAlwaysFits) {
    Circuit c(1, 1);
    c.x(0).measure(0, 0);
    EXPECT_TRUE(find_layout(c, CouplingMap(1)));
    EXPECT_TRUE(find_layout(c, bundled("tee5.txt")));
}

TEST(InsertSwaps, ValidCircuitUnchanged) {
    const Circuit c = build_jozsa_ancilla({4, 1});
    const auto bowtie = bundled("bowtie5.txt");
    const auto layout = find_layout(c, bowtie);
    ASSERT_TRUE(layout);
    const auto routed = insert_swaps(c, bowtie, *layout);
    EXPECT_EQ(routed.swaps, 0u);
    EXPECT_EQ(routed.circuit.size(), c.size());
    EXPECT_EQ(routed.final_layout, *layout);
}

TEST(InsertSwaps, LineEndpointsNeedOneSwap) {
    Circuit c(3, 0);
    c.cx(0, 2);
    const auto routed = insert_swaps(c, line_coupling(3), {0, 1, 2});
    EXPECT_EQ(routed.swaps, 1u);
    EXPECT_EQ(routed.circuit.size(), 4u);
}
