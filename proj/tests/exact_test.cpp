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

#include "ifm/exact.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ifm/builders.hpp"
#include "ifm/theory.hpp"
#include "oracle.hpp"

using namespace ifm;

namespace {

void expect_matches_oracle(const Circuit &c, const ReadoutErrorModel *noise, double tol = 1e-12) {
    const OutcomeDistribution exact = exact_distribution(c, noise);
    const auto oracle = oracle::brute_force_distribution(c, noise);
    OutcomeDistribution expected(c.num_cbits());
    for (const auto &[o, p] : oracle) {
        expected.add(o, p);
    }
    EXPECT_LE(max_abs_difference(exact, expected), tol) << c.label();
}

Circuit random_circuit(std::mt19937_64 &gen, std::size_t nq, std::size_t nc) {
    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
    Circuit c(nq, nc, "random");
    std::size_t next_cbit = 0;
    auto gate_op = [&]() -> GateOp {
        if (nq > 1 && gen() % 3 == 0) {
            const std::size_t a = gen() % nq;
            return Cnot{a, (a + 1 + gen() % (nq - 1)) % nq};
        }
        return Unitary{Gate::u3(angle(gen), angle(gen), angle(gen)), gen() % nq};
    };
    for (int i = 0; i < 14; ++i) {
        const auto roll = gen() % 6;
        if (roll == 0 && next_cbit < nc) {
            c.measure(gen() % nq, next_cbit++);
        } else if (roll == 1 && next_cbit > 0) {
            c.when(gen() % next_cbit, gen() % 2 == 1, gate_op());
        } else {
            c.append(std::visit([](auto op) -> Instruction { return op; }, gate_op()));
        }
    }
    while (next_cbit < nc) {
        c.measure(gen() % nq, next_cbit++);
    }
    return c;
}

} // namespace

TEST(ExactDistribution, MatchesClosedFormAllZero) {
    for (std::size_t n = 1; n <= 9; ++n) {
        const double expected = theoretical_success(n);
        for (auto build : {build_jozsa_conditional, build_jozsa_ancilla}) {
            EXPECT_NEAR(exact_distribution(build({n, 1})).probability(Outcome{0}), expected, 1e-12)
                << "N=" << n;
        }
    }
}

TEST(ExactDistribution, KnownAllZeroValues) {
    EXPECT_NEAR(theoretical_success(2), 0.25, 1e-12);
    EXPECT_NEAR(theoretical_success(3), 0.421875, 1e-12);
    const double c4 = std::cos(std::numbers::pi / 8);
    EXPECT_NEAR(theoretical_success(4), std::pow(c4, 8), 1e-15);
}

TEST(ExactDistribution, SingleOneLeakageInAncillaCircuit) {
    for (std::size_t n = 2; n <= 9; ++n) {
        const auto d = exact_distribution(build_jozsa_ancilla({n, 1}));
        const double theta = std::numbers::pi / (2.0 * n);
        const double closed = std::pow(std::sin(theta), 4) * std::pow(std::cos(theta), 2.0 * (n - 2));
        EXPECT_NEAR(single_one_probability(n), closed, 1e-15);
        for (std::size_t k = 0; k + 2 <= n; ++k) {
            EXPECT_NEAR(d.probability(Outcome{1} << k), closed, 1e-12) << "N=" << n << " k=" << k;
        }
    }
}

TEST(ExactDistribution, ConditionalSingleOneOnlyAtLastRegisterBit) {
    for (std::size_t n = 2; n <= 9; ++n) {
        const auto d = exact_distribution(build_jozsa_conditional({n, 1}));
        for (std::size_t k = 0; k + 1 < n; ++k) {
            EXPECT_EQ(d.probability(Outcome{1} << k), 0.0) << "N=" << n << " k=" << k;
        }
    }
}

TEST(ExactDistribution, AncillaAndConditionalAgreeOnAllZero) {
    for (std::size_t n = 1; n <= 9; ++n) {
        EXPECT_TRUE(distributions_equal_on(
            build_jozsa_conditional({n, 1}), build_jozsa_ancilla({n, 1}),
            [](Outcome o) { return o == 0; }));
    }
}

TEST(ExactDistribution, BuildersMatchOracle) {
    for (std::size_t n = 1; n <= 7; ++n) {
        for (int r : {0, 1}) {
            expect_matches_oracle(build_jozsa_conditional({n, r}), nullptr);
            expect_matches_oracle(build_jozsa_ancilla({n, r}), nullptr);
        }
    }
    expect_matches_oracle(build_bomb_tester(true), nullptr);
    expect_matches_oracle(build_bomb_tester(false), nullptr);
}

TEST(ExactDistribution, NoisyBuildersMatchOracle) {
    ReadoutErrorModel model;
    for (std::size_t q = 0; q < 6; ++q) {
        model.set(q, {0.01 + 0.01 * q, 0.05 - 0.005 * q});
    }
    for (std::size_t n = 1; n <= 5; ++n) {
        expect_matches_oracle(build_jozsa_ancilla({n, 1}), &model);
        expect_matches_oracle(build_jozsa_conditional({n, 1}), &model);
    }
    expect_matches_oracle(build_bomb_tester(true), &model);
}

TEST(ExactDistribution, RandomCircuitsMatchOracle) {
    std::mt19937_64 gen(99);
    ReadoutErrorModel model = ReadoutErrorModel::symmetric(0.07, 3);
    model.set(1, {0.02, 0.11});
    for (int i = 0; i < 60; ++i) {
        const Circuit c = random_circuit(gen, 1 + i % 3, 1 + i % 4);
        expect_matches_oracle(c, nullptr, 1e-10);
        expect_matches_oracle(c, &model, 1e-10);
    }
}

TEST(ExactDistribution, NoiseModelMustCoverMeasuredQubits) {
    const ReadoutErrorModel model = ReadoutErrorModel::symmetric(0.01, 2);
    EXPECT_THROW(exact_distribution(build_jozsa_ancilla({3, 1}), &model), std::out_of_range);
}

TEST(ExactDistribution, NoMeasurementsGivesEmptyOutcome) {
    Circuit c(1, 0);
    c.h(0);
    const auto d = exact_distribution(c);
    EXPECT_NEAR(d.probability(Outcome{0}), 1.0, 1e-15);
}

TEST(ExactDistribution, DistributionsEqualDetectsDifference) {
    EXPECT_FALSE(distributions_equal(build_bomb_tester(true), build_bomb_tester(false)));
    EXPECT_TRUE(distributions_equal(build_bomb_tester(true), build_bomb_tester(true)));
}

TEST(ExactDistribution, SmallNValues) {
    for (auto build : {build_jozsa_conditional, build_jozsa_ancilla}) {
        EXPECT_NEAR(exact_distribution(build({1, 1})).probability(Outcome{0}), 0.0, 1e-15);
        EXPECT_NEAR(exact_distribution(build({2, 1})).probability(Outcome{0}), 0.25, 1e-12);
        EXPECT_NEAR(exact_distribution(build({3, 1})).probability(Outcome{0}), 0.421875, 1e-12);
        EXPECT_NEAR(exact_distribution(build({4, 1})).probability(Outcome{0}), 0.53076, 5e-5);
    }
    EXPECT_NEAR(theoretical_success(9), 0.7589, 5e-4);
}

TEST(DistributionsEqualOn, CircuitAgainstItself) {
    const Circuit c = build_jozsa_conditional({6, 1});
    EXPECT_TRUE(distributions_equal(c, c));
    for (std::size_t n = 2; n <= 9; ++n) {
        EXPECT_TRUE(distributions_equal(build_jozsa_conditional({n, 0}), build_jozsa_ancilla({n, 0})));
    }
}
