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

#include "ifm/readout.hpp"

#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "ifm/builders.hpp"
#include "ifm/exact.hpp"

using namespace ifm;

TEST(ReadoutModel, ParsesLinesAndComments) {
    const auto m = parse_readout_model("# q p01 p10\n0 0.01 0.02\n\n  3 0.5 0   # trailing\n");
    EXPECT_EQ(m.entries().size(), 2u);
    EXPECT_DOUBLE_EQ(m.at(0).p01, 0.01);
    EXPECT_DOUBLE_EQ(m.at(0).p10, 0.02);
    EXPECT_DOUBLE_EQ(m.at(3).p01, 0.5);
    EXPECT_FALSE(m.covers(1));
    EXPECT_THROW((void)m.at(1), std::out_of_range);
}

TEST(ReadoutModel, RejectsMalformedInput) {
    EXPECT_THROW(parse_readout_model("0 0.1\n"), std::invalid_argument);
    EXPECT_THROW(parse_readout_model("0 0.1 0.2 0.3\n"), std::invalid_argument);
    EXPECT_THROW(parse_readout_model("x 0.1 0.2\n"), std::invalid_argument);
    EXPECT_THROW(parse_readout_model("0 1.5 0.2\n"), std::invalid_argument);
    EXPECT_THROW(parse_readout_model("0 -0.1 0.2\n"), std::invalid_argument);
    EXPECT_THROW(parse_readout_model("0 0.1 0.2\n0 0.1 0.2\n"), std::invalid_argument);
}

TEST(ReadoutModel, LoadsBundledFile) {
    const auto m = load_readout_model(std::filesystem::path(IFM_DATA_DIR) / "noise" /
                                      "symmetric2pct_10q.txt");
    for (std::size_t q = 0; q < 10; ++q) {
        EXPECT_DOUBLE_EQ(m.at(q).p01, 0.02);
        EXPECT_DOUBLE_EQ(m.at(q).p10, 0.02);
    }
    EXPECT_THROW(load_readout_model("/nonexistent/noise.txt"), std::runtime_error);
}

TEST(ReadoutModel, NoiselessDetection) {
    EXPECT_TRUE(ReadoutErrorModel::symmetric(0.0, 4).is_noiseless());
    EXPECT_FALSE(ReadoutErrorModel::symmetric(0.01, 4).is_noiseless());
}

TEST(ApplyReadoutNoise, SingleBitTransitionMatrix) {
    OutcomeDistribution d(1);
    d.add(0, 0.7);
    d.add(1, 0.3);
    ReadoutErrorModel m;
    m.set(0, {0.1, 0.2});
    const auto out = apply_readout_noise(d, m);
    EXPECT_NEAR(out.probability(Outcome{0}), 0.7 * 0.9 + 0.3 * 0.2, 1e-15);
    EXPECT_NEAR(out.probability(Outcome{1}), 0.7 * 0.1 + 0.3 * 0.8, 1e-15);
}

TEST(ApplyReadoutNoise, PreservesTotal) {
    const auto model = ReadoutErrorModel::symmetric(0.05, 10);
    for (std::size_t n = 2; n <= 9; ++n) {
        const Circuit c = build_jozsa_ancilla({n, 1});
        EXPECT_NEAR(apply_readout_noise(c, exact_distribution(c), model).total(), 1.0, 1e-12);
    }
}

TEST(ApplyReadoutNoise, AllZeroDecreasesMonotonicallyInP) {
    for (std::size_t n = 2; n <= 9; ++n) {
        const Circuit c = build_jozsa_ancilla({n, 1});
        const auto clean = exact_distribution(c);
        double previous = clean.probability(Outcome{0});
        for (double p = 0.005; p <= 0.1; p += 0.005) {
            const auto noisy = apply_readout_noise(c, clean, ReadoutErrorModel::symmetric(p, n + 1));
            const double now = noisy.probability(Outcome{0});
            EXPECT_LT(now, previous) << "N=" << n << " p=" << p;
            previous = now;
        }
    }
}

TEST(ApplyReadoutNoise, OutflowDominatesInflow) {
    // Mass leaving the all-zero string vs mass entering it from the rest.
    for (std::size_t n = 5; n <= 9; ++n) {
        const Circuit c = build_jozsa_ancilla({n, 1});
        const auto clean = exact_distribution(c);
        for (double p : {0.005, 0.01, 0.02, 0.03, 0.05}) {
            const double p0 = clean.probability(Outcome{0});
            const double stay = std::pow(1 - p, static_cast<double>(n + 1));
            const double outflow = p0 * (1 - stay);
            double inflow = 0;
            for (const auto &[o, q] : clean.probabilities()) {
                if (o != 0) {
                    const int flips = std::popcount(o);
                    inflow += q * std::pow(p, flips) * std::pow(1 - p, static_cast<double>(n + 1 - flips));
                }
            }
            EXPECT_GT(outflow / inflow, 20.0) << "N=" << n << " p=" << p;
            const auto noisy = apply_readout_noise(c, clean, ReadoutErrorModel::symmetric(p, n + 1));
            EXPECT_NEAR(noisy.probability(Outcome{0}), p0 - outflow + inflow, 1e-12);
        }
    }
}

TEST(ApplyReadoutNoise, MaskLeavesBitsUntouched) {
    OutcomeDistribution d(2);
    d.add(0, 1.0);
    const auto m = ReadoutErrorModel::symmetric(0.5, 2);
    const auto out = apply_readout_noise(d, m, {0, 1}, Outcome{0b10});
    EXPECT_NEAR(out.probability("00"), 0.5, 1e-15);
    EXPECT_NEAR(out.probability("01"), 0.5, 1e-15);
    EXPECT_EQ(out.probability("10"), 0.0);
}

TEST(ApplyReadoutNoise, WidthMismatch) {
    OutcomeDistribution d(2);
    d.add(0, 1.0);
    EXPECT_THROW(apply_readout_noise(d, ReadoutErrorModel::symmetric(0.1, 2), {0}),
                 std::invalid_argument);
}

TEST(ApplyReadoutNoise, IdentityModelLeavesDistribution) {
    const Circuit c = build_jozsa_ancilla({4, 1});
    const auto d = exact_distribution(c);
    EXPECT_EQ(max_abs_difference(apply_readout_noise(c, d, ReadoutErrorModel::symmetric(0.0, 5)), d), 0.0);
}

TEST(ApplyReadoutNoise, OneBitZeroState) {
    OutcomeDistribution d(1);
    d.add(0, 1.0);
    ReadoutErrorModel m;
    m.set(0, {0.02, 0.0});
    const auto out = apply_readout_noise(d, m);
    EXPECT_NEAR(out.probability(Outcome{0}), 0.98, 1e-15);
    EXPECT_NEAR(out.probability(Outcome{1}), 0.02, 1e-15);
}

TEST(ApplyReadoutNoise, DudUnderSymmetricNoise) {
    const Circuit dud = build_bomb_tester(false);
    const auto out = apply_readout_noise(dud, exact_distribution(dud), ReadoutErrorModel::symmetric(0.02, 2));
    EXPECT_NEAR(out.probability("10"), 0.9604, 1e-12);
    EXPECT_NEAR(out.probability("00"), 0.0196, 1e-12);
    EXPECT_NEAR(out.probability("11"), 0.0196, 1e-12);
    EXPECT_NEAR(out.probability("01"), 0.0004, 1e-12);
}
