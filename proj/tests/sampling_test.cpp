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

#include "ifm/sampling.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "ifm/builders.hpp"
#include "ifm/exact.hpp"

using namespace ifm;

namespace {

// Every outcome frequency lies within 5 binomial standard errors of the
// exact probability.
void expect_consistent(const Counts &counts, const OutcomeDistribution &exact) {
    const double shots = static_cast<double>(counts.total());
    for (const auto &[o, n] : counts.counts) {
        EXPECT_GT(exact.probability(o), 0.0) << "sampled impossible outcome "
                                              << format_outcome(o, counts.num_cbits);
    }
    for (const auto &[o, p] : exact.probabilities()) {
        const double freq = static_cast<double>(counts.count(o)) / shots;
        const double se = std::sqrt(p * (1 - p) / shots);
        EXPECT_LE(std::abs(freq - p), 5 * se + 1e-12) << format_outcome(o, counts.num_cbits);
    }
}

} // namespace

TEST(RunShot, DudIsDeterministic) {
    const Circuit dud = build_bomb_tester(false);
    for (std::uint64_t s = 0; s < 50; ++s) {
        Rng rng(s);
        EXPECT_EQ(format_outcome(run_shot(dud, rng), 2), "10");
    }
}

TEST(SampleCounts, TotalsEqualShots) {
    const Counts c = sample_counts(build_jozsa_ancilla({4, 1}), 1234, 5);
    EXPECT_EQ(c.total(), 1234u);
    EXPECT_EQ(c.num_cbits, 5u);
}

TEST(SampleCounts, RejectsZeroShots) {
    EXPECT_THROW(sample_counts(build_bomb_tester(true), 0, 1), std::invalid_argument);
}

TEST(SampleCounts, SameSeedSameCounts) {
    const Circuit c = build_jozsa_conditional({5, 1});
    EXPECT_EQ(sample_counts(c, 5000, 77).counts, sample_counts(c, 5000, 77).counts);
    EXPECT_NE(sample_counts(c, 5000, 77).counts, sample_counts(c, 5000, 78).counts);
}

TEST(SampleCounts, IndependentOfThreadCount) {
    const ReadoutErrorModel noise = ReadoutErrorModel::symmetric(0.03, 10);
    const Circuit c = build_jozsa_ancilla({7, 1});
    const Counts one = sample_counts(c, 20000, 3, &noise, {.threads = 1});
    for (unsigned t : {2u, 3u, 4u, 8u}) {
        EXPECT_EQ(sample_counts(c, 20000, 3, &noise, {.threads = t}).counts, one.counts)
            << t << " threads";
    }
}

TEST(SampleCounts, TreeMatchesDirectExecution) {
    const ReadoutErrorModel noise = ReadoutErrorModel::symmetric(0.04, 10);
    for (std::size_t n : {1u, 3u, 6u}) {
        for (const Circuit &c : {build_jozsa_ancilla({n, 1}), build_jozsa_conditional({n, 1})}) {
            for (const ReadoutErrorModel *model : {static_cast<const ReadoutErrorModel *>(nullptr), &noise}) {
                const Counts tree = sample_counts(c, 4000, 11, model);
                const Counts direct = sample_counts(c, 4000, 11, model, {.direct = true});
                EXPECT_EQ(tree.counts, direct.counts) << c.label();
            }
        }
    }
    const Counts tree = sample_counts(build_bomb_tester(true), 4000, 2);
    const Counts direct = sample_counts(build_bomb_tester(true), 4000, 2, nullptr, {.direct = true});
    EXPECT_EQ(tree.counts, direct.counts);
}

TEST(SampleCounts, ConsistentWithExactNoiseless) {
    for (const Circuit &c : {build_bomb_tester(true), build_jozsa_conditional({4, 1}),
                             build_jozsa_ancilla({6, 1})}) {
        expect_consistent(sample_counts(c, 100000, 21), exact_distribution(c));
    }
}

TEST(SampleCounts, ConsistentWithExactNoisy) {
    ReadoutErrorModel noise = ReadoutErrorModel::symmetric(0.03, 10);
    noise.set(1, {0.01, 0.08});
    for (const Circuit &c : {build_jozsa_conditional({4, 1}), build_jozsa_ancilla({5, 1})}) {
        expect_consistent(sample_counts(c, 100000, 4, &noise), exact_distribution(c, &noise));
    }
}

TEST(TrajectorySampler, TreeIsSmallForConditionalCircuit) {
    const TrajectorySampler s(build_jozsa_conditional({9, 1}));
    EXPECT_LT(s.node_count(), 64u);
}

TEST(SampleCounts, NoiseModelMustCoverMeasuredQubits) {
    const ReadoutErrorModel noise = ReadoutErrorModel::symmetric(0.01, 1);
    EXPECT_THROW(sample_counts(build_bomb_tester(true), 10, 1, &noise), std::out_of_range);
    EXPECT_THROW(sample_counts(build_bomb_tester(true), 10, 1, &noise, {.direct = true}),
                 std::out_of_range);
}

TEST(SampleCounts, BombCountsWithinBinomialBound) {
    const Counts c = sample_counts(build_bomb_tester(true), 8192, 12345);
    const double bound = 4 * std::sqrt(8192 * 0.25 * 0.75);
    for (const char *s : {"00", "10", "01", "11"}) {
        EXPECT_LE(std::abs(static_cast<double>(c.count(parse_outcome(s))) - 2048.0), bound) << s;
    }
}

TEST(SampleCounts, SingleShot) {
    const Counts c = sample_counts(build_jozsa_ancilla({3, 1}), 1, 9);
    ASSERT_EQ(c.counts.size(), 1u);
    EXPECT_EQ(c.counts.begin()->second, 1u);
}

TEST(SampleCounts, DudAlwaysReadsBright) {
    for (std::uint64_t seed : {0u, 1u, 99u}) {
        const Counts c = sample_counts(build_bomb_tester(false), 1000, seed);
        EXPECT_EQ(c.by_string(), (std::map<std::string, std::uint64_t>{{"10", 1000}}));
    }
}
