// Copyright 2026 The randbasis Authors.
// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <cstdint>
#include <map>

#include "doctest.h"
#include "randbasis/coupling.hpp"
#include "randbasis/error.hpp"
#include "randbasis/sumset.hpp"

using namespace randbasis;

namespace {

SampledSet truncated(std::uint64_t n, std::vector<std::uint64_t> e)
{
    return SampledSet(Ground::ZeroToN, n, std::move(e));
}

}  // namespace

TEST_CASE("coupling leaves a set alone when the target is missing")
{
    Rng rng = make_stream(1, 0);
    auto const s = truncated(10, {1, 2, 9});
    auto const out = couple_given_missing(s, 6, 10, 0.4, rng);
    CHECK(out.after == s);
    CHECK(out.removed.empty());
    CHECK(out.target_j == 6);
}

TEST_CASE("coupling removes the diagonal element")
{
    Rng rng = make_stream(1, 1);
    for (int i = 0; i < 50; ++i) {
        auto const out = couple_given_missing(truncated(10, {3}), 6, 10, 0.4, rng);
        CHECK(out.after.empty());
        CHECK(out.removed == std::vector<std::uint64_t>{3});
    }
}

TEST_CASE("coupled pair law")
{
    for (double p : {0.1, 0.5, 0.9}) {
        auto const r = pair_removal_probabilities(p);
        CHECK(r.first_only + r.second_only + r.both == doctest::Approx(1.0));
        // Given "not both present", a pair is (present, absent) with
        // probability p(1-p)/(1-p^2) = p/(1+p).
        CHECK(r.second_only == doctest::Approx(p / (1 + p)));
        CHECK(r.first_only == doctest::Approx(p / (1 + p)));
    }

    Rng rng = make_stream(2, 0);
    auto const s = truncated(6, {1, 5});
    std::map<std::vector<std::uint64_t>, int> outcomes;
    int const runs = 1000000;
    for (int i = 0; i < runs; ++i) {
        auto out = couple_given_missing(s, 6, 6, 0.5, rng);
        auto const e = out.after.elements();
        ++outcomes[{e.begin(), e.end()}];
    }
    CHECK(outcomes.size() == 3);
    for (auto const& key : {std::vector<std::uint64_t>{},
                            std::vector<std::uint64_t>{1},
                            std::vector<std::uint64_t>{5}})
        CHECK(std::abs(outcomes[key] / double(runs) - 1.0 / 3) <= 0.01);
}

TEST_CASE("coupling is one-sided and makes the target missing")
{
    Rng rng = make_stream(3, 0);
    std::uint64_t const n = 30;
    auto const model = make_model(n, 2, 0.5, 0.4, Mode::Truncated);
    for (int i = 0; i < 2000; ++i) {
        auto const s = sample(model, rng);
        std::uint64_t const j = 1 + rng() % (2 * n);
        auto const out = couple_given_missing(s, j, n, 0.4, rng);
        auto const before = kfold_sumset(out.before, 2, n);
        auto const after = kfold_sumset(out.after, 2, n);
        CHECK_FALSE(after.test(j));
        for (std::uint64_t i2 = 0; i2 <= 2 * n; ++i2)
            if (!before.test(i2))
                CHECK_FALSE(after.test(i2));
    }
}

TEST_CASE("indicator layout skips the conditioned target")
{
    IndicatorLayout const layout{2, 2};
    // Sums 1..4 present except 2; compared targets are 1, 3, 4.
    std::uint64_t const sums = (1u << 1) | (1u << 3) | (1u << 4);
    CHECK(layout.pack(sums) == 0);
    CHECK(layout.pack(0) == 0b111);
    CHECK(pair_sumset_mask(0b101, 2) == ((1u << 0) | (1u << 2) | (1u << 4)));
}

TEST_CASE("exact conditional law")
{
    // n = 2, p = 1/2: 2 is missing for {}, {0} and {2} only. The first two
    // miss every other target; {2} covers 4.
    auto const law = conditional_law_exact(2, 0.5, 2);
    double total = 0;
    for (auto const& [mask, mass] : law)
        total += mass;
    CHECK(total == doctest::Approx(1.0));
    CHECK(law.at(0b111) == doctest::Approx(2.0 / 3));

    auto const near_zero = conditional_law_exact(6, 1e-9, 5);
    CHECK(near_zero.at((std::uint64_t{1} << 11) - 1) > 1 - 1e-6);

    CHECK_THROWS_AS(conditional_law_exact(3, 1.0, 4), ValidationError);
    CHECK_THROWS_AS(conditional_law_exact(21, 0.5, 4), ValidationError);
}

TEST_CASE("coupling reproduces the conditional law")
{
    auto const small = coupling_tv_check(6, 0.4, 5, 100, 1);
    CHECK(small.tv >= 0.0);
    CHECK(small.tv <= 1.0);
    CHECK(small.samples == 100);

    auto const a = coupling_tv_check(4, 0.5, 4, 200000, 7);
    CHECK(a.tv <= 0.02);
    CHECK(a.one_sided_violations == 0);
    auto const b = coupling_tv_check(4, 0.5, 4, 200000, 7, 3);
    CHECK(a.tv == b.tv);
}
