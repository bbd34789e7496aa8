// Copyright 2026 The randbasis Authors.
// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <map>
#include <set>

#include "doctest.h"
#include "randbasis/error.hpp"
#include "randbasis/model.hpp"

using namespace randbasis;

namespace {

template <class F>
ValidationError capture(F&& f)
{
    try {
        f();
    } catch (ValidationError const& e) {
        return e;
    }
    FAIL("expected a validation error");
    return ValidationError("", "");
}

}  // namespace

TEST_CASE("make_model accepts in-range parameters")
{
    auto m = make_model(100, 2, 0.5, 0.1, Mode::Truncated);
    CHECK(m.n == 100);
    CHECK(m.k == 2);
    CHECK(ground_size(m) == 101);
    CHECK(ground_size(100, Mode::Modular) == 100);
}

TEST_CASE("make_model rejects bad parameters with the field name")
{
    auto e = capture([] { make_model(100, 2, 1.2, 0.1, Mode::Truncated); });
    CHECK(e.field() == "alpha");
    CHECK(std::string(e.what()) == "alpha out of (0,1)");

    e = capture([] {
        make_model(10, 2, 0.5, 0.1, Mode::Modular, FixedSize{11});
    });
    CHECK(std::string(e.what()) == "fixed size exceeds ground set of 10");

    CHECK(capture([] { make_model(10, 1, 0.5, 0.1, Mode::Truncated); })
              .field()
          == "k");
    CHECK(capture([] { make_model(10, 2, 0.5, -0.1, Mode::Truncated); })
              .field()
          == "p");
    CHECK(capture([] { make_model(10, 2, 0.5, 1.5, Mode::Truncated); })
              .field()
          == "p");
    CHECK(capture([] { make_model(0, 2, 0.5, 0.5, Mode::Truncated); })
              .field()
          == "n");
    CHECK(capture([] { make_model(10, 2, 0.0, 0.5, Mode::Truncated); })
              .field()
          == "alpha");
    // The truncated ground set has n + 1 elements.
    CHECK_NOTHROW(make_model(10, 2, 0.5, 0.1, Mode::Truncated, FixedSize{11}));
}

TEST_CASE("target window")
{
    auto w = target_window(10, 2, 0.3, Mode::Truncated);
    CHECK(w.lo == 3);
    CHECK(w.hi == 17);
    w = target_window(10, 2, 0.5, Mode::Truncated);
    CHECK(w.lo == 5);
    CHECK(w.hi == 15);
    CHECK(w.size() == 11);
    w = target_window(9, 3, 0.5, Mode::Modular);
    CHECK(w.lo == 0);
    CHECK(w.hi == 8);
    // 0.7 * 10 is 7.000000000000001 in binary.
    CHECK(ceil_times(0.7, 10) == 7);
    CHECK(floor_times(1.3, 10) == 13);
}

TEST_CASE("SampledSet validates its elements")
{
    CHECK_THROWS_AS(SampledSet(Ground::ZeroToN, 5, {1, 1}), ValidationError);
    CHECK_THROWS_AS(SampledSet(Ground::ZeroToN, 5, {3, 2}), ValidationError);
    CHECK_THROWS_AS(SampledSet(Ground::ZeroToNMinus1, 5, {5}),
                    ValidationError);
    CHECK_NOTHROW(SampledSet(Ground::ZeroToN, 5, {0, 5}));
    auto full = SampledSet::full(Ground::ZeroToNMinus1, 4);
    CHECK(full.size() == 4);
    CHECK(full.contains(3));
    CHECK_FALSE(full.contains(4));
}

TEST_CASE("Bernoulli sampling boundary cases")
{
    Rng rng = make_stream(1, 0);
    for (auto mode : {Mode::Truncated, Mode::Modular}) {
        auto zero = make_model(50, 2, 0.5, 0.0, mode);
        auto one = make_model(50, 2, 0.5, 1.0, mode);
        for (int i = 0; i < 5; ++i) {
            CHECK(sample_bernoulli(zero, rng).empty());
            CHECK(sample_bernoulli(one, rng)
                  == SampledSet::full(ground_of(mode), 50));
        }
    }
}

TEST_CASE("Bernoulli sampling marginals")
{
    auto m = make_model(999, 2, 0.5, 0.03, Mode::Truncated);
    Rng rng = make_stream(2, 0);
    int const draws = 20000;
    std::vector<double> hits(1000, 0.0);
    double total = 0.0;
    for (int i = 0; i < draws; ++i) {
        auto s = sample_bernoulli(m, rng);
        total += static_cast<double>(s.size());
        for (auto x : s.elements())
            hits[x] += 1.0;
    }
    double const mean = total / draws;
    double const se = std::sqrt(1000 * 0.03 * 0.97 / draws);
    CHECK(std::abs(mean - 30.0) < 4 * se);
    // Low, middle and high elements are equally likely.
    for (std::size_t lo : {0, 450, 900}) {
        double block = 0.0;
        for (std::size_t x = lo; x < lo + 100; ++x)
            block += hits[x];
        double const rate = block / (100.0 * draws);
        CHECK(std::abs(rate - 0.03) < 4 * std::sqrt(0.03 * 0.97 / (100.0 * draws)));
    }
}

TEST_CASE("fixed-size sampling")
{
    Rng rng = make_stream(3, 0);
    auto zero = make_model(10, 2, 0.5, 0.5, Mode::Truncated, FixedSize{0});
    CHECK(sample_fixed_size(zero, rng).empty());
    auto full = make_model(10, 2, 0.5, 0.5, Mode::Modular, FixedSize{10});
    CHECK(sample_fixed_size(full, rng) == SampledSet::full(Ground::ZeroToNMinus1, 10));

    for (std::uint64_t m : {1, 7, 40, 100}) {
        auto model = make_model(100, 2, 0.5, 0.5, Mode::Truncated, FixedSize{m});
        for (int i = 0; i < 20; ++i)
            CHECK(sample(model, rng).size() == m);
    }

    // All 10 two-element subsets of {0..4} are equally likely.
    auto pairs = make_model(5, 2, 0.5, 0.5, Mode::Modular, FixedSize{2});
    std::map<std::pair<std::uint64_t, std::uint64_t>, int> freq;
    int const draws = 600000;
    for (int i = 0; i < draws; ++i) {
        auto s = sample_fixed_size(pairs, rng);
        ++freq[{s.elements()[0], s.elements()[1]}];
    }
    CHECK(freq.size() == 10);
    for (auto const& [key, count] : freq)
        CHECK(std::abs(count / double(draws) - 0.1) <= 0.005);
}

TEST_CASE("sampling is reproducible from the stream")
{
    auto m = make_model(1000, 2, 0.5, 0.05, Mode::Truncated);
    Rng a = make_stream(99, 4);
    Rng b = make_stream(99, 4);
    CHECK(sample(m, a) == sample(m, b));
    CHECK(split_seed(99, 4) != split_seed(99, 5));
    CHECK(split_seed(99, 4) != split_seed(98, 4));
}

TEST_CASE("threshold probabilities")
{
    CHECK(threshold_p(10000, 2, 0.5, 0, Mode::Truncated)
          == doctest::Approx(0.05288).epsilon(1e-3));
    CHECK(threshold_p(10000, 2, 0.5, 0, Mode::Modular)
          == doctest::Approx(0.04292).epsilon(1e-3));
    CHECK(threshold_p(10000, 3, 0.5, 0, Mode::Truncated)
          == doctest::Approx(0.01497).epsilon(1e-3));
    CHECK(threshold_spec(3, 0.5, 0, Mode::Truncated).K == doctest::Approx(48));
    CHECK(threshold_spec(3, 0.5, 0, Mode::Modular).K == doctest::Approx(6));

    auto e = capture([] { threshold_p(10000, 2, 0.5, -1000, Mode::Truncated); });
    CHECK(std::string(e.what()) == "below expressible threshold");
}

TEST_CASE("k = 2 truncated threshold uses K = 2 / alpha")
{
    for (double alpha : {0.2, 0.5, 0.8})
        for (double a : {-2.0, 0.0, 3.0})
            for (std::uint64_t n : {100, 10000, 1000000}) {
                double const K = 2.0 / alpha;
                double const ln = std::log(double(n));
                double const expected =
                    std::sqrt((K * ln - K * std::log(ln) + a) / double(n));
                CHECK(threshold_p(n, 2, alpha, a, Mode::Truncated)
                      == doctest::Approx(expected).epsilon(1e-12));
            }
}

TEST_CASE("threshold decreases in n")
{
    for (auto mode : {Mode::Truncated, Mode::Modular})
        for (unsigned k : {2u, 3u, 4u})
            for (double a : {-1.0, 0.0, 4.0}) {
                double prev = 2.0;
                for (std::uint64_t n = 1000; n <= 10000000; n *= 10) {
                    double const p = threshold_p(n, k, 0.5, a, mode);
                    CHECK(p < prev);
                    prev = p;
                }
            }
}

TEST_CASE("limit basis probability")
{
    CHECK(limit_basis_prob(2, 0.5, 0, Mode::Truncated)
          == doctest::Approx(std::exp(-1.0)));
    CHECK(limit_basis_prob(2, 0.5, 0, Mode::Modular)
          == doctest::Approx(std::exp(-1.0)));
    CHECK(limit_basis_prob(3, 0.5, 0, Mode::Truncated)
          == doctest::Approx(std::exp(-0.5)));
    for (double alpha : {0.3, 0.5, 0.7})
        for (double a : {-3.0, 0.0, 2.5})
            CHECK(limit_basis_prob(2, alpha, a, Mode::Truncated)
                  == doctest::Approx(
                      std::exp(-2 * alpha * std::exp(-alpha * a / 2))));
    for (auto mode : {Mode::Truncated, Mode::Modular})
        for (unsigned k : {2u, 3u, 5u}) {
            double prev = -1.0;
            for (double a = -10; a <= 10; a += 0.5) {
                double const v = limit_basis_prob(k, 0.4, a, mode);
                CHECK(v > prev);
                prev = v;
            }
        }
}
