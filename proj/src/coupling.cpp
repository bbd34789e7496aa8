// Copyright 2026 The randbasis Authors.
// SPDX-License-Identifier: Apache-2.0
#include "randbasis/coupling.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <thread>

#include "randbasis/error.hpp"

namespace randbasis {

PairRemoval pair_removal_probabilities(double p)
{
    double const denom = 1.0 - p * p;
    double const single = p * (1.0 - p) / denom;
    return {single, single, (1.0 - p) * (1.0 - p) / denom};
}

CouplingOutcome couple_given_missing(SampledSet const& set, std::uint64_t j,
                                     std::uint64_t n, double p, Rng& rng)
{
    if (!(p > 0.0 && p < 1.0))
        throw ValidationError("p", "p out of (0,1)");
    if (j > 2 * n)
        throw ValidationError("j", "target outside [0, 2n]");
    if (!set.empty() && set.elements().back() > n)
        throw ValidationError("set", "element exceeds n");

    CouplingOutcome outcome{set, set, j, {}};
    auto const elements = set.elements();
    std::vector<char> drop(elements.size(), 0);
    auto index_of = [&](std::uint64_t x) -> std::ptrdiff_t {
        auto it = std::lower_bound(elements.begin(), elements.end(), x);
        if (it == elements.end() || *it != x)
            return -1;
        return it - elements.begin();
    };

    bool represented = false;
    for (std::size_t i = 0; i < elements.size() && 2 * elements[i] <= j; ++i)
        represented = represented || index_of(j - elements[i]) >= 0;
    if (!represented)
        return outcome;

    auto const removal = pair_removal_probabilities(p);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::size_t i = 0; i < elements.size(); ++i) {
        auto const x = elements[i];
        if (2 * x > j)
            break;
        if (2 * x == j) {
            drop[i] = 1;
            continue;
        }
        auto const partner = index_of(j - x);
        if (partner < 0)
            continue;
        double const u = unit(rng);
        if (u < removal.first_only) {
            drop[i] = 1;
        } else if (u < removal.first_only + removal.second_only) {
            drop[partner] = 1;
        } else {
            drop[i] = 1;
            drop[partner] = 1;
        }
    }

    std::vector<std::uint64_t> kept;
    for (std::size_t i = 0; i < elements.size(); ++i) {
        if (drop[i])
            outcome.removed.push_back(elements[i]);
        else
            kept.push_back(elements[i]);
    }
    outcome.after = SampledSet(set.ground(), set.n(), std::move(kept));
    return outcome;
}

std::uint64_t IndicatorLayout::pack(std::uint64_t sumset_mask) const
{
    std::uint64_t packed = 0;
    unsigned bit = 0;
    for (std::uint64_t i = 1; i <= 2 * n; ++i) {
        if (i == j)
            continue;
        if (!((sumset_mask >> i) & 1u))
            packed |= std::uint64_t{1} << bit;
        ++bit;
    }
    return packed;
}

std::uint64_t pair_sumset_mask(std::uint64_t set_mask, std::uint64_t n)
{
    if (n > 31)
        throw ValidationError("n", "mask sumsets need n <= 31");
    std::uint64_t sums = 0;
    for (auto bits = set_mask; bits != 0; bits &= bits - 1)
        sums |= set_mask << std::countr_zero(bits);
    return sums;
}

IndicatorLaw conditional_law_exact(std::uint64_t n, double p, std::uint64_t j)
{
    if (n > kMaxEnumerationN)
        throw ValidationError("n", "enumeration bound exceeded");
    if (!(p >= 0.0 && p <= 1.0))
        throw ValidationError("p", "p out of [0,1]");
    if (j > 2 * n)
        throw ValidationError("j", "target outside [0, 2n]");

    auto const ground = n + 1;
    std::vector<double> weight_by_size(ground + 1);
    for (std::uint64_t s = 0; s <= ground; ++s)
        weight_by_size[s] = std::pow(p, static_cast<double>(s))
                            * std::pow(1.0 - p, static_cast<double>(ground - s));

    IndicatorLayout const layout{n, j};
    IndicatorLaw law;
    double total = 0.0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << ground); ++mask) {
        double const w = weight_by_size[std::popcount(mask)];
        if (w == 0.0)
            continue;
        auto const sums = pair_sumset_mask(mask, n);
        if ((sums >> j) & 1u)
            continue;
        law[layout.pack(sums)] += w;
        total += w;
    }
    if (total == 0.0)
        throw ValidationError("j", "conditioning event has probability zero");
    for (auto& [key, mass] : law)
        mass /= total;
    return law;
}

namespace {

constexpr std::uint64_t kBatchSize = 1 << 14;

struct BatchResult
{
    std::unordered_map<std::uint64_t, std::uint64_t> counts;
    std::uint64_t violations = 0;
};

std::uint64_t to_mask(SampledSet const& set)
{
    std::uint64_t mask = 0;
    for (auto x : set.elements())
        mask |= std::uint64_t{1} << x;
    return mask;
}

BatchResult run_batch(Model const& model, std::uint64_t j,
                      std::uint64_t begin, std::uint64_t end,
                      std::uint64_t seed, std::uint64_t batch)
{
    IndicatorLayout const layout{model.n, j};
    auto rng = make_stream(seed, batch);
    BatchResult result;
    for (auto s = begin; s < end; ++s) {
        auto const set = sample_bernoulli(model, rng);
        auto const outcome = couple_given_missing(set, j, model.n, model.p,
                                                  rng);
        auto const before_sums = pair_sumset_mask(to_mask(outcome.before),
                                                  model.n);
        auto const after_sums = pair_sumset_mask(to_mask(outcome.after),
                                                 model.n);
        auto const before = layout.pack(before_sums);
        auto const after = layout.pack(after_sums);
        if ((before & ~after) != 0 || ((after_sums >> j) & 1u))
            ++result.violations;
        ++result.counts[after];
    }
    return result;
}

}  // namespace

CouplingCheck coupling_tv_check(std::uint64_t n, double p, std::uint64_t j,
                                std::uint64_t samples, std::uint64_t seed,
                                unsigned workers)
{
    if (n > 16)
        throw ValidationError("n", "coupling check needs n <= 16");
    if (samples == 0)
        throw ValidationError("samples", "samples must be positive");
    auto const exact = conditional_law_exact(n, p, j);
    auto const model = make_model(n, 2, 0.5, p, Mode::Truncated);

    auto const batches = (samples + kBatchSize - 1) / kBatchSize;
    std::vector<BatchResult> results(batches);
    workers = std::max(1u, std::min<unsigned>(workers, batches));
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (auto b = std::uint64_t{w}; b < batches; b += workers) {
                    auto const begin = b * kBatchSize;
                    auto const end = std::min(samples, begin + kBatchSize);
                    results[b] = run_batch(model, j, begin, end, seed, b);
                }
            });
        }
    }

    CouplingCheck check;
    check.samples = samples;
    std::unordered_map<std::uint64_t, std::uint64_t> counts;
    for (auto const& r : results) {
        check.one_sided_violations += r.violations;
        for (auto const& [key, count] : r.counts)
            counts[key] += count;
    }

    double distance = 0.0;
    double const total = static_cast<double>(samples);
    for (auto const& [key, mass] : exact) {
        auto it = counts.find(key);
        double const empirical = it == counts.end() ? 0.0
                                                    : it->second / total;
        distance += std::abs(empirical - mass);
    }
    for (auto const& [key, count] : counts) {
        if (!exact.contains(key))
            distance += count / total;
    }
    check.tv = std::clamp(0.5 * distance, 0.0, 1.0);
    return check;
}

}  // namespace randbasis
