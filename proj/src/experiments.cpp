// Copyright 2026 The randbasis Authors.
// SPDX-License-Identifier: Apache-2.0
#include "randbasis/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <thread>

#include "randbasis/analytics.hpp"
#include "randbasis/error.hpp"
#include "randbasis/sumset.hpp"

namespace randbasis {

TrialStats merge(TrialStats const& a, TrialStats const& b)
{
    TrialStats out;
    out.trials = a.trials + b.trials;
    out.seed = a.trials ? a.seed : b.seed;
    out.x_histogram = a.x_histogram;
    for (auto const& [x, count] : b.x_histogram)
        out.x_histogram[x] += count;
    auto const zero = out.x_histogram.find(0);
    out.basis_successes = zero == out.x_histogram.end() ? 0 : zero->second;
    // Recomputed from the histogram so the value does not depend on how the
    // trials were split.
    double total = 0.0;
    for (auto const& [x, count] : out.x_histogram)
        total += static_cast<double>(x) * static_cast<double>(count);
    out.mean_x = out.trials ? total / static_cast<double>(out.trials) : 0.0;
    return out;
}

namespace {

std::uint64_t env_or(char const* name, std::uint64_t fallback)
{
    char const* text = std::getenv(name);
    if (!text || !*text)
        return fallback;
    char* end = nullptr;
    auto const value = std::strtoull(text, &end, 10);
    if (*end != '\0' || value == 0)
        throw ValidationError(name, std::string("invalid value '") + text
                                        + "'");
    return value;
}

}  // namespace

RunOptions resolve_options(RunOptions options)
{
    if (options.workers == 0)
        options.workers = static_cast<unsigned>(env_or("RANDBASIS_WORKERS", 1));
    if (options.memory_cap_bytes == 0)
        options.memory_cap_bytes = env_or("RANDBASIS_MEMORY_CAP_MB", 2048)
                                   << 20;
    return options;
}

std::uint64_t trial_memory_bytes(Model const& model)
{
    // Two live bitmaps plus the sampled elements.
    std::uint64_t const bits = model.mode == Mode::Truncated
                                   ? 2 * (model.k * model.n + 1)
                                   : 4 * model.n;
    double const expected = std::holds_alternative<FixedSize>(model.sampling)
                                ? static_cast<double>(
                                    std::get<FixedSize>(model.sampling).m)
                                : model.p * static_cast<double>(
                                    ground_size(model));
    return bits / 8 + 8 * static_cast<std::uint64_t>(expected) + 64;
}

TrialStats run_trials(Model const& model, std::uint64_t trials,
                      std::uint64_t seed, RunOptions options)
{
    if (trials == 0)
        throw ValidationError("trials", "trials must be positive");
    options = resolve_options(options);
    unsigned const workers = static_cast<unsigned>(
        std::min<std::uint64_t>(options.workers, trials));
    if (trial_memory_bytes(model) * workers > options.memory_cap_bytes)
        throw ResourceError("bitmap of " + std::to_string(model.k * model.n)
                            + " bits exceeds memory cap");

    std::vector<TrialStats> partial(workers);
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                TrialStats& local = partial[w];
                local.seed = seed;
                for (std::uint64_t t = w; t < trials; t += workers) {
                    auto rng = make_stream(seed, t);
                    auto const set = sample(model, rng);
                    ++local.x_histogram[missing_targets(set, model)];
                    ++local.trials;
                }
            });
        }
    }

    TrialStats stats;
    stats.seed = seed;
    for (auto const& part : partial)
        stats = merge(stats, part);
    stats.seed = seed;
    return stats;
}

BasisEstimate wilson_interval(std::uint64_t successes, std::uint64_t trials)
{
    if (trials == 0)
        throw ValidationError("trials", "trials must be positive");
    constexpr double z = 1.959963984540054;
    double const n = static_cast<double>(trials);
    double const p_hat = static_cast<double>(successes) / n;
    double const z2 = z * z;
    double const denom = 1.0 + z2 / n;
    double const center = (p_hat + z2 / (2.0 * n)) / denom;
    double const half = z * std::sqrt(p_hat * (1.0 - p_hat) / n
                                      + z2 / (4.0 * n * n))
                        / denom;
    return {p_hat, std::clamp(center - half, 0.0, p_hat),
            std::clamp(center + half, p_hat, 1.0)};
}

BasisEstimate estimate_basis_prob(TrialStats const& stats)
{
    return wilson_interval(stats.basis_successes, stats.trials);
}

double tv_empirical_poisson(TrialStats const& stats, double lambda)
{
    if (stats.trials == 0)
        throw ValidationError("trials", "empty histogram");
    PoissonModel const poisson(lambda);
    double const total = static_cast<double>(stats.trials);
    std::uint64_t const top = stats.x_histogram.empty()
                                  ? 0
                                  : stats.x_histogram.rbegin()->first;
    double distance = 0.0;
    auto it = stats.x_histogram.begin();
    for (std::uint64_t v = 0; v <= top; ++v) {
        double empirical = 0.0;
        if (it != stats.x_histogram.end() && it->first == v) {
            empirical = static_cast<double>(it->second) / total;
            ++it;
        }
        distance += std::abs(empirical - poisson.pmf(v));
    }
    distance += poisson.tail_above(top);
    return std::clamp(0.5 * distance, 0.0, 1.0);
}

SweepRow summarize(Model const& model, TrialStats const& stats, double a_n)
{
    SweepRow row;
    row.n = model.n;
    row.k = model.k;
    row.alpha = model.alpha;
    row.a_n = a_n;
    row.p = model.p;
    row.mode = model.mode;
    row.trials = stats.trials;
    row.seed = stats.seed;
    auto const estimate = estimate_basis_prob(stats);
    row.basis_prob_hat = estimate.p_hat;
    row.ci_lo = estimate.ci_lo;
    row.ci_hi = estimate.ci_hi;
    if (model.k == 2) {
        row.exact_lambda = exact_mean_missing_k2(model.n, model.p, model.alpha,
                                                 model.mode);
        row.tv_hat = tv_empirical_poisson(stats, *row.exact_lambda);
    }
    if (model.p > 0.0)
        row.asympt_lambda = asympt_mean_missing(model.n, model.p, model.alpha,
                                                model.k, model.mode);
    row.limit_prob = std::isnan(a_n)
                         ? std::numeric_limits<double>::quiet_NaN()
                         : limit_basis_prob(model.k, model.alpha, a_n,
                                            model.mode);
    return row;
}

std::vector<SweepRow> sweep(std::vector<GridPoint> const& grid,
                            std::uint64_t trials, std::uint64_t seed,
                            RunOptions options,
                            std::function<void(SweepRow const&)> const& on_row)
{
    if (grid.empty())
        throw ValidationError("grid", "sweep grid is empty");
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();

    std::vector<SweepRow> rows;
    rows.reserve(grid.size());
    for (std::size_t r = 0; r < grid.size(); ++r) {
        auto const& point = grid[r];
        auto const row_seed = split_seed(seed, r);
        SweepRow row;
        try {
            double const p = threshold_p(point.n, point.k, point.alpha,
                                         point.a_n, point.mode);
            auto const model = make_model(point.n, point.k, point.alpha, p,
                                          point.mode);
            row = summarize(model, run_trials(model, trials, row_seed, options),
                            point.a_n);
        } catch (Error const& e) {
            row = SweepRow{point.n, point.k, point.alpha, point.a_n, nan,
                           point.mode, trials, nan, nan, nan, std::nullopt,
                           std::nullopt, nan, std::nullopt, row_seed,
                           e.what()};
        }
        if (on_row)
            on_row(row);
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace randbasis
