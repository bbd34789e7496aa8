// Copyright 2026 The randbasis Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "randbasis/model.hpp"

namespace randbasis {

//! Empirical law of X from a Monte Carlo run.
struct TrialStats
{
    std::uint64_t trials = 0;
    std::uint64_t basis_successes = 0;
    //! Sparse histogram X -> count.
    std::map<std::uint64_t, std::uint64_t> x_histogram;
    double mean_x = 0.0;
    std::uint64_t seed = 0;

    friend bool operator==(TrialStats const&, TrialStats const&) = default;
};

//! Combine partial runs of the same seed. Associative and order-free.
TrialStats merge(TrialStats const& a, TrialStats const& b);

struct RunOptions
{
    //! 0 reads RANDBASIS_WORKERS, falling back to 1.
    unsigned workers = 0;
    //! 0 reads RANDBASIS_MEMORY_CAP_MB, falling back to 2048 MiB.
    std::uint64_t memory_cap_bytes = 0;
};

RunOptions resolve_options(RunOptions options);

//! Bytes of bitmap storage one trial of `model` needs.
std::uint64_t trial_memory_bytes(Model const& model);

/*!
 * Run independent trials of `model`.
 *
 * Trial t draws from make_stream(seed, t), so the result depends only on
 * (model, trials, seed). Throws ResourceError when one worker's bitmaps
 * exceed the memory cap.
 */
TrialStats run_trials(Model const& model, std::uint64_t trials,
                      std::uint64_t seed, RunOptions options = {});

struct BasisEstimate
{
    double p_hat = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
};

//! Point estimate with a 95% Wilson score interval.
BasisEstimate estimate_basis_prob(TrialStats const& stats);
BasisEstimate wilson_interval(std::uint64_t successes, std::uint64_t trials);

//! 1/2 sum_v |hat p(v) - Po_lambda(v)|, Poisson tail past the histogram
//! support included exactly.
double tv_empirical_poisson(TrialStats const& stats, double lambda);

struct GridPoint
{
    std::uint64_t n = 0;
    double a_n = 0.0;
    Mode mode = Mode::Truncated;
    unsigned k = 2;
    double alpha = 0.5;
};

struct SweepRow
{
    std::uint64_t n = 0;
    unsigned k = 2;
    double alpha = 0.5;
    double a_n = 0.0;
    double p = 0.0;
    Mode mode = Mode::Truncated;
    std::uint64_t trials = 0;
    double basis_prob_hat = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
    std::optional<double> exact_lambda;
    std::optional<double> asympt_lambda;
    double limit_prob = 0.0;
    std::optional<double> tv_hat;
    std::uint64_t seed = 0;
    //! Set when the row could not be evaluated; numeric fields are then
    //! NaN where undefined.
    std::string error;
};

/*!
 * Monte Carlo at the threshold probability for each grid point.
 *
 * Row r runs with seed split_seed(seed, r). Errors are stored in the row.
 */
std::vector<SweepRow> sweep(
    std::vector<GridPoint> const& grid, std::uint64_t trials,
    std::uint64_t seed, RunOptions options = {},
    std::function<void(SweepRow const&)> const& on_row = {});

//! Row for a single already-run model (the simulate report).
SweepRow summarize(Model const& model, TrialStats const& stats, double a_n);

}  // namespace randbasis
