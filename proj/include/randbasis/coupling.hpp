// Copyright 2026 The randbasis Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "randbasis/model.hpp"

namespace randbasis {

struct CouplingOutcome
{
    SampledSet before;
    SampledSet after;
    std::uint64_t target_j = 0;
    //! before \ after, ascending.
    std::vector<std::uint64_t> removed;
};

//! Probabilities used to resample a fully present pair {x1, x2}.
struct PairRemoval
{
    double first_only = 0.0;
    double second_only = 0.0;
    double both = 0.0;
};

PairRemoval pair_removal_probabilities(double p);

/*!
 * Coupling that realises L(I | I_j = 1) from an unconditioned k = 2 set.
 *
 * If j is already missing nothing changes. Otherwise every fully present
 * pair x1 + x2 = j (x1 < x2) is independently resampled from the law of the
 * pair given "not both present", and j/2 is removed if present.
 */
CouplingOutcome couple_given_missing(SampledSet const& set, std::uint64_t j,
                                     std::uint64_t n, double p, Rng& rng);

//! Targets compared by the conditional-law check: [1, 2n] without j.
struct IndicatorLayout
{
    std::uint64_t n = 0;
    std::uint64_t j = 0;

    //! Bit b of the returned mask is I_i for the b-th compared target.
    std::uint64_t pack(std::uint64_t sumset_mask) const;
};

//! Mask of the 2-sumset of a set given as a bit mask over {0..n}, n <= 31.
std::uint64_t pair_sumset_mask(std::uint64_t set_mask, std::uint64_t n);

//! Largest n accepted by the exhaustive conditional law.
inline constexpr std::uint64_t kMaxEnumerationN = 20;

using IndicatorLaw = std::unordered_map<std::uint64_t, double>;

/*!
 * Exact law of the missing-indicator vector over [1, 2n] \ {j} given that j
 * is missing, by weighted enumeration of all 2^(n+1) subsets of {0..n}.
 */
IndicatorLaw conditional_law_exact(std::uint64_t n, double p, std::uint64_t j);

struct CouplingCheck
{
    double tv = 0.0;
    std::uint64_t samples = 0;
    //! Outcomes where a target missing before the coupling was present after.
    std::uint64_t one_sided_violations = 0;
};

/*!
 * Total variation between the empirical post-coupling indicator law and the
 * exact conditional law. Sample batches use split streams of `seed`, so the
 * result is independent of `workers`.
 */
CouplingCheck coupling_tv_check(std::uint64_t n, double p, std::uint64_t j,
                                std::uint64_t samples, std::uint64_t seed,
                                unsigned workers = 1);

}  // namespace randbasis
