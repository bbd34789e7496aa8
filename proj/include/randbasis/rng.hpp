// Copyright 2026 The randbasis Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>

namespace randbasis {

//! Engine used for every stochastic operation.
using Rng = std::mt19937_64;

//! Seed used when the caller does not supply one.
inline constexpr std::uint64_t kDefaultSeed = 20140301;

/*!
 * Counter-based stream splitting.
 *
 * The child seed is a bijective mix of (seed, stream), so stream t of a
 * master seed is the same no matter which worker draws it or in which
 * order streams are opened.
 */
std::uint64_t split_seed(std::uint64_t seed, std::uint64_t stream);

//! Engine for stream `stream` of master seed `seed`.
Rng make_stream(std::uint64_t seed, std::uint64_t stream);

}  // namespace randbasis
