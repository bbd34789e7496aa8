// Copyright 2026 The randbasis Authors.
// SPDX-License-Identifier: Apache-2.0
#include "randbasis/rng.hpp"

namespace randbasis {
namespace {

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z)
{
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

std::uint64_t split_seed(std::uint64_t seed, std::uint64_t stream)
{
    return mix64(mix64(seed + 0x9e3779b97f4a7c15ULL)
                 ^ (stream * 0xd1b54a32d192ed03ULL + 0x8cb92ba72f3d8dd7ULL));
}

Rng make_stream(std::uint64_t seed, std::uint64_t stream)
{
    return Rng{split_seed(seed, stream)};
}

}  // namespace randbasis
