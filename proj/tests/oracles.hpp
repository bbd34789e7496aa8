// Copyright 2026 The randbasis Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Brute-force reference computations. Nothing here calls into the library's
// sumset, counting or analytics code.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <vector>

namespace oracle {

//! All k-fold sums (with repetition) by nested enumeration.
inline std::set<std::uint64_t> kfold_sums(std::vector<std::uint64_t> const& a,
                                          unsigned k)
{
    std::set<std::uint64_t> sums;
    if (a.empty())
        return sums;
    std::function<void(unsigned, std::uint64_t)> rec =
        [&](unsigned left, std::uint64_t acc) {
            if (left == 0) {
                sums.insert(acc);
                return;
            }
            for (auto x : a)
                rec(left - 1, acc + x);
        };
    rec(k, 0);
    return sums;
}

inline std::set<std::uint64_t>
kfold_residues(std::vector<std::uint64_t> const& a, unsigned k,
               std::uint64_t n)
{
    std::set<std::uint64_t> out;
    for (auto s : kfold_sums(a, k))
        out.insert(s % n);
    return out;
}

inline std::vector<std::uint64_t> elements_of(std::uint64_t mask)
{
    std::vector<std::uint64_t> out;
    for (std::uint64_t x = 0; x < 64; ++x)
        if ((mask >> x) & 1u)
            out.push_back(x);
    return out;
}

inline double subset_weight(std::uint64_t mask, std::uint64_t ground, double p)
{
    unsigned size = 0;
    for (std::uint64_t x = 0; x < ground; ++x)
        size += (mask >> x) & 1u;
    return std::pow(p, size) * std::pow(1.0 - p, ground - size);
}

//! Probability-weighted sum of f(subset) over every subset of {0..ground-1}.
template <class F>
double expectation(std::uint64_t ground, double p, F&& f)
{
    double total = 0.0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << ground); ++mask)
        total += subset_weight(mask, ground, p) * f(elements_of(mask));
    return total;
}

//! Exact P(j has no k-sum representation) by enumerating subsets of {0..n}.
inline double missing_prob(std::uint64_t j, unsigned k, std::uint64_t n,
                           double p)
{
    return expectation(n + 1, p, [&](std::vector<std::uint64_t> const& a) {
        return kfold_sums(a, k).count(j) ? 0.0 : 1.0;
    });
}

//! Multisets of size k from {0..n}, grouped by sum: counts[j][d] is the
//! number with d distinct values.
inline std::map<std::uint64_t, std::map<unsigned, std::uint64_t>>
multiset_counts(unsigned k, std::uint64_t n)
{
    std::map<std::uint64_t, std::map<unsigned, std::uint64_t>> out;
    std::vector<std::uint64_t> tuple(k);
    std::function<void(unsigned, std::uint64_t)> rec =
        [&](unsigned pos, std::uint64_t from) {
            if (pos == k) {
                std::uint64_t sum = 0;
                for (auto x : tuple)
                    sum += x;
                auto distinct = std::set<std::uint64_t>(tuple.begin(),
                                                        tuple.end())
                                    .size();
                ++out[sum][static_cast<unsigned>(distinct)];
                return;
            }
            for (auto x = from; x <= n; ++x) {
                tuple[pos] = x;
                rec(pos + 1, x);
            }
        };
    rec(0, 0);
    return out;
}

}  // namespace oracle
