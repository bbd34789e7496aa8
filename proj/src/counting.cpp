// Copyright 2026 The randbasis Authors.
// SPDX-License-Identifier: Apache-2.0
#include "randbasis/counting.hpp"

#include <algorithm>

namespace randbasis {

GaussianBinomialRows::GaussianBinomialRows(std::uint64_t max_k)
    : rows_(max_k + 1, std::vector<BigInt>{1})
{
}

void GaussianBinomialRows::advance()
{
    // rows_[j] still holds G(n, j) when it is read, because the update runs
    // upward in j and G(n+1, j) only needs G(n+1, j-1) below it.
    ++n_;
    for (std::uint64_t j = 1; j < rows_.size(); ++j) {
        auto const& below = rows_[j - 1];
        std::vector<BigInt> next(n_ * j + 1);
        std::copy(below.begin(), below.end(), next.begin());
        auto const& previous = rows_[j];
        for (std::size_t t = 0; t < previous.size(); ++t)
            next[t + j] += previous[t];
        rows_[j] = std::move(next);
    }
}

QBinomial gaussian_binomial(std::uint64_t n, std::uint64_t k)
{
    GaussianBinomialRows rows(k);
    for (std::uint64_t i = 0; i < n; ++i)
        rows.advance();
    return {n, k, rows.row(k)};
}

BigInt count_sumtuples(std::int64_t j, std::uint64_t k, std::uint64_t n)
{
    auto const top = static_cast<std::int64_t>(k * n);
    if (j < 0 || j > top)
        return 0;
    // Complementing every value (x -> n - x) maps sum j to kn - j.
    auto const target = static_cast<std::size_t>(std::min(j, top - j));

    // Same recurrence as GaussianBinomialRows, truncated at degree `target`.
    std::vector<std::vector<BigInt>> rows(k + 1,
                                          std::vector<BigInt>(target + 1));
    for (auto& row : rows)
        row[0] = 1;
    for (std::uint64_t width = 1; width <= n; ++width) {
        for (std::uint64_t parts = 1; parts <= k; ++parts) {
            auto& row = rows[parts];
            auto const& below = rows[parts - 1];
            // Descending t reads row[t - parts] before it is overwritten.
            for (std::size_t t = target + 1; t-- > 0;) {
                BigInt value = below[t];
                if (t >= parts)
                    value += row[t - parts];
                row[t] = std::move(value);
            }
        }
    }
    return rows[k][target];
}

TupleCounts count_by_distinct(std::int64_t j, std::uint64_t k,
                              std::uint64_t n)
{
    TupleCounts result{j, k, n, 0, std::vector<BigInt>(k)};
    if (j < 0 || j > static_cast<std::int64_t>(k * n))
        return result;
    auto const sum = static_cast<std::size_t>(j);

    // table[d][s][t]: multisets over the values seen so far with d distinct
    // values, s elements, and total t.
    auto const width = sum + 1;
    auto const plane = (k + 1) * width;
    std::vector<BigInt> table((k + 1) * plane);
    auto at = [&](std::uint64_t d, std::uint64_t s, std::size_t t) -> BigInt& {
        return table[d * plane + s * width + t];
    };
    at(0, 0, 0) = 1;

    std::uint64_t const last = std::min<std::uint64_t>(n, sum);
    for (std::uint64_t v = 0; v <= last; ++v) {
        // Each value is used once with some multiplicity m >= 1; descending s
        // keeps sources untouched until they have been read.
        for (std::uint64_t s = k; s-- > 0;) {
            for (std::uint64_t d = std::min(s, k - 1) + 1; d-- > 0;) {
                for (std::size_t t = 0; t <= sum; ++t) {
                    BigInt const& source = at(d, s, t);
                    if (source == 0)
                        continue;
                    for (std::uint64_t m = 1; s + m <= k; ++m) {
                        auto const reached = t + m * v;
                        if (reached > sum)
                            break;
                        at(d + 1, s + m, reached) += source;
                    }
                }
            }
        }
    }

    for (std::uint64_t d = 1; d <= k; ++d) {
        result.by_distinct[d - 1] = at(d, k, sum);
        result.total += result.by_distinct[d - 1];
    }
    return result;
}

}  // namespace randbasis
