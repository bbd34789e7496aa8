// Copyright 2026 The randbasis Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace randbasis {

using BigInt = boost::multiprecision::cpp_int;

//! Coefficients a_0..a_{nk} of the Gaussian binomial (n+k choose k)_q.
struct QBinomial
{
    std::uint64_t n = 0;
    std::uint64_t k = 0;
    std::vector<BigInt> coefficients;
};

/*!
 * Rows of Gaussian binomials for a growing box width.
 *
 * Holds G(n, j) for j = 0..max_k at the current n, where the coefficient of
 * q^t in G(n, j) counts partitions of t into at most j parts each at most n.
 * advance() moves n to n + 1 using
 *   G(n+1, j) = G(n+1, j-1) + q^j G(n, j).
 * Memory is O(max_k * max_k * n).
 */
class GaussianBinomialRows
{
  public:
    explicit GaussianBinomialRows(std::uint64_t max_k);

    std::uint64_t n() const { return n_; }
    std::uint64_t max_k() const { return rows_.size() - 1; }
    std::vector<BigInt> const& row(std::uint64_t k) const { return rows_[k]; }

    void advance();

  private:
    std::uint64_t n_ = 0;
    std::vector<std::vector<BigInt>> rows_;
};

QBinomial gaussian_binomial(std::uint64_t n, std::uint64_t k);

//! |S_j|: multisets of exactly k values from {0..n} summing to j. Zero when
//! j is outside [0, kn].
BigInt count_sumtuples(std::int64_t j, std::uint64_t k, std::uint64_t n);

//! |S_j| stratified by the number of distinct values.
struct TupleCounts
{
    std::int64_t j = 0;
    std::uint64_t k = 0;
    std::uint64_t n = 0;
    BigInt total;
    //! by_distinct[d - 1] = c_d for d = 1..k; c_k = |T_j|.
    std::vector<BigInt> by_distinct;
};

TupleCounts count_by_distinct(std::int64_t j, std::uint64_t k,
                              std::uint64_t n);

}  // namespace randbasis
