// Copyright 2026 The randbasis Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "randbasis/model.hpp"

namespace randbasis {

//! Fixed-length word-packed bit vector. Bits past size() are always zero.
class BitVector
{
  public:
    using word_type = std::uint64_t;
    static constexpr unsigned kWordBits = 64;

    BitVector() = default;
    explicit BitVector(std::uint64_t bits)
        : bits_(bits), words_((bits + kWordBits - 1) / kWordBits, 0)
    {
    }

    std::uint64_t size() const { return bits_; }
    bool test(std::uint64_t i) const
    {
        return (words_[i / kWordBits] >> (i % kWordBits)) & 1u;
    }
    void set(std::uint64_t i)
    {
        words_[i / kWordBits] |= word_type{1} << (i % kWordBits);
    }

    std::span<word_type const> words() const { return words_; }
    std::span<word_type> words() { return words_; }

    //! Number of set bits in [lo, hi].
    std::uint64_t count(std::uint64_t lo, std::uint64_t hi) const;

    //! 64 bits starting at bit `pos`, zero-filled past the end.
    word_type extract(std::uint64_t pos) const;

    //! Clears any bits at positions >= size().
    void trim();

    friend bool operator==(BitVector const&, BitVector const&) = default;

  private:
    std::uint64_t bits_ = 0;
    std::vector<word_type> words_;
};

/*!
 * dst |= src << shift.
 *
 * Only source words from index `first_word` onward are read (lower words are
 * skipped to save work; callers use this when those bits are known to be
 * redundant). Bits shifted past the end of dst are dropped.
 */
void shift_or(std::span<BitVector::word_type> dst,
              std::span<BitVector::word_type const> src, std::uint64_t shift,
              std::size_t first_word = 0);

enum class SumDomain { Range, Residues };

/*!
 * Presence bitmap of k-fold sums.
 *
 * Range: bit j is set iff j = x_1 + ... + x_k with all x_i in the source
 * set; length kn + 1. Residues: bit j is set iff some k-sum is congruent to j
 * mod n; length n.
 */
class SumBitmap
{
  public:
    SumBitmap(SumDomain domain, unsigned k, std::uint64_t n, BitVector bits)
        : domain_(domain), k_(k), n_(n), bits_(std::move(bits))
    {
    }

    SumDomain domain() const { return domain_; }
    unsigned k() const { return k_; }
    std::uint64_t n() const { return n_; }
    std::uint64_t size() const { return bits_.size(); }
    bool test(std::uint64_t j) const { return bits_.test(j); }
    BitVector const& bits() const { return bits_; }

    //! Positions of set bits, ascending.
    std::vector<std::uint64_t> to_vector() const;

    friend bool operator==(SumBitmap const&, SumBitmap const&) = default;

  private:
    SumDomain domain_;
    unsigned k_;
    std::uint64_t n_;
    BitVector bits_;
};

//! Sums of k elements (with repetition) over [0, kn]. k = 1 returns the set.
SumBitmap kfold_sumset(SampledSet const& set, unsigned k, std::uint64_t n);

//! Residues mod n of k-fold sums. Elements must lie in [0, n).
SumBitmap kfold_modular_sumset(SampledSet const& set, unsigned k,
                               std::uint64_t n);

//! Sumset in the domain implied by model.mode.
SumBitmap model_sumset(SampledSet const& set, Model const& model);

struct MissingReport
{
    std::uint64_t x = 0;
    std::vector<std::uint64_t> missing;
    Window window;
};

//! Unset positions in [lo, hi]; throws ValidationError if lo > hi or hi is
//! outside the bitmap.
MissingReport missing_in_window(SumBitmap const& bitmap, std::uint64_t lo,
                                std::uint64_t hi);

//! Count-only variant of missing_in_window.
std::uint64_t count_missing(SumBitmap const& bitmap, std::uint64_t lo,
                            std::uint64_t hi);

//! Number of uncovered targets in the model's window (the variable X).
std::uint64_t missing_targets(SampledSet const& set, Model const& model);

bool is_basis(SampledSet const& set, Model const& model);

}  // namespace randbasis
