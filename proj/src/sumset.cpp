// Copyright 2026 The randbasis Authors.
// SPDX-License-Identifier: Apache-2.0
#include "randbasis/sumset.hpp"

#include <algorithm>
#include <bit>

#include "randbasis/error.hpp"

namespace randbasis {

using word_type = BitVector::word_type;
constexpr unsigned kWordBits = BitVector::kWordBits;

namespace {

// Mask selecting bit positions [lo, hi] of a single word, 0 <= lo <= hi < 64.
constexpr word_type span_mask(unsigned lo, unsigned hi)
{
    word_type const upper = hi + 1 == kWordBits
                                ? ~word_type{0}
                                : (word_type{1} << (hi + 1)) - 1;
    return upper & (~word_type{0} << lo);
}

}  // namespace

std::uint64_t BitVector::count(std::uint64_t lo, std::uint64_t hi) const
{
    if (lo > hi)
        return 0;
    auto const wlo = lo / kWordBits;
    auto const whi = hi / kWordBits;
    auto const blo = static_cast<unsigned>(lo % kWordBits);
    auto const bhi = static_cast<unsigned>(hi % kWordBits);
    if (wlo == whi)
        return std::popcount(words_[wlo] & span_mask(blo, bhi));

    std::uint64_t total = std::popcount(words_[wlo] & span_mask(blo, 63));
    for (auto w = wlo + 1; w < whi; ++w)
        total += std::popcount(words_[w]);
    total += std::popcount(words_[whi] & span_mask(0, bhi));
    return total;
}

BitVector::word_type BitVector::extract(std::uint64_t pos) const
{
    auto const w = pos / kWordBits;
    auto const r = static_cast<unsigned>(pos % kWordBits);
    if (w >= words_.size())
        return 0;
    word_type result = words_[w] >> r;
    if (r != 0 && w + 1 < words_.size())
        result |= words_[w + 1] << (kWordBits - r);
    return result;
}

void BitVector::trim()
{
    auto const r = static_cast<unsigned>(bits_ % kWordBits);
    if (r != 0 && !words_.empty())
        words_.back() &= (word_type{1} << r) - 1;
}

void shift_or(std::span<word_type> dst, std::span<word_type const> src,
              std::uint64_t shift, std::size_t first_word)
{
    auto const q = static_cast<std::size_t>(shift / kWordBits);
    auto const r = static_cast<unsigned>(shift % kWordBits);
    if (q >= dst.size())
        return;
    std::size_t const end = std::min(src.size(), dst.size() - q);
    if (first_word >= end)
        return;

    word_type* __restrict out = dst.data() + q;
    word_type const* __restrict in = src.data();
    if (r == 0) {
        for (std::size_t i = first_word; i < end; ++i)
            out[i] |= in[i];
        return;
    }

    unsigned const l = kWordBits - r;
    out[first_word] |= in[first_word] << r;
    for (std::size_t i = first_word + 1; i < end; ++i)
        out[i] |= (in[i] << r) | (in[i - 1] >> l);
    if (end + q < dst.size())
        out[end] |= in[end - 1] >> l;
}

std::vector<std::uint64_t> SumBitmap::to_vector() const
{
    std::vector<std::uint64_t> result;
    auto const words = bits_.words();
    for (std::size_t w = 0; w < words.size(); ++w) {
        for (word_type bits = words[w]; bits != 0; bits &= bits - 1)
            result.push_back(w * kWordBits + std::countr_zero(bits));
    }
    return result;
}

namespace {

BitVector indicator(SampledSet const& set, std::uint64_t bits)
{
    BitVector v(bits);
    for (auto x : set.elements())
        v.set(x);
    return v;
}

void require_order(unsigned k)
{
    if (k < 1)
        throw ValidationError("k", "k must be at least 1");
}

}  // namespace

SumBitmap kfold_sumset(SampledSet const& set, unsigned k, std::uint64_t n)
{
    require_order(k);
    if (!set.empty() && set.elements().back() > n)
        throw ValidationError("set", "element exceeds n");

    BitVector current = indicator(set, n + 1);
    for (unsigned step = 1; step < k; ++step) {
        BitVector next((step + 1) * n + 1);
        for (auto a : set.elements()) {
            // First pass: the pair (x, a) with x < a was already produced
            // when the outer loop visited x, so start at a's word.
            std::size_t const first = step == 1 ? a / kWordBits : 0;
            shift_or(next.words(), current.words(), a, first);
        }
        current = std::move(next);
    }
    return SumBitmap(SumDomain::Range, k, n, std::move(current));
}

SumBitmap kfold_modular_sumset(SampledSet const& set, unsigned k,
                               std::uint64_t n)
{
    require_order(k);
    if (n == 0)
        throw ValidationError("n", "modulus must be positive");
    if (!set.empty() && set.elements().back() >= n)
        throw ValidationError("set", "element not a residue mod n");

    BitVector current = indicator(set, n);
    for (unsigned step = 1; step < k; ++step) {
        // Sums of a residue and an element are < 2n; fold the top half down.
        BitVector wide(2 * n);
        for (auto a : set.elements()) {
            std::size_t const first = step == 1 ? a / kWordBits : 0;
            shift_or(wide.words(), current.words(), a, first);
        }
        BitVector next(n);
        auto out = next.words();
        auto const low = wide.words();
        for (std::size_t w = 0; w < out.size(); ++w)
            out[w] = low[w] | wide.extract(n + w * kWordBits);
        next.trim();
        current = std::move(next);
    }
    return SumBitmap(SumDomain::Residues, k, n, std::move(current));
}

SumBitmap model_sumset(SampledSet const& set, Model const& model)
{
    if (model.mode == Mode::Modular)
        return kfold_modular_sumset(set, model.k, model.n);
    return kfold_sumset(set, model.k, model.n);
}

namespace {

void check_window(SumBitmap const& bitmap, std::uint64_t lo, std::uint64_t hi)
{
    if (lo > hi)
        throw ValidationError("window", "window lower bound exceeds upper");
    if (hi >= bitmap.size())
        throw ValidationError("window", "window exceeds bitmap domain");
}

}  // namespace

MissingReport missing_in_window(SumBitmap const& bitmap, std::uint64_t lo,
                                std::uint64_t hi)
{
    check_window(bitmap, lo, hi);
    MissingReport report;
    report.window = {lo, hi};
    auto const words = bitmap.bits().words();
    for (auto w = lo / kWordBits; w <= hi / kWordBits; ++w) {
        auto const base = w * kWordBits;
        unsigned const from = base < lo ? static_cast<unsigned>(lo - base) : 0;
        unsigned const to = base + 63 > hi ? static_cast<unsigned>(hi - base)
                                           : 63;
        for (word_type gaps = ~words[w] & span_mask(from, to); gaps != 0;
             gaps &= gaps - 1)
            report.missing.push_back(base + std::countr_zero(gaps));
    }
    report.x = report.missing.size();
    return report;
}

std::uint64_t count_missing(SumBitmap const& bitmap, std::uint64_t lo,
                            std::uint64_t hi)
{
    check_window(bitmap, lo, hi);
    return (hi - lo + 1) - bitmap.bits().count(lo, hi);
}

std::uint64_t missing_targets(SampledSet const& set, Model const& model)
{
    auto const window = target_window(model);
    return count_missing(model_sumset(set, model), window.lo, window.hi);
}

bool is_basis(SampledSet const& set, Model const& model)
{
    if (set.empty())
        return false;
    return missing_targets(set, model) == 0;
}

}  // namespace randbasis
