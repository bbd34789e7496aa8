// Copyright 2026 The randbasis Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "randbasis/rng.hpp"

namespace randbasis {

enum class Mode { Truncated, Modular };

std::string to_string(Mode mode);
Mode parse_mode(std::string const& text);

//! Every ground-set integer is kept independently with probability p.
struct Bernoulli
{
};

//! A uniformly random subset of exactly m ground-set integers.
struct FixedSize
{
    std::uint64_t m = 0;
};

using Sampling = std::variant<Bernoulli, FixedSize>;

/*!
 * Experiment configuration.
 *
 * Truncated mode draws from {0,...,n} and asks for every target in
 * [ceil(alpha n), floor((k - alpha) n)]; modular mode draws from
 * {0,...,n-1} and asks for every residue mod n. alpha is ignored in modular
 * mode.
 */
struct Model
{
    std::uint64_t n = 0;
    unsigned k = 2;
    double alpha = 0.5;
    double p = 0.0;
    Mode mode = Mode::Truncated;
    Sampling sampling = Bernoulli{};
};

//! Validate parameters and build a Model; throws ValidationError naming the
//! first offending field.
Model make_model(std::uint64_t n, unsigned k, double alpha, double p,
                 Mode mode, Sampling sampling = Bernoulli{});

//! n + 1 for truncated, n for modular.
std::uint64_t ground_size(std::uint64_t n, Mode mode);
inline std::uint64_t ground_size(Model const& m)
{
    return ground_size(m.n, m.mode);
}

//! Inclusive range of target integers.
struct Window
{
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;

    std::uint64_t size() const { return hi - lo + 1; }
    bool contains(std::uint64_t j) const { return lo <= j && j <= hi; }
};

//! ceil(alpha n) rounded up; integral products are taken as exact.
std::uint64_t ceil_times(double alpha, std::uint64_t n);
std::uint64_t floor_times(double alpha, std::uint64_t n);

//! Target window: [ceil(alpha n), floor((k - alpha) n)] or [0, n - 1].
Window target_window(std::uint64_t n, unsigned k, double alpha, Mode mode);
inline Window target_window(Model const& m)
{
    return target_window(m.n, m.k, m.alpha, m.mode);
}

enum class Ground { ZeroToN, ZeroToNMinus1 };

inline Ground ground_of(Mode mode)
{
    return mode == Mode::Truncated ? Ground::ZeroToN : Ground::ZeroToNMinus1;
}

//! Sorted, duplicate-free subset of a ground set.
class SampledSet
{
  public:
    SampledSet(Ground ground, std::uint64_t n) : ground_(ground), n_(n) {}

    //! Validates order, uniqueness and ground-set membership.
    SampledSet(Ground ground, std::uint64_t n,
               std::vector<std::uint64_t> elements);

    //! Full ground set.
    static SampledSet full(Ground ground, std::uint64_t n);

    std::span<std::uint64_t const> elements() const { return elements_; }
    std::size_t size() const { return elements_.size(); }
    bool empty() const { return elements_.empty(); }
    Ground ground() const { return ground_; }
    std::uint64_t n() const { return n_; }
    //! Largest admissible element plus one.
    std::uint64_t ground_size() const
    {
        return ground_ == Ground::ZeroToN ? n_ + 1 : n_;
    }
    bool contains(std::uint64_t x) const;

    friend bool operator==(SampledSet const&, SampledSet const&) = default;

  private:
    Ground ground_;
    std::uint64_t n_;
    std::vector<std::uint64_t> elements_;
};

SampledSet sample_bernoulli(Model const& model, Rng& rng);
SampledSet sample_fixed_size(Model const& model, Rng& rng);
//! Dispatches on model.sampling.
SampledSet sample(Model const& model, Rng& rng);

/*!
 * Shift parameterisation of a threshold curve.
 *
 * p^k = (K (log n - L log log n) + a_n) / n^(k-1), where L = 1 for
 * truncated bases and L = 0 for modular ones.
 */
struct ThresholdSpec
{
    double a_n = 0.0;
    double K = 1.0;
    bool loglog_term = true;
};

ThresholdSpec threshold_spec(unsigned k, double alpha, double a_n, Mode mode);

//! Threshold probability for shift a_n, clamped to [0,1]. Requires n >= 3.
double threshold_p(std::uint64_t n, unsigned k, double alpha, double a_n,
                   Mode mode);

//! Limiting P(basis) as the shift converges to a.
double limit_basis_prob(unsigned k, double alpha, double a, Mode mode);

}  // namespace randbasis
