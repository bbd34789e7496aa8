// Copyright 2026 The randbasis Authors.
// SPDX-License-Identifier: Apache-2.0
#include "randbasis/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "randbasis/error.hpp"

namespace randbasis {

std::string to_string(Mode mode)
{
    return mode == Mode::Truncated ? "truncated" : "modular";
}

Mode parse_mode(std::string const& text)
{
    if (text == "truncated")
        return Mode::Truncated;
    if (text == "modular")
        return Mode::Modular;
    throw ValidationError("mode", "unknown mode '" + text + "'");
}

Model make_model(std::uint64_t n, unsigned k, double alpha, double p,
                 Mode mode, Sampling sampling)
{
    if (n == 0)
        throw ValidationError("n", "n must be positive");
    if (k < 2)
        throw ValidationError("k", "k must be at least 2");
    if (n < k)
        throw ValidationError("n", "n must be at least k");
    if (mode == Mode::Truncated && !(alpha > 0.0 && alpha < 1.0))
        throw ValidationError("alpha", "alpha out of (0,1)");
    if (!(p >= 0.0 && p <= 1.0))
        throw ValidationError("p", "p out of [0,1]");
    if (auto const* fixed = std::get_if<FixedSize>(&sampling)) {
        auto const ground = ground_size(n, mode);
        if (fixed->m > ground)
            throw ValidationError("m", "fixed size exceeds ground set of "
                                           + std::to_string(ground));
    }
    return Model{n, k, alpha, p, mode, sampling};
}

std::uint64_t ground_size(std::uint64_t n, Mode mode)
{
    return mode == Mode::Truncated ? n + 1 : n;
}

namespace {

// alpha * n is usually meant to be exact when it lands within rounding noise
// of an integer (0.3 * 10 evaluates to 3.0000000000000004).
bool near_integer(double x, double& rounded)
{
    rounded = std::nearbyint(x);
    return std::abs(x - rounded) <= 1e-9 * std::max(1.0, std::abs(x));
}

}  // namespace

std::uint64_t ceil_times(double alpha, std::uint64_t n)
{
    double const x = alpha * static_cast<double>(n);
    double r;
    return static_cast<std::uint64_t>(near_integer(x, r) ? r : std::ceil(x));
}

std::uint64_t floor_times(double alpha, std::uint64_t n)
{
    double const x = alpha * static_cast<double>(n);
    double r;
    return static_cast<std::uint64_t>(near_integer(x, r) ? r : std::floor(x));
}

Window target_window(std::uint64_t n, unsigned k, double alpha, Mode mode)
{
    if (mode == Mode::Modular)
        return {0, n - 1};
    return {ceil_times(alpha, n), floor_times(k - alpha, n)};
}

SampledSet::SampledSet(Ground ground, std::uint64_t n,
                       std::vector<std::uint64_t> elements)
    : ground_(ground), n_(n), elements_(std::move(elements))
{
    for (std::size_t i = 0; i < elements_.size(); ++i) {
        if (elements_[i] >= ground_size())
            throw ValidationError("elements", "element "
                                                  + std::to_string(elements_[i])
                                                  + " outside ground set");
        if (i > 0 && elements_[i] <= elements_[i - 1])
            throw ValidationError("elements",
                                  "elements must be strictly increasing");
    }
}

SampledSet SampledSet::full(Ground ground, std::uint64_t n)
{
    SampledSet result(ground, n);
    result.elements_.resize(result.ground_size());
    std::iota(result.elements_.begin(), result.elements_.end(),
              std::uint64_t{0});
    return result;
}

bool SampledSet::contains(std::uint64_t x) const
{
    return std::binary_search(elements_.begin(), elements_.end(), x);
}

SampledSet sample_bernoulli(Model const& model, Rng& rng)
{
    auto const ground = ground_of(model.mode);
    auto const size = ground_size(model);
    if (model.p <= 0.0)
        return SampledSet(ground, model.n);
    if (model.p >= 1.0)
        return SampledSet::full(ground, model.n);

    // Geometric gaps between successive kept integers.
    std::geometric_distribution<std::uint64_t> gap(model.p);
    std::vector<std::uint64_t> kept;
    kept.reserve(static_cast<std::size_t>(1.2 * model.p * size) + 16);
    std::uint64_t next = 0;
    while (true) {
        next += gap(rng);
        if (next >= size)
            break;
        kept.push_back(next++);
    }
    return SampledSet(ground, model.n, std::move(kept));
}

SampledSet sample_fixed_size(Model const& model, Rng& rng)
{
    auto const* fixed = std::get_if<FixedSize>(&model.sampling);
    auto const ground = ground_of(model.mode);
    auto const size = ground_size(model);
    std::uint64_t const m = fixed ? fixed->m : 0;
    if (m > size)
        throw ValidationError("m", "fixed size exceeds ground set of "
                                       + std::to_string(size));

    // Floyd's algorithm: one uniform draw per chosen element.
    std::vector<bool> chosen(size, false);
    std::vector<std::uint64_t> picked;
    picked.reserve(m);
    for (std::uint64_t top = size - m; top < size; ++top) {
        std::uniform_int_distribution<std::uint64_t> pick(0, top);
        auto t = pick(rng);
        if (chosen[t])
            t = top;
        chosen[t] = true;
        picked.push_back(t);
    }
    std::sort(picked.begin(), picked.end());
    return SampledSet(ground, model.n, std::move(picked));
}

SampledSet sample(Model const& model, Rng& rng)
{
    if (std::holds_alternative<FixedSize>(model.sampling))
        return sample_fixed_size(model, rng);
    return sample_bernoulli(model, rng);
}

ThresholdSpec threshold_spec(unsigned k, double alpha, double a_n, Mode mode)
{
    double const kfact = std::tgamma(k + 1.0);
    if (mode == Mode::Modular)
        return {a_n, kfact, false};
    double const km1fact = std::tgamma(static_cast<double>(k));
    return {a_n, kfact * km1fact / std::pow(alpha, k - 1.0), true};
}

double threshold_p(std::uint64_t n, unsigned k, double alpha, double a_n,
                   Mode mode)
{
    if (n < 3)
        throw ValidationError("n", "threshold needs n >= 3");
    if (k < 2)
        throw ValidationError("k", "k must be at least 2");
    if (mode == Mode::Truncated && !(alpha > 0.0 && alpha < 1.0))
        throw ValidationError("alpha", "alpha out of (0,1)");

    auto const spec = threshold_spec(k, alpha, a_n, mode);
    double const logn = std::log(static_cast<double>(n));
    double const shift = spec.loglog_term ? std::log(logn) : 0.0;
    double const radicand = spec.K * (logn - shift) + spec.a_n;
    if (!(radicand > 0.0))
        throw ValidationError("a_n", "below expressible threshold");

    double const pk = radicand / std::pow(static_cast<double>(n), k - 1.0);
    return std::clamp(std::pow(pk, 1.0 / k), 0.0, 1.0);
}

double limit_basis_prob(unsigned k, double alpha, double a, Mode mode)
{
    auto const spec = threshold_spec(k, alpha, a, mode);
    if (mode == Mode::Modular)
        return std::exp(-std::exp(-a / spec.K));
    return std::exp(-(2.0 * alpha / (k - 1.0)) * std::exp(-a / spec.K));
}

}  // namespace randbasis
