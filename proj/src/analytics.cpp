// Copyright 2026 The randbasis Authors.
// SPDX-License-Identifier: Apache-2.0
#include "randbasis/analytics.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "randbasis/counting.hpp"
#include "randbasis/error.hpp"

namespace randbasis {
namespace {

// Neumaier's variant of Kahan summation.
class CompensatedSum
{
  public:
    void add(double x)
    {
        double const t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            compensation_ += (sum_ - t) + x;
        else
            compensation_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + compensation_; }

  private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

void require_probability(double p)
{
    if (!(p >= 0.0 && p <= 1.0))
        throw ValidationError("p", "p out of [0,1]");
}

void require_alpha(double alpha)
{
    if (!(alpha > 0.0 && alpha < 1.0))
        throw ValidationError("alpha", "alpha out of (0,1)");
}

double factorial(unsigned k)
{
    return std::tgamma(k + 1.0);
}

}  // namespace

PoissonModel::PoissonModel(double lambda) : lambda_(lambda)
{
    if (!(lambda >= 0.0) || std::isinf(lambda))
        throw ValidationError("lambda", "lambda must be finite and >= 0");
}

double PoissonModel::pmf(std::uint64_t v) const
{
    if (lambda_ == 0.0)
        return v == 0 ? 1.0 : 0.0;
    double const x = static_cast<double>(v);
    return std::exp(x * std::log(lambda_) - lambda_ - std::lgamma(x + 1.0));
}

double PoissonModel::tail_above(std::uint64_t v) const
{
    if (lambda_ == 0.0)
        return 0.0;
    // P(Y <= v) = Q(v + 1, lambda), so P(Y > v) = P(v + 1, lambda).
    return boost::math::gamma_p(static_cast<double>(v) + 1.0, lambda_);
}

std::uint64_t PoissonModel::support_bound() const
{
    auto v = static_cast<std::uint64_t>(lambda_);
    while (tail_above(v) >= 1e-12)
        ++v;
    return v;
}

double pow_one_minus(double q, double count)
{
    if (count == 0.0)
        return 1.0;
    return std::exp(count * std::log1p(-q));
}

double exact_missing_prob_k2(std::uint64_t j, std::uint64_t n, double p,
                             Mode mode)
{
    require_probability(p);
    if (mode == Mode::Truncated) {
        if (j > 2 * n)
            throw ValidationError("j", "target outside [0, 2n]");
        // Off-diagonal pairs {x, j - x} with max(0, j - n) <= x < j/2.
        std::uint64_t const low = j > n ? j - n : 0;
        std::uint64_t const half = (j + 1) / 2;
        std::uint64_t const pairs = half > low ? half - low : 0;
        bool const diagonal = j % 2 == 0 && j / 2 <= n;
        return pow_one_minus(p * p, static_cast<double>(pairs))
               * pow_one_minus(p, diagonal ? 1.0 : 0.0);
    }

    if (n == 0 || j >= n)
        throw ValidationError("j", "target outside [0, n)");
    // Solutions of 2x = j (mod n).
    std::uint64_t const fixed = n % 2 == 1 ? 1 : (j % 2 == 0 ? 2 : 0);
    return pow_one_minus(p * p, static_cast<double>((n - fixed) / 2))
           * pow_one_minus(p, static_cast<double>(fixed));
}

double exact_mean_missing_k2(std::uint64_t n, double p, double alpha,
                             Mode mode)
{
    require_probability(p);
    if (mode == Mode::Truncated)
        require_alpha(alpha);
    auto const window = target_window(n, 2, alpha, mode);
    CompensatedSum sum;
    for (auto j = window.lo; j <= window.hi; ++j)
        sum.add(exact_missing_prob_k2(j, n, p, mode));
    return sum.value();
}

double asympt_mean_missing(std::uint64_t n, double p, double alpha, unsigned k,
                           Mode mode)
{
    if (!(p > 0.0 && p <= 1.0))
        throw ValidationError("p", "asymptotic mean is singular at p = 0");
    if (k < 2)
        throw ValidationError("k", "k must be at least 2");
    double const nd = static_cast<double>(n);
    double const logn = std::log(nd);
    double const logp = std::log(p);

    if (mode == Mode::Modular) {
        double const exponent = std::exp((k - 1.0) * logn + k * logp)
                                / factorial(k);
        return nd * std::exp(-exponent);
    }

    require_alpha(alpha);
    if (k == 2)
        return 4.0 / (p * p) * std::exp(-nd * p * p * alpha / 2.0);

    double const scale = 2.0 * factorial(k - 2) * factorial(k);
    double const log_prefactor = std::log(scale)
                                 - (k - 2.0) * (std::log(alpha) + logn)
                                 - k * logp;
    double const exponent = std::exp((k - 1.0) * (std::log(alpha) + logn)
                                     + k * logp)
                            / (factorial(k - 1) * factorial(k));
    return std::exp(log_prefactor - exponent);
}

double pair_geometric_sum(std::uint64_t n, double p, double alpha)
{
    require_alpha(alpha);
    require_probability(p);
    auto const lo = ceil_times(alpha, n);
    if (lo > n)
        return 0.0;
    double const terms = static_cast<double>(n - lo + 1);
    if (p == 0.0)
        return 2.0 * terms;
    if (p == 1.0)
        return lo == 0 ? 2.0 : 0.0;
    // 2 r^lo (1 - r^terms) / (1 - r) with r = sqrt(1 - p^2).
    double const half_log = 0.5 * std::log1p(-p * p);
    double const r = std::sqrt(1.0 - p * p);
    double const one_minus_r = p * p / (1.0 + r);
    return 2.0 * std::exp(static_cast<double>(lo) * half_log)
           * -std::expm1(terms * half_log) / one_minus_r;
}

double pair_geometric_upper(std::uint64_t n, double p, double alpha)
{
    if (!(p > 0.0))
        throw ValidationError("p", "bound is singular at p = 0");
    return 4.0 / (p * p)
           * std::exp(-static_cast<double>(n) * p * p * alpha / 2.0);
}

double janson_lower_missing_prob(std::int64_t j, unsigned k, std::uint64_t n,
                                 double p)
{
    require_probability(p);
    auto const counts = count_by_distinct(j, k, n);
    double log_prob = 0.0;
    for (unsigned d = 1; d <= k; ++d) {
        auto const c = counts.by_distinct[d - 1].convert_to<double>();
        if (c == 0.0)
            continue;
        double const pd = std::pow(p, static_cast<double>(d));
        if (pd >= 1.0)
            return 0.0;
        log_prob += c * std::log1p(-pd);
    }
    return std::exp(log_prob);
}

PsiTail psi_tail(double t, unsigned k, double c)
{
    if (k < 3)
        throw ValidationError("k", "tail bound needs k >= 3");
    if (!(t > 0.0))
        throw ValidationError("t", "t must be positive");
    if (!(c > 0.0))
        throw ValidationError("c", "c must be positive");

    double const power = k - 1.0;
    double const t_power = std::pow(t, power);
    // Integrand and bound divided by exp(-c t^(k-1)).
    auto scaled = [&](double x) {
        return std::exp(-c * (std::pow(x, power) - t_power));
    };
    auto scaled_bound = [&](double x) {
        return scaled(x) / (c * power * std::pow(x, power - 1.0));
    };

    using Rule = boost::math::quadrature::gauss_kronrod<double, 15>;
    double const upper_scaled = scaled_bound(t);
    double integral = 0.0;
    double a = t;
    double length = upper_scaled;
    // Double the interval until the tail past its end, bounded by the same
    // inequality evaluated there, is negligible.
    for (int iteration = 0; iteration < 200; ++iteration) {
        double const b = a + length;
        integral += Rule::integrate(scaled, a, b, 8, 1e-13);
        if (scaled_bound(b) <= 1e-10 * integral)
            break;
        a = b;
        length *= 2.0;
    }

    double const factor = std::exp(-c * t_power);
    return {integral * factor, upper_scaled * factor, integral / upper_scaled};
}

SteinChenDiagnostics stein_chen_diagnostics(std::uint64_t n, double p,
                                            double alpha)
{
    if (!(p > 0.0 && p < 1.0))
        throw ValidationError("p", "p out of (0,1)");
    require_alpha(alpha);

    SteinChenDiagnostics d;
    d.c_p = 2.0 * p + 2.0 * p * p * p + p * p;
    double const p2 = p * p;
    double const log_plain = std::log1p(-p2);
    double const log_coupled = std::log1p(-p2 + p2 * d.c_p);

    auto const window = target_window(n, 2, alpha, Mode::Truncated);
    CompensatedSum sigma1;
    CompensatedSum sigma2;
    for (auto i = window.lo; i <= window.hi; ++i) {
        // f(i) - 1 with f(i) = ceil((i + 1) / 2).
        double const m = static_cast<double>((i + 2) / 2 - 1);
        double const coupled = std::exp(m * log_coupled);
        // coupled^m - plain^m without cancellation.
        sigma1.add(std::exp(m * log_plain)
                   * std::expm1(m * (log_coupled - log_plain)));
        sigma2.add(coupled);
    }
    d.sigma1 = (1.0 - p) * sigma1.value();
    d.sigma2 = d.c_p * p * sigma2.value();
    d.max_term = exact_missing_prob_k2(window.lo, n, p, Mode::Truncated);
    d.tv_bound = d.sigma1 + d.sigma2 + d.max_term;
    return d;
}

double poisson_window_p(std::uint64_t n, double alpha, double delta)
{
    require_alpha(alpha);
    double const nd = static_cast<double>(n);
    return std::sqrt((1.0 / alpha + delta) * std::log(nd) / nd);
}

}  // namespace randbasis
