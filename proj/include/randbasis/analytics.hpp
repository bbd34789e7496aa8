// Copyright 2026 The randbasis Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "randbasis/model.hpp"

namespace randbasis {

//! Po(lambda) masses.
class PoissonModel
{
  public:
    explicit PoissonModel(double lambda);

    double lambda() const { return lambda_; }
    double pmf(std::uint64_t v) const;
    //! P(Y > v).
    double tail_above(std::uint64_t v) const;
    //! Smallest v with P(Y > v) < 1e-12.
    std::uint64_t support_bound() const;

  private:
    double lambda_;
};

//! (1 - q)^count evaluated through log1p; 0^0 is 1.
double pow_one_minus(double q, double count);

//! Exact P(target j has no 2-sum representation), k = 2.
double exact_missing_prob_k2(std::uint64_t j, std::uint64_t n, double p,
                             Mode mode);

//! E(X) for k = 2: exact per-target probabilities summed over the window
//! (truncated) or all residues (modular).
double exact_mean_missing_k2(std::uint64_t n, double p, double alpha,
                             Mode mode);

//! Leading-order E(X) for general k.
double asympt_mean_missing(std::uint64_t n, double p, double alpha, unsigned k,
                           Mode mode);

//! The k = 2 geometric sum 2 * sum_{j=ceil(alpha n)}^{n} (1-p^2)^{j/2}.
double pair_geometric_sum(std::uint64_t n, double p, double alpha);

//! Its exponential upper bound (4/p^2) exp(-n p^2 alpha / 2).
double pair_geometric_upper(std::uint64_t n, double p, double alpha);

/*!
 * Product lower bound on P(I_j = 1) for general k.
 *
 * prod_{d=1..k} (1 - p^d)^{c_d(j)} where c_d counts multisets with d distinct
 * values summing to j. The representation events are increasing, so by the
 * Harris-FKG inequality their complements are positively correlated and the
 * product never exceeds the true probability.
 */
double janson_lower_missing_prob(std::int64_t j, unsigned k, std::uint64_t n,
                                 double p);

struct PsiTail
{
    //! Numerical integral of exp(-c x^(k-1)) over [t, inf).
    double quadrature = 0.0;
    //! exp(-c t^(k-1)) / (c (k-1) t^(k-2)).
    double upper = 0.0;
    //! quadrature / upper, computed on the rescaled integrand so it survives
    //! underflow of both factors.
    double ratio = 0.0;
};

PsiTail psi_tail(double t, unsigned k, double c);

struct SteinChenDiagnostics
{
    double c_p = 0.0;
    double sigma1 = 0.0;
    double sigma2 = 0.0;
    double max_term = 0.0;
    double tv_bound = 0.0;
};

/*!
 * Total-variation bound terms for the truncated k = 2 coupling.
 *
 * sigma1 and sigma2 are summed over the full window instead of maximised
 * over the excluded target; the summand does not depend on that target, so
 * the full sum upper-bounds the max.
 */
SteinChenDiagnostics stein_chen_diagnostics(std::uint64_t n, double p,
                                            double alpha);

//! p = sqrt((1/alpha + delta) log n / n), the lower edge of the
//! total-variation window for truncated k = 2.
double poisson_window_p(std::uint64_t n, double alpha, double delta);

}  // namespace randbasis
