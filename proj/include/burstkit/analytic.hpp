#pragma once

// Exact steady state of the binary-gene model, its moments, and the
// negative-binomial limit b, nu -> infinity with delta = nu / b fixed.

#include <cstddef>

#include "burstkit/distribution.hpp"
#include "burstkit/kummer.hpp"
#include "burstkit/params.hpp"

namespace burstkit {

struct AnalyticOptions {
    double tail_tol = 1e-10;
    std::size_t n_max_cap = 1'000'000;
    KummerOptions kummer{};
};

// C = M(a, b, nu (1 - theta)); exactly 1 when theta == 1.
LogScaledValue normalization_constant(const BinaryParams& params,
                                      const KummerOptions& kummer = {});

// Evaluates P0n, P1n and Pn term by term in log space. The support starts at
// ceil(nu + 10 sqrt(nu) + 50) and grows by half until the tail bound, which
// uses P(n+1)/P(n) <= nu/(n+1), is at most tail_tol.
JointSteadyState steady_state(const BinaryParams& params, const AnalyticOptions& options = {});
// Only the marginal Pn, for callers that do not need the gene state.
DiscreteDistribution steady_state_marginal(const BinaryParams& params,
                                           const AnalyticOptions& options = {});

// Stationary probability of the on state (one mRNA present).
double p_on(const BinaryParams& params, const KummerOptions& kummer = {});
double mean_protein(const BinaryParams& params, const KummerOptions& kummer = {});
// Variance over mean from the Kummer-ratio closed form. For theta == 1 the
// result is checked against 1 + (nu/b)(1 - a/b)/(1 + 1/b). nu == 0 gives 1 by
// convention (the ratio is 0/0 there).
double fano(const BinaryParams& params, const KummerOptions& kummer = {});
// 1 + (nu/b)(1 - a/b)/(1 + 1/b), the theta == 1 specialization.
double fano_external(const BinaryParams& params);

// P(n) = (a)_n / n! (delta/(1+delta theta))^n ((1+delta(theta-1))/(1+delta theta))^a.
// theta == 1 is the ordinary negative binomial with mean a delta.
DiscreteDistribution negative_binomial(double a, double delta, double theta,
                                       double tail_tol = 1e-10);

// Rate of off->on switches in the stationary state, equal to the on->off flux
// gamma p1 = ((b - a)/theta) p1.
double stationary_switch_frequency(const BinaryParams& params);

}  // namespace burstkit
