#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace burstkit {

// Probability vector over protein count n = 0..n_max plus a bound on the
// mass that lies beyond n_max. Immutable after construction.
class DiscreteDistribution {
public:
    static constexpr double kNormalizationTolerance = 1e-9;

    // Throws NumericalError if any entry is negative or non-finite, or if
    // sum(probs) + tail_mass_bound is off 1 by more than 1e-9.
    DiscreteDistribution(std::vector<double> probs, double tail_mass_bound);

    std::span<const double> probs() const { return probs_; }
    double operator[](std::size_t n) const { return n < probs_.size() ? probs_[n] : 0.0; }
    std::size_t size() const { return probs_.size(); }
    std::size_t n_max() const { return probs_.size() - 1; }
    double tail_mass_bound() const { return tail_mass_bound_; }

    double total() const;
    double mean() const;
    double variance() const;
    // Variance over mean; 1 by convention when the mean is 0.
    double fano() const;

private:
    std::vector<double> probs_;
    double tail_mass_bound_;
};

// Gene-state resolved steady state: p0 (off / no mRNA), p1 (on / one mRNA).
struct JointSteadyState {
    std::vector<double> p0;
    std::vector<double> p1;
    DiscreteDistribution marginal;
};

DiscreteDistribution point_mass(std::size_t n);

// Poisson(mean) truncated once the tail bound drops below tail_tol.
DiscreteDistribution poisson(double mean, double tail_tol = 1e-10);

// Half the L1 distance over the union support; the two truncated tails are
// treated as mass at a common point beyond both supports. Clamped to [0, 1].
double tv_distance(const DiscreteDistribution& lhs, const DiscreteDistribution& rhs);

}  // namespace burstkit
