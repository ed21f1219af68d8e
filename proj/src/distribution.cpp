#include "burstkit/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "burstkit/errors.hpp"

namespace burstkit {

DiscreteDistribution::DiscreteDistribution(std::vector<double> probs, double tail_mass_bound)
    : probs_(std::move(probs)), tail_mass_bound_(tail_mass_bound) {
    if (probs_.empty()) throw NumericalError("distribution must have at least one entry");
    if (!(tail_mass_bound_ >= 0.0) || !std::isfinite(tail_mass_bound_)) {
        throw NumericalError("tail mass bound must be finite and >= 0");
    }
    for (double p : probs_) {
        if (!(p >= 0.0) || !std::isfinite(p)) {
            throw NumericalError("distribution entries must be finite and >= 0");
        }
    }
    const double mass = total() + tail_mass_bound_;
    if (std::abs(mass - 1.0) > kNormalizationTolerance) {
        throw NumericalError("distribution is not normalized: total mass " +
                             std::to_string(mass));
    }
}

double DiscreteDistribution::total() const {
    double sum = 0.0;
    for (double p : probs_) sum += p;
    return sum;
}

double DiscreteDistribution::mean() const {
    double sum = 0.0;
    for (std::size_t n = 0; n < probs_.size(); ++n) sum += static_cast<double>(n) * probs_[n];
    return sum / total();
}

double DiscreteDistribution::variance() const {
    const double m = mean();
    double sum = 0.0;
    for (std::size_t n = 0; n < probs_.size(); ++n) {
        const double d = static_cast<double>(n) - m;
        sum += d * d * probs_[n];
    }
    return sum / total();
}

double DiscreteDistribution::fano() const {
    const double m = mean();
    if (m == 0.0) return 1.0;
    return variance() / m;
}

DiscreteDistribution point_mass(std::size_t n) {
    std::vector<double> probs(n + 1, 0.0);
    probs[n] = 1.0;
    return DiscreteDistribution(std::move(probs), 0.0);
}

DiscreteDistribution poisson(double mean, double tail_tol) {
    if (!(mean >= 0.0) || !std::isfinite(mean)) throw ValidationError("Poisson mean must be >= 0");
    if (mean == 0.0) return point_mass(0);
    std::vector<double> probs;
    double log_p = -mean;
    for (std::size_t n = 0;; ++n) {
        if (n > 0) log_p += std::log(mean / static_cast<double>(n));
        probs.push_back(std::exp(log_p));
        // P(n+1)/P(n) = mean/(n+1), non-increasing from here on
        const double ratio = mean / static_cast<double>(n + 1);
        if (ratio < 1.0) {
            const double tail = probs.back() * ratio / (1.0 - ratio);
            if (tail <= tail_tol) return DiscreteDistribution(std::move(probs), tail);
        }
        if (n > 100'000'000) throw NumericalError("Poisson support exceeds cap");
    }
}

double tv_distance(const DiscreteDistribution& lhs, const DiscreteDistribution& rhs) {
    const std::size_t support = std::max(lhs.size(), rhs.size());
    double sum = 0.0;
    for (std::size_t n = 0; n < support; ++n) sum += std::abs(lhs[n] - rhs[n]);
    sum += std::abs(lhs.tail_mass_bound() - rhs.tail_mass_bound());
    return std::clamp(0.5 * sum, 0.0, 1.0);
}

}  // namespace burstkit
