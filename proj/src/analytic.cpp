#include "burstkit/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "burstkit/errors.hpp"

namespace burstkit {

namespace {

std::size_t initial_support(double nu) {
    return static_cast<std::size_t>(std::ceil(nu + 10.0 * std::sqrt(nu) + 50.0));
}

// Running log of nu^n / n! * (num)_n / (den)_n.
class LogCoefficient {
public:
    LogCoefficient(double nu, double num, double den) : log_nu_(std::log(nu)), num_(num), den_(den) {}

    double at(std::size_t n) {
        while (n_ < n) {
            const double k = static_cast<double>(n_);
            value_ += log_nu_ + std::log((num_ + k) / ((den_ + k) * (k + 1.0)));
            ++n_;
        }
        return value_;
    }

private:
    double log_nu_;
    double num_;
    double den_;
    double value_ = 0.0;
    std::size_t n_ = 0;
};

double tail_bound(double last_prob, double nu, std::size_t n_max) {
    const double ratio = nu / static_cast<double>(n_max + 1);
    if (ratio >= 1.0) return 1.0;
    return last_prob * ratio / (1.0 - ratio);
}

struct Terms {
    std::vector<double> p0;
    std::vector<double> p1;
    std::vector<double> marginal;
    double tail = 0.0;
};

// Fills the requested vectors until the tail of the marginal is below tol.
Terms evaluate(const BinaryParams& params, const AnalyticOptions& options, bool joint) {
    validate(params);
    if (!(options.tail_tol > 0.0 && options.tail_tol <= 1e-6)) {
        throw ValidationError("tail_tol must lie in (0, 1e-6]");
    }
    const double a = params.a;
    const double b = params.b;
    const double nu = params.nu;
    const double z = -nu * params.theta;
    const double log_c = normalization_constant(params, options.kummer).log_magnitude;
    Terms out;

    if (nu == 0.0) {
        out.marginal = {1.0};
        if (joint) {
            out.p0 = {(b - a) / b};
            out.p1 = {a / b};
        }
        return out;
    }

    LogCoefficient marginal_coef(nu, a, b);
    LogCoefficient off_coef(nu, a, 1.0 + b);
    LogCoefficient on_coef(nu, 1.0 + a, 1.0 + b);
    const double log_off_prefactor = std::log((b - a) / b);
    const double log_on_prefactor = std::log(a / b);

    std::size_t target = initial_support(nu);
    for (;;) {
        if (target > options.n_max_cap) {
            throw NumericalError("steady-state support would exceed n_max cap of " +
                                 std::to_string(options.n_max_cap));
        }
        for (std::size_t n = out.marginal.size(); n <= target; ++n) {
            const double nd = static_cast<double>(n);
            const LogScaledValue m = kummer_m(a + nd, b + nd, z, options.kummer);
            out.marginal.push_back(
                std::exp(marginal_coef.at(n) + m.log_magnitude - log_c));
            if (!joint) continue;
            if (b > a) {
                const LogScaledValue m0 = kummer_m(a + nd, 1.0 + b + nd, z, options.kummer);
                out.p0.push_back(
                    std::exp(log_off_prefactor + off_coef.at(n) + m0.log_magnitude - log_c));
            } else {
                out.p0.push_back(0.0);
            }
            const LogScaledValue m1 = kummer_m(1.0 + a + nd, 1.0 + b + nd, z, options.kummer);
            out.p1.push_back(
                std::exp(log_on_prefactor + on_coef.at(n) + m1.log_magnitude - log_c));
        }
        out.tail = tail_bound(out.marginal.back(), nu, target);
        if (out.tail <= options.tail_tol) return out;
        target += std::max<std::size_t>(target / 2, 1);
    }
}

}  // namespace

LogScaledValue normalization_constant(const BinaryParams& params, const KummerOptions& kummer) {
    validate(params);
    if (params.theta == 1.0) return LogScaledValue::one();
    return kummer_m(params.a, params.b, params.nu * (1.0 - params.theta), kummer);
}

JointSteadyState steady_state(const BinaryParams& params, const AnalyticOptions& options) {
    Terms terms = evaluate(params, options, true);
    DiscreteDistribution marginal(std::move(terms.marginal), terms.tail);
    return {std::move(terms.p0), std::move(terms.p1), std::move(marginal)};
}

DiscreteDistribution steady_state_marginal(const BinaryParams& params,
                                           const AnalyticOptions& options) {
    Terms terms = evaluate(params, options, false);
    return DiscreteDistribution(std::move(terms.marginal), terms.tail);
}

double p_on(const BinaryParams& params, const KummerOptions& kummer) {
    validate(params);
    if (params.theta == 1.0) return params.a / params.b;
    const double z = params.nu * (1.0 - params.theta);
    const LogScaledValue c = kummer_m(params.a, params.b, z, kummer);
    const LogScaledValue m = kummer_m(params.a + 1.0, params.b + 1.0, z, kummer);
    return std::exp(std::log(params.a / params.b) + m.log_magnitude - c.log_magnitude);
}

double mean_protein(const BinaryParams& params, const KummerOptions& kummer) {
    return p_on(params, kummer) * params.nu;
}

double fano_external(const BinaryParams& params) {
    validate(params);
    const double a = params.a;
    const double b = params.b;
    return 1.0 + params.nu / b * (1.0 - a / b) / (1.0 + 1.0 / b);
}

double fano(const BinaryParams& params, const KummerOptions& kummer) {
    validate(params);
    const double a = params.a;
    const double b = params.b;
    const double nu = params.nu;
    if (nu == 0.0) return 1.0;
    const double z = nu * (1.0 - params.theta);
    const LogScaledValue m0 = kummer_m(a, b, z, kummer);
    const LogScaledValue m1 = kummer_m(a + 1.0, b + 1.0, z, kummer);
    const LogScaledValue m2 = kummer_m(a + 2.0, b + 2.0, z, kummer);
    const double raised = nu * (a + 1.0) / (b + 1.0) * (m2 / m1).value();
    const double lowered = nu * a / b * (m1 / m0).value();
    const double value = 1.0 + raised - lowered;

    if (params.theta == 1.0) {
        const double external = fano_external(params);
        // rounding in `raised - lowered` scales with the larger term
        const double scale = std::max({std::abs(external), raised, lowered});
        if (std::abs(value - external) > 1e-12 * scale) {
            throw NumericalError("Fano factor disagrees with the external-regulation form: " +
                                 std::to_string(value) + " vs " + std::to_string(external));
        }
    }
    return value;
}

DiscreteDistribution negative_binomial(double a, double delta, double theta, double tail_tol) {
    if (!(a > 0.0) || !std::isfinite(a)) throw ValidationError("negative binomial needs a > 0");
    if (!(delta >= 0.0) || !std::isfinite(delta)) {
        throw ValidationError("negative binomial needs delta >= 0");
    }
    if (!(theta > 0.0 && theta <= 1.0)) throw ValidationError("theta must lie in (0, 1]");
    if (!(tail_tol > 0.0 && tail_tol <= 1e-6)) throw ValidationError("tail_tol must lie in (0, 1e-6]");
    const double base = (1.0 + delta * (theta - 1.0)) / (1.0 + delta * theta);
    if (!(1.0 + delta * (theta - 1.0) > 0.0)) {
        throw ValidationError("negative binomial needs 1 + delta (theta - 1) > 0");
    }
    if (delta == 0.0) return point_mass(0);
    const double q = delta / (1.0 + delta * theta);

    std::vector<double> probs;
    double log_p = a * std::log(base);
    for (std::size_t n = 0;; ++n) {
        const double nd = static_cast<double>(n);
        if (n > 0) log_p += std::log(q * (a + nd - 1.0) / nd);
        probs.push_back(std::exp(log_p));
        // ratios approach q monotonically, from above when a >= 1
        const double ratio = std::max(q, q * (a + nd) / (nd + 1.0));
        if (ratio < 1.0) {
            const double tail = probs.back() * ratio / (1.0 - ratio);
            if (tail <= tail_tol) return DiscreteDistribution(std::move(probs), tail);
        }
        if (n > 100'000'000) throw NumericalError("negative binomial support exceeds cap");
    }
}

double stationary_switch_frequency(const BinaryParams& params) {
    return switch_off_rate(params) * p_on(params);
}

}  // namespace burstkit
