#include "burstkit/kummer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "burstkit/errors.hpp"

namespace burstkit {

namespace {

constexpr double kRescale = 1e280;
const double kLogRescale = std::log(kRescale);

bool is_nonpositive_integer(double x) { return x <= 0.0 && std::floor(x) == x; }

// Smallest index beyond which the term ratio |(alpha+k) x / ((beta+k)(k+1))|
// stays below one: the largest root of (beta+k)(k+1) - x (alpha+k).
double ratio_below_one_from(double alpha, double beta, double x) {
    const double p = beta + 1.0 - x;
    const double q = beta - x * alpha;
    const double disc = p * p - 4.0 * q;
    double root = 0.0;
    if (disc >= 0.0) root = 0.5 * (-p + std::sqrt(disc));
    if (alpha < 0.0) root = std::max(root, -alpha);
    return std::max(root, 0.0);
}

// Sums sum_k (alpha)_k x^k / ((beta)_k k!) with periodic rescaling.
KummerResult sum_series(double alpha, double beta, double x, const KummerOptions& options,
                        KummerPath path) {
    double term = 1.0;
    double sum = 1.0;
    double log_scale = 0.0;
    int small_run = 0;
    const double guard = ratio_below_one_from(alpha, beta, std::abs(x));
    std::int64_t k = 0;
    for (; k < options.max_terms; ++k) {
        const double kd = static_cast<double>(k);
        term *= (alpha + kd) * x / ((beta + kd) * (kd + 1.0));
        if (term == 0.0) break;
        sum += term;
        if (std::abs(sum) > kRescale || std::abs(term) > kRescale) {
            sum /= kRescale;
            term /= kRescale;
            log_scale += kLogRescale;
        }
        if (kd > guard && std::abs(term) < options.relative_tolerance * std::abs(sum)) {
            if (++small_run >= options.consecutive_small_terms) break;
        } else {
            small_run = 0;
        }
    }
    if (k >= options.max_terms) {
        throw NumericalError("Kummer M series did not converge within " +
                             std::to_string(options.max_terms) + " terms (a=" +
                             std::to_string(alpha) + ", b=" + std::to_string(beta) +
                             ", z=" + std::to_string(x) + ")");
    }
    KummerResult result;
    result.terms = k + 1;
    result.path = path;
    if (sum == 0.0) {
        result.value = LogScaledValue::zero();
    } else {
        result.value = {std::log(std::abs(sum)) + log_scale, sum > 0.0 ? 1 : -1};
    }
    return result;
}

}  // namespace

LogScaledValue LogScaledValue::from_double(double x) {
    if (x == 0.0) return zero();
    return {std::log(std::abs(x)), x > 0.0 ? 1 : -1};
}

double LogScaledValue::value() const {
    if (sign == 0) return 0.0;
    return sign * std::exp(log_magnitude);
}

LogScaledValue LogScaledValue::operator*(const LogScaledValue& rhs) const {
    if (sign == 0 || rhs.sign == 0) return zero();
    return {log_magnitude + rhs.log_magnitude, sign * rhs.sign};
}

LogScaledValue LogScaledValue::operator/(const LogScaledValue& rhs) const {
    if (rhs.sign == 0) throw NumericalError("division by a log-scaled zero");
    if (sign == 0) return zero();
    return {log_magnitude - rhs.log_magnitude, sign * rhs.sign};
}

LogScaledValue pochhammer_log(double a, std::int64_t n) {
    if (n < 0) throw ValidationError("Pochhammer index must be >= 0");
    LogScaledValue out = LogScaledValue::one();
    for (std::int64_t k = 0; k < n; ++k) {
        const double factor = a + static_cast<double>(k);
        if (factor == 0.0) return LogScaledValue::zero();
        out.log_magnitude += std::log(std::abs(factor));
        if (factor < 0.0) out.sign = -out.sign;
    }
    return out;
}

std::string_view to_string(KummerPath path) {
    switch (path) {
        case KummerPath::trivial: return "trivial";
        case KummerPath::direct: return "direct";
        case KummerPath::kummer_transformed: return "kummer-transformed";
        case KummerPath::polynomial: return "polynomial";
    }
    return "unknown";
}

KummerResult kummer_m_detailed(double a, double b, double z, const KummerOptions& options) {
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(z)) {
        throw ValidationError("Kummer M arguments must be finite");
    }
    if (!(b > 0.0)) {
        throw ValidationError("Kummer M requires b > 0 (got b=" + std::to_string(b) + ")");
    }
    if (a < 0.0 && !is_nonpositive_integer(a)) {
        throw ValidationError("Kummer M requires a >= 0 or a nonpositive integer");
    }
    if (z == 0.0 || a == 0.0) return {LogScaledValue::one(), 1, KummerPath::trivial};
    if (is_nonpositive_integer(a)) return sum_series(a, b, z, options, KummerPath::polynomial);
    if (z > 0.0) return sum_series(a, b, z, options, KummerPath::direct);

    // M(a, b, z) = e^z M(b - a, b, -z)
    const double alpha = b - a;
    KummerResult inner = sum_series(alpha, b, -z, options, KummerPath::kummer_transformed);
    if (!inner.value.is_zero()) inner.value.log_magnitude += z;
    return inner;
}

LogScaledValue kummer_m(double a, double b, double z, const KummerOptions& options) {
    return kummer_m_detailed(a, b, z, options).value;
}

}  // namespace burstkit
