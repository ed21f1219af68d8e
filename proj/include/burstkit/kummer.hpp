#pragma once

// Confluent hypergeometric function M(a, b, z) and Pochhammer symbols,
// evaluated in log-scaled form so that values like e^1000 or 1000^n / n!
// can be combined without overflow.

#include <cstdint>
#include <string_view>

namespace burstkit {

// value = sign * exp(log_magnitude); sign == 0 encodes exact zero.
struct LogScaledValue {
    double log_magnitude = 0.0;
    int sign = 1;

    static LogScaledValue zero() { return {0.0, 0}; }
    static LogScaledValue one() { return {0.0, 1}; }
    static LogScaledValue from_double(double x);

    bool is_zero() const { return sign == 0; }
    double value() const;

    LogScaledValue operator*(const LogScaledValue& rhs) const;
    LogScaledValue operator/(const LogScaledValue& rhs) const;
};

// (a)_n = a (a+1) ... (a+n-1), (a)_0 = 1. The log magnitude is accumulated
// term by term, so pochhammer_log(a, n+1) == pochhammer_log(a, n) + log|a+n|
// holds bit for bit.
LogScaledValue pochhammer_log(double a, std::int64_t n);

enum class KummerPath { trivial, direct, kummer_transformed, polynomial };

std::string_view to_string(KummerPath path);

struct KummerOptions {
    std::int64_t max_terms = 1'000'000;
    double relative_tolerance = 1e-16;
    int consecutive_small_terms = 3;
};

struct KummerResult {
    LogScaledValue value;
    std::int64_t terms = 0;
    KummerPath path = KummerPath::direct;
};

// Requires b > 0 and a >= 0 or a a nonpositive integer. For z < 0 the
// positive-term series of e^z M(b - a, b, -z) is summed instead of the
// alternating one. Throws ValidationError for bad b, NumericalError when the
// series needs more than options.max_terms terms.
KummerResult kummer_m_detailed(double a, double b, double z, const KummerOptions& options = {});
LogScaledValue kummer_m(double a, double b, double z, const KummerOptions& options = {});

}  // namespace burstkit
