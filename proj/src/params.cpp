#include "burstkit/params.hpp"

#include <cmath>
#include <string>

#include "burstkit/errors.hpp"

namespace burstkit {

namespace {

void require_finite_nonneg(double value, const char* name) {
    if (!std::isfinite(value) || value < 0.0) {
        throw ValidationError(std::string(name) + " must be finite and >= 0 (got " +
                              std::to_string(value) + ")");
    }
}

}  // namespace

double seconds_per(TimeUnit unit) { return unit == TimeUnit::per_minute ? 60.0 : 1.0; }

double to_per_second(double rate, TimeUnit unit) { return rate / seconds_per(unit); }

double from_per_second(double rate, TimeUnit unit) { return rate * seconds_per(unit); }

TimeUnit parse_time_unit(std::string_view text) {
    if (text == "per-second" || text == "per_second" || text == "s") return TimeUnit::per_second;
    if (text == "per-minute" || text == "per_minute" || text == "min") return TimeUnit::per_minute;
    throw ValidationError("unknown time unit '" + std::string(text) +
                          "' (expected per-second or per-minute)");
}

std::string_view to_string(TimeUnit unit) {
    return unit == TimeUnit::per_minute ? "per-minute" : "per-second";
}

void validate_simulation_rates(const TwoStageRates& rates) {
    require_finite_nonneg(rates.mu0_M, "mu0_M");
    require_finite_nonneg(rates.mu1_M, "mu1_M");
    require_finite_nonneg(rates.nu_P, "nu_P");
    require_finite_nonneg(rates.rho_M, "rho_M");
    require_finite_nonneg(rates.rho_P, "rho_P");
}

void validate(const TwoStageRates& rates) {
    validate_simulation_rates(rates);
    if (rates.rho_P <= 0.0) throw ValidationError("rho_P must be > 0 (it sets the time scale)");
    if (rates.mu0_M <= 0.0) {
        throw ValidationError(
            "mu0_M must be > 0: the model requires a nonzero basal transcription rate");
    }
}

void validate(const DimensionlessParams& params) {
    require_finite_nonneg(params.mu0, "mu0");
    require_finite_nonneg(params.mu1, "mu1");
    require_finite_nonneg(params.gamma, "gamma");
    require_finite_nonneg(params.nu, "nu");
    if (params.mu0 <= 0.0) {
        throw ValidationError(
            "mu0 must be > 0: the model requires a nonzero basal transcription rate");
    }
}

void validate(const BinaryParams& params) {
    require_finite_nonneg(params.a, "a");
    require_finite_nonneg(params.b, "b");
    require_finite_nonneg(params.nu, "nu");
    if (!(params.a > 0.0)) throw ValidationError("a must be > 0");
    if (params.a > params.b) throw ValidationError("a must not exceed b");
    if (!(params.theta > 0.0 && params.theta <= 1.0)) {
        throw ValidationError("theta must lie in (0, 1]");
    }
}

DimensionlessParams nondimensionalize(const TwoStageRates& rates) {
    validate(rates);
    return {rates.mu0_M / rates.rho_P, rates.mu1_M / rates.rho_P, rates.rho_M / rates.rho_P,
            rates.nu_P / rates.rho_P};
}

BinaryParams to_binary_params(const DimensionlessParams& params) {
    validate(params);
    const double removal = 1.0 + params.mu1;
    return {params.mu0 / removal, (params.mu0 + params.gamma) / removal, 1.0 / removal,
            params.nu};
}

DimensionlessParams from_binary_params(const BinaryParams& params) {
    validate(params);
    return {params.a / params.theta, 1.0 / params.theta - 1.0,
            (params.b - params.a) / params.theta, params.nu};
}

TwoStageRates to_rates(const DimensionlessParams& params, double rho_P) {
    validate(params);
    if (!(rho_P > 0.0) || !std::isfinite(rho_P)) throw ValidationError("rho_P must be > 0");
    return {params.mu0 * rho_P, params.mu1 * rho_P, params.nu * rho_P, params.gamma * rho_P,
            rho_P};
}

double burst_size(const BinaryParams& params) {
    if (!(params.b > 0.0)) throw ValidationError("burst size needs b > 0");
    return params.nu / params.b;
}

double estimate_protein_synthesis_rate(double delta, double rho_P, double mu0_M, double mu1_M,
                                       double rho_M) {
    require_finite_nonneg(delta, "delta");
    require_finite_nonneg(rho_P, "rho_P");
    require_finite_nonneg(mu0_M, "mu0_M");
    require_finite_nonneg(mu1_M, "mu1_M");
    require_finite_nonneg(rho_M, "rho_M");
    if (!(rho_P + mu1_M > 0.0)) throw ValidationError("rho_P + mu1_M must be > 0");
    // mu1_M == 0: rho_P / (rho_P + 0) is exactly 1 only up to rounding, so skip it.
    if (mu1_M == 0.0) return delta * (mu0_M + rho_M);
    return delta * rho_P * (mu0_M + rho_M) / (rho_P + mu1_M);
}

double switch_on_rate(const BinaryParams& params, double n) {
    return (params.a + (1.0 - params.theta) * n) / params.theta;
}

double switch_off_rate(const BinaryParams& params) {
    return (params.b - params.a) / params.theta;
}

}  // namespace burstkit
