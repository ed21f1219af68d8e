#pragma once

// Rate constants of the two-stage model, their dimensionless form, the
// binary-gene constants (a, b, theta, nu), and the burst-size relations.

#include <string_view>

namespace burstkit {

enum class TimeUnit { per_second, per_minute };

// Converts a rate expressed in `unit` to per-second.
double to_per_second(double rate, TimeUnit unit);
double from_per_second(double rate, TimeUnit unit);
// Length of one time unit in seconds (1 or 60).
double seconds_per(TimeUnit unit);
TimeUnit parse_time_unit(std::string_view text);
std::string_view to_string(TimeUnit unit);

// Dimensional rates of the two-stage (mRNA, protein) model. Rates are per
// second unless the caller works in an arbitrary unit throughout.
struct TwoStageRates {
    double mu0_M = 0.0;  // basal transcription
    double mu1_M = 0.0;  // transcription stimulus per protein
    double nu_P = 0.0;   // translation per mRNA
    double rho_M = 0.0;  // mRNA degradation
    double rho_P = 0.0;  // protein degradation

    bool operator==(const TwoStageRates&) const = default;
};

struct DimensionlessParams {
    double mu0 = 0.0;
    double mu1 = 0.0;
    double gamma = 0.0;
    double nu = 0.0;

    bool operator==(const DimensionlessParams&) const = default;
};

// Binary-gene constants. theta is stored rather than derived from a and b so
// parameters entered directly in this form are kept exactly as given.
struct BinaryParams {
    double a = 0.0;
    double b = 0.0;
    double theta = 1.0;
    double nu = 0.0;

    bool operator==(const BinaryParams&) const = default;
};

// Non-negative and finite. The stochastic simulator accepts any such rates.
void validate_simulation_rates(const TwoStageRates& rates);
// Additionally requires rho_P > 0 and mu0_M > 0, which the reduction to the
// binary model depends on.
void validate(const TwoStageRates& rates);
void validate(const DimensionlessParams& params);
// 0 < a <= b, 0 < theta <= 1, nu >= 0. a == b is the always-on limit.
void validate(const BinaryParams& params);

DimensionlessParams nondimensionalize(const TwoStageRates& rates);
BinaryParams to_binary_params(const DimensionlessParams& params);

// Inverse of to_binary_params: mu1 = 1/theta - 1, mu0 = a/theta,
// gamma = (b - a)/theta.
DimensionlessParams from_binary_params(const BinaryParams& params);
// Dimensional rates whose nondimensionalization is `params`, for a given rho_P.
TwoStageRates to_rates(const DimensionlessParams& params, double rho_P = 1.0);

// delta = nu / b, the mean burst size of the negative-binomial limit.
double burst_size(const BinaryParams& params);

// Protein synthesis rate implied by a measured mean burst size:
//   nu_P = delta * rho_P * (mu0_M + rho_M) / (rho_P + mu1_M).
// With mu1_M == 0 rho_P cancels and this is delta * (mu0_M + rho_M).
double estimate_protein_synthesis_rate(double delta, double rho_P, double mu0_M, double mu1_M,
                                       double rho_M);

// Off->on propensity (a + (1 - theta) n) / theta and on->off rate (b - a) / theta.
double switch_on_rate(const BinaryParams& params, double n);
double switch_off_rate(const BinaryParams& params);

}  // namespace burstkit
