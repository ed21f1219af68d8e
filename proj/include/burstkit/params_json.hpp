#pragma once

// JSON parameter files. A "form" tag selects the entry point:
//   {"form": "dimensional", "time_unit": "per-minute",
//    "mu0_M": ..., "mu1_M": ..., "nu_P": ..., "rho_M": ..., "rho_P": ...}
//   {"form": "dimensionless", "mu0": ..., "mu1": ..., "gamma": ..., "nu": ...}
//   {"form": "binary", "a": ..., "b": ..., "theta": ..., "nu": ...}
// Values are kept exactly as written; unit conversion happens on use.

#include <filesystem>
#include <string_view>
#include <variant>

#include <json.hpp>

#include "burstkit/params.hpp"

namespace burstkit {

struct DimensionalRates {
    TwoStageRates rates;  // in `unit`
    TimeUnit unit = TimeUnit::per_second;

    TwoStageRates per_second() const;
    bool operator==(const DimensionalRates&) const = default;
};

using ParameterSet = std::variant<DimensionalRates, DimensionlessParams, BinaryParams>;

std::string_view form_name(const ParameterSet& params);

ParameterSet parameters_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ParameterSet& params);
ParameterSet load_parameters(const std::filesystem::path& path);

// Binary-model constants for any form.
BinaryParams binary_form(const ParameterSet& params);
// Two-stage rates for any form: dimensional rates per second, or the
// dimensionless/binary forms read with rho_P = 1 (time in protein lifetimes).
TwoStageRates two_stage_rates(const ParameterSet& params);

}  // namespace burstkit
