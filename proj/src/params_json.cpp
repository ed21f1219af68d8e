#include "burstkit/params_json.hpp"

#include <fstream>
#include <set>
#include <string>

#include "burstkit/errors.hpp"

namespace burstkit {

namespace {

using nlohmann::json;

double number(const json& j, const char* key) {
    if (!j.contains(key)) throw ValidationError(std::string("parameter file: missing '") + key + "'");
    const json& v = j.at(key);
    if (!v.is_number()) throw ValidationError(std::string("parameter file: '") + key + "' must be a number");
    return v.get<double>();
}

double number_or(const json& j, const char* key, double fallback) {
    return j.contains(key) ? number(j, key) : fallback;
}

void reject_unknown(const json& j, const std::set<std::string>& allowed) {
    for (const auto& [key, value] : j.items()) {
        if (!allowed.contains(key)) throw ValidationError("parameter file: unknown field '" + key + "'");
    }
}

}  // namespace

TwoStageRates DimensionalRates::per_second() const {
    return {to_per_second(rates.mu0_M, unit), to_per_second(rates.mu1_M, unit),
            to_per_second(rates.nu_P, unit), to_per_second(rates.rho_M, unit),
            to_per_second(rates.rho_P, unit)};
}

std::string_view form_name(const ParameterSet& params) {
    switch (params.index()) {
        case 0: return "dimensional";
        case 1: return "dimensionless";
        default: return "binary";
    }
}

ParameterSet parameters_from_json(const json& j) {
    if (!j.is_object()) throw ValidationError("parameter file: expected a JSON object");
    if (!j.contains("form") || !j.at("form").is_string()) {
        throw ValidationError("parameter file: missing string field 'form'");
    }
    const std::string form = j.at("form").get<std::string>();
    if (form == "dimensional") {
        reject_unknown(j, {"form", "time_unit", "mu0_M", "mu1_M", "nu_P", "rho_M", "rho_P"});
        DimensionalRates out;
        if (j.contains("time_unit")) {
            if (!j.at("time_unit").is_string()) throw ValidationError("time_unit must be a string");
            out.unit = parse_time_unit(j.at("time_unit").get<std::string>());
        }
        out.rates = {number(j, "mu0_M"), number_or(j, "mu1_M", 0.0), number(j, "nu_P"),
                     number(j, "rho_M"), number(j, "rho_P")};
        validate_simulation_rates(out.rates);
        return out;
    }
    if (form == "dimensionless") {
        reject_unknown(j, {"form", "mu0", "mu1", "gamma", "nu"});
        DimensionlessParams out{number(j, "mu0"), number_or(j, "mu1", 0.0), number(j, "gamma"),
                                number(j, "nu")};
        validate(out);
        return out;
    }
    if (form == "binary") {
        reject_unknown(j, {"form", "a", "b", "theta", "nu"});
        BinaryParams out{number(j, "a"), number(j, "b"), number_or(j, "theta", 1.0), number(j, "nu")};
        validate(out);
        return out;
    }
    throw ValidationError("parameter file: unknown form '" + form +
                          "' (expected dimensional, dimensionless or binary)");
}

json to_json(const ParameterSet& params) {
    json j;
    j["form"] = std::string(form_name(params));
    if (const auto* d = std::get_if<DimensionalRates>(&params)) {
        j["time_unit"] = std::string(to_string(d->unit));
        j["mu0_M"] = d->rates.mu0_M;
        j["mu1_M"] = d->rates.mu1_M;
        j["nu_P"] = d->rates.nu_P;
        j["rho_M"] = d->rates.rho_M;
        j["rho_P"] = d->rates.rho_P;
    } else if (const auto* p = std::get_if<DimensionlessParams>(&params)) {
        j["mu0"] = p->mu0;
        j["mu1"] = p->mu1;
        j["gamma"] = p->gamma;
        j["nu"] = p->nu;
    } else {
        const auto& b = std::get<BinaryParams>(params);
        j["a"] = b.a;
        j["b"] = b.b;
        j["theta"] = b.theta;
        j["nu"] = b.nu;
    }
    return j;
}

ParameterSet load_parameters(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open parameter file " + path.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ValidationError("parameter file " + path.string() + ": " + e.what());
    }
    return parameters_from_json(j);
}

BinaryParams binary_form(const ParameterSet& params) {
    if (const auto* d = std::get_if<DimensionalRates>(&params)) {
        return to_binary_params(nondimensionalize(d->per_second()));
    }
    if (const auto* p = std::get_if<DimensionlessParams>(&params)) return to_binary_params(*p);
    return std::get<BinaryParams>(params);
}

TwoStageRates two_stage_rates(const ParameterSet& params) {
    if (const auto* d = std::get_if<DimensionalRates>(&params)) return d->per_second();
    if (const auto* p = std::get_if<DimensionlessParams>(&params)) return to_rates(*p);
    return to_rates(from_binary_params(std::get<BinaryParams>(params)));
}

}  // namespace burstkit
