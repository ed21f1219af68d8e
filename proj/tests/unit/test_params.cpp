#include <doctest.h>

#include <cmath>

#include "burstkit/burst.hpp"
#include "burstkit/errors.hpp"
#include "burstkit/params.hpp"
#include "burstkit/params_json.hpp"

using namespace burstkit;

TEST_SUITE("params") {

TEST_CASE("external-gene rates map to (1, 100, 1, 1000)") {
    const TwoStageRates rates{1.0, 0.0, 1000.0, 99.0, 1.0};
    const BinaryParams p = to_binary_params(nondimensionalize(rates));
    CHECK(p.a == 1.0);
    CHECK(p.b == 100.0);
    CHECK(p.theta == 1.0);
    CHECK(p.nu == 1000.0);
    CHECK(burst_size(p) == 10.0);
}

TEST_CASE("self-regulating gene maps to (1, 100, 0.99, 1000)") {
    const DimensionlessParams d{100.0 / 99.0, 1.0 / 99.0, 100.0, 1000.0};
    const BinaryParams p = to_binary_params(d);
    CHECK(p.a == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(p.b == doctest::Approx(100.0).epsilon(1e-15));
    CHECK(p.theta == doctest::Approx(0.99).epsilon(1e-15));
}

TEST_CASE("binary constants round-trip through the dimensionless form") {
    for (const BinaryParams p : {BinaryParams{1.0, 100.0, 1.0, 1000.0},
                                 BinaryParams{0.3, 7.0, 0.5, 12.0},
                                 BinaryParams{10.0, 10.0, 0.9, 3.0}}) {
        const BinaryParams back = to_binary_params(from_binary_params(p));
        CHECK(back.a == doctest::Approx(p.a).epsilon(1e-14));
        CHECK(back.b == doctest::Approx(p.b).epsilon(1e-14));
        CHECK(back.theta == doctest::Approx(p.theta).epsilon(1e-14));
        CHECK(back.nu == p.nu);
    }
}

TEST_CASE("dimensionless form is invariant under rescaling time") {
    const TwoStageRates base{0.4, 0.02, 30.0, 5.0, 0.5};
    for (double k : {0.1, 3.0, 60.0}) {
        const TwoStageRates scaled{base.mu0_M * k, base.mu1_M * k, base.nu_P * k, base.rho_M * k,
                                   base.rho_P * k};
        const DimensionlessParams a = nondimensionalize(base);
        const DimensionlessParams b = nondimensionalize(scaled);
        CHECK(b.mu0 == doctest::Approx(a.mu0).epsilon(1e-14));
        CHECK(b.mu1 == doctest::Approx(a.mu1).epsilon(1e-14));
        CHECK(b.gamma == doctest::Approx(a.gamma).epsilon(1e-14));
        CHECK(b.nu == doctest::Approx(a.nu).epsilon(1e-14));
    }
}

TEST_CASE("validation rejects what the reduction cannot handle") {
    CHECK_THROWS_AS(validate(TwoStageRates{0.0, 0.0, 1.0, 1.0, 1.0}), ValidationError);
    CHECK_THROWS_AS(validate(TwoStageRates{1.0, 0.0, 1.0, 1.0, 0.0}), ValidationError);
    CHECK_THROWS_AS(validate(TwoStageRates{1.0, -1.0, 1.0, 1.0, 1.0}), ValidationError);
    CHECK_THROWS_AS(validate(TwoStageRates{1.0, 0.0, NAN, 1.0, 1.0}), ValidationError);
    CHECK_THROWS_AS(validate(BinaryParams{2.0, 1.0, 1.0, 1.0}), ValidationError);
    CHECK_THROWS_AS(validate(BinaryParams{1.0, 2.0, 0.0, 1.0}), ValidationError);
    CHECK_THROWS_AS(validate(BinaryParams{1.0, 2.0, 1.5, 1.0}), ValidationError);
    CHECK_THROWS_AS(validate(BinaryParams{0.0, 2.0, 1.0, 1.0}), ValidationError);
    CHECK_NOTHROW(validate(BinaryParams{2.0, 2.0, 1.0, 0.0}));
    // the simulator itself takes zero rates
    CHECK_NOTHROW(validate_simulation_rates(TwoStageRates{0.0, 0.0, 0.0, 0.0, 0.0}));
}

TEST_CASE("per-minute rates convert to per-second") {
    CHECK(to_per_second(6.0, TimeUnit::per_minute) == doctest::Approx(0.1));
    CHECK(from_per_second(0.1, TimeUnit::per_minute) == doctest::Approx(6.0));
    CHECK(parse_time_unit("per-minute") == TimeUnit::per_minute);
    CHECK(parse_time_unit("s") == TimeUnit::per_second);
    CHECK_THROWS_AS(parse_time_unit("per-hour"), ValidationError);
    const DimensionalRates d{{0.6, 0.0, 60.0, 6.0, 1.2}, TimeUnit::per_minute};
    const TwoStageRates s = d.per_second();
    CHECK(s.nu_P == doctest::Approx(1.0));
    CHECK(s.rho_P == doctest::Approx(0.02));
}

TEST_CASE("lac burst size gives nu_P of about 0.81 per minute") {
    const double nu = estimate_protein_synthesis_rate(8.0, 1.0, 0.16 / 145.0, 0.0, 0.1);
    CHECK(nu == doctest::Approx(0.8088275862068966).epsilon(1e-14));
    // rho_P cancels when there is no feedback
    CHECK(estimate_protein_synthesis_rate(8.0, 123.0, 0.16 / 145.0, 0.0, 0.1) == nu);
    // with feedback it does not
    CHECK(estimate_protein_synthesis_rate(8.0, 1.0, 0.1, 1.0, 0.1) == doctest::Approx(0.8));
}

TEST_CASE("switching rates") {
    const BinaryParams p{1.0, 100.0, 0.99, 1000.0};
    CHECK(switch_off_rate(p) == doctest::Approx(100.0));
    CHECK(switch_on_rate(p, 0.0) == doctest::Approx(1.0 / 0.99));
    CHECK(switch_on_rate(p, 100.0) == doctest::Approx(2.0 / 0.99));
}

TEST_CASE("recommended resolution is the translation time") {
    CHECK(recommended_resolution(TwoStageRates{1, 0, 1000, 99, 1}) == doctest::Approx(1e-3));
    CHECK(recommended_resolution(TwoStageRates{1, 0, 2000, 99, 1}) == doctest::Approx(5e-4));
    CHECK_THROWS_AS(recommended_resolution(TwoStageRates{1, 0, 0, 99, 1}), ValidationError);
    // 1 per minute is 60 s, inside the lac regime and finer than 4 min
    const TwoStageRates lac{0.16 / 145.0 / 60.0, 0.0, 1.0 / 60.0, 0.1 / 60.0, 1.0 / 3600.0};
    CHECK(recommended_resolution(lac) == doctest::Approx(60.0));
    CHECK(lac_guidance_applies(lac));
    CHECK_FALSE(lac_guidance_applies(TwoStageRates{1, 0, 1000, 99, 1}));
}

TEST_CASE("parameter files") {
    const auto p = parameters_from_json(
        nlohmann::json::parse(R"({"form": "binary", "a": 1, "b": 100, "nu": 1000})"));
    CHECK(std::get<BinaryParams>(p) == BinaryParams{1, 100, 1, 1000});
    const auto d = parameters_from_json(nlohmann::json::parse(
        R"({"form": "dimensional", "time_unit": "per-minute", "mu0_M": 0.6, "nu_P": 60,
            "rho_M": 6, "rho_P": 1.2})"));
    CHECK(binary_form(d).b == doctest::Approx(6.6 / 1.2));
    CHECK(parameters_from_json(to_json(d)) == d);
    CHECK_THROWS_AS(parameters_from_json(nlohmann::json::parse(R"({"form": "binary", "a": 1,
        "b": 2, "nu": 3, "extra": 1})")),
                    ValidationError);
    CHECK_THROWS_AS(parameters_from_json(nlohmann::json::parse(R"({"form": "other"})")),
                    ValidationError);
}

}
