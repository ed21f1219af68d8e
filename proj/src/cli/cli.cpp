#include <CLI11.hpp>

#include <algorithm>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "burstkit/cli.hpp"
#include "burstkit/errors.hpp"
#include "burstkit/kummer.hpp"
#include "cli/output.hpp"

namespace burstkit::cli {

namespace {

struct ParameterFlags {
    std::string params_file;
    std::optional<double> a, b, theta, nu;
    std::optional<double> mu0, mu1, gamma;
    std::optional<double> mu0_M, mu1_M, nu_P, rho_M, rho_P;
    std::string unit = "per-second";

    void attach(CLI::App* app, bool binary_flags = true) {
        app->add_option("--params", params_file, "JSON parameter file (form: dimensional, dimensionless or binary)");
        if (binary_flags) {
            app->add_option("--a", a, "binary model: basal on-rate a");
            app->add_option("--b", b, "binary model: switching-cycle rate b");
            app->add_option("--theta", theta, "binary model: self-regulation factor in (0, 1]");
            app->add_option("--nu", nu, "dimensionless protein synthesis rate");
            app->add_option("--mu0", mu0, "dimensionless basal transcription");
            app->add_option("--mu1", mu1, "dimensionless transcription stimulus");
            app->add_option("--gamma", gamma, "dimensionless mRNA degradation");
            app->add_option("--nuP", nu_P, "translation rate per mRNA");
        }
        app->add_option("--mu0M", mu0_M, "basal transcription rate");
        app->add_option("--mu1M", mu1_M, "transcription stimulus per protein");
        app->add_option("--rhoM", rho_M, "mRNA degradation rate");
        app->add_option("--rhoP", rho_P, "protein degradation rate");
        app->add_option("--unit", unit, "unit of dimensional rates: per-second or per-minute")
            ->check(CLI::IsMember({"per-second", "per-minute"}));
    }

    bool any_dimensional() const { return mu0_M || mu1_M || nu_P || rho_M || rho_P; }
    bool any_dimensionless() const { return mu0 || mu1 || gamma; }

    ParameterSet build(const ParameterSet& fallback) const {
        if (!params_file.empty()) return load_parameters(params_file);
        if (any_dimensional()) {
            DimensionalRates d;
            d.unit = parse_time_unit(unit);
            d.rates = {mu0_M.value_or(0.0), mu1_M.value_or(0.0), nu_P.value_or(0.0),
                       rho_M.value_or(0.0), rho_P.value_or(0.0)};
            validate_simulation_rates(d.rates);
            return d;
        }
        if (any_dimensionless()) {
            DimensionlessParams d{mu0.value_or(1.0), mu1.value_or(0.0), gamma.value_or(0.0),
                                  nu.value_or(0.0)};
            validate(d);
            return d;
        }
        if (a || b || theta || nu) {
            BinaryParams p{a.value_or(1.0), b.value_or(100.0), theta.value_or(1.0),
                           nu.value_or(1000.0)};
            validate(p);
            return p;
        }
        return fallback;
    }
};

struct CommonFlags {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> replicas;
    std::optional<std::string> out_dir;
    std::vector<std::string> formats;

    void attach(CLI::App* app) {
        app->add_option("--config", config_path,
                        "JSON experiment config; its values override individual flags")
            ->check(CLI::ExistingFile);
        app->add_option("--seed", seed, "64-bit random seed");
        app->add_option("--replicas", replicas, "number of independent replicas");
        app->add_option("--out-dir", out_dir, "output directory");
        app->add_option("--format", formats, "output formats: csv, json, svg, bin (repeatable)")
            ->check(CLI::IsMember({"csv", "json", "svg", "bin"}))
            ->delimiter(',');
    }

    void apply(ExperimentConfig& config) const {
        if (seed) config.seed = *seed;
        if (replicas) config.replicas = *replicas;
        if (out_dir) config.out_dir = *out_dir;
        if (!formats.empty()) config.formats = formats;
    }
};

void print_summary(std::ostream& out, const nlohmann::json& summary) {
    out << summary.dump(2) << '\n';
}

}  // namespace

CommandResult execute(const ExperimentConfig& config) {
    if (config.command == "analytic") return run_analytic(config);
    if (config.command == "simulate") return run_simulate(config);
    if (config.command == "burst-scan") return run_burst_scan(config);
    if (config.command == "estimate") return run_estimate(config);
    if (config.command == "oracle-check") return run_oracle_check(config);
    if (config.command == "reproduce-figure") return run_reproduce_figure(config);
    throw ValidationError("unknown command '" + config.command + "'");
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{
        "burstkit: steady states, exact simulation and apparent-burst analysis for the\n"
        "two-stage and binary models of gene expression"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "burstkit 1.0.0");
    app.footer(
        "Exit status: 0 success, 2 usage error, 3 invalid input, 4 numerical tolerance failure.\n"
        "Environment: BURSTKIT_THREADS caps the number of worker threads.");

    ExperimentConfig config;
    CommonFlags common;
    ParameterFlags params;
    std::optional<double> tail_tol;
    std::optional<double> t_end;
    std::optional<double> burn_in;
    std::optional<double> dt;
    std::optional<std::uint64_t> n_max;
    std::optional<std::uint64_t> m_max;
    std::optional<std::string> simulator;
    std::vector<double> resolutions;
    std::optional<double> delta;
    bool grid = false;
    std::string event_log;
    double kummer_a = 1.0;
    double kummer_b = 1.0;
    double kummer_z = 0.0;

    auto* analytic = app.add_subcommand("analytic", "exact steady-state distribution of the binary model");
    auto* simulate = app.add_subcommand("simulate", "exact stochastic simulation and ensemble statistics");
    auto* burst = app.add_subcommand("burst-scan", "apparent bursts of one trajectory across sampling resolutions");
    auto* estimate = app.add_subcommand("estimate", "protein synthesis rate from a mean burst size");
    auto* oracle = app.add_subcommand("oracle-check", "closed form vs truncated master equation");
    auto* figure = app.add_subcommand("reproduce-figure", "all figure statistics, distributions, trajectories and plots");
    auto* kummer = app.add_subcommand("kummer-eval", "evaluate Kummer M(a, b, z)");
    kummer->group("");

    for (CLI::App* sub : {analytic, simulate, burst, estimate, oracle, figure}) common.attach(sub);
    for (CLI::App* sub : {analytic, simulate, burst, oracle}) {
        params.attach(sub);
        sub->add_option("--tail-tol", tail_tol, "analytic tail mass tolerance");
    }
    params.attach(estimate, false);
    estimate->add_option("--delta", delta, "mean burst size")->required();
    for (CLI::App* sub : {simulate, burst}) {
        sub->add_option("--model", simulator, "simulator: binary or two-stage")
            ->check(CLI::IsMember({"binary", "two-stage"}));
        sub->add_option("--t-end", t_end, "simulated time");
    }
    simulate->add_option("--burn-in", burn_in, "discarded initial time of each replica");
    simulate->add_option("--dt", dt, "sampling step of the exported trajectory (0: none)");
    burst->add_option("--resolutions", resolutions, "sampling resolutions, e.g. 0.1,1e-4")
        ->delimiter(',');
    burst->add_option("--log", event_log, "binary event log to analyse instead of simulating")
        ->check(CLI::ExistingFile);
    oracle->add_option("--n-max", n_max, "protein truncation of the oracle");
    oracle->add_option("--m-max", m_max, "mRNA truncation of the two-stage oracle");
    oracle->add_option("--model", simulator,
                       "binary checks the closed form; two-stage also checks the reduction")
        ->check(CLI::IsMember({"binary", "two-stage"}));
    oracle->add_flag("--grid", grid, "check every point of the validation grid");
    kummer->add_option("--a", kummer_a)->required();
    kummer->add_option("--b", kummer_b)->required();
    kummer->add_option("--z", kummer_z)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (kummer->parsed()) {
            const KummerResult r = kummer_m_detailed(kummer_a, kummer_b, kummer_z);
            print_summary(out, {{"a", kummer_a},
                                {"b", kummer_b},
                                {"z", kummer_z},
                                {"value", r.value.value()},
                                {"log_magnitude", r.value.log_magnitude},
                                {"sign", r.value.sign},
                                {"terms", r.terms},
                                {"path", std::string(to_string(r.path))}});
            return kExitOk;
        }

        CLI::App* chosen = app.get_subcommands().front();
        config.command = chosen->get_name();
        if (!common.config_path.empty()) {
            const ExperimentConfig from_file = load_config(common.config_path);
            if (!from_file.command.empty() && from_file.command != config.command) {
                throw ValidationError("config file is for '" + from_file.command + "', not '" +
                                      config.command + "'");
            }
            config = from_file;
            config.command = chosen->get_name();
        } else {
            common.apply(config);
            config.parameters = params.build(config.parameters);
            if (tail_tol) config.tail_tol = *tail_tol;
            if (t_end) config.t_end = *t_end;
            if (burn_in) config.burn_in = *burn_in;
            if (dt) config.dt = *dt;
            if (n_max) config.n_max = *n_max;
            if (m_max) config.m_max = *m_max;
            if (simulator) config.simulator = *simulator;
            if (delta) config.delta = *delta;
            config.grid = grid;
            config.event_log = event_log;
            if (!resolutions.empty()) {
                std::sort(resolutions.begin(), resolutions.end(), std::greater<>());
                config.resolutions = resolutions;
            }
        }

        const CommandResult result = execute(config);
        print_summary(out, result.summary);
        return result.ok ? kExitOk : kExitNumerical;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const nlohmann::json::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    }
}

}  // namespace burstkit::cli
