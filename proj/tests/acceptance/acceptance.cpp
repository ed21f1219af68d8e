// Acceptance checks. Run with no argument for all criteria, or with one
// criterion number. Prints one PASS/FAIL line per criterion and exits
// non-zero if any selected criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "burstkit/analytic.hpp"
#include "burstkit/burst.hpp"
#include "burstkit/cme_oracle.hpp"
#include "burstkit/event_log_io.hpp"
#include "burstkit/rng.hpp"
#include "burstkit/ssa.hpp"

using namespace burstkit;

namespace {

const BinaryParams kExternal{1.0, 100.0, 1.0, 1000.0};
const BinaryParams kSelf{1.0, 100.0, 0.99, 1000.0};

struct Outcome {
    bool pass = true;

    void require(bool ok, const std::string& what) {
        std::printf("    [%s] %s\n", ok ? "ok" : "FAILED", what.c_str());
        pass = pass && ok;
    }
};

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
    char buffer[256];
    std::snprintf(buffer, sizeof buffer, format, a, b, c);
    return buffer;
}

// |computed - printed| within half a unit of the last printed digit.
void caption(Outcome& o, const char* name, double computed, double printed, int decimals) {
    const double tol = 0.5 * std::pow(10.0, -decimals);
    const bool ok = std::abs(computed - printed) <= tol;
    char buffer[256];
    std::snprintf(buffer, sizeof buffer, "%s: computed %.6f, caption %.*f (+- %g)", name,
                  computed, decimals, printed, tol);
    o.require(ok, buffer);
}

Outcome criterion1() {
    Outcome o;
    caption(o, "external p1", p_on(kExternal), 0.01, 2);
    caption(o, "external <n>", mean_protein(kExternal), 10, 0);
    caption(o, "external Fano", fano(kExternal), 10.8, 1);
    caption(o, "self-regulating p1", p_on(kSelf), 0.011, 3);
    caption(o, "self-regulating <n>", mean_protein(kSelf), 11.08, 2);
    caption(o, "self-regulating Fano", fano(kSelf), 11.08, 2);
    caption(o, "negative binomial Fano", negative_binomial(1.0, 10.0, 1.0).fano(), 11, 0);
    return o;
}

Outcome criterion2() {
    Outcome o;
    double worst = 0.0;
    std::size_t points = 0;
    BinaryParams worst_at{};
    for (const BinaryParams& p : validation_grid()) {
        const double tv =
            tv_distance(steady_state_marginal(p), solve_truncated_binary(p, 2000).state.marginal);
        if (tv > worst) {
            worst = tv;
            worst_at = p;
        }
        ++points;
    }
    o.require(worst <= 1e-8,
              fmt("max TV over %.0f grid points = %.3e (tolerance 1e-8)", points, worst));
    std::printf("    worst point (a, b, theta, nu) = (%g, %g, %g, %g), n_max = 2000\n", worst_at.a,
                worst_at.b, worst_at.theta, worst_at.nu);
    return o;
}

Outcome criterion3() {
    Outcome o;
    const TwoStageRates rates{1.0, 0.0, 1000.0, 99.0, 1.0};
    const TwoStageOracleResult r = solve_truncated_two_stage(rates, 6, 2000);
    const double tv = tv_distance(r.marginal_n, steady_state_marginal(kExternal));
    o.require(tv <= 0.02, fmt("TV(two-stage n-marginal, binary) = %.10f (tolerance 0.02)", tv));
    o.require(r.mass_m_ge_2 < 1e-3, fmt("mass on m >= 2 = %.6e (tolerance 1e-3)", r.mass_m_ge_2));
    std::printf("    two-stage mean %.8f, binary mean 10, truncation m <= 6, n <= 2000\n",
                r.marginal_n.mean());
    return o;
}

Outcome criterion4() {
    Outcome o;
    const DiscreteDistribution nb = negative_binomial(1.0, 10.0, 1.0);
    double previous = INFINITY;
    double last = 0.0;
    for (double b : {10.0, 100.0, 1000.0}) {
        const double tv = tv_distance(steady_state_marginal({1.0, b, 1.0, 10.0 * b}), nb);
        o.require(tv < previous, fmt("b = %g: TV(binary, NB) = %.6e", b, tv));
        previous = tv;
        last = tv;
    }
    o.require(last < 1e-2, fmt("TV at b = 1000 is %.6e (tolerance 1e-2)", last));
    return o;
}

Outcome criterion5() {
    Outcome o;
    const double f = fano({1.0, 1e6, 1.0, 1000.0});
    o.require(f >= 1.0 && f <= 1.01, fmt("Fano at b = 1e6 is %.9f (range [1, 1.01])", f));
    return o;
}

Outcome criterion6() {
    Outcome o;
    EnsembleOptions options;
    options.replicas = 10;
    options.burn_in = 10.0;
    options.horizon = 1010.0;
    options.seed = 2011;
    const EnsembleResult r = ensemble_histogram(kExternal, options);
    const double lifetimes = r.observed_time;
    const double bound = tv_statistical_bound(r.histogram.size(), lifetimes / 2.0);
    const double tv = tv_distance(r.histogram, steady_state_marginal(kExternal));
    o.require(lifetimes >= 1e4, fmt("observed protein lifetimes = %.0f (need >= 1e4)", lifetimes));
    o.require(tv <= bound, fmt("TV(ensemble, analytic) = %.5f, bound 2 sqrt(K/N) = %.5f", tv, bound));
    const double z = (r.mean - 10.0) / r.mean_standard_error;
    o.require(std::abs(z) <= 3.0,
              fmt("mean %.5f, SE %.5f, |z| = %.3f (need <= 3)", r.mean, r.mean_standard_error,
                  std::abs(z)));
    return o;
}

Outcome criterion7() {
    Outcome o;
    // 1000 protein lifetimes after a 10-lifetime burn-in, one seed.
    const EventLog full = simulate_binary(kExternal, {}, 1010.0, 2011);
    EventLog log = full;
    log.initial = full.state_at(10.0);
    log.events.clear();
    for (const Event& e : full.events) {
        if (e.t > 10.0) log.events.push_back(e);
    }
    const std::vector<double> dts{0.1, 1e-4};
    const std::vector<BurstReport> reports = resolution_scan(log, dts);
    const BurstReport& coarse = reports[0];
    const BurstReport& fine = reports[1];
    o.require(!coarse.events.empty(),
              fmt("dt = 0.1: %.0f apparent bursts", static_cast<double>(coarse.events.size())));
    o.require(coarse.mean_size >= std::sqrt(10.0) && coarse.mean_size <= 10.0 * std::sqrt(10.0),
              fmt("dt = 0.1: mean size %.3f, of order delta = 10 (within [3.16, 31.6])",
                  coarse.mean_size));
    o.require(fine.max_increment <= 1,
              fmt("dt = 1e-4: max increment %.0f, %.0f windows with increment >= 2",
                  static_cast<double>(fine.max_increment),
                  static_cast<double>(fine.events.size())));
    const double gap = min_inter_birth_gap(log);
    std::printf("    log: %zu events, minimum gap between protein births %.3e lifetimes\n",
                log.events.size(), gap);
    return o;
}

Outcome criterion8() {
    Outcome o;
    const double mu0 = 0.16 / 145.0;
    const double nu_P = estimate_protein_synthesis_rate(8.0, 1.0, mu0, 0.0, 0.1);
    o.require(nu_P >= 0.7 && nu_P <= 0.9, fmt("nu_P = %.6f per minute (range [0.7, 0.9])", nu_P));
    const TwoStageRates per_second{mu0 / 60.0, 0.0, nu_P / 60.0, 0.1 / 60.0, 1.0 / 3600.0};
    const double seconds = recommended_resolution(per_second);
    o.require(seconds / 60.0 >= 0.5 && seconds / 60.0 <= 2.0,
              fmt("recommended resolution %.4f min, of order 1 min (within [0.5, 2])",
                  seconds / 60.0));
    o.require(seconds < kLacDetectionResolutionSeconds,
              fmt("%.1f s is finer than the %.0f s detection resolution", seconds,
                  kLacDetectionResolutionSeconds));
    return o;
}

std::string serialize(const EventLog& log) {
    std::ostringstream out;
    write_event_log_binary(out, log, 0);
    return out.str();
}

Outcome criterion9() {
    Outcome o;
    std::mt19937_64 gen(2011);
    std::uniform_real_distribution<double> u(0.0, 1.0);

    // unit-jump invariant on every simulated log
    std::size_t logs = 0;
    bool all_unit = true;
    for (int i = 0; i < 40; ++i) {
        const std::uint64_t seed = gen();
        EventLog log;
        if (i % 2 == 0) {
            const double a = 0.1 + 5.0 * u(gen);
            const BinaryParams p{a, a + 200.0 * u(gen), 0.5 + 0.5 * u(gen), 500.0 * u(gen)};
            log = simulate_binary(p, {}, 20.0, seed);
        } else {
            // feedback gain mu1 nu / (rho_M rho_P) kept below 1/2 so counts stay bounded
            const double nu = 200.0 * u(gen);
            const double rho_m = 1.0 + 49.0 * u(gen);
            const double rho_p = 0.5 + u(gen);
            const double mu1 = nu > 0.0 ? 0.5 * u(gen) * rho_m * rho_p / nu : 0.0;
            const TwoStageRates r{5.0 * u(gen), mu1, nu, rho_m, rho_p};
            log = simulate_two_stage(r, {}, 20.0, seed);
        }
        try {
            validate_event_log(log);
        } catch (const std::exception&) {
            all_unit = false;
        }
        for (const Event& e : log.events) {
            if (std::abs(e.dm) + std::abs(e.dn) != 1) all_unit = false;
        }
        ++logs;
    }
    o.require(all_unit, fmt("unit jumps in all %.0f simulated logs", static_cast<double>(logs)));

    // normalization of every distribution
    double worst = 0.0;
    std::size_t count = 0;
    auto check_norm = [&](const DiscreteDistribution& d) {
        worst = std::max(worst, std::abs(d.total() + d.tail_mass_bound() - 1.0));
        ++count;
    };
    for (const BinaryParams& p : validation_grid()) {
        check_norm(steady_state_marginal(p));
        check_norm(solve_truncated_binary(p, 2000).state.marginal);
    }
    for (double delta : {0.5, 10.0, 100.0}) {
        for (double theta : {0.95, 1.0}) {
            if (1.0 + delta * (theta - 1.0) > 0.0) check_norm(negative_binomial(2.0, delta, theta));
        }
    }
    check_norm(solve_truncated_two_stage({1.0, 0.0, 1000.0, 99.0, 1.0}, 6, 2000).marginal_n);
    EnsembleOptions e;
    e.replicas = 4;
    e.burn_in = 1.0;
    e.horizon = 51.0;
    e.seed = 5;
    check_norm(ensemble_histogram(kExternal, e).histogram);
    o.require(worst <= 1e-9, fmt("%.0f distributions, max |mass - 1| = %.3e", count, worst));

    // determinism
    const std::string a = serialize(simulate_binary(kSelf, {}, 100.0, 77));
    const std::string b = serialize(simulate_binary(kSelf, {}, 100.0, 77));
    const std::string c =
        serialize(simulate_two_stage({1.0, 0.0, 1000.0, 99.0, 1.0}, {}, 20.0, 77));
    const std::string d =
        serialize(simulate_two_stage({1.0, 0.0, 1000.0, 99.0, 1.0}, {}, 20.0, 77));
    e.threads = 1;
    const EnsembleResult e1 = ensemble_histogram(kExternal, e);
    e.threads = 3;
    const EnsembleResult e2 = ensemble_histogram(kExternal, e);
    const bool same_ensemble =
        std::equal(e1.histogram.probs().begin(), e1.histogram.probs().end(),
                   e2.histogram.probs().begin(), e2.histogram.probs().end()) &&
        e1.mean == e2.mean && e1.bin_standard_error == e2.bin_standard_error;
    o.require(a == b && c == d && same_ensemble,
              "same seed gives bit-identical logs and ensembles (1 and 3 threads)");
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    struct Criterion {
        int id;
        const char* title;
        double limit_seconds;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "caption statistics", 1.0, criterion1},
        {2, "closed form vs truncated master equation on the grid", 120.0, criterion2},
        {3, "two-stage vs binary reduction", 300.0, criterion3},
        {4, "negative-binomial limit", 30.0, criterion4},
        {5, "fast-switching Poisson limit", 1.0, criterion5},
        {6, "simulator vs closed form", 300.0, criterion6},
        {7, "apparent bursts vanish at fine resolution", 120.0, criterion7},
        {8, "lac worked example", 1.0, criterion8},
        {9, "property suites", 120.0, criterion9},
    };
    const int only = argc > 1 ? std::atoi(argv[1]) : 0;
    bool all_pass = true;
    for (const Criterion& c : criteria) {
        if (only != 0 && c.id != only) continue;
        std::printf("criterion %d: %s\n", c.id, c.title);
        const auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = c.run();
        } catch (const std::exception& e) {
            outcome.require(false, std::string("exception: ") + e.what());
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        outcome.require(seconds < c.limit_seconds,
                        fmt("runtime %.3f s (limit %.0f s)", seconds, c.limit_seconds));
        std::printf("%s criterion %d: %s\n", outcome.pass ? "PASS" : "FAIL", c.id, c.title);
        all_pass = all_pass && outcome.pass;
    }
    return all_pass ? 0 : 1;
}
