#include <doctest.h>

#include <cmath>
#include <random>

#include "burstkit/analytic.hpp"
#include "burstkit/burst.hpp"
#include "burstkit/cme_oracle.hpp"
#include "burstkit/errors.hpp"
#include "burstkit/ssa.hpp"

using namespace burstkit;

namespace {

// Random logs from both models with moderate rates, so that sampling below
// the smallest birth gap stays affordable.
std::vector<EventLog> random_logs(std::uint64_t seed, int count) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<EventLog> logs;
    for (int i = 0; i < count; ++i) {
        if (i % 2 == 0) {
            const double a = 0.2 + 2.0 * u(gen);
            const BinaryParams p{a, a + 20.0 * u(gen), 0.5 + 0.5 * u(gen), 30.0 * u(gen)};
            logs.push_back(simulate_binary(p, {}, 3.0, gen()));
        } else {
            const TwoStageRates r{2.0 * u(gen), 0.2 * u(gen), 15.0 * u(gen), 5.0 * u(gen),
                                  0.5 + u(gen)};
            logs.push_back(simulate_two_stage(r, {}, 3.0, gen()));
        }
    }
    return logs;
}

}  // namespace

TEST_SUITE("properties") {

TEST_CASE("every simulated log moves one molecule at a time") {
    for (const EventLog& log : random_logs(1, 60)) {
        CHECK_NOTHROW(validate_event_log(log));
        for (const Event& e : log.events) CHECK(std::abs(e.dm) + std::abs(e.dn) == 1);
    }
}

TEST_CASE("no apparent bursts below the smallest birth gap") {
    std::size_t checked = 0;
    for (const EventLog& log : random_logs(2, 60)) {
        const double gap = min_inter_birth_gap(log);
        if (!std::isfinite(gap)) continue;
        const double dt = 0.999 * gap;
        if ((log.t_end - log.initial.t) / dt > 2e7) continue;
        const std::vector<double> dts{dt};
        for (Species s : {Species::protein}) {
            const BurstReport r = resolution_scan(log, dts, s).front();
            CHECK(r.events.empty());
            CHECK(r.max_increment <= 1);
        }
        ++checked;
    }
    CHECK(checked >= 40);
}

TEST_CASE("sampled increments add up to the net change") {
    for (const EventLog& log : random_logs(3, 30)) {
        const std::vector<double> dts{0.5, 0.05, 0.003};
        const SystemState start = log.state_at(log.initial.t);
        for (const BurstReport& r : resolution_scan(log, dts)) {
            const double end_t =
                log.initial.t + static_cast<double>(r.samples - 1) * r.dt;
            const SystemState end = log.state_at(end_t);
            CHECK(r.total_increase - r.total_decrease == end.n - start.n);
            for (const BurstEvent& e : r.events) CHECK(e.size >= 2);
            CHECK(r.frequency >= 0.0);
        }
    }
}

TEST_CASE("burst frequency falls with finer sampling below the translation time") {
    // Above 1/nu the frequency is not monotone: at these parameters it rises
    // from about 0.75 at dt = 0.1 to about 2.5 at dt = 1e-3, because one
    // burst is split over several steps that each gain two or more.
    const BinaryParams p{1.0, 100.0, 1.0, 1000.0};
    const std::vector<double> dts{1e-3, 3e-4, 1e-4, 3e-5, 1e-5};
    std::vector<double> mean_frequency(dts.size(), 0.0);
    const int replicas = 20;
    for (int r = 0; r < replicas; ++r) {
        const EventLog log = simulate_binary(p, {}, 50.0, 1000 + r);
        const auto reports = resolution_scan(log, dts);
        for (std::size_t i = 0; i < dts.size(); ++i) {
            mean_frequency[i] += reports[i].frequency / replicas;
        }
    }
    for (std::size_t i = 1; i < dts.size(); ++i) {
        CAPTURE(dts[i]);
        CHECK(mean_frequency[i] <= mean_frequency[i - 1]);
    }
}

TEST_CASE("closed form is normalized across the grid") {
    for (const BinaryParams& p : validation_grid()) {
        const JointSteadyState s = steady_state(p);
        CHECK(std::abs(s.marginal.total() + s.marginal.tail_mass_bound() - 1.0) <= 1e-9);
        CHECK(s.marginal.tail_mass_bound() <= 1e-10);
        for (double x : s.marginal.probs()) CHECK(x >= 0.0);
    }
}

TEST_CASE("Fano factor of the external gene is at least one") {
    std::mt19937_64 gen(4);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const double a = 0.01 + 10.0 * u(gen);
        const BinaryParams p{a, a + 1000.0 * u(gen), 1.0, 2000.0 * u(gen)};
        CHECK(fano(p) >= 1.0);
        CHECK(fano(p) == doctest::Approx(fano_external(p)).epsilon(1e-10));
    }
}

TEST_CASE("self-regulation raises the on probability") {
    for (double theta : {0.999, 0.99, 0.95, 0.9}) {
        CHECK(p_on({1.0, 100.0, theta, 1000.0}) > p_on({1.0, 100.0, 1.0, 1000.0}));
    }
}

}
