#pragma once

// Exact (direct-method) stochastic simulation of the two-stage and binary
// models. Every reaction changes one species by exactly one.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "burstkit/distribution.hpp"
#include "burstkit/params.hpp"

namespace burstkit {

enum class ModelTag : std::uint8_t { two_stage = 0, binary = 1 };

std::string_view to_string(ModelTag tag);

// Channel ids shared by both models: for the binary model m is the gene state,
// so m_birth is the off->on switch and m_death the on->off switch.
enum class Channel : std::uint8_t { m_birth = 0, n_birth = 1, m_death = 2, n_death = 3 };

std::string_view to_string(Channel channel);

struct SystemState {
    std::int64_t m = 0;
    std::int64_t n = 0;
    double t = 0.0;

    bool operator==(const SystemState&) const = default;
};

struct Event {
    double t = 0.0;
    Channel channel = Channel::m_birth;
    std::int8_t dm = 0;
    std::int8_t dn = 0;

    bool operator==(const Event&) const = default;
};

// Jump (dm, dn) that a channel applies.
Event make_event(double t, Channel channel);

struct EventLog {
    ModelTag model = ModelTag::binary;
    std::uint64_t seed = 0;
    SystemState initial{};
    double t_end = 0.0;
    std::vector<Event> events;

    SystemState final_state() const;
    // State after all events with time <= t.
    SystemState state_at(double t) const;

    bool operator==(const EventLog&) const = default;
};

// Throws ValidationError unless event times are strictly increasing inside
// (initial.t, t_end], each event moves one species by exactly one in the way
// its channel prescribes, and replay never produces a negative count (or a
// binary gene state outside {0, 1}).
void validate_event_log(const EventLog& log);

// Smallest gap between consecutive births of the given species (infinity when
// there are fewer than two births).
double min_inter_birth_gap(const EventLog& log, bool protein = true);

struct SimulationOptions {
    std::uint64_t event_cap = 100'000'000;
};

// Propensities: mu0_M + mu1_M n, nu_P m, rho_M m, rho_P n.
EventLog simulate_two_stage(const TwoStageRates& rates, const SystemState& initial, double t_end,
                            std::uint64_t seed, const SimulationOptions& options = {});

// Propensities in protein-lifetime units: off->on (a + (1-theta) n)/theta,
// protein birth nu while on, on->off (b - a)/theta, protein death n.
EventLog simulate_binary(const BinaryParams& params, const SystemState& initial, double tau_end,
                         std::uint64_t seed, const SimulationOptions& options = {});

using ModelSpec = std::variant<TwoStageRates, BinaryParams>;

EventLog simulate(const ModelSpec& model, const SystemState& initial, double t_end,
                  std::uint64_t seed, const SimulationOptions& options = {});

// Protein degradation rate, the unit of "protein lifetimes" for a model.
double protein_decay_rate(const ModelSpec& model);

struct EnsembleOptions {
    std::size_t replicas = 1;
    double burn_in = 0.0;
    double horizon = 1.0;  // absolute end time of each replica
    std::uint64_t seed = 0;
    SystemState initial{};
    std::size_t batches_per_replica = 20;
    unsigned threads = 0;  // 0: BURSTKIT_THREADS or hardware concurrency
    SimulationOptions simulation{};
};

struct EnsembleResult {
    DiscreteDistribution histogram;          // time-weighted occupancy of n
    std::vector<double> bin_standard_error;  // batch-means SE per bin
    double mean = 0.0;
    double mean_standard_error = 0.0;
    std::vector<double> m_occupancy;  // fraction of observed time at each m
    double observed_time = 0.0;       // pooled over replicas
    std::size_t batches = 0;
    std::uint64_t events = 0;
};

// Replica r is simulate(model, initial, horizon, derive_stream_seed(seed, r));
// statistics are accumulated over [burn_in, horizon] and merged in replica
// order, so the result does not depend on the thread count.
EnsembleResult ensemble_histogram(const ModelSpec& model, const EnsembleOptions& options);

// Worker count: `requested` if nonzero, else BURSTKIT_THREADS, else hardware
// concurrency; never more than `jobs`.
unsigned resolve_thread_count(unsigned requested, std::size_t jobs);

// 2 sqrt(K / N): heuristic TV bound for an empirical histogram with support
// size K and N effective samples.
double tv_statistical_bound(std::size_t support, double effective_samples);

struct SampledTrajectory {
    double t0 = 0.0;
    double dt = 0.0;
    std::vector<std::int64_t> m;
    std::vector<std::int64_t> n;
    std::uint64_t source_seed = 0;

    std::size_t size() const { return n.size(); }
};

// Number of grid points t_start + i dt inside [t_start, t_end].
std::size_t sample_count(double dt, double t_start, double t_end);

// Calls fn(i, t, m, n) for each grid point; the state is the left-continuous
// step function, i.e. it includes every event at time <= t.
template <class Fn>
void for_each_sample(const EventLog& log, double dt, double t_start, double t_end, Fn&& fn);

SampledTrajectory sample_trajectory(const EventLog& log, double dt, double t_start, double t_end);

// ---------------------------------------------------------------------------

void check_sampling_range(const EventLog& log, double dt, double t_start, double t_end);

template <class Fn>
void for_each_sample(const EventLog& log, double dt, double t_start, double t_end, Fn&& fn) {
    check_sampling_range(log, dt, t_start, t_end);
    const std::size_t count = sample_count(dt, t_start, t_end);
    std::int64_t m = log.initial.m;
    std::int64_t n = log.initial.n;
    std::size_t next = 0;
    const std::size_t total = log.events.size();
    for (std::size_t i = 0; i < count; ++i) {
        const double t = t_start + static_cast<double>(i) * dt;
        while (next < total && log.events[next].t <= t) {
            m += log.events[next].dm;
            n += log.events[next].dn;
            ++next;
        }
        fn(i, t, m, n);
    }
}

}  // namespace burstkit
