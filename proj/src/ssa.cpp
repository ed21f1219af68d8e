#include "burstkit/ssa.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <optional>
#include <string>
#include <thread>

#include "burstkit/errors.hpp"
#include "burstkit/rng.hpp"

namespace burstkit {

namespace {

using Propensities = std::array<double, 4>;

struct TwoStagePropensity {
    TwoStageRates rates;

    Propensities operator()(const SystemState& s) const {
        const double m = static_cast<double>(s.m);
        const double n = static_cast<double>(s.n);
        return {rates.mu0_M + rates.mu1_M * n, rates.nu_P * m, rates.rho_M * m, rates.rho_P * n};
    }
};

struct BinaryPropensity {
    BinaryParams params;
    double off_rate;

    Propensities operator()(const SystemState& s) const {
        const double n = static_cast<double>(s.n);
        if (s.m == 0) return {switch_on_rate(params, n), 0.0, 0.0, n};
        return {0.0, params.nu, off_rate, n};
    }
};

// Direct method: one exponential clock for the total propensity, then a
// categorical draw of the channel. sink.hold(state, t0, t1) sees every
// interval the state is held; sink.event(event) sees each jump.
template <class Propensity, class Sink>
void run_direct_method(const Propensity& propensity, SystemState& state, double t_end, Rng& rng,
                       const SimulationOptions& options, Sink& sink) {
    std::uint64_t count = 0;
    for (;;) {
        const Propensities w = propensity(state);
        const double total = w[0] + w[1] + w[2] + w[3];
        if (!(total > 0.0)) {
            sink.hold(state, state.t, t_end);
            state.t = t_end;
            return;
        }
        double t_next = state.t + rng.exponential(total);
        if (t_next >= t_end) {
            sink.hold(state, state.t, t_end);
            state.t = t_end;
            return;
        }
        // keep event times strictly increasing when the step is below one ulp
        if (t_next <= state.t) t_next = std::nextafter(state.t, t_end);

        const double u = rng.uniform() * total;
        std::size_t pick = 4;
        double acc = 0.0;
        for (std::size_t i = 0; i < 4; ++i) {
            acc += w[i];
            if (u < acc) {
                pick = i;
                break;
            }
        }
        if (pick == 4) {
            for (std::size_t i = 4; i-- > 0;) {
                if (w[i] > 0.0) {
                    pick = i;
                    break;
                }
            }
        }
        if (++count > options.event_cap) {
            throw NumericalError("event cap of " + std::to_string(options.event_cap) +
                                 " exceeded before t_end");
        }
        sink.hold(state, state.t, t_next);
        const Event event = make_event(t_next, static_cast<Channel>(pick));
        state.m += event.dm;
        state.n += event.dn;
        state.t = t_next;
        sink.event(event);
    }
}

struct RecordingSink {
    std::vector<Event>* events;

    void hold(const SystemState&, double, double) {}
    void event(const Event& e) { events->push_back(e); }
};

void check_initial(const SystemState& initial, double t_end, bool binary) {
    if (initial.m < 0 || initial.n < 0) throw ValidationError("initial counts must be >= 0");
    if (binary && initial.m > 1) throw ValidationError("binary gene state must be 0 or 1");
    if (!std::isfinite(initial.t) || !std::isfinite(t_end)) {
        throw ValidationError("simulation times must be finite");
    }
    if (!(t_end > initial.t)) throw ValidationError("t_end must be greater than the initial time");
}

template <class Propensity>
EventLog record(const Propensity& propensity, ModelTag tag, const SystemState& initial,
                double t_end, std::uint64_t seed, const SimulationOptions& options) {
    EventLog log;
    log.model = tag;
    log.seed = seed;
    log.initial = initial;
    log.t_end = t_end;
    SystemState state = initial;
    Rng rng(seed);
    RecordingSink sink{&log.events};
    run_direct_method(propensity, state, t_end, rng, options, sink);
    return log;
}

// Time-weighted occupancy over [burn_in, horizon], split into equal batches.
class OccupancySink {
public:
    OccupancySink(double burn_in, double horizon, std::size_t batches)
        : start_(burn_in), batch_length_((horizon - burn_in) / static_cast<double>(batches)),
          batches_(batches) {}

    void hold(const SystemState& s, double t0, double t1) {
        t0 = std::max(t0, start_);
        while (t0 < t1 && batch_ < batches_) {
            const double batch_end = batch_end_time();
            const double upto = std::min(t1, batch_end);
            if (upto > t0) add(s, upto - t0);
            if (upto < batch_end) return;
            flush();
            t0 = upto;
        }
    }

    void event(const Event&) { ++event_count; }

    void finish() {
        while (batch_ < batches_) flush();
    }

    std::vector<double> occupancy;    // total time per n
    std::vector<double> m_occupancy;  // total time per m
    std::vector<double> frac_sum;     // per n: sum over batches of batch fraction
    std::vector<double> frac_sq_sum;
    std::vector<double> batch_means;
    std::uint64_t event_count = 0;

private:
    double batch_end_time() const {
        return batch_ + 1 == batches_ ? std::numeric_limits<double>::infinity()
                                      : start_ + static_cast<double>(batch_ + 1) * batch_length_;
    }

    static void grow(std::vector<double>& v, std::size_t size) {
        if (v.size() < size) v.resize(size, 0.0);
    }

    void add(const SystemState& s, double duration) {
        const auto n = static_cast<std::size_t>(s.n);
        const auto m = static_cast<std::size_t>(s.m);
        grow(batch_occupancy_, n + 1);
        grow(m_occupancy, m + 1);
        batch_occupancy_[n] += duration;
        m_occupancy[m] += duration;
        batch_time_ += duration;
        batch_weighted_n_ += duration * static_cast<double>(s.n);
    }

    void flush() {
        grow(occupancy, batch_occupancy_.size());
        grow(frac_sum, batch_occupancy_.size());
        grow(frac_sq_sum, batch_occupancy_.size());
        for (std::size_t n = 0; n < batch_occupancy_.size(); ++n) {
            occupancy[n] += batch_occupancy_[n];
            const double frac = batch_time_ > 0.0 ? batch_occupancy_[n] / batch_time_ : 0.0;
            frac_sum[n] += frac;
            frac_sq_sum[n] += frac * frac;
        }
        batch_means.push_back(batch_time_ > 0.0 ? batch_weighted_n_ / batch_time_ : 0.0);
        std::fill(batch_occupancy_.begin(), batch_occupancy_.end(), 0.0);
        batch_time_ = 0.0;
        batch_weighted_n_ = 0.0;
        ++batch_;
    }

    double start_;
    double batch_length_;
    std::size_t batches_;
    std::size_t batch_ = 0;
    std::vector<double> batch_occupancy_;
    double batch_time_ = 0.0;
    double batch_weighted_n_ = 0.0;
};

template <class Propensity>
OccupancySink run_replica(const Propensity& propensity, const EnsembleOptions& options,
                          std::uint64_t seed) {
    OccupancySink sink(options.burn_in, options.horizon, options.batches_per_replica);
    SystemState state = options.initial;
    Rng rng(seed);
    run_direct_method(propensity, state, options.horizon, rng, options.simulation, sink);
    sink.finish();
    return sink;
}

double sample_sd(double sum, double sq_sum, std::size_t count) {
    if (count < 2) return 0.0;
    const double c = static_cast<double>(count);
    const double mean = sum / c;
    return std::sqrt(std::max(0.0, (sq_sum - c * mean * mean) / (c - 1.0)));
}

}  // namespace

std::string_view to_string(ModelTag tag) {
    return tag == ModelTag::two_stage ? "two-stage" : "binary";
}

std::string_view to_string(Channel channel) {
    switch (channel) {
        case Channel::m_birth: return "m_birth";
        case Channel::n_birth: return "n_birth";
        case Channel::m_death: return "m_death";
        case Channel::n_death: return "n_death";
    }
    return "unknown";
}

Event make_event(double t, Channel channel) {
    switch (channel) {
        case Channel::m_birth: return {t, channel, 1, 0};
        case Channel::n_birth: return {t, channel, 0, 1};
        case Channel::m_death: return {t, channel, -1, 0};
        case Channel::n_death: return {t, channel, 0, -1};
    }
    throw ValidationError("unknown reaction channel");
}

SystemState EventLog::final_state() const {
    SystemState s = initial;
    for (const Event& e : events) {
        s.m += e.dm;
        s.n += e.dn;
    }
    s.t = t_end;
    return s;
}

SystemState EventLog::state_at(double t) const {
    SystemState s = initial;
    for (const Event& e : events) {
        if (e.t > t) break;
        s.m += e.dm;
        s.n += e.dn;
    }
    s.t = t;
    return s;
}

void validate_event_log(const EventLog& log) {
    std::int64_t m = log.initial.m;
    std::int64_t n = log.initial.n;
    if (m < 0 || n < 0) throw ValidationError("event log: negative initial state");
    if (log.model == ModelTag::binary && m > 1) {
        throw ValidationError("event log: binary gene state outside {0, 1}");
    }
    double last = log.initial.t;
    for (std::size_t i = 0; i < log.events.size(); ++i) {
        const Event& e = log.events[i];
        const std::string where = "event log: event " + std::to_string(i);
        if (!(e.t > last)) throw ValidationError(where + " is not after its predecessor");
        if (e.t > log.t_end) throw ValidationError(where + " lies beyond t_end");
        if (static_cast<std::uint8_t>(e.channel) > 3) throw ValidationError(where + " has an unknown channel");
        const Event expected = make_event(e.t, e.channel);
        if (e.dm != expected.dm || e.dn != expected.dn) {
            throw ValidationError(where + " is not the unit jump of its channel");
        }
        if (std::abs(e.dm) + std::abs(e.dn) != 1) {
            throw ValidationError(where + " does not change exactly one species by one");
        }
        m += e.dm;
        n += e.dn;
        if (m < 0 || n < 0) throw ValidationError(where + " makes a count negative");
        if (log.model == ModelTag::binary && m > 1) {
            throw ValidationError(where + " takes the gene state outside {0, 1}");
        }
        last = e.t;
    }
}

double min_inter_birth_gap(const EventLog& log, bool protein) {
    const Channel birth = protein ? Channel::n_birth : Channel::m_birth;
    double gap = std::numeric_limits<double>::infinity();
    std::optional<double> previous;
    for (const Event& e : log.events) {
        if (e.channel != birth) continue;
        if (previous) gap = std::min(gap, e.t - *previous);
        previous = e.t;
    }
    return gap;
}

EventLog simulate_two_stage(const TwoStageRates& rates, const SystemState& initial, double t_end,
                            std::uint64_t seed, const SimulationOptions& options) {
    validate_simulation_rates(rates);
    check_initial(initial, t_end, false);
    return record(TwoStagePropensity{rates}, ModelTag::two_stage, initial, t_end, seed, options);
}

EventLog simulate_binary(const BinaryParams& params, const SystemState& initial, double tau_end,
                         std::uint64_t seed, const SimulationOptions& options) {
    validate(params);
    check_initial(initial, tau_end, true);
    return record(BinaryPropensity{params, switch_off_rate(params)}, ModelTag::binary, initial,
                  tau_end, seed, options);
}

EventLog simulate(const ModelSpec& model, const SystemState& initial, double t_end,
                  std::uint64_t seed, const SimulationOptions& options) {
    if (const auto* rates = std::get_if<TwoStageRates>(&model)) {
        return simulate_two_stage(*rates, initial, t_end, seed, options);
    }
    return simulate_binary(std::get<BinaryParams>(model), initial, t_end, seed, options);
}

double protein_decay_rate(const ModelSpec& model) {
    if (const auto* rates = std::get_if<TwoStageRates>(&model)) return rates->rho_P;
    return 1.0;
}

unsigned resolve_thread_count(unsigned requested, std::size_t jobs) {
    unsigned threads = requested;
    if (threads == 0) {
        if (const char* env = std::getenv("BURSTKIT_THREADS")) {
            char* end = nullptr;
            const long value = std::strtol(env, &end, 10);
            if (end != env && *end == '\0' && value > 0) threads = static_cast<unsigned>(value);
        }
    }
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    if (jobs > 0 && threads > jobs) threads = static_cast<unsigned>(jobs);
    return std::max(1u, threads);
}

double tv_statistical_bound(std::size_t support, double effective_samples) {
    if (!(effective_samples > 0.0)) return 1.0;
    return 2.0 * std::sqrt(static_cast<double>(support) / effective_samples);
}

EnsembleResult ensemble_histogram(const ModelSpec& model, const EnsembleOptions& options) {
    if (options.replicas < 1) throw ValidationError("replicas must be >= 1");
    if (options.batches_per_replica < 1) throw ValidationError("batches_per_replica must be >= 1");
    if (!(options.burn_in >= options.initial.t)) {
        throw ValidationError("burn_in must not precede the initial time");
    }
    if (!(options.horizon > options.burn_in)) throw ValidationError("horizon must exceed burn_in");
    const bool binary = std::holds_alternative<BinaryParams>(model);
    check_initial(options.initial, options.horizon, binary);
    if (binary) {
        validate(std::get<BinaryParams>(model));
    } else {
        validate_simulation_rates(std::get<TwoStageRates>(model));
    }

    std::vector<std::optional<OccupancySink>> replicas(options.replicas);
    std::vector<std::exception_ptr> errors(options.replicas);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t r = next++; r < options.replicas; r = next++) {
            try {
                const std::uint64_t seed = derive_stream_seed(options.seed, r);
                if (binary) {
                    const auto& p = std::get<BinaryParams>(model);
                    replicas[r] = run_replica(BinaryPropensity{p, switch_off_rate(p)}, options, seed);
                } else {
                    replicas[r] = run_replica(TwoStagePropensity{std::get<TwoStageRates>(model)},
                                              options, seed);
                }
            } catch (...) {
                errors[r] = std::current_exception();
            }
        }
    };
    const unsigned threads = resolve_thread_count(options.threads, options.replicas);
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    }
    for (const auto& error : errors) {
        if (error) std::rethrow_exception(error);
    }

    // deterministic merge in replica order
    std::vector<double> occupancy;
    std::vector<double> m_occupancy;
    std::vector<double> frac_sum;
    std::vector<double> frac_sq_sum;
    std::vector<double> batch_means;
    std::uint64_t events = 0;
    auto accumulate = [](std::vector<double>& into, const std::vector<double>& from) {
        if (into.size() < from.size()) into.resize(from.size(), 0.0);
        for (std::size_t i = 0; i < from.size(); ++i) into[i] += from[i];
    };
    for (const auto& replica : replicas) {
        accumulate(occupancy, replica->occupancy);
        accumulate(m_occupancy, replica->m_occupancy);
        accumulate(frac_sum, replica->frac_sum);
        accumulate(frac_sq_sum, replica->frac_sq_sum);
        batch_means.insert(batch_means.end(), replica->batch_means.begin(),
                           replica->batch_means.end());
        events += replica->event_count;
    }
    if (occupancy.empty()) occupancy.push_back(0.0);

    double observed = 0.0;
    for (double t : occupancy) observed += t;
    if (!(observed > 0.0)) throw NumericalError("ensemble observed no time after burn-in");
    std::vector<double> probs(occupancy.size());
    double weighted = 0.0;
    for (std::size_t n = 0; n < occupancy.size(); ++n) {
        probs[n] = occupancy[n] / observed;
        weighted += static_cast<double>(n) * occupancy[n];
    }
    for (double& t : m_occupancy) t /= observed;

    const std::size_t batches = batch_means.size();
    const double root_batches = std::sqrt(static_cast<double>(batches));
    std::vector<double> bin_se(probs.size(), 0.0);
    for (std::size_t n = 0; n < probs.size(); ++n) {
        bin_se[n] = sample_sd(frac_sum[n], frac_sq_sum[n], batches) / root_batches;
    }
    double mean_sum = 0.0;
    double mean_sq_sum = 0.0;
    for (double x : batch_means) {
        mean_sum += x;
        mean_sq_sum += x * x;
    }

    EnsembleResult result{.histogram = DiscreteDistribution(std::move(probs), 0.0),
                          .bin_standard_error = std::move(bin_se),
                          .mean = weighted / observed,
                          .mean_standard_error =
                              sample_sd(mean_sum, mean_sq_sum, batches) / root_batches,
                          .m_occupancy = std::move(m_occupancy),
                          // exact, rather than the rounded sum of occupancy times
                          .observed_time = static_cast<double>(options.replicas) *
                                           (options.horizon - options.burn_in),
                          .batches = batches,
                          .events = events};
    return result;
}

std::size_t sample_count(double dt, double t_start, double t_end) {
    return static_cast<std::size_t>(std::floor((t_end - t_start) / dt + 1e-9)) + 1;
}

void check_sampling_range(const EventLog& log, double dt, double t_start, double t_end) {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ValidationError("sampling dt must be > 0");
    if (!(t_start >= log.initial.t) || !(t_end <= log.t_end) || !(t_end >= t_start)) {
        throw ValidationError("sampling window [" + std::to_string(t_start) + ", " +
                              std::to_string(t_end) + "] is outside the log span [" +
                              std::to_string(log.initial.t) + ", " + std::to_string(log.t_end) +
                              "]");
    }
}

SampledTrajectory sample_trajectory(const EventLog& log, double dt, double t_start,
                                    double t_end) {
    SampledTrajectory out;
    out.t0 = t_start;
    out.dt = dt;
    out.source_seed = log.seed;
    check_sampling_range(log, dt, t_start, t_end);
    const std::size_t count = sample_count(dt, t_start, t_end);
    out.m.reserve(count);
    out.n.reserve(count);
    for_each_sample(log, dt, t_start, t_end,
                    [&](std::size_t, double, std::int64_t m, std::int64_t n) {
                        out.m.push_back(m);
                        out.n.push_back(n);
                    });
    return out;
}

}  // namespace burstkit
