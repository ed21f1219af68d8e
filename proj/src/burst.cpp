#include "burstkit/burst.hpp"

#include <algorithm>
#include <cmath>

#include "burstkit/analytic.hpp"
#include "burstkit/errors.hpp"

namespace burstkit {

namespace {

class BurstDetector {
public:
    BurstDetector(Species species, double dt) {
        report_.species = species;
        report_.dt = dt;
    }

    void feed(double t, std::int64_t value) {
        if (report_.samples > 0) {
            const std::int64_t step = value - previous_;
            if (step > 0) report_.total_increase += step;
            if (step < 0) report_.total_decrease -= step;
            report_.max_increment = std::max(report_.max_increment, step);
            if (step >= 2) report_.events.push_back({previous_t_, step});
        }
        previous_ = value;
        previous_t_ = t;
        ++report_.samples;
    }

    BurstReport finish() {
        report_.duration =
            report_.samples > 1 ? static_cast<double>(report_.samples - 1) * report_.dt : 0.0;
        if (!report_.events.empty()) {
            double total = 0.0;
            for (const BurstEvent& e : report_.events) total += static_cast<double>(e.size);
            report_.mean_size = total / static_cast<double>(report_.events.size());
        }
        if (report_.duration > 0.0) {
            report_.frequency = static_cast<double>(report_.events.size()) / report_.duration;
        }
        return std::move(report_);
    }

private:
    BurstReport report_;
    std::int64_t previous_ = 0;
    double previous_t_ = 0.0;
};

}  // namespace

std::string_view to_string(Species species) {
    return species == Species::mrna ? "mrna" : "protein";
}

BurstReport detect_apparent_bursts(const SampledTrajectory& trajectory, Species species) {
    const auto& values = species == Species::protein ? trajectory.n : trajectory.m;
    BurstDetector detector(species, trajectory.dt);
    for (std::size_t i = 0; i < values.size(); ++i) {
        detector.feed(trajectory.t0 + static_cast<double>(i) * trajectory.dt, values[i]);
    }
    return detector.finish();
}

std::vector<BurstReport> resolution_scan(const EventLog& log, std::span<const double> resolutions,
                                         Species species) {
    for (std::size_t i = 0; i < resolutions.size(); ++i) {
        if (!(resolutions[i] > 0.0) || !std::isfinite(resolutions[i])) {
            throw ValidationError("resolutions must be positive");
        }
        if (i > 0 && !(resolutions[i] < resolutions[i - 1])) {
            throw ValidationError("resolutions must be sorted in decreasing order");
        }
    }
    std::vector<BurstReport> reports;
    reports.reserve(resolutions.size());
    for (double dt : resolutions) {
        BurstDetector detector(species, dt);
        for_each_sample(log, dt, log.initial.t, log.t_end,
                        [&](std::size_t, double t, std::int64_t m, std::int64_t n) {
                            detector.feed(t, species == Species::protein ? n : m);
                        });
        reports.push_back(detector.finish());
    }
    return reports;
}

double recommended_resolution(const TwoStageRates& rates) {
    if (!(rates.nu_P > 0.0) || !std::isfinite(rates.nu_P)) {
        throw ValidationError("recommended resolution needs nu_P > 0");
    }
    return 1.0 / rates.nu_P;
}

bool lac_guidance_applies(const TwoStageRates& rates_per_second) {
    const double resolution = recommended_resolution(rates_per_second);
    return resolution >= kLacBandLowSeconds && resolution <= kLacDetectionResolutionSeconds;
}

BurstSummary burst_statistics_summary(std::span<const BurstReport> reports,
                                      const BinaryParams& params) {
    BurstSummary summary;
    summary.delta = burst_size(params);
    summary.switch_frequency = stationary_switch_frequency(params);
    for (const BurstReport& report : reports) {
        BurstSummaryRow row{report.dt, report.events.size(), report.mean_size, report.frequency,
                            std::nullopt};
        if (!report.events.empty() && summary.delta > 0.0) {
            row.size_to_delta = report.mean_size / summary.delta;
        }
        summary.rows.push_back(row);
    }
    return summary;
}

std::size_t count_switch_on(const EventLog& log) {
    return static_cast<std::size_t>(std::count_if(
        log.events.begin(), log.events.end(),
        [](const Event& e) { return e.channel == Channel::m_birth; }));
}

}  // namespace burstkit
