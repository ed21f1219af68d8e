#pragma once

// Apparent bursts: a rise of two or more molecules between consecutive
// samples of a trajectory. Increments of one and decreases never count.
// Because every underlying jump is a single molecule, any sampling step
// shorter than the smallest gap between births yields no bursts at all.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "burstkit/params.hpp"
#include "burstkit/ssa.hpp"

namespace burstkit {

enum class Species { mrna, protein };

std::string_view to_string(Species species);

struct BurstEvent {
    double t = 0.0;  // time of the earlier sample
    std::int64_t size = 0;
};

struct BurstReport {
    Species species = Species::protein;
    double dt = 0.0;
    std::vector<BurstEvent> events;
    double mean_size = 0.0;  // 0 when there are no events
    double frequency = 0.0;  // events per unit time
    std::int64_t max_increment = 0;
    // Sum of positive and of (absolute) negative sample-to-sample changes;
    // their difference is last - first.
    std::int64_t total_increase = 0;
    std::int64_t total_decrease = 0;
    double duration = 0.0;
    std::size_t samples = 0;
};

BurstReport detect_apparent_bursts(const SampledTrajectory& trajectory,
                                   Species species = Species::protein);

// One report per resolution, each sampling the whole log span. Samples are
// streamed, so fine resolutions over long logs need no trajectory storage.
// Resolutions must be positive and strictly decreasing.
std::vector<BurstReport> resolution_scan(const EventLog& log, std::span<const double> resolutions,
                                         Species species = Species::protein);

// 1 / nu_P, the mean time to translate one protein, in the rates' time unit.
double recommended_resolution(const TwoStageRates& rates);

inline constexpr double kLacBandLowSeconds = 10.0;
inline constexpr double kLacBandHighSeconds = 60.0;
inline constexpr double kLacDetectionResolutionSeconds = 240.0;

// True when 1/nu_P (rates per second) falls between the lower edge of the
// 10-60 s guidance band and the 4 min detection resolution of the lac
// measurements, i.e. the regime that guidance was derived for.
bool lac_guidance_applies(const TwoStageRates& rates_per_second);

struct BurstSummaryRow {
    double dt = 0.0;
    std::size_t n_bursts = 0;
    double mean_size = 0.0;
    double frequency = 0.0;
    std::optional<double> size_to_delta;  // empty when there are no bursts
};

struct BurstSummary {
    double delta = 0.0;             // nu / b
    double switch_frequency = 0.0;  // stationary off->on switches per unit time
    std::vector<BurstSummaryRow> rows;
};

BurstSummary burst_statistics_summary(std::span<const BurstReport> reports,
                                      const BinaryParams& params);

// Number of off->on switches (mRNA births) in a log.
std::size_t count_switch_on(const EventLog& log);

}  // namespace burstkit
