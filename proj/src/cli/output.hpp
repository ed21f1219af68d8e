#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "burstkit/cli.hpp"
#include "burstkit/config.hpp"
#include "burstkit/distribution.hpp"
#include "burstkit/errors.hpp"
#include "burstkit/event_log_io.hpp"
#include "burstkit/burst.hpp"
#include "burstkit/svg_plot.hpp"

namespace burstkit::cli {

// Output directory of one run. Every file it writes carries the config hash
// and seed; the resolved config itself is saved as config.json.
class OutputDir {
public:
    explicit OutputDir(const ExperimentConfig& config)
        : root_(config.out_dir), provenance_{config_hash(config), config.seed} {
        std::error_code ec;
        std::filesystem::create_directories(root_, ec);
        if (ec) throw ValidationError("cannot create output directory " + root_.string());
        write_raw("config.json", canonical_text(config));
    }

    const Provenance& provenance() const { return provenance_; }
    const std::vector<std::string>& written() const { return written_; }

    std::ofstream open(const std::string& name, bool binary = false) {
        const auto path = root_ / name;
        std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
        if (!out) throw ValidationError("cannot write " + path.string());
        written_.push_back(path.string());
        return out;
    }

    void write_json(const std::string& name, nlohmann::json j) {
        j["provenance"] = provenance_json();
        write_raw(name, j.dump(2) + "\n");
    }

    void write_svg(const std::string& name, std::string svg_text) { write_raw(name, svg_text); }

    std::string svg_comment() const {
        return "config_hash=" + format_hash(provenance_.config_hash) +
               " seed=" + std::to_string(provenance_.seed);
    }

    nlohmann::json provenance_json() const {
        return {{"config_hash", format_hash(provenance_.config_hash)}, {"seed", provenance_.seed}};
    }

private:
    void write_raw(const std::string& name, const std::string& text) {
        auto out = open(name);
        out << text;
    }

    std::filesystem::path root_;
    Provenance provenance_;
    std::vector<std::string> written_;
};

// Summary fields shared by the commands.
nlohmann::json binary_json(const BinaryParams& p);
nlohmann::json distribution_stats_json(const DiscreteDistribution& d);
double finite_or_zero(double x);

// Sampled trajectory as a step plot, with apparent bursts marked when
// `mark_bursts` is set.
svg::Panel trajectory_panel(const SampledTrajectory& trajectory, Species species,
                            const std::string& title, bool mark_bursts);

// Main panel over [t0, t1] sampled at `dt`, and an inset of width
// (t1 - t0) / magnification sampled magnification times finer. The inset
// opens just before the first apparent burst of the main panel, and its
// edges are drawn as dashed lines on the main panel.
std::pair<svg::Panel, svg::Panel> magnified_trajectory_panels(const EventLog& log, double t0,
                                                              double t1, double dt,
                                                              double magnification,
                                                              const std::string& title);

// Start of the first apparent burst found in [t0, t1] at resolution dt,
// or t0 if there is none.
double first_burst_time(const EventLog& log, double t0, double t1, double dt);

CommandResult run_analytic(const ExperimentConfig& config);
CommandResult run_simulate(const ExperimentConfig& config);
CommandResult run_burst_scan(const ExperimentConfig& config);
CommandResult run_estimate(const ExperimentConfig& config);
CommandResult run_oracle_check(const ExperimentConfig& config);
CommandResult run_reproduce_figure(const ExperimentConfig& config);

}  // namespace burstkit::cli
