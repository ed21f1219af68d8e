#pragma once

// On-disk forms of event logs and sampled trajectories.
//
// Binary event log, all fields little-endian:
//   header (80 bytes, eight-byte fields)
//     0  magic        "BURSTLOG"
//     8  version      u64, currently 1
//    16  seed         u64
//    24  model tag    u64 (0 two-stage, 1 binary)
//    32  config hash  u64
//    40  initial m    i64
//    48  initial n    i64
//    56  initial t    f64
//    64  t_end        f64
//    72  event count  u64
//   records (16 bytes each)
//     0  t            f64
//     8  channel      u8
//     9  dm           i8
//    10  dn           i8
//    11  reserved     5 zero bytes

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>

#include "burstkit/ssa.hpp"

namespace burstkit {

inline constexpr std::uint64_t kEventLogVersion = 1;
inline constexpr std::size_t kEventLogHeaderBytes = 80;
inline constexpr std::size_t kEventRecordBytes = 16;

// Provenance stamped into every output file.
struct Provenance {
    std::uint64_t config_hash = 0;
    std::uint64_t seed = 0;
};

std::string format_hash(std::uint64_t hash);

void write_event_log_binary(std::ostream& out, const EventLog& log, std::uint64_t config_hash);
// Returns the log and, through `config_hash`, the hash stored in the header.
EventLog read_event_log_binary(std::istream& in, std::uint64_t* config_hash = nullptr);

void save_event_log_binary(const std::filesystem::path& path, const EventLog& log,
                           std::uint64_t config_hash);
EventLog load_event_log_binary(const std::filesystem::path& path,
                               std::uint64_t* config_hash = nullptr);

// CSV with columns t, channel, m, n (state after the event); the first data
// row is the initial state with channel "init".
void write_event_log_csv(std::ostream& out, const EventLog& log, const Provenance& provenance);

// CSV with columns t, m, n.
void write_trajectory_csv(std::ostream& out, const SampledTrajectory& trajectory,
                          const Provenance& provenance);

// "# model=... seed=... config_hash=..." comment lines for CSV outputs.
void write_csv_provenance(std::ostream& out, const Provenance& provenance);

}  // namespace burstkit
