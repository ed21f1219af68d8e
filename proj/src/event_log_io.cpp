#include "burstkit/event_log_io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "burstkit/errors.hpp"

namespace burstkit {

namespace {

constexpr std::array<char, 8> kMagic = {'B', 'U', 'R', 'S', 'T', 'L', 'O', 'G'};

void put_u64(std::ostream& out, std::uint64_t value) {
    std::array<char, 8> bytes{};
    for (std::size_t i = 0; i < 8; ++i) bytes[i] = static_cast<char>((value >> (8 * i)) & 0xFF);
    out.write(bytes.data(), bytes.size());
}

std::uint64_t get_u64(std::istream& in) {
    std::array<unsigned char, 8> bytes{};
    in.read(reinterpret_cast<char*>(bytes.data()), bytes.size());
    if (!in) throw ValidationError("event log: unexpected end of file");
    std::uint64_t value = 0;
    for (std::size_t i = 0; i < 8; ++i) value |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
    return value;
}

void put_f64(std::ostream& out, double value) { put_u64(out, std::bit_cast<std::uint64_t>(value)); }
double get_f64(std::istream& in) { return std::bit_cast<double>(get_u64(in)); }

void put_i64(std::ostream& out, std::int64_t value) {
    put_u64(out, static_cast<std::uint64_t>(value));
}
std::int64_t get_i64(std::istream& in) { return static_cast<std::int64_t>(get_u64(in)); }

}  // namespace

std::string format_hash(std::uint64_t hash) {
    std::ostringstream out;
    out << std::hex << std::setw(16) << std::setfill('0') << hash;
    return out.str();
}

void write_event_log_binary(std::ostream& out, const EventLog& log, std::uint64_t config_hash) {
    out.write(kMagic.data(), kMagic.size());
    put_u64(out, kEventLogVersion);
    put_u64(out, log.seed);
    put_u64(out, static_cast<std::uint64_t>(log.model));
    put_u64(out, config_hash);
    put_i64(out, log.initial.m);
    put_i64(out, log.initial.n);
    put_f64(out, log.initial.t);
    put_f64(out, log.t_end);
    put_u64(out, log.events.size());
    for (const Event& e : log.events) {
        put_f64(out, e.t);
        const std::array<char, 8> tail = {static_cast<char>(e.channel), static_cast<char>(e.dm),
                                          static_cast<char>(e.dn), 0, 0, 0, 0, 0};
        out.write(tail.data(), tail.size());
    }
    if (!out) throw ValidationError("event log: write failed");
}

EventLog read_event_log_binary(std::istream& in, std::uint64_t* config_hash) {
    std::array<char, 8> magic{};
    in.read(magic.data(), magic.size());
    if (!in || magic != kMagic) throw ValidationError("event log: bad magic");
    const std::uint64_t version = get_u64(in);
    if (version != kEventLogVersion) {
        throw ValidationError("event log: unsupported version " + std::to_string(version));
    }
    EventLog log;
    log.seed = get_u64(in);
    const std::uint64_t tag = get_u64(in);
    if (tag > 1) throw ValidationError("event log: unknown model tag");
    log.model = static_cast<ModelTag>(tag);
    const std::uint64_t hash = get_u64(in);
    if (config_hash) *config_hash = hash;
    log.initial.m = get_i64(in);
    log.initial.n = get_i64(in);
    log.initial.t = get_f64(in);
    log.t_end = get_f64(in);
    const std::uint64_t count = get_u64(in);
    log.events.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(count, 1u << 24)));
    for (std::uint64_t i = 0; i < count; ++i) {
        Event e;
        e.t = get_f64(in);
        std::array<char, 8> tail{};
        in.read(tail.data(), tail.size());
        if (!in) throw ValidationError("event log: truncated record");
        e.channel = static_cast<Channel>(static_cast<std::uint8_t>(tail[0]));
        e.dm = static_cast<std::int8_t>(tail[1]);
        e.dn = static_cast<std::int8_t>(tail[2]);
        log.events.push_back(e);
    }
    validate_event_log(log);
    return log;
}

void save_event_log_binary(const std::filesystem::path& path, const EventLog& log,
                           std::uint64_t config_hash) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot open " + path.string() + " for writing");
    write_event_log_binary(out, log, config_hash);
}

EventLog load_event_log_binary(const std::filesystem::path& path, std::uint64_t* config_hash) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open " + path.string());
    return read_event_log_binary(in, config_hash);
}

void write_csv_provenance(std::ostream& out, const Provenance& provenance) {
    out << "# config_hash=" << format_hash(provenance.config_hash) << " seed=" << provenance.seed
        << '\n';
}

void write_event_log_csv(std::ostream& out, const EventLog& log, const Provenance& provenance) {
    write_csv_provenance(out, provenance);
    out << "# model=" << to_string(log.model) << " t_end=" << std::setprecision(17) << log.t_end
        << '\n';
    out << "t,channel,m,n\n";
    std::int64_t m = log.initial.m;
    std::int64_t n = log.initial.n;
    out << log.initial.t << ",init," << m << ',' << n << '\n';
    for (const Event& e : log.events) {
        m += e.dm;
        n += e.dn;
        out << e.t << ',' << to_string(e.channel) << ',' << m << ',' << n << '\n';
    }
}

void write_trajectory_csv(std::ostream& out, const SampledTrajectory& trajectory,
                          const Provenance& provenance) {
    write_csv_provenance(out, provenance);
    out << "# dt=" << std::setprecision(17) << trajectory.dt << '\n';
    out << "t,m,n\n";
    for (std::size_t i = 0; i < trajectory.size(); ++i) {
        out << trajectory.t0 + static_cast<double>(i) * trajectory.dt << ',' << trajectory.m[i]
            << ',' << trajectory.n[i] << '\n';
    }
}

}  // namespace burstkit
