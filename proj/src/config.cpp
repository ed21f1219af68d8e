#include "burstkit/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "burstkit/errors.hpp"

namespace burstkit {

namespace {

using nlohmann::json;

const std::set<std::string> kCommands = {"analytic",     "simulate",         "burst-scan",
                                         "estimate",     "oracle-check",     "reproduce-figure",
                                         "kummer-eval",  ""};
const std::set<std::string> kFormats = {"csv", "json", "svg", "bin"};

template <class T>
T field(const json& j, const char* key, const T& fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ValidationError(std::string("config: bad value for '") + key + "': " + e.what());
    }
}

}  // namespace

bool ExperimentConfig::wants(std::string_view format) const {
    return std::find(formats.begin(), formats.end(), format) != formats.end();
}

json to_json(const ExperimentConfig& c) {
    json j;
    j["command"] = c.command;
    j["parameters"] = to_json(c.parameters);
    j["simulator"] = c.simulator;
    j["seed"] = c.seed;
    j["replicas"] = c.replicas;
    j["burn_in"] = c.burn_in;
    j["t_end"] = c.t_end;
    j["dt"] = c.dt;
    j["resolutions"] = c.resolutions;
    j["tail_tol"] = c.tail_tol;
    j["n_max"] = c.n_max;
    j["m_max"] = c.m_max;
    j["delta"] = c.delta;
    j["grid"] = c.grid;
    j["event_log"] = c.event_log;
    j["out_dir"] = c.out_dir;
    j["formats"] = c.formats;
    return j;
}

ExperimentConfig config_from_json(const json& j) {
    if (!j.is_object()) throw ValidationError("config: expected a JSON object");
    static const std::set<std::string> known = {
        "command", "parameters", "simulator", "seed",  "replicas", "burn_in", "t_end",   "dt",
        "resolutions", "tail_tol", "n_max",   "m_max", "delta",    "out_dir", "formats", "grid", "event_log"};
    for (const auto& [key, value] : j.items()) {
        if (!known.contains(key)) throw ValidationError("config: unknown field '" + key + "'");
    }
    ExperimentConfig c;
    c.command = field(j, "command", c.command);
    if (!kCommands.contains(c.command)) throw ValidationError("config: unknown command '" + c.command + "'");
    if (j.contains("parameters")) c.parameters = parameters_from_json(j.at("parameters"));
    c.simulator = field(j, "simulator", c.simulator);
    if (c.simulator != "binary" && c.simulator != "two-stage") {
        throw ValidationError("config: simulator must be 'binary' or 'two-stage'");
    }
    c.seed = field(j, "seed", c.seed);
    c.replicas = field(j, "replicas", c.replicas);
    c.burn_in = field(j, "burn_in", c.burn_in);
    c.t_end = field(j, "t_end", c.t_end);
    c.dt = field(j, "dt", c.dt);
    c.resolutions = field(j, "resolutions", c.resolutions);
    c.tail_tol = field(j, "tail_tol", c.tail_tol);
    c.n_max = field(j, "n_max", c.n_max);
    c.m_max = field(j, "m_max", c.m_max);
    c.delta = field(j, "delta", c.delta);
    c.grid = field(j, "grid", c.grid);
    c.event_log = field(j, "event_log", c.event_log);
    c.out_dir = field(j, "out_dir", c.out_dir);
    c.formats = field(j, "formats", c.formats);
    for (const auto& f : c.formats) {
        if (!kFormats.contains(f)) throw ValidationError("config: unknown format '" + f + "'");
    }
    return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config file " + path.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ValidationError("config file " + path.string() + ": " + e.what());
    }
    return config_from_json(j);
}

std::string canonical_text(const ExperimentConfig& config) { return to_json(config).dump(2) + "\n"; }

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

std::uint64_t config_hash(const ExperimentConfig& config) {
    ExperimentConfig located = config;
    located.out_dir.clear();
    return fnv1a64(canonical_text(located));
}

}  // namespace burstkit
