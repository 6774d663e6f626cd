#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "thz/atmosphere.hpp"
#include "thz/channel.hpp"
#include "thz/mobility.hpp"

namespace thz {

enum class ScenarioKind { PathLoss, Windows, Rate, Backhaul, KioskC, KioskD, Abs };

std::string_view to_string(ScenarioKind kind);
ScenarioKind scenario_from_name(std::string_view name);

/// Parse failure; `field()` is the dotted key (or section) at fault and
/// `line()` the 1-based source line, 0 for command-line overrides.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, std::size_t line, const std::string& what);
    const std::string& field() const { return field_; }
    std::size_t line() const { return line_; }

private:
    std::string field_;
    std::size_t line_;
};

/// Values are kept in the units they are written in (degrees for angles),
/// so a parsed config re-emits byte-for-byte the same values.
struct SimConfig {
    ScenarioKind scenario = ScenarioKind::PathLoss;

    Atmosphere atmosphere;

    struct Hardware {
        double tx_power_dbm = 10.0;
        double noise_figure_db = 10.0;
        double system_temperature_k = 290.0;
        double tx_beamwidth_deg = 10.0;
        double rx_beamwidth_deg = 10.0;
        bool operator==(const Hardware&) const = default;
    } hardware;

    struct Absorption {
        std::string source = "builtin"; // builtin | lines | table
        std::string path;
        double continuum_floor = kBuiltinContinuumFloor;
        double reference_density = kBuiltinReferenceDensity;
        bool operator==(const Absorption&) const = default;
    } absorption;

    struct Spectrum {
        SpectrumSearch search;
        double subchannel_hz = 100e6;
        double bandwidth_hz = 10e9;
        double rate_step_hz = 10e9;
        bool operator==(const Spectrum&) const = default;
    } spectrum;

    struct Mobility {
        std::string mobility_class = "S1";
        MobilitySettings settings;
        bool trace = false;
        bool operator==(const Mobility&) const = default;
    } mobility;

    struct Scenario {
        double distance_m = 1.0;
        double total_distance_m = 100.0;
        double required_rate_bps = 100e9;
        double d_max_search_m = 1000.0;
        double demand_rate_bps = 10e9;
        std::int64_t users = 30;
        double r_min_m = 0.5;
        double r_max_m = 5.0;
        double sector_half_angle_deg = 60.0;
        double disk_radius_m = 100.0;
        std::int64_t seeds = 100;
        bool operator==(const Scenario&) const = default;
    } params;

    struct Sweep {
        std::vector<double> humidities;  // empty: atmosphere RH only
        std::vector<double> distances_m; // empty: scenario distance only
        std::vector<double> deltas_deg;
        std::vector<double> heights_m;
        bool operator==(const Sweep&) const = default;
    } sweep;

    std::uint64_t seed = 0;
    std::string output = ".";

    bool operator==(const SimConfig&) const = default;
};

using ConfigOverrides = std::vector<std::pair<std::string, std::string>>;

/// Parses the sectioned key/value format, applies `overrides` (dotted keys,
/// they win over the file), fills per-scenario defaults and validates.
SimConfig parse_config(std::string_view text, const ConfigOverrides& overrides = {});

/// Emits every field explicitly; parse_config(to_text(c)) == c.
std::string to_text(const SimConfig& config);

/// Splits `key=value` from a --set flag.
std::pair<std::string, std::string> split_override(std::string_view kv);

/// Comma list or inclusive `start:step:stop` range.
std::vector<double> parse_number_list(std::string_view text);

} // namespace thz
