#include "thz/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <functional>
#include <map>

#include <fmt/format.h>

#include "thz/csv.hpp"

namespace thz {

namespace {

struct BadValue : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

double to_double(std::string_view s)
{
    s = trim(s);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v))
        throw BadValue(fmt::format("malformed number '{}'", s));
    return v;
}

template <typename Int>
Int to_integer(std::string_view s)
{
    s = trim(s);
    Int v{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
        throw BadValue(fmt::format("malformed integer '{}'", s));
    return v;
}

bool to_bool(std::string_view s)
{
    s = trim(s);
    if (s == "true" || s == "1")
        return true;
    if (s == "false" || s == "0")
        return false;
    throw BadValue(fmt::format("expected true/false, got '{}'", s));
}

std::string join(const std::vector<double>& v)
{
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i)
            out += ',';
        out += format_number(v[i]);
    }
    return out;
}

struct Field {
    std::string key;
    std::function<void(SimConfig&, std::string_view)> set;
    std::function<std::string(const SimConfig&)> get;
};

template <typename Ref>
Field number_field(std::string key, Ref ref)
{
    return {std::move(key),
            [ref](SimConfig& c, std::string_view v) { ref(c) = to_double(v); },
            [ref](const SimConfig& c) { return format_number(ref(c)); }};
}

template <typename Ref>
Field int_field(std::string key, Ref ref)
{
    return {std::move(key),
            [ref](SimConfig& c, std::string_view v) { ref(c) = to_integer<std::int64_t>(v); },
            [ref](const SimConfig& c) { return fmt::format("{}", ref(c)); }};
}

template <typename Ref>
Field list_field(std::string key, Ref ref)
{
    return {std::move(key),
            [ref](SimConfig& c, std::string_view v) { ref(c) = parse_number_list(v); },
            [ref](const SimConfig& c) { return join(ref(c)); }};
}

template <typename Ref>
Field string_field(std::string key, Ref ref)
{
    return {std::move(key),
            [ref](SimConfig& c, std::string_view v) { ref(c) = std::string(trim(v)); },
            [ref](const SimConfig& c) { return ref(c); }};
}

const std::vector<Field>& fields()
{
    static const std::vector<Field> table = [] {
        std::vector<Field> f;
        f.push_back({"scenario.name",
                     [](SimConfig& c, std::string_view v) { c.scenario = scenario_from_name(trim(v)); },
                     [](const SimConfig& c) { return std::string(to_string(c.scenario)); }});

        f.push_back(number_field("atmosphere.temperature_k", [](auto& c) -> auto& { return c.atmosphere.temperature_k; }));
        f.push_back(number_field("atmosphere.pressure_kpa", [](auto& c) -> auto& { return c.atmosphere.pressure_kpa; }));
        f.push_back(number_field("atmosphere.relative_humidity", [](auto& c) -> auto& { return c.atmosphere.relative_humidity; }));

        f.push_back(number_field("hardware.tx_power_dbm", [](auto& c) -> auto& { return c.hardware.tx_power_dbm; }));
        f.push_back(number_field("hardware.noise_figure_db", [](auto& c) -> auto& { return c.hardware.noise_figure_db; }));
        f.push_back(number_field("hardware.system_temperature_k", [](auto& c) -> auto& { return c.hardware.system_temperature_k; }));
        f.push_back(number_field("hardware.tx_beamwidth_deg", [](auto& c) -> auto& { return c.hardware.tx_beamwidth_deg; }));
        f.push_back(number_field("hardware.rx_beamwidth_deg", [](auto& c) -> auto& { return c.hardware.rx_beamwidth_deg; }));

        f.push_back(string_field("absorption.source", [](auto& c) -> auto& { return c.absorption.source; }));
        f.push_back(string_field("absorption.path", [](auto& c) -> auto& { return c.absorption.path; }));
        f.push_back(number_field("absorption.continuum_floor", [](auto& c) -> auto& { return c.absorption.continuum_floor; }));
        f.push_back(number_field("absorption.reference_density", [](auto& c) -> auto& { return c.absorption.reference_density; }));

        f.push_back(number_field("spectrum.f_low_hz", [](auto& c) -> auto& { return c.spectrum.search.f_low_hz; }));
        f.push_back(number_field("spectrum.f_high_hz", [](auto& c) -> auto& { return c.spectrum.search.f_high_hz; }));
        f.push_back(number_field("spectrum.grid_step_hz", [](auto& c) -> auto& { return c.spectrum.search.grid_step_hz; }));
        f.push_back(number_field("spectrum.loss_threshold_db", [](auto& c) -> auto& { return c.spectrum.search.loss_threshold_db; }));
        f.push_back(number_field("spectrum.subchannel_hz", [](auto& c) -> auto& { return c.spectrum.subchannel_hz; }));
        f.push_back(number_field("spectrum.bandwidth_hz", [](auto& c) -> auto& { return c.spectrum.bandwidth_hz; }));
        f.push_back(number_field("spectrum.rate_step_hz", [](auto& c) -> auto& { return c.spectrum.rate_step_hz; }));

        f.push_back(string_field("mobility.class", [](auto& c) -> auto& { return c.mobility.mobility_class; }));
        f.push_back(number_field("mobility.realign_latency_s", [](auto& c) -> auto& { return c.mobility.settings.realign_latency_s; }));
        f.push_back(number_field("mobility.duration_s", [](auto& c) -> auto& { return c.mobility.settings.duration_s; }));
        f.push_back(number_field("mobility.timestep_s", [](auto& c) -> auto& { return c.mobility.settings.timestep_s; }));
        f.push_back({"mobility.trace",
                     [](SimConfig& c, std::string_view v) { c.mobility.trace = to_bool(v); },
                     [](const SimConfig& c) { return std::string(c.mobility.trace ? "true" : "false"); }});

        f.push_back(number_field("scenario.distance_m", [](auto& c) -> auto& { return c.params.distance_m; }));
        f.push_back(number_field("scenario.total_distance_m", [](auto& c) -> auto& { return c.params.total_distance_m; }));
        f.push_back(number_field("scenario.required_rate_bps", [](auto& c) -> auto& { return c.params.required_rate_bps; }));
        f.push_back(number_field("scenario.d_max_search_m", [](auto& c) -> auto& { return c.params.d_max_search_m; }));
        f.push_back(number_field("scenario.demand_rate_bps", [](auto& c) -> auto& { return c.params.demand_rate_bps; }));
        f.push_back(int_field("scenario.users", [](auto& c) -> auto& { return c.params.users; }));
        f.push_back(number_field("scenario.r_min_m", [](auto& c) -> auto& { return c.params.r_min_m; }));
        f.push_back(number_field("scenario.r_max_m", [](auto& c) -> auto& { return c.params.r_max_m; }));
        f.push_back(number_field("scenario.sector_half_angle_deg", [](auto& c) -> auto& { return c.params.sector_half_angle_deg; }));
        f.push_back(number_field("scenario.disk_radius_m", [](auto& c) -> auto& { return c.params.disk_radius_m; }));
        f.push_back(int_field("scenario.seeds", [](auto& c) -> auto& { return c.params.seeds; }));

        f.push_back(list_field("sweep.humidities", [](auto& c) -> auto& { return c.sweep.humidities; }));
        f.push_back(list_field("sweep.distances_m", [](auto& c) -> auto& { return c.sweep.distances_m; }));
        f.push_back(list_field("sweep.deltas_deg", [](auto& c) -> auto& { return c.sweep.deltas_deg; }));
        f.push_back(list_field("sweep.heights_m", [](auto& c) -> auto& { return c.sweep.heights_m; }));

        f.push_back({"run.seed",
                     [](SimConfig& c, std::string_view v) { c.seed = to_integer<std::uint64_t>(v); },
                     [](const SimConfig& c) { return fmt::format("{}", c.seed); }});
        f.push_back(string_field("run.output", [](auto& c) -> auto& { return c.output; }));
        return f;
    }();
    return table;
}

const Field* find_field(std::string_view key)
{
    for (const auto& f : fields())
        if (f.key == key)
            return &f;
    return nullptr;
}

struct Entry {
    std::string value;
    std::size_t line = 0;
};

bool is_kiosk(ScenarioKind k) { return k == ScenarioKind::KioskC || k == ScenarioKind::KioskD; }

SimConfig defaults_for(ScenarioKind kind)
{
    SimConfig c;
    c.scenario = kind;
    c.sweep.deltas_deg = parse_number_list("1:1:60");
    c.sweep.heights_m = parse_number_list("10:10:200");
    if (is_kiosk(kind)) {
        c.mobility.mobility_class = "S1";
        c.spectrum.bandwidth_hz = 50e9;
        c.params.demand_rate_bps = 10e9;
        c.params.users = 30;
        if (kind == ScenarioKind::KioskC)
            c.params.distance_m = 2.0;
    } else if (kind == ScenarioKind::Abs) {
        c.mobility.mobility_class = "S2";
        c.spectrum.bandwidth_hz = 10e9;
        c.params.demand_rate_bps = 2e9;
        c.params.users = 50;
    }
    return c;
}

void require(bool ok, const std::string& field, const std::map<std::string, Entry>& entries,
             const std::string& message)
{
    if (ok)
        return;
    auto it = entries.find(field);
    throw ConfigError(field, it == entries.end() ? 0 : it->second.line, message);
}

void validate(const SimConfig& c, const std::map<std::string, Entry>& e)
{
    const auto& a = c.atmosphere;
    require(a.temperature_k >= 200.0 && a.temperature_k <= 330.0, "atmosphere.temperature_k", e,
            "temperature must be within [200, 330] K");
    require(a.pressure_kpa > 0.0, "atmosphere.pressure_kpa", e, "pressure must be > 0");
    require(a.relative_humidity >= 0.0 && a.relative_humidity <= 100.0,
            "atmosphere.relative_humidity", e, "relative humidity must be within [0, 100]");

    require(c.hardware.noise_figure_db >= 0.0, "hardware.noise_figure_db", e, "noise figure must be >= 0");
    require(c.hardware.system_temperature_k > 0.0, "hardware.system_temperature_k", e,
            "system temperature must be > 0");
    require(c.hardware.tx_beamwidth_deg > 0.0 && c.hardware.tx_beamwidth_deg <= 360.0,
            "hardware.tx_beamwidth_deg", e, "beamwidth must be in (0, 360] degrees");
    require(c.hardware.rx_beamwidth_deg > 0.0 && c.hardware.rx_beamwidth_deg <= 360.0,
            "hardware.rx_beamwidth_deg", e, "beamwidth must be in (0, 360] degrees");

    const auto& src = c.absorption.source;
    require(src == "builtin" || src == "lines" || src == "table", "absorption.source", e,
            "source must be builtin, lines or table");
    if (src != "builtin") {
        require(!c.absorption.path.empty(), "absorption.path", e,
                "a path is required for lines/table sources");
        require(std::filesystem::exists(c.absorption.path), "absorption.path", e,
                fmt::format("file '{}' does not exist", c.absorption.path));
    }
    require(c.absorption.continuum_floor >= 0.0, "absorption.continuum_floor", e, "must be >= 0");
    require(c.absorption.reference_density > 0.0, "absorption.reference_density", e, "must be > 0");

    const auto& s = c.spectrum.search;
    require(s.f_low_hz >= kMinThzFrequencyHz && s.f_high_hz <= kMaxThzFrequencyHz &&
                s.f_low_hz < s.f_high_hz,
            "spectrum.f_low_hz", e, "frequency range must satisfy 0.1 THz <= f_low < f_high <= 3 THz");
    require(s.grid_step_hz > 0.0 && s.grid_step_hz <= (s.f_high_hz - s.f_low_hz) / 10.0,
            "spectrum.grid_step_hz", e, "grid step must be > 0 and <= (f_high - f_low)/10");
    require(c.spectrum.subchannel_hz > 0.0, "spectrum.subchannel_hz", e, "must be > 0");
    require(c.spectrum.bandwidth_hz > 0.0, "spectrum.bandwidth_hz", e, "must be > 0");
    require(c.spectrum.rate_step_hz > 0.0, "spectrum.rate_step_hz", e, "must be > 0");

    try {
        MobilityClass::from_name(c.mobility.mobility_class);
    } catch (const std::domain_error& ex) {
        require(false, "mobility.class", e, ex.what());
    }
    const auto& m = c.mobility.settings;
    require(m.realign_latency_s >= 0.0, "mobility.realign_latency_s", e, "must be >= 0");
    require(m.duration_s > 0.0, "mobility.duration_s", e, "must be > 0");
    require(m.timestep_s > 0.0 && m.timestep_s <= m.duration_s / 100.0, "mobility.timestep_s", e,
            "timestep must be > 0 and <= duration/100");

    const auto& p = c.params;
    require(p.distance_m > 0.0, "scenario.distance_m", e, "must be > 0");
    require(p.total_distance_m > 0.0, "scenario.total_distance_m", e, "must be > 0");
    require(p.required_rate_bps > 0.0, "scenario.required_rate_bps", e, "must be > 0");
    require(p.d_max_search_m >= 1.0, "scenario.d_max_search_m", e, "must be >= 1");
    require(p.demand_rate_bps >= 0.0, "scenario.demand_rate_bps", e, "must be >= 0");
    require(p.users > 0, "scenario.users", e, "must be > 0");
    require(p.r_min_m > 0.0 && p.r_min_m <= p.r_max_m, "scenario.r_min_m", e,
            "must satisfy 0 < r_min <= r_max");
    require(p.sector_half_angle_deg >= 0.0 && p.sector_half_angle_deg <= 180.0,
            "scenario.sector_half_angle_deg", e, "must be within [0, 180]");
    require(p.disk_radius_m > 0.0, "scenario.disk_radius_m", e, "must be > 0");
    require(p.seeds > 0, "scenario.seeds", e, "must be > 0");

    for (double rh : c.sweep.humidities)
        require(rh >= 0.0 && rh <= 100.0, "sweep.humidities", e, "humidities must be within [0, 100]");
    for (double d : c.sweep.distances_m)
        require(d > 0.0, "sweep.distances_m", e, "distances must be > 0");
    require(!c.sweep.deltas_deg.empty(), "sweep.deltas_deg", e, "grid must not be empty");
    for (std::size_t i = 0; i < c.sweep.deltas_deg.size(); ++i) {
        const double d = c.sweep.deltas_deg[i];
        require(d > 0.0 && d < 180.0, "sweep.deltas_deg", e, "beamwidths must be in (0, 180) degrees");
        require(i == 0 || d > c.sweep.deltas_deg[i - 1], "sweep.deltas_deg", e,
                "grid must be strictly ascending");
    }
    require(!c.sweep.heights_m.empty(), "sweep.heights_m", e, "grid must not be empty");
    for (double h : c.sweep.heights_m)
        require(h > 0.0, "sweep.heights_m", e, "heights must be > 0");
}

} // namespace

std::string_view to_string(ScenarioKind kind)
{
    switch (kind) {
    case ScenarioKind::PathLoss: return "pathloss";
    case ScenarioKind::Windows: return "windows";
    case ScenarioKind::Rate: return "rate";
    case ScenarioKind::Backhaul: return "backhaul";
    case ScenarioKind::KioskC: return "kiosk-c";
    case ScenarioKind::KioskD: return "kiosk-d";
    case ScenarioKind::Abs: return "abs";
    }
    return "";
}

ScenarioKind scenario_from_name(std::string_view name)
{
    for (auto k : {ScenarioKind::PathLoss, ScenarioKind::Windows, ScenarioKind::Rate,
                   ScenarioKind::Backhaul, ScenarioKind::KioskC, ScenarioKind::KioskD,
                   ScenarioKind::Abs})
        if (to_string(k) == name)
            return k;
    throw BadValue(fmt::format("unknown scenario '{}'", name));
}

ConfigError::ConfigError(std::string field, std::size_t line, const std::string& what)
    : std::runtime_error(line > 0 ? fmt::format("config line {}: {}: {}", line, field, what)
                                  : fmt::format("config: {}: {}", field, what))
    , field_(std::move(field))
    , line_(line)
{
}

std::vector<double> parse_number_list(std::string_view text)
{
    text = trim(text);
    std::vector<double> out;
    if (text.empty())
        return out;
    if (text.find(':') != std::string_view::npos) {
        std::vector<double> parts;
        std::string_view rest = text;
        while (true) {
            auto colon = rest.find(':');
            parts.push_back(to_double(rest.substr(0, colon)));
            if (colon == std::string_view::npos)
                break;
            rest = rest.substr(colon + 1);
        }
        if (parts.size() != 3)
            throw BadValue(fmt::format("range '{}' must be start:step:stop", text));
        const double start = parts[0], step = parts[1], stop = parts[2];
        if (!(step > 0.0) || stop < start)
            throw BadValue(fmt::format("range '{}' needs step > 0 and stop >= start", text));
        const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9));
        for (std::size_t i = 0; i <= n; ++i)
            out.push_back(start + static_cast<double>(i) * step);
        return out;
    }
    std::string_view rest = text;
    while (true) {
        auto comma = rest.find(',');
        out.push_back(to_double(rest.substr(0, comma)));
        if (comma == std::string_view::npos)
            break;
        rest = rest.substr(comma + 1);
    }
    return out;
}

std::pair<std::string, std::string> split_override(std::string_view kv)
{
    auto eq = kv.find('=');
    if (eq == std::string_view::npos || trim(kv.substr(0, eq)).empty())
        throw ConfigError(std::string(kv), 0, "override must look like section.key=value");
    return {std::string(trim(kv.substr(0, eq))), std::string(trim(kv.substr(eq + 1)))};
}

SimConfig parse_config(std::string_view text, const ConfigOverrides& overrides)
{
    std::map<std::string, Entry> entries;
    std::string section;
    std::size_t line_no = 0;
    while (!text.empty()) {
        auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;

        if (auto hash = line.find_first_of("#;"); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        if (line.front() == '[') {
            if (line.back() != ']' || line.size() < 3)
                throw ConfigError(std::string(line), line_no, "malformed section header");
            section = std::string(trim(line.substr(1, line.size() - 2)));
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError(std::string(line), line_no, "expected key = value");
        if (section.empty())
            throw ConfigError(std::string(trim(line.substr(0, eq))), line_no,
                              "key outside of any [section]");
        const std::string key = section + "." + std::string(trim(line.substr(0, eq)));
        if (!find_field(key))
            throw ConfigError(key, line_no, "unknown key");
        if (entries.count(key))
            throw ConfigError(key, line_no, "duplicate key");
        entries[key] = {std::string(trim(line.substr(eq + 1))), line_no};
    }
    for (const auto& [key, value] : overrides) {
        if (!find_field(key))
            throw ConfigError(key, 0, "unknown key");
        entries[key] = {value, 0};
    }

    auto name = entries.find("scenario.name");
    if (name == entries.end() || name->second.value.empty())
        throw ConfigError("scenario", name == entries.end() ? 0 : name->second.line,
                          "missing scenario: set [scenario] name = pathloss|windows|rate|"
                          "backhaul|kiosk-c|kiosk-d|abs");
    ScenarioKind kind{};
    try {
        kind = scenario_from_name(name->second.value);
    } catch (const BadValue& ex) {
        throw ConfigError("scenario.name", name->second.line, ex.what());
    }

    SimConfig config = defaults_for(kind);
    for (const auto& [key, entry] : entries) {
        try {
            find_field(key)->set(config, entry.value);
        } catch (const BadValue& ex) {
            throw ConfigError(key, entry.line, ex.what());
        }
    }
    validate(config, entries);
    return config;
}

std::string to_text(const SimConfig& config)
{
    std::vector<std::string> sections;
    for (const auto& f : fields()) {
        auto sec = f.key.substr(0, f.key.find('.'));
        if (std::find(sections.begin(), sections.end(), sec) == sections.end())
            sections.push_back(sec);
    }
    std::string out;
    for (const auto& sec : sections) {
        if (!out.empty())
            out += '\n';
        out += fmt::format("[{}]\n", sec);
        for (const auto& f : fields()) {
            const auto dot = f.key.find('.');
            if (f.key.compare(0, dot, sec) != 0 || dot != sec.size())
                continue;
            const auto value = f.get(config);
            out += fmt::format("{} ={}{}\n", f.key.substr(dot + 1), value.empty() ? "" : " ", value);
        }
    }
    return out;
}

} // namespace thz
