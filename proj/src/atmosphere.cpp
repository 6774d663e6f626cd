#include "thz/atmosphere.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <fmt/format.h>

#include "thz/csv.hpp"

namespace thz {

namespace {

constexpr double kWaterGasConstant = 461.5; // J/(kg K)
constexpr double kBandTolerance = 1e-9;     // relative slack on the THz band edges

bool in_thz_band(double f)
{
    return f >= kMinThzFrequencyHz * (1.0 - kBandTolerance) &&
           f <= kMaxThzFrequencyHz * (1.0 + kBandTolerance);
}

double lorentz(double f, double center, double half_width)
{
    const double df = f - center;
    return half_width / (std::numbers::pi * (df * df + half_width * half_width));
}

} // namespace

void Atmosphere::validate() const
{
    if (!(temperature_k > 0.0))
        throw std::domain_error(fmt::format("temperature must be > 0 K, got {}", temperature_k));
    if (!(pressure_kpa > 0.0))
        throw std::domain_error(fmt::format("pressure must be > 0 kPa, got {}", pressure_kpa));
    if (!(relative_humidity >= 0.0 && relative_humidity <= 100.0))
        throw std::domain_error(
            fmt::format("relative humidity must be in [0, 100] %, got {}", relative_humidity));
}

AbsorptionModel::AbsorptionModel(std::vector<SpectralLine> lines, double continuum_floor,
                                 double reference_vapor_density)
    : lines_(std::move(lines))
    , continuum_floor_(continuum_floor)
    , reference_density_(reference_vapor_density)
{
    if (!(reference_density_ > 0.0))
        throw std::domain_error("reference vapor density must be > 0");
    if (!(continuum_floor_ >= 0.0))
        throw std::domain_error("continuum floor must be >= 0");
    for (const auto& l : lines_) {
        if (!(l.center_hz > 0.0) || !(l.strength >= 0.0) || !(l.half_width_hz > 0.0))
            throw std::domain_error(fmt::format(
                "invalid spectral line (center {} Hz, strength {}, half width {} Hz)",
                l.center_hz, l.strength, l.half_width_hz));
    }
}

AbsorptionModel::AbsorptionModel(std::vector<TablePoint> table, double reference_vapor_density)
    : reference_density_(reference_vapor_density)
{
    if (!(reference_density_ > 0.0))
        throw std::domain_error("reference vapor density must be > 0");
    if (table.size() < 2)
        throw std::domain_error("absorption table needs at least two rows");
    for (std::size_t i = 0; i < table.size(); ++i) {
        if (!(table[i].k_np_per_m >= 0.0))
            throw std::domain_error(
                fmt::format("absorption table row {}: k must be >= 0", i + 1));
        if (i > 0 && !(table[i].frequency_hz > table[i - 1].frequency_hz))
            throw std::domain_error(fmt::format(
                "absorption table row {}: frequencies must be strictly increasing", i + 1));
    }
    table_ = std::move(table);
}

AbsorptionModel AbsorptionModel::builtin()
{
    // Mirrors data/h2o_lines.csv. Strengths are set so that each line's peak
    // tracks the relative height of the real H2O resonance.
    std::vector<SpectralLine> lines{
        {183.31e9, 6.13e7, 3e9},   {325.15e9, 8.48e7, 3e9},  {380.20e9, 8.48e8, 3e9},
        {448.00e9, 4.24e8, 3e9},   {556.94e9, 6.50e10, 3e9}, {752.03e9, 4.34e10, 3e9},
        {987.93e9, 1.08e10, 3e9},  {1097.37e9, 4.34e10, 3e9}, {1163.30e9, 3.25e10, 3e9},
    };
    return AbsorptionModel(std::move(lines), kBuiltinContinuumFloor, kBuiltinReferenceDensity);
}

double AbsorptionModel::reference_coefficient(double frequency_hz) const
{
    if (table_) {
        const auto& t = *table_;
        if (frequency_hz < t.front().frequency_hz || frequency_hz > t.back().frequency_hz)
            throw std::domain_error(fmt::format(
                "frequency {} Hz outside absorption table span [{}, {}] Hz (no extrapolation)",
                frequency_hz, t.front().frequency_hz, t.back().frequency_hz));
        auto hi = std::lower_bound(t.begin(), t.end(), frequency_hz,
                                   [](const TablePoint& p, double f) { return p.frequency_hz < f; });
        if (hi->frequency_hz == frequency_hz)
            return hi->k_np_per_m;
        auto lo = hi - 1;
        const double w = (frequency_hz - lo->frequency_hz) / (hi->frequency_hz - lo->frequency_hz);
        return lo->k_np_per_m + w * (hi->k_np_per_m - lo->k_np_per_m);
    }
    double k = continuum_floor_;
    for (const auto& l : lines_)
        k += l.strength * lorentz(frequency_hz, l.center_hz, l.half_width_hz);
    return k;
}

double saturation_vapor_pressure(double temperature_k)
{
    if (!(temperature_k >= 200.0 && temperature_k <= 330.0))
        throw std::domain_error(fmt::format(
            "saturation vapor pressure: temperature {} K outside [200 K, 330 K]", temperature_k));
    const double t = temperature_k - 273.15;
    return 0.61121 * std::exp((18.678 - t / 234.5) * (t / (257.14 + t)));
}

double water_vapor_density(const Atmosphere& atm)
{
    atm.validate();
    if (atm.relative_humidity == 0.0)
        return 0.0;
    const double vapor_pressure_pa =
        atm.relative_humidity / 100.0 * saturation_vapor_pressure(atm.temperature_k) * 1000.0;
    return vapor_pressure_pa / (kWaterGasConstant * atm.temperature_k) * 1000.0;
}

double absorption_coefficient(const AbsorptionModel& model, double frequency_hz,
                              const Atmosphere& atm)
{
    if (!in_thz_band(frequency_hz))
        throw std::domain_error(fmt::format("frequency {} Hz outside [{}, {}] Hz", frequency_hz,
                                            kMinThzFrequencyHz, kMaxThzFrequencyHz));
    const double scale = water_vapor_density(atm) / model.reference_vapor_density();
    const double k = scale * model.reference_coefficient(frequency_hz);
    return std::max(k, 0.0);
}

std::vector<SpectralLine> parse_line_set(const std::string& text)
{
    std::vector<SpectralLine> lines;
    for (const auto& r : parse_numeric_csv(text, "center_hz,strength,half_width_hz"))
        lines.push_back({r[0], r[1], r[2]});
    return lines;
}

std::vector<TablePoint> parse_absorption_table(const std::string& text)
{
    std::vector<TablePoint> table;
    for (const auto& r : parse_numeric_csv(text, "frequency_hz,k_np_per_m"))
        table.push_back({r[0], r[1]});
    return table;
}

std::vector<SpectralLine> load_line_set(const std::string& path)
{
    return parse_line_set(read_text_file(path));
}

std::vector<TablePoint> load_absorption_table(const std::string& path)
{
    return parse_absorption_table(read_text_file(path));
}

} // namespace thz
