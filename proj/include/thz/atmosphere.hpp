#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace thz {

inline constexpr double kMinThzFrequencyHz = 0.1e12;
inline constexpr double kMaxThzFrequencyHz = 3.0e12;

/// Ambient conditions. Pressure is validated but does not enter the
/// absorption model.
struct Atmosphere {
    double temperature_k = 293.15;
    double pressure_kpa = 101.325;
    double relative_humidity = 50.0; // percent, [0, 100]

    void validate() const;
    bool operator==(const Atmosphere&) const = default;
};

struct SpectralLine {
    double center_hz = 0.0;
    double strength = 0.0; // Np*Hz/m at the reference vapor density
    double half_width_hz = 0.0;

    bool operator==(const SpectralLine&) const = default;
};

struct TablePoint {
    double frequency_hz = 0.0;
    double k_np_per_m = 0.0;

    bool operator==(const TablePoint&) const = default;
};

/// Water-vapor absorption spectrum. Either a Lorentzian line set on top of a
/// flat continuum, or a tabulated k(f) that is interpolated linearly. Both
/// are specified at `reference_vapor_density` and scale linearly with the
/// actual vapor density.
class AbsorptionModel {
public:
    AbsorptionModel(std::vector<SpectralLine> lines, double continuum_floor,
                    double reference_vapor_density);
    AbsorptionModel(std::vector<TablePoint> table, double reference_vapor_density);

    /// Nine dominant H2O lines between 0.1 and 3 THz.
    static AbsorptionModel builtin();

    const std::vector<SpectralLine>& lines() const { return lines_; }
    double continuum_floor() const { return continuum_floor_; }
    double reference_vapor_density() const { return reference_density_; }
    const std::optional<std::vector<TablePoint>>& table() const { return table_; }
    bool has_table() const { return table_.has_value(); }

    /// k(f) at the reference vapor density, nepers per meter.
    double reference_coefficient(double frequency_hz) const;

private:
    std::vector<SpectralLine> lines_;
    double continuum_floor_ = 0.0;
    double reference_density_ = 1.0;
    std::optional<std::vector<TablePoint>> table_;
};

inline constexpr double kBuiltinContinuumFloor = 2.0e-4;  // Np/m
inline constexpr double kBuiltinReferenceDensity = 7.5;   // g/m^3

/// Saturation vapor pressure over water (Buck), kPa. Valid for 200..330 K.
double saturation_vapor_pressure(double temperature_k);

/// Water-vapor density in g/m^3 from the ideal-gas law.
double water_vapor_density(const Atmosphere& atm);

/// Molecular absorption coefficient in nepers per meter.
double absorption_coefficient(const AbsorptionModel& model, double frequency_hz,
                              const Atmosphere& atm);

/// Loaders for the `center_hz,strength,half_width_hz` and
/// `frequency_hz,k_np_per_m` CSV formats.
std::vector<SpectralLine> load_line_set(const std::string& path);
std::vector<TablePoint> load_absorption_table(const std::string& path);
std::vector<SpectralLine> parse_line_set(const std::string& text);
std::vector<TablePoint> parse_absorption_table(const std::string& text);

} // namespace thz
