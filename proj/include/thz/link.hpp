#pragma once

#include <array>
#include <vector>

#include "thz/atmosphere.hpp"
#include "thz/channel.hpp"

namespace thz {

inline constexpr double kBoltzmann = 1.380649e-23; // J/K

double deg_to_rad(double deg);
double rad_to_deg(double rad);

/// Ideal cone beam: uniform gain inside the full cone angle, nothing outside.
struct BeamConfig {
    double beamwidth_rad = 0.0;
    std::array<double, 3> boresight{1.0, 0.0, 0.0};

    void validate() const;
    bool operator==(const BeamConfig&) const = default;
};

struct RadioHardware {
    double tx_power_dbm = 10.0;
    double noise_figure_db = 10.0;
    double system_temperature_k = 290.0;
    BeamConfig tx_beam{deg_to_rad(10.0)};
    BeamConfig rx_beam{deg_to_rad(10.0)};

    void validate() const;
    bool operator==(const RadioHardware&) const = default;
};

/// Directivity of a uniform spherical cap of the given full cone angle.
double gain_from_beamwidth(double beamwidth_rad);
double gain_db(double beamwidth_rad);

double thermal_noise_dbm(double temperature_k, double bandwidth_hz, double noise_figure_db);

/// Received SNR in dB when the whole tx power lands in `bandwidth_hz`.
double link_snr_db(const RadioHardware& hw, double path_loss_db, double bandwidth_hz);

struct Subchannel {
    double center_hz = 0.0;
    double width_hz = 0.0;
};

/// Splits a band into `width_hz` slices from its low edge; a trailing
/// remainder becomes a narrower last slice.
std::vector<Subchannel> split_band(const Band& band, double width_hz);

/// Shannon capacity summed over subchannels. The transmit power is spread
/// evenly over the band, so each slice sees tx_power * w_i / B.
double capacity_bps(const AbsorptionModel& model, const Atmosphere& atm, const RadioHardware& hw,
                    const Band& band, double distance_m, double subchannel_width_hz);

double rate_density_gbps_per_ghz(double capacity_bps, double bandwidth_hz);

struct RateSample {
    double frequency_hz = 0.0; // band center
    double rate_density_gbps_per_ghz = 0.0;
};

/// Rate density of a `bandwidth_hz` band slid across [f_low, f_high].
/// Bands that would stick out of the range are skipped.
std::vector<RateSample> rate_curve(const AbsorptionModel& model, const Atmosphere& atm,
                                   const RadioHardware& hw, double distance_m,
                                   double bandwidth_hz, double subchannel_width_hz,
                                   double f_low_hz, double f_high_hz, double center_step_hz);

} // namespace thz
