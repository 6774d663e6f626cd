#include "thz/link.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

namespace thz {

double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

void BeamConfig::validate() const
{
    if (!(beamwidth_rad > 0.0 && beamwidth_rad <= 2.0 * std::numbers::pi))
        throw std::domain_error(
            fmt::format("beamwidth must be in (0, 2*pi] rad, got {}", beamwidth_rad));
    const double norm = std::sqrt(boresight[0] * boresight[0] + boresight[1] * boresight[1] +
                                  boresight[2] * boresight[2]);
    if (std::abs(norm - 1.0) > 1e-9)
        throw std::domain_error(fmt::format("boresight must be a unit vector (norm {})", norm));
}

void RadioHardware::validate() const
{
    if (!(system_temperature_k > 0.0))
        throw std::domain_error("system temperature must be > 0 K");
    if (!(noise_figure_db >= 0.0))
        throw std::domain_error("noise figure must be >= 0 dB");
    tx_beam.validate();
    rx_beam.validate();
}

double gain_from_beamwidth(double beamwidth_rad)
{
    if (!(beamwidth_rad > 0.0 && beamwidth_rad <= 2.0 * std::numbers::pi))
        throw std::domain_error(
            fmt::format("beamwidth must be in (0, 2*pi] rad, got {}", beamwidth_rad));
    // cos(delta/2) as sin((pi - delta)/2): exact for the half-space and
    // full-sphere beams, where cos(pi/2) would leave a 6e-17 residue.
    return 2.0 / (1.0 - std::sin((std::numbers::pi - beamwidth_rad) / 2.0));
}

double gain_db(double beamwidth_rad) { return 10.0 * std::log10(gain_from_beamwidth(beamwidth_rad)); }

double thermal_noise_dbm(double temperature_k, double bandwidth_hz, double noise_figure_db)
{
    if (!(bandwidth_hz > 0.0))
        throw std::domain_error(fmt::format("noise bandwidth must be > 0, got {}", bandwidth_hz));
    if (!(temperature_k > 0.0))
        throw std::domain_error("noise temperature must be > 0 K");
    return 10.0 * std::log10(kBoltzmann * temperature_k * bandwidth_hz / 1e-3) + noise_figure_db;
}

double link_snr_db(const RadioHardware& hw, double path_loss_db, double bandwidth_hz)
{
    return hw.tx_power_dbm + gain_db(hw.tx_beam.beamwidth_rad) + gain_db(hw.rx_beam.beamwidth_rad) -
           path_loss_db -
           thermal_noise_dbm(hw.system_temperature_k, bandwidth_hz, hw.noise_figure_db);
}

std::vector<Subchannel> split_band(const Band& band, double width_hz)
{
    if (!(band.bandwidth_hz > 0.0))
        throw std::domain_error("band width must be > 0");
    if (!(width_hz > 0.0) || width_hz > band.bandwidth_hz * (1.0 + 1e-12))
        throw std::domain_error(fmt::format(
            "subchannel width {} Hz must be > 0 and <= band width {} Hz", width_hz,
            band.bandwidth_hz));
    const double ratio = band.bandwidth_hz / width_hz;
    auto full = static_cast<std::size_t>(std::floor(ratio + 1e-9));
    const double remainder = band.bandwidth_hz - static_cast<double>(full) * width_hz;

    std::vector<Subchannel> out;
    out.reserve(full + 1);
    const double low = band.low_hz();
    for (std::size_t i = 0; i < full; ++i)
        out.push_back({low + (static_cast<double>(i) + 0.5) * width_hz, width_hz});
    if (remainder > band.bandwidth_hz * 1e-9) {
        const double start = low + static_cast<double>(full) * width_hz;
        out.push_back({start + remainder / 2.0, remainder});
    }
    return out;
}

double capacity_bps(const AbsorptionModel& model, const Atmosphere& atm, const RadioHardware& hw,
                    const Band& band, double distance_m, double subchannel_width_hz)
{
    double total = 0.0;
    for (const auto& sc : split_band(band, subchannel_width_hz)) {
        const double loss = total_path_loss_db(model, atm, sc.center_hz, distance_m).total_db;
        const double share_db = 10.0 * std::log10(sc.width_hz / band.bandwidth_hz);
        const double snr_db = link_snr_db(hw, loss, sc.width_hz) + share_db;
        total += sc.width_hz * std::log2(1.0 + std::pow(10.0, snr_db / 10.0));
    }
    return total;
}

double rate_density_gbps_per_ghz(double capacity_bps, double bandwidth_hz)
{
    if (!(bandwidth_hz > 0.0))
        throw std::domain_error("rate density needs a positive bandwidth");
    return (capacity_bps / 1e9) / (bandwidth_hz / 1e9);
}

std::vector<RateSample> rate_curve(const AbsorptionModel& model, const Atmosphere& atm,
                                   const RadioHardware& hw, double distance_m,
                                   double bandwidth_hz, double subchannel_width_hz,
                                   double f_low_hz, double f_high_hz, double center_step_hz)
{
    if (!(center_step_hz > 0.0))
        throw std::domain_error("rate curve step must be > 0");
    std::vector<RateSample> out;
    const double first = f_low_hz + bandwidth_hz / 2.0;
    const double last = f_high_hz - bandwidth_hz / 2.0;
    for (std::size_t i = 0;; ++i) {
        const double center = first + static_cast<double>(i) * center_step_hz;
        if (center > last * (1.0 + 1e-12))
            break;
        const Band band{center, bandwidth_hz};
        const double c = capacity_bps(model, atm, hw, band, distance_m, subchannel_width_hz);
        out.push_back({center, rate_density_gbps_per_ghz(c, bandwidth_hz)});
    }
    return out;
}

} // namespace thz
