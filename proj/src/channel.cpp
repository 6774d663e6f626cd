#include "thz/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

namespace thz {

namespace {

const double kDbPerNeper = 10.0 * std::log10(std::numbers::e);

// Relative slack when comparing grid-derived widths to a requested width.
constexpr double kWidthTolerance = 1e-9;

void check_search(double f_low, double f_high, double step)
{
    if (!(f_low < f_high))
        throw std::domain_error(fmt::format("f_low ({}) must be below f_high ({})", f_low, f_high));
    if (!(step > 0.0) || step > (f_high - f_low) / 10.0 * (1.0 + 1e-12))
        throw std::domain_error(fmt::format(
            "grid step {} Hz must be > 0 and <= (f_high - f_low)/10", step));
}

bool wide_enough(const TransmissionWindow& w, double required)
{
    return w.width_hz() >= required * (1.0 - kWidthTolerance);
}

} // namespace

NoFeasibleBand::NoFeasibleBand(double required_hz, double widest_hz)
    : std::runtime_error(fmt::format(
          "no feasible band: need {} Hz contiguous, widest window is {} Hz", required_hz,
          widest_hz))
    , required_(required_hz)
    , widest_(widest_hz)
{
}

double spreading_loss_db(double frequency_hz, double distance_m)
{
    if (!(frequency_hz > 0.0) || !(distance_m > 0.0))
        throw std::domain_error(fmt::format(
            "spreading loss needs positive frequency and distance (got {} Hz, {} m)",
            frequency_hz, distance_m));
    return 20.0 * std::log10(4.0 * std::numbers::pi * distance_m * frequency_hz / kSpeedOfLight);
}

double absorption_loss_db(double k_np_per_m, double distance_m)
{
    if (!(k_np_per_m >= 0.0))
        throw std::domain_error(fmt::format("absorption coefficient must be >= 0, got {}", k_np_per_m));
    if (!(distance_m >= 0.0))
        throw std::domain_error(fmt::format("distance must be >= 0, got {}", distance_m));
    return kDbPerNeper * k_np_per_m * distance_m;
}

PathLossBreakdown total_path_loss_db(const AbsorptionModel& model, const Atmosphere& atm,
                                     double frequency_hz, double distance_m)
{
    PathLossBreakdown out;
    out.spreading_db = spreading_loss_db(frequency_hz, distance_m);
    out.absorption_db =
        absorption_loss_db(absorption_coefficient(model, frequency_hz, atm), distance_m);
    out.total_db = out.spreading_db + out.absorption_db;
    return out;
}

std::vector<double> frequency_grid(double f_low_hz, double f_high_hz, double step_hz)
{
    const auto n = static_cast<std::size_t>(std::floor((f_high_hz - f_low_hz) / step_hz + 1e-9));
    std::vector<double> grid;
    grid.reserve(n + 2);
    for (std::size_t i = 0; i <= n; ++i)
        grid.push_back(std::min(f_low_hz + static_cast<double>(i) * step_hz, f_high_hz));
    if (grid.back() < f_high_hz * (1.0 - 1e-12))
        grid.push_back(f_high_hz);
    else
        grid.back() = f_high_hz;
    return grid;
}

std::vector<TransmissionWindow> find_windows(const AbsorptionModel& model, const Atmosphere& atm,
                                             double distance_m, double loss_threshold_db,
                                             double f_low_hz, double f_high_hz,
                                             double grid_step_hz)
{
    check_search(f_low_hz, f_high_hz, grid_step_hz);
    const auto grid = frequency_grid(f_low_hz, f_high_hz, grid_step_hz);

    std::vector<TransmissionWindow> windows;
    bool open = false;
    TransmissionWindow current;
    auto close = [&] {
        // A single passing point has zero width and is not a window.
        if (current.f_high_hz > current.f_low_hz)
            windows.push_back(current);
        open = false;
    };
    for (double f : grid) {
        const double loss = total_path_loss_db(model, atm, f, distance_m).total_db;
        if (loss <= loss_threshold_db) {
            if (!open) {
                current = {f, f, loss};
                open = true;
            } else {
                current.f_high_hz = f;
                current.worst_loss_db = std::max(current.worst_loss_db, loss);
            }
        } else {
            if (open)
                close();
            // Spreading loss only grows with frequency and absorption is
            // non-negative, so no later grid point can pass.
            if (spreading_loss_db(f, distance_m) > loss_threshold_db)
                break;
        }
    }
    if (open)
        close();
    return windows;
}

Band select_band(const std::vector<TransmissionWindow>& windows, double required_bandwidth_hz)
{
    if (!(required_bandwidth_hz > 0.0))
        throw std::domain_error("required bandwidth must be > 0");
    for (const auto& w : windows) {
        if (wide_enough(w, required_bandwidth_hz))
            return {w.f_low_hz + required_bandwidth_hz / 2.0, required_bandwidth_hz};
    }
    throw NoFeasibleBand(required_bandwidth_hz, max_contiguous_bandwidth(windows));
}

double max_contiguous_bandwidth(const std::vector<TransmissionWindow>& windows)
{
    double widest = 0.0;
    for (const auto& w : windows)
        widest = std::max(widest, w.width_hz());
    return widest;
}

std::optional<Band> try_first_feasible_band(const AbsorptionModel& model, const Atmosphere& atm,
                                            double distance_m, const SpectrumSearch& search,
                                            double required_bandwidth_hz, double* widest_hz)
{
    if (!(required_bandwidth_hz > 0.0))
        throw std::domain_error("required bandwidth must be > 0");
    check_search(search.f_low_hz, search.f_high_hz, search.grid_step_hz);
    const auto grid = frequency_grid(search.f_low_hz, search.f_high_hz, search.grid_step_hz);

    double widest = 0.0;
    bool open = false;
    double start = 0.0;
    std::optional<Band> found;
    for (double f : grid) {
        const auto loss = total_path_loss_db(model, atm, f, distance_m);
        if (loss.total_db <= search.loss_threshold_db) {
            if (!open) {
                start = f;
                open = true;
            }
            const TransmissionWindow w{start, f, 0.0};
            widest = std::max(widest, w.width_hz());
            if (wide_enough(w, required_bandwidth_hz)) {
                found = Band{start + required_bandwidth_hz / 2.0, required_bandwidth_hz};
                break;
            }
        } else {
            open = false;
            if (loss.spreading_db > search.loss_threshold_db)
                break;
        }
    }
    if (widest_hz)
        *widest_hz = widest;
    return found;
}

Band first_feasible_band(const AbsorptionModel& model, const Atmosphere& atm, double distance_m,
                         const SpectrumSearch& search, double required_bandwidth_hz)
{
    double widest = 0.0;
    auto band = try_first_feasible_band(model, atm, distance_m, search, required_bandwidth_hz,
                                        &widest);
    if (!band)
        throw NoFeasibleBand(required_bandwidth_hz, widest);
    return *band;
}

std::vector<LossSample> loss_curve(const AbsorptionModel& model, const Atmosphere& atm,
                                   double distance_m, double f_low_hz, double f_high_hz,
                                   double step_hz)
{
    check_search(f_low_hz, f_high_hz, step_hz);
    std::vector<LossSample> out;
    for (double f : frequency_grid(f_low_hz, f_high_hz, step_hz))
        out.push_back({f, total_path_loss_db(model, atm, f, distance_m)});
    return out;
}

} // namespace thz
