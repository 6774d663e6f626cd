#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "thz/atmosphere.hpp"

namespace thz {

inline constexpr double kSpeedOfLight = 299'792'458.0;

struct PathLossBreakdown {
    double spreading_db = 0.0;
    double absorption_db = 0.0;
    double total_db = 0.0;
};

/// Contiguous run of grid frequencies whose total loss stays under a threshold.
struct TransmissionWindow {
    double f_low_hz = 0.0;
    double f_high_hz = 0.0;
    double worst_loss_db = 0.0;

    double width_hz() const { return f_high_hz - f_low_hz; }
    bool operator==(const TransmissionWindow&) const = default;
};

struct Band {
    double center_hz = 0.0;
    double bandwidth_hz = 0.0;

    double low_hz() const { return center_hz - bandwidth_hz / 2.0; }
    double high_hz() const { return center_hz + bandwidth_hz / 2.0; }
    bool operator==(const Band&) const = default;
};

/// Frequency search settings shared by every adaptive band selection.
struct SpectrumSearch {
    double f_low_hz = kMinThzFrequencyHz;
    double f_high_hz = kMaxThzFrequencyHz;
    double grid_step_hz = 100e6;
    double loss_threshold_db = 120.0;

    bool operator==(const SpectrumSearch&) const = default;
};

/// Raised when no window is wide enough for the requested bandwidth.
class NoFeasibleBand : public std::runtime_error {
public:
    NoFeasibleBand(double required_hz, double widest_hz);
    double required_hz() const { return required_; }
    double widest_available_hz() const { return widest_; }

private:
    double required_;
    double widest_;
};

double spreading_loss_db(double frequency_hz, double distance_m);
double absorption_loss_db(double k_np_per_m, double distance_m);
PathLossBreakdown total_path_loss_db(const AbsorptionModel& model, const Atmosphere& atm,
                                     double frequency_hz, double distance_m);

/// Uniform evaluation grid from f_low to f_high. The last point is f_high
/// itself even when the span is not a multiple of the step.
std::vector<double> frequency_grid(double f_low_hz, double f_high_hz, double step_hz);

std::vector<TransmissionWindow> find_windows(const AbsorptionModel& model, const Atmosphere& atm,
                                             double distance_m, double loss_threshold_db,
                                             double f_low_hz, double f_high_hz,
                                             double grid_step_hz);

Band select_band(const std::vector<TransmissionWindow>& windows, double required_bandwidth_hz);

double max_contiguous_bandwidth(const std::vector<TransmissionWindow>& windows);

/// Equivalent to select_band(find_windows(...)) but stops scanning at the
/// first window that is wide enough.
Band first_feasible_band(const AbsorptionModel& model, const Atmosphere& atm, double distance_m,
                         const SpectrumSearch& search, double required_bandwidth_hz);

/// Non-throwing variant; `widest_hz` (optional) receives the widest run seen.
std::optional<Band> try_first_feasible_band(const AbsorptionModel& model, const Atmosphere& atm,
                                            double distance_m, const SpectrumSearch& search,
                                            double required_bandwidth_hz,
                                            double* widest_hz = nullptr);

struct LossSample {
    double frequency_hz = 0.0;
    PathLossBreakdown loss;
};

std::vector<LossSample> loss_curve(const AbsorptionModel& model, const Atmosphere& atm,
                                   double distance_m, double f_low_hz, double f_high_hz,
                                   double step_hz);

} // namespace thz
