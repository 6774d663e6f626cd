#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "thz/atmosphere.hpp"
#include "thz/channel.hpp"
#include "thz/link.hpp"
#include "thz/mobility.hpp"

namespace thz {

// ---------------------------------------------------------------------------
// Taxonomy: outdoor applications by relative AP/UE mobility.

enum class NodeMobility { Static, Mobile };

enum class ApplicationType {
    Type1, ///< static AP, static UE: long-range backhaul, quasi-mobile, displays
    Type2, ///< static AP, mobile UE: kiosks, smart bus stops, ITS
    Type3, ///< mobile AP, static UE: drone backhaul, aerial base station
    Type4, ///< mobile AP, mobile UE: MANET, D2D, aerial base station
};

ApplicationType classify(NodeMobility ap, NodeMobility ue);
std::string_view describe(ApplicationType type);

// ---------------------------------------------------------------------------

/// Everything needed to turn a distance into a capacity.
struct LinkContext {
    const AbsorptionModel* model = nullptr;
    Atmosphere atmosphere;
    RadioHardware hardware;
    SpectrumSearch search;
    double subchannel_width_hz = 100e6;

    const AbsorptionModel& absorption() const { return *model; }
};

/// Raised when a link cannot meet its requirement even at the shortest hop.
class LinkInfeasible : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Capacity over the lowest window that fits `bandwidth_hz` at this
/// distance; std::nullopt when no window is wide enough.
struct AdaptiveLink {
    Band band;
    double capacity_bps = 0.0;
};
std::optional<AdaptiveLink> adaptive_capacity(const LinkContext& ctx, double distance_m,
                                              double bandwidth_hz);

struct BackhaulPlan {
    double total_distance_m = 0.0;
    double hop_distance_m = 0.0;
    std::int64_t repeater_count = 0;
    double per_hop_rate_bps = 0.0;
    Band band;
};

/// Largest hop on a 0.1 m grid (or d_max_search itself) whose adaptive
/// capacity meets `required_rate_bps`. Bisection relies on capacity being
/// non-increasing in distance.
double max_hop_distance(const LinkContext& ctx, double required_rate_bps,
                        double required_bandwidth_hz, double d_max_search_m);

/// Smallest n with total/(n+1) <= max_hop.
std::int64_t repeaters_needed(double total_distance_m, double max_hop_m);

BackhaulPlan plan_backhaul(double total_distance_m, const LinkContext& ctx,
                           double required_rate_bps, double required_bandwidth_hz,
                           double d_max_search_m = 1000.0);

// ---------------------------------------------------------------------------

struct User {
    double x_m = 0.0;
    double y_m = 0.0;
    MobilityClass mobility;
    std::uint64_t seed = 0;

    double ground_distance() const;
};

struct UserField {
    std::vector<User> users;

    /// Copy with every user switched to `cls` (positions and seeds kept).
    UserField with_class(const MobilityClass& cls) const;
};

/// Seeding: positions come from std::mt19937_64(seed); user i gets
/// trajectory seed `seed ^ (i + 1)`.
UserField kiosk_sector_field(std::size_t count, double r_min_m, double r_max_m,
                             double half_angle_rad, const MobilityClass& cls, std::uint64_t seed);
UserField disk_field(std::size_t count, double radius_m, const MobilityClass& cls,
                     std::uint64_t seed);

struct SweepParameter {
    double delta_rad = 0.0;
    std::optional<double> height_m;
};

struct CoverageResult {
    std::int64_t served_count = 0;
    std::vector<double> per_user_rate_bps;
    SweepParameter parameter;

    double sum_rate_bps() const;
};

struct ThroughputPoint {
    double delta_rad = 0.0;
    double mean_throughput_bps = 0.0;
    std::int64_t served_count = 0; // seeds whose effective rate met the demand
};

/// Link C: single user at `distance_m`, UE beamwidth swept over the grid,
/// alignment averaged over `seeds`.
std::vector<ThroughputPoint> kiosk_link_c_sweep(const MobilityClass& cls,
                                                const std::vector<double>& delta_grid_rad,
                                                const LinkContext& ctx, double distance_m,
                                                double demand_bandwidth_hz,
                                                const std::vector<std::uint64_t>& seeds,
                                                const MobilitySettings& mobility,
                                                double demand_rate_bps = 10e9);

/// Link D: all users share the AP by equal time slices.
CoverageResult kiosk_link_d_coverage(const UserField& users, double delta_rad,
                                     double demand_rate_bps, const LinkContext& ctx,
                                     double bandwidth_hz, const MobilitySettings& mobility);

struct KioskOptimum {
    double delta_rad = 0.0;
    CoverageResult coverage;
    std::vector<CoverageResult> curve; // one entry per grid point
};

KioskOptimum kiosk_optimal_beamwidth(const UserField& users, const MobilityClass& cls,
                                     const std::vector<double>& delta_grid_rad,
                                     double demand_rate_bps, const LinkContext& ctx,
                                     double bandwidth_hz, const MobilitySettings& mobility);

struct AbsGridPoint {
    double height_m = 0.0;
    double delta_rad = 0.0;
    std::int64_t served_count = 0;
    double sum_rate_bps = 0.0;
};

struct AbsOptimum {
    double height_m = 0.0;
    double delta_rad = 0.0;
    CoverageResult coverage;
    std::vector<AbsGridPoint> grid; // height-major
};

/// Drone at (0, 0, h) with beamwidth delta; users inside r <= h*tan(delta/2)
/// share it equally over their slant distance. The UE side uses
/// ctx.hardware.rx_beam and its own orientation oscillation.
AbsOptimum abs_optimize(const UserField& users, const std::vector<double>& height_grid_m,
                        const std::vector<double>& delta_grid_rad, double bandwidth_hz,
                        double demand_rate_bps, const LinkContext& ctx,
                        const MobilitySettings& mobility);

double abs_footprint_radius(double height_m, double delta_rad);

/// Widest inter-drone gap that still tiles a corridor without a hole.
double abs_spacing(std::int64_t n_drones, double corridor_length_m, double height_m,
                   double delta_rad);

} // namespace thz
