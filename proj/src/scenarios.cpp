#include "thz/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <fmt/format.h>

namespace thz {

ApplicationType classify(NodeMobility ap, NodeMobility ue)
{
    if (ap == NodeMobility::Static)
        return ue == NodeMobility::Static ? ApplicationType::Type1 : ApplicationType::Type2;
    return ue == NodeMobility::Static ? ApplicationType::Type3 : ApplicationType::Type4;
}

std::string_view describe(ApplicationType type)
{
    switch (type) {
    case ApplicationType::Type1:
        return "long range, wireless backhaul, quasi-mobile, outdoor displays";
    case ApplicationType::Type2:
        return "medium range, kiosks, smart bus stops, ITS, nomadic use";
    case ApplicationType::Type3:
        return "small range, drone backhaul, aerial base station";
    case ApplicationType::Type4:
        return "MANET, D2D communication, aerial base station";
    }
    return "";
}

std::optional<AdaptiveLink> adaptive_capacity(const LinkContext& ctx, double distance_m,
                                              double bandwidth_hz)
{
    auto band = try_first_feasible_band(ctx.absorption(), ctx.atmosphere, distance_m, ctx.search,
                                        bandwidth_hz);
    if (!band)
        return std::nullopt;
    const double sub = std::min(ctx.subchannel_width_hz, band->bandwidth_hz);
    return AdaptiveLink{*band, capacity_bps(ctx.absorption(), ctx.atmosphere, ctx.hardware, *band,
                                            distance_m, sub)};
}

// ---------------------------------------------------------------------------
// Backhaul

namespace {

constexpr double kHopResolutionM = 0.1;

bool hop_feasible(const LinkContext& ctx, double distance_m, double rate_bps, double bandwidth_hz)
{
    const auto link = adaptive_capacity(ctx, distance_m, bandwidth_hz);
    return link && link->capacity_bps >= rate_bps;
}

double grid_distance(std::int64_t k) { return static_cast<double>(k) / 10.0; }

} // namespace

double max_hop_distance(const LinkContext& ctx, double required_rate_bps,
                        double required_bandwidth_hz, double d_max_search_m)
{
    if (!(required_rate_bps > 0.0))
        throw std::domain_error("required rate must be > 0");
    if (!(d_max_search_m >= 1.0))
        throw std::domain_error("hop search bound must be >= 1 m");

    if (!hop_feasible(ctx, 1.0, required_rate_bps, required_bandwidth_hz))
        throw LinkInfeasible(fmt::format(
            "link infeasible: {} bit/s over {} Hz is not reachable even at 1 m", required_rate_bps,
            required_bandwidth_hz));
    if (hop_feasible(ctx, d_max_search_m, required_rate_bps, required_bandwidth_hz))
        return d_max_search_m;

    // Invariant: lo feasible, hi infeasible, both on the 0.1 m grid.
    std::int64_t lo = 10;
    std::int64_t hi = static_cast<std::int64_t>(std::floor(d_max_search_m / kHopResolutionM + 1e-9));
    if (grid_distance(hi) >= d_max_search_m) {
        // d_max itself is on the grid and already known to fail.
    } else if (hop_feasible(ctx, grid_distance(hi), required_rate_bps, required_bandwidth_hz)) {
        return grid_distance(hi);
    }
    while (hi - lo > 1) {
        const std::int64_t mid = lo + (hi - lo) / 2;
        if (hop_feasible(ctx, grid_distance(mid), required_rate_bps, required_bandwidth_hz))
            lo = mid;
        else
            hi = mid;
    }
    return grid_distance(lo);
}

std::int64_t repeaters_needed(double total_distance_m, double max_hop_m)
{
    if (!(total_distance_m > 0.0) || !(max_hop_m > 0.0))
        throw std::domain_error("total distance and max hop must be > 0");
    auto fits = [&](std::int64_t n) { return total_distance_m / static_cast<double>(n + 1) <= max_hop_m; };
    auto n = std::max<std::int64_t>(
        0, static_cast<std::int64_t>(std::ceil(total_distance_m / max_hop_m)) - 1);
    while (n > 0 && fits(n - 1))
        --n;
    while (!fits(n))
        ++n;
    return n;
}

BackhaulPlan plan_backhaul(double total_distance_m, const LinkContext& ctx,
                           double required_rate_bps, double required_bandwidth_hz,
                           double d_max_search_m)
{
    if (!(total_distance_m > 0.0))
        throw std::domain_error("total backhaul distance must be > 0");
    const double max_hop =
        max_hop_distance(ctx, required_rate_bps, required_bandwidth_hz, d_max_search_m);

    BackhaulPlan plan;
    plan.total_distance_m = total_distance_m;
    plan.hop_distance_m = std::min(total_distance_m, max_hop);
    plan.repeater_count = repeaters_needed(total_distance_m, plan.hop_distance_m);

    // Hops are placed at equal spacing, which never exceeds the max hop.
    const double segment = total_distance_m / static_cast<double>(plan.repeater_count + 1);
    const auto link = adaptive_capacity(ctx, segment, required_bandwidth_hz);
    if (!link)
        throw LinkInfeasible(fmt::format("no band at the planned hop length {} m", segment));
    plan.per_hop_rate_bps = link->capacity_bps;
    plan.band = link->band;
    return plan;
}

// ---------------------------------------------------------------------------
// User fields

double User::ground_distance() const { return std::hypot(x_m, y_m); }

UserField UserField::with_class(const MobilityClass& cls) const
{
    UserField out = *this;
    for (auto& u : out.users)
        u.mobility = cls;
    return out;
}

UserField kiosk_sector_field(std::size_t count, double r_min_m, double r_max_m,
                             double half_angle_rad, const MobilityClass& cls, std::uint64_t seed)
{
    if (!(r_min_m > 0.0 && r_min_m <= r_max_m))
        throw std::domain_error("kiosk field needs 0 < r_min <= r_max");
    std::mt19937_64 rng(seed);
    UserField field;
    for (std::size_t i = 0; i < count; ++i) {
        const double u_r = unit_uniform(rng());
        const double u_a = unit_uniform(rng());
        // Uniform in area over the annulus.
        const double r = std::sqrt(r_min_m * r_min_m + u_r * (r_max_m * r_max_m - r_min_m * r_min_m));
        const double a = -half_angle_rad + 2.0 * half_angle_rad * u_a;
        field.users.push_back({r * std::cos(a), r * std::sin(a), cls, seed ^ (i + 1)});
    }
    return field;
}

UserField disk_field(std::size_t count, double radius_m, const MobilityClass& cls,
                     std::uint64_t seed)
{
    if (!(radius_m > 0.0))
        throw std::domain_error("disk radius must be > 0");
    std::mt19937_64 rng(seed);
    UserField field;
    for (std::size_t i = 0; i < count; ++i) {
        const double r = radius_m * std::sqrt(unit_uniform(rng()));
        const double a = 2.0 * std::numbers::pi * unit_uniform(rng());
        field.users.push_back({r * std::cos(a), r * std::sin(a), cls, seed ^ (i + 1)});
    }
    return field;
}

double CoverageResult::sum_rate_bps() const
{
    double s = 0.0;
    for (double r : per_user_rate_bps)
        s += r;
    return s;
}

// ---------------------------------------------------------------------------
// Kiosk

namespace {

void check_delta_grid(const std::vector<double>& grid)
{
    if (grid.empty())
        throw std::domain_error("beamwidth grid is empty");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] > 0.0 && grid[i] <= 2.0 * std::numbers::pi))
            throw std::domain_error(fmt::format("beamwidth {} rad out of (0, 2*pi]", grid[i]));
        if (i > 0 && !(grid[i] > grid[i - 1]))
            throw std::domain_error("beamwidth grid must be strictly ascending");
    }
}

LinkContext with_ue_beam(const LinkContext& ctx, double delta_rad)
{
    LinkContext out = ctx;
    out.hardware.rx_beam.beamwidth_rad = delta_rad;
    return out;
}

std::vector<std::vector<double>> user_offsets(const UserField& users,
                                              const MobilitySettings& mobility)
{
    std::vector<std::vector<double>> out;
    out.reserve(users.users.size());
    for (const auto& u : users.users)
        out.push_back(offset_series(sample_trajectory(u.mobility, u.seed), mobility.duration_s,
                                    mobility.timestep_s));
    return out;
}

CoverageResult link_d_coverage(const UserField& users,
                               const std::vector<std::vector<double>>& offsets, double delta_rad,
                               double demand_rate_bps, const LinkContext& ctx,
                               double bandwidth_hz, const MobilitySettings& mobility)
{
    const auto n = static_cast<double>(users.users.size());
    const LinkContext link_ctx = with_ue_beam(ctx, delta_rad);

    CoverageResult result;
    result.parameter.delta_rad = delta_rad;
    for (std::size_t i = 0; i < users.users.size(); ++i) {
        const auto link = adaptive_capacity(link_ctx, users.users[i].ground_distance(), bandwidth_hz);
        const double capacity = link ? link->capacity_bps : 0.0;
        const auto stats = alignment_from_offsets(offsets[i], delta_rad,
                                                  mobility.realign_latency_s, mobility.timestep_s);
        const double rate = effective_throughput(capacity / n, stats);
        result.per_user_rate_bps.push_back(rate);
        if (rate >= demand_rate_bps)
            ++result.served_count;
    }
    return result;
}

// True when `cand` beats `best`: more served users, then more total rate.
// Equal candidates keep the earlier (smaller) grid point.
bool better_coverage(std::int64_t served, double sum, std::int64_t best_served, double best_sum)
{
    if (served != best_served)
        return served > best_served;
    return sum > best_sum;
}

} // namespace

std::vector<ThroughputPoint> kiosk_link_c_sweep(const MobilityClass& cls,
                                                const std::vector<double>& delta_grid_rad,
                                                const LinkContext& ctx, double distance_m,
                                                double demand_bandwidth_hz,
                                                const std::vector<std::uint64_t>& seeds,
                                                const MobilitySettings& mobility,
                                                double demand_rate_bps)
{
    check_delta_grid(delta_grid_rad);
    if (seeds.empty())
        throw std::domain_error("link C sweep needs at least one seed");

    std::vector<std::vector<double>> offsets;
    offsets.reserve(seeds.size());
    for (auto s : seeds)
        offsets.push_back(offset_series(sample_trajectory(cls, s), mobility.duration_s,
                                        mobility.timestep_s));

    std::vector<ThroughputPoint> curve;
    for (double delta : delta_grid_rad) {
        const auto link = adaptive_capacity(with_ue_beam(ctx, delta), distance_m, demand_bandwidth_hz);
        const double capacity = link ? link->capacity_bps : 0.0;
        ThroughputPoint p;
        p.delta_rad = delta;
        double sum = 0.0;
        for (const auto& off : offsets) {
            const auto stats = alignment_from_offsets(off, delta, mobility.realign_latency_s,
                                                      mobility.timestep_s);
            const double rate = effective_throughput(capacity, stats);
            sum += rate;
            if (rate >= demand_rate_bps)
                ++p.served_count;
        }
        p.mean_throughput_bps = sum / static_cast<double>(offsets.size());
        curve.push_back(p);
    }
    return curve;
}

CoverageResult kiosk_link_d_coverage(const UserField& users, double delta_rad,
                                     double demand_rate_bps, const LinkContext& ctx,
                                     double bandwidth_hz, const MobilitySettings& mobility)
{
    if (users.users.empty())
        throw std::domain_error("user field is empty");
    return link_d_coverage(users, user_offsets(users, mobility), delta_rad, demand_rate_bps, ctx,
                           bandwidth_hz, mobility);
}

KioskOptimum kiosk_optimal_beamwidth(const UserField& users, const MobilityClass& cls,
                                     const std::vector<double>& delta_grid_rad,
                                     double demand_rate_bps, const LinkContext& ctx,
                                     double bandwidth_hz, const MobilitySettings& mobility)
{
    check_delta_grid(delta_grid_rad);
    if (users.users.empty())
        throw std::domain_error("user field is empty");
    const UserField field = users.with_class(cls);
    const auto offsets = user_offsets(field, mobility);

    KioskOptimum best;
    bool have = false;
    for (double delta : delta_grid_rad) {
        auto cov = link_d_coverage(field, offsets, delta, demand_rate_bps, ctx, bandwidth_hz, mobility);
        if (!have || better_coverage(cov.served_count, cov.sum_rate_bps(), best.coverage.served_count,
                                     best.coverage.sum_rate_bps())) {
            best.delta_rad = delta;
            best.coverage = cov;
            have = true;
        }
        best.curve.push_back(std::move(cov));
    }
    return best;
}

// ---------------------------------------------------------------------------
// Aerial base station

double abs_footprint_radius(double height_m, double delta_rad)
{
    if (!(height_m > 0.0))
        throw std::domain_error("drone height must be > 0");
    if (!(delta_rad > 0.0 && delta_rad < std::numbers::pi))
        throw std::domain_error("drone beamwidth must be in (0, pi) rad");
    return height_m * std::tan(delta_rad / 2.0);
}

AbsOptimum abs_optimize(const UserField& users, const std::vector<double>& height_grid_m,
                        const std::vector<double>& delta_grid_rad, double bandwidth_hz,
                        double demand_rate_bps, const LinkContext& ctx,
                        const MobilitySettings& mobility)
{
    if (height_grid_m.empty())
        throw std::domain_error("height grid is empty");
    for (double h : height_grid_m)
        if (!(h > 0.0))
            throw std::domain_error("heights must be > 0");
    check_delta_grid(delta_grid_rad);
    for (double d : delta_grid_rad)
        if (!(d < std::numbers::pi))
            throw std::domain_error("drone beamwidth must be below pi rad");

    const auto& us = users.users;
    std::vector<double> fraction;
    fraction.reserve(us.size());
    for (const auto& u : us) {
        const auto traj = sample_trajectory(u.mobility, u.seed);
        fraction.push_back(alignment_fraction(traj, ctx.hardware.rx_beam, mobility.realign_latency_s,
                                              mobility.duration_s, mobility.timestep_s)
                               .aligned_fraction);
    }

    AbsOptimum best;
    bool have = false;
    for (double h : height_grid_m) {
        std::vector<double> slant(us.size());
        std::vector<std::optional<Band>> bands(us.size());
        for (std::size_t i = 0; i < us.size(); ++i) {
            slant[i] = std::hypot(h, us[i].ground_distance());
            bands[i] = try_first_feasible_band(ctx.absorption(), ctx.atmosphere, slant[i],
                                               ctx.search, bandwidth_hz);
        }
        for (double delta : delta_grid_rad) {
            const double radius = abs_footprint_radius(h, delta);
            RadioHardware hw = ctx.hardware;
            hw.tx_beam.beamwidth_rad = delta;

            std::size_t in_footprint = 0;
            for (const auto& u : us)
                if (u.ground_distance() <= radius)
                    ++in_footprint;

            CoverageResult cov;
            cov.parameter = {delta, h};
            cov.per_user_rate_bps.assign(us.size(), 0.0);
            for (std::size_t i = 0; i < us.size(); ++i) {
                if (us[i].ground_distance() > radius || !bands[i])
                    continue;
                const double sub = std::min(ctx.subchannel_width_hz, bands[i]->bandwidth_hz);
                const double capacity =
                    capacity_bps(ctx.absorption(), ctx.atmosphere, hw, *bands[i], slant[i], sub);
                const double rate = capacity / static_cast<double>(in_footprint) * fraction[i];
                cov.per_user_rate_bps[i] = rate;
                if (rate >= demand_rate_bps)
                    ++cov.served_count;
            }
            const double sum = cov.sum_rate_bps();
            best.grid.push_back({h, delta, cov.served_count, sum});
            if (!have || better_coverage(cov.served_count, sum, best.coverage.served_count,
                                         best.coverage.sum_rate_bps())) {
                best.height_m = h;
                best.delta_rad = delta;
                best.coverage = std::move(cov);
                have = true;
            }
        }
    }
    return best;
}

double abs_spacing(std::int64_t n_drones, double corridor_length_m, double height_m,
                   double delta_rad)
{
    if (n_drones < 2)
        throw std::domain_error("spacing needs at least two drones");
    if (!(corridor_length_m > 0.0))
        throw std::domain_error("corridor length must be > 0");
    const double footprint_diameter = 2.0 * abs_footprint_radius(height_m, delta_rad);
    return std::min(corridor_length_m / static_cast<double>(n_drones - 1), footprint_diameter);
}

} // namespace thz
