#include "thz/mobility.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <numbers>
#include <random>

#include <fmt/format.h>

#include "thz/csv.hpp"

namespace thz {

namespace {

using Vec3 = std::array<double, 3>;

// R * e_x with R = Rz(yaw) * Ry(pitch) * Rx(roll).
Vec3 rotate_boresight(double yaw, double pitch, double roll)
{
    const double cr = std::cos(roll), sr = std::sin(roll);
    Vec3 v{1.0, 0.0, 0.0};
    v = {v[0], cr * v[1] - sr * v[2], sr * v[1] + cr * v[2]};
    const double cp = std::cos(pitch), sp = std::sin(pitch);
    v = {cp * v[0] + sp * v[2], v[1], -sp * v[0] + cp * v[2]};
    const double cy = std::cos(yaw), sy = std::sin(yaw);
    v = {cy * v[0] - sy * v[1], sy * v[0] + cy * v[1], v[2]};
    return v;
}

AxisOscillation draw_axis(std::mt19937_64& rng, const MobilityClass& cls)
{
    const double ua = unit_uniform(rng());
    const double uf = unit_uniform(rng());
    const double up = unit_uniform(rng());
    AxisOscillation a;
    a.amplitude_rad =
        deg_to_rad(cls.amplitude_min_deg + ua * (cls.amplitude_max_deg - cls.amplitude_min_deg));
    a.frequency_hz = cls.frequency_min_hz + uf * (cls.frequency_max_hz - cls.frequency_min_hz);
    a.phase_rad = 2.0 * std::numbers::pi * up;
    return a;
}

// Beam re-entry costs ceil(latency/timestep) steps before the link counts as
// aligned; leaving the beam mid-penalty restarts it on the next re-entry.
class RealignmentTracker {
public:
    RealignmentTracker(double latency_s, double timestep_s)
        : penalty_steps_(static_cast<std::int64_t>(std::ceil(latency_s / timestep_s - 1e-9)))
    {
    }

    bool step(bool in_beam)
    {
        if (in_beam && !prev_in_beam_)
            remaining_ = penalty_steps_;
        prev_in_beam_ = in_beam;
        if (!in_beam) {
            remaining_ = 0;
            return false;
        }
        if (remaining_ > 0) {
            --remaining_;
            return false;
        }
        return true;
    }

private:
    std::int64_t penalty_steps_;
    std::int64_t remaining_ = 0;
    bool prev_in_beam_ = true;
};

} // namespace

std::string_view to_string(MobilityKind kind)
{
    switch (kind) {
    case MobilityKind::S1: return "S1";
    case MobilityKind::S2: return "S2";
    case MobilityKind::S3: return "S3";
    case MobilityKind::Static: return "static";
    case MobilityKind::Custom: return "custom";
    }
    return "custom";
}

MobilityClass MobilityClass::s1() { return {MobilityKind::S1, 13.0, 15.0, 0.5, 2.0}; }
MobilityClass MobilityClass::s2() { return {MobilityKind::S2, 3.0, 5.0, 0.2, 1.0}; }
MobilityClass MobilityClass::s3() { return {MobilityKind::S3, 1.0, 3.0, 0.05, 0.5}; }
MobilityClass MobilityClass::stationary() { return {MobilityKind::Static, 0.0, 0.0, 0.0, 0.0}; }

MobilityClass MobilityClass::from_name(std::string_view name)
{
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "s1")
        return s1();
    if (lower == "s2")
        return s2();
    if (lower == "s3")
        return s3();
    if (lower == "static")
        return stationary();
    throw std::domain_error(fmt::format("unknown mobility class '{}' (expected S1, S2, S3 or static)", name));
}

void MobilityClass::validate() const
{
    if (!(amplitude_min_deg >= 0.0 && amplitude_min_deg <= amplitude_max_deg))
        throw std::domain_error("mobility amplitude range must satisfy 0 <= min <= max");
    if (!(frequency_min_hz >= 0.0 && frequency_min_hz <= frequency_max_hz))
        throw std::domain_error("mobility frequency range must satisfy 0 <= min <= max");
}

double AxisOscillation::angle_at(double t) const
{
    return amplitude_rad * std::sin(2.0 * std::numbers::pi * frequency_hz * t + phase_rad);
}

double unit_uniform(std::uint64_t draw) { return static_cast<double>(draw >> 11) * 0x1.0p-53; }

OrientationTrajectory sample_trajectory(const MobilityClass& cls, std::uint64_t seed)
{
    cls.validate();
    std::mt19937_64 rng(seed);
    OrientationTrajectory traj;
    traj.yaw = draw_axis(rng, cls);
    traj.pitch = draw_axis(rng, cls);
    traj.roll = draw_axis(rng, cls);
    traj.seed = seed;
    return traj;
}

double boresight_offset(double yaw_rad, double pitch_rad, double roll_rad)
{
    const Vec3 v = rotate_boresight(yaw_rad, pitch_rad, roll_rad);
    // atan2 of |e_x x v| and e_x . v stays accurate near 0 and pi.
    const double cross = std::hypot(v[1], v[2]);
    return std::atan2(cross, v[0]);
}

std::size_t step_count(double duration_s, double timestep_s)
{
    if (!(duration_s > 0.0) || !(timestep_s > 0.0))
        throw std::domain_error("duration and timestep must be > 0");
    if (timestep_s > duration_s / 100.0 * (1.0 + 1e-12))
        throw std::domain_error(fmt::format(
            "timestep {} s must be <= duration/100 ({} s)", timestep_s, duration_s / 100.0));
    return static_cast<std::size_t>(std::llround(duration_s / timestep_s));
}

std::vector<double> offset_series(const OrientationTrajectory& traj, double duration_s,
                                  double timestep_s)
{
    const std::size_t n = step_count(duration_s, timestep_s);
    std::vector<double> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double t = static_cast<double>(k) * timestep_s;
        out[k] = boresight_offset(traj.yaw.angle_at(t), traj.pitch.angle_at(t),
                                  traj.roll.angle_at(t));
    }
    return out;
}

AlignmentStats alignment_from_offsets(std::span<const double> offsets, double beamwidth_rad,
                                      double realign_latency_s, double timestep_s)
{
    if (!(realign_latency_s >= 0.0))
        throw std::domain_error("realignment latency must be >= 0");
    if (!(timestep_s > 0.0))
        throw std::domain_error("timestep must be > 0");
    if (offsets.empty())
        throw std::domain_error("offset series is empty");

    RealignmentTracker tracker(realign_latency_s, timestep_s);
    const double half_beam = beamwidth_rad / 2.0;
    std::size_t aligned_steps = 0;
    std::int64_t outages = 0;
    bool prev_aligned = true;
    for (double off : offsets) {
        const bool aligned = tracker.step(off <= half_beam);
        if (aligned)
            ++aligned_steps;
        else if (prev_aligned)
            ++outages;
        prev_aligned = aligned;
    }

    const std::size_t n = offsets.size();
    AlignmentStats stats;
    stats.aligned_fraction = static_cast<double>(aligned_steps) / static_cast<double>(n);
    stats.outage_count = outages;
    stats.mean_outage_duration_s =
        outages == 0 ? 0.0
                     : static_cast<double>(n - aligned_steps) * timestep_s /
                           static_cast<double>(outages);
    return stats;
}

AlignmentStats alignment_fraction(const OrientationTrajectory& traj, const BeamConfig& beam,
                                  double realign_latency_s, double duration_s, double timestep_s)
{
    beam.validate();
    const auto offsets = offset_series(traj, duration_s, timestep_s);
    return alignment_from_offsets(offsets, beam.beamwidth_rad, realign_latency_s, timestep_s);
}

double effective_throughput(double capacity_bps, const AlignmentStats& stats)
{
    return capacity_bps * stats.aligned_fraction;
}

std::string trajectory_trace_csv(const OrientationTrajectory& traj, const BeamConfig& beam,
                                 const MobilitySettings& settings)
{
    const std::size_t n = step_count(settings.duration_s, settings.timestep_s);
    const double half_beam = beam.beamwidth_rad / 2.0;
    RealignmentTracker tracker(settings.realign_latency_s, settings.timestep_s);
    CsvWriter csv{"t_s", "yaw_rad", "pitch_rad", "roll_rad", "offset_rad", "aligned"};
    for (std::size_t k = 0; k < n; ++k) {
        const double t = static_cast<double>(k) * settings.timestep_s;
        const double y = traj.yaw.angle_at(t), p = traj.pitch.angle_at(t), r = traj.roll.angle_at(t);
        const double off = boresight_offset(y, p, r);
        csv.row({t, y, p, r, off, tracker.step(off <= half_beam) ? 1.0 : 0.0});
    }
    return csv.str();
}

} // namespace thz
