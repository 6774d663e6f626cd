#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "thz/link.hpp"

namespace thz {

/// Small-scale orientation intensity. S1..S3 follow the kiosk analysis;
/// Static is a zero-amplitude device and Custom anything user-supplied.
enum class MobilityKind { S1, S2, S3, Static, Custom };

std::string_view to_string(MobilityKind kind);

struct MobilityClass {
    MobilityKind kind = MobilityKind::Static;
    double amplitude_min_deg = 0.0;
    double amplitude_max_deg = 0.0;
    double frequency_min_hz = 0.0;
    double frequency_max_hz = 0.0;

    static MobilityClass s1();
    static MobilityClass s2();
    static MobilityClass s3();
    static MobilityClass stationary();
    /// Accepts S1, S2, S3 and static (case-insensitive).
    static MobilityClass from_name(std::string_view name);

    void validate() const;
    bool operator==(const MobilityClass&) const = default;
};

struct AxisOscillation {
    double amplitude_rad = 0.0;
    double frequency_hz = 0.0;
    double phase_rad = 0.0;

    double angle_at(double t) const;
    bool operator==(const AxisOscillation&) const = default;
};

struct OrientationTrajectory {
    AxisOscillation yaw;
    AxisOscillation pitch;
    AxisOscillation roll;
    std::uint64_t seed = 0;

    bool operator==(const OrientationTrajectory&) const = default;
};

struct AlignmentStats {
    double aligned_fraction = 1.0;
    std::int64_t outage_count = 0;
    double mean_outage_duration_s = 0.0;
};

/// Time-stepping settings for alignment simulation.
struct MobilitySettings {
    double realign_latency_s = 0.010;
    double duration_s = 10.0;
    double timestep_s = 0.001;

    bool operator==(const MobilitySettings&) const = default;
};

/// Uniform double in [0, 1) from the top 53 bits of a 64-bit draw.
/// Portable across standard libraries, unlike std::uniform_real_distribution.
double unit_uniform(std::uint64_t draw);

/// Per axis (yaw, pitch, roll) draws amplitude, frequency, then phase from
/// std::mt19937_64(seed).
OrientationTrajectory sample_trajectory(const MobilityClass& cls, std::uint64_t seed);

/// Angle between the nominal boresight (+x) and the boresight after
/// intrinsic yaw (z), pitch (y), roll (x) rotations.
double boresight_offset(double yaw_rad, double pitch_rad, double roll_rad);

std::size_t step_count(double duration_s, double timestep_s);

/// offset(t_k) for t_k = k * timestep, k in [0, step_count).
std::vector<double> offset_series(const OrientationTrajectory& traj, double duration_s,
                                  double timestep_s);

/// Link state machine over a precomputed offset series. In-beam when
/// offset <= beamwidth/2; every re-entry into the beam costs
/// ceil(latency/timestep) steps of extra outage before the link counts as
/// aligned again. The device starts aligned if it starts in-beam.
AlignmentStats alignment_from_offsets(std::span<const double> offsets, double beamwidth_rad,
                                      double realign_latency_s, double timestep_s);

AlignmentStats alignment_fraction(const OrientationTrajectory& traj, const BeamConfig& beam,
                                  double realign_latency_s, double duration_s, double timestep_s);

double effective_throughput(double capacity_bps, const AlignmentStats& stats);

/// Debug trace with columns t_s,yaw_rad,pitch_rad,roll_rad,offset_rad,aligned.
std::string trajectory_trace_csv(const OrientationTrajectory& traj, const BeamConfig& beam,
                                 const MobilitySettings& settings);

} // namespace thz
