#pragma once

// Straightforward scalar reference implementations. They are written from the
// formulas directly and share no code with the library, so a disagreement
// points at one side or the other.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

namespace oracle {

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double c0 = 299792458.0;
inline constexpr double k_boltzmann = 1.380649e-23;

inline double rad(double deg) { return deg * pi / 180.0; }

inline double buck_kpa(double kelvin)
{
    const double t = kelvin - 273.15;
    return 0.61121 * std::exp((18.678 - t / 234.5) * (t / (257.14 + t)));
}

inline double vapor_density(double kelvin, double rh)
{
    const double e_pa = rh / 100.0 * buck_kpa(kelvin) * 1000.0;
    return e_pa / (461.5 * kelvin) * 1000.0;
}

struct Line {
    double f0, s, g;
};

// The shipped default spectrum, transcribed independently of the library.
inline const std::vector<Line>& default_lines()
{
    static const std::vector<Line> lines{
        {183.31e9, 6.13e7, 3e9},   {325.15e9, 8.48e7, 3e9},   {380.2e9, 8.48e8, 3e9},
        {448.0e9, 4.24e8, 3e9},    {556.94e9, 6.5e10, 3e9},   {752.03e9, 4.34e10, 3e9},
        {987.93e9, 1.08e10, 3e9},  {1097.37e9, 4.34e10, 3e9}, {1163.3e9, 3.25e10, 3e9},
    };
    return lines;
}

inline double k_lines(double f, double kelvin, double rh, const std::vector<Line>& lines = default_lines(),
                      double floor = 2e-4, double rho_ref = 7.5)
{
    double sum = floor;
    for (const auto& l : lines)
        sum += l.s * (l.g / ((f - l.f0) * (f - l.f0) + l.g * l.g)) / pi;
    return vapor_density(kelvin, rh) / rho_ref * sum;
}

inline double spreading_db(double f, double d) { return 20.0 * std::log10(4.0 * pi * d * f / c0); }

inline double absorption_db(double k, double d) { return 10.0 * std::log10(std::exp(1.0)) * k * d; }

inline double total_db(double f, double d, double kelvin, double rh)
{
    return spreading_db(f, d) + absorption_db(k_lines(f, kelvin, rh), d);
}

inline double noise_dbm(double kelvin, double bw, double nf)
{
    return 10.0 * std::log10(k_boltzmann * kelvin * bw * 1000.0) + nf;
}

inline double cap_gain(double delta) { return 2.0 / (1.0 - std::cos(delta / 2.0)); }

// Power split evenly across the band; each slice of width w at centre f
// contributes w*log2(1 + P*(w/B)*G*G/(L(f)*N(w))).
inline double capacity(double f_center, double band, double sub, double d, double kelvin, double rh,
                       double ptx_dbm = 10.0, double nf = 10.0, double t_sys = 290.0,
                       double delta_tx = rad(10.0), double delta_rx = rad(10.0))
{
    const double low = f_center - band / 2.0;
    double total = 0.0;
    double start = low;
    while (start < low + band - band * 1e-9) {
        const double w = std::min(sub, low + band - start);
        const double fc = start + w / 2.0;
        const double p_mw = std::pow(10.0, ptx_dbm / 10.0) * (w / band);
        const double loss = std::pow(10.0, total_db(fc, d, kelvin, rh) / 10.0);
        const double n_mw = std::pow(10.0, noise_dbm(t_sys, w, nf) / 10.0);
        const double snr = p_mw * cap_gain(delta_tx) * cap_gain(delta_rx) / loss / n_mw;
        total += w * std::log2(1.0 + snr);
        start += w;
    }
    return total;
}

// Pointing direction after R = Rz(yaw) Ry(pitch) Rx(roll), built as a full
// 3x3 matrix product.
inline double offset(double yaw, double pitch, double roll)
{
    using M = std::array<std::array<double, 3>, 3>;
    const M rz{{{std::cos(yaw), -std::sin(yaw), 0}, {std::sin(yaw), std::cos(yaw), 0}, {0, 0, 1}}};
    const M ry{{{std::cos(pitch), 0, std::sin(pitch)}, {0, 1, 0}, {-std::sin(pitch), 0, std::cos(pitch)}}};
    const M rx{{{1, 0, 0}, {0, std::cos(roll), -std::sin(roll)}, {0, std::sin(roll), std::cos(roll)}}};
    auto mul = [](const M& a, const M& b) {
        M c{};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k)
                    c[i][j] += a[i][k] * b[k][j];
        return c;
    };
    const M r = mul(mul(rz, ry), rx);
    return std::atan2(std::hypot(r[1][0], r[2][0]), r[0][0]);
}

struct Osc {
    double amp, freq, phase;
    double at(double t) const { return amp * std::sin(2.0 * pi * freq * t + phase); }
};

struct RefAlignment {
    double fraction;
    long outages;
};

// Step-by-step link simulation. After every re-entry into the beam the link
// stays down for ceil(latency/dt) steps; the device starts "previously in
// beam", so beginning inside the cone costs nothing.
inline RefAlignment simulate(const std::vector<double>& offsets, double beamwidth, double latency,
                             double dt)
{
    const long penalty = static_cast<long>(std::ceil(latency / dt - 1e-9));
    long last_entry = std::numeric_limits<long>::min() / 2;
    bool was_in = true;
    bool was_up = true;
    long up = 0, outages = 0;
    for (long k = 0; k < static_cast<long>(offsets.size()); ++k) {
        const bool in = offsets[k] <= beamwidth / 2.0;
        if (in && !was_in)
            last_entry = k;
        const bool link_up = in && (k - last_entry) >= penalty;
        if (link_up)
            ++up;
        else if (was_up)
            ++outages;
        was_in = in;
        was_up = link_up;
    }
    return {static_cast<double>(up) / static_cast<double>(offsets.size()), outages};
}

inline std::vector<double> offsets(const Osc& y, const Osc& p, const Osc& r, double duration, double dt)
{
    const auto n = static_cast<long>(std::llround(duration / dt));
    std::vector<double> out;
    for (long k = 0; k < n; ++k) {
        const double t = static_cast<double>(k) * dt;
        out.push_back(offset(y.at(t), p.at(t), r.at(t)));
    }
    return out;
}

inline long min_repeaters(double total, double max_hop)
{
    long n = 0;
    while (total / static_cast<double>(n + 1) > max_hop)
        ++n;
    return n;
}

} // namespace oracle
