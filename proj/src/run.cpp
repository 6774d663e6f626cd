#include "thz/run.hpp"

#include <filesystem>
#include <ostream>

#include <fmt/format.h>

#include "thz/csv.hpp"

namespace thz {

namespace {

namespace fs = std::filesystem;

struct Pair {
    double humidity;
    double distance_m;
};

std::vector<Pair> humidity_distance_pairs(const SimConfig& c)
{
    std::vector<double> rh = c.sweep.humidities;
    if (rh.empty())
        rh.push_back(c.atmosphere.relative_humidity);
    std::vector<double> d = c.sweep.distances_m;
    if (d.empty())
        d.push_back(c.params.distance_m);
    std::vector<Pair> out;
    for (double h : rh)
        for (double x : d)
            out.push_back({h, x});
    return out;
}

std::string pair_tag(const Pair& p)
{
    return fmt::format("rh{}_d{}", format_number(p.humidity), format_number(p.distance_m));
}

std::vector<double> deltas_rad(const SimConfig& c)
{
    std::vector<double> out;
    for (double d : c.sweep.deltas_deg)
        out.push_back(deg_to_rad(d));
    return out;
}

class Runner {
public:
    explicit Runner(const SimConfig& c)
        : config_(c)
        , model_(make_absorption_model(c))
        , dir_(c.output)
    {
        ctx_.model = &model_;
        ctx_.atmosphere = c.atmosphere;
        ctx_.hardware = make_hardware(c);
        ctx_.search = c.spectrum.search;
        ctx_.subchannel_width_hz = c.spectrum.subchannel_hz;
        fs::create_directories(dir_);
    }

    std::string run()
    {
        switch (config_.scenario) {
        case ScenarioKind::PathLoss: return pathloss();
        case ScenarioKind::Windows: return windows();
        case ScenarioKind::Rate: return rate();
        case ScenarioKind::Backhaul: return backhaul();
        case ScenarioKind::KioskC: return kiosk_c();
        case ScenarioKind::KioskD: return kiosk_d();
        case ScenarioKind::Abs: return abs();
        }
        return {};
    }

private:
    void write(const std::string& name, const std::string& text)
    {
        write_text_file((dir_ / name).string(), text);
    }

    Atmosphere atmosphere_at(double rh) const
    {
        Atmosphere a = config_.atmosphere;
        a.relative_humidity = rh;
        return a;
    }

    MobilityClass mobility_class() const
    {
        return MobilityClass::from_name(config_.mobility.mobility_class);
    }

    std::string pathloss()
    {
        const auto& s = config_.spectrum.search;
        std::size_t points = 0;
        const auto pairs = humidity_distance_pairs(config_);
        for (const auto& p : pairs) {
            CsvWriter csv{"frequency_hz", "spreading_db", "absorption_db", "total_db"};
            for (const auto& sample : loss_curve(model_, atmosphere_at(p.humidity), p.distance_m,
                                                 s.f_low_hz, s.f_high_hz, s.grid_step_hz)) {
                csv.row({sample.frequency_hz, sample.loss.spreading_db, sample.loss.absorption_db,
                         sample.loss.total_db});
                ++points;
            }
            write(fmt::format("pathloss_{}.csv", pair_tag(p)), csv.str());
        }
        return fmt::format("pathloss: curves={} points={}", pairs.size(), points);
    }

    std::string windows()
    {
        const auto& s = config_.spectrum.search;
        CsvWriter list{"relative_humidity", "distance_m", "f_low_hz", "f_high_hz", "worst_loss_db"};
        CsvWriter summary{"relative_humidity", "distance_m", "window_count", "max_contiguous_hz"};
        std::string line = "windows:";
        for (const auto& p : humidity_distance_pairs(config_)) {
            const auto ws = find_windows(model_, atmosphere_at(p.humidity), p.distance_m,
                                         s.loss_threshold_db, s.f_low_hz, s.f_high_hz,
                                         s.grid_step_hz);
            for (const auto& w : ws)
                list.row({p.humidity, p.distance_m, w.f_low_hz, w.f_high_hz, w.worst_loss_db});
            const double widest = max_contiguous_bandwidth(ws);
            summary.row({p.humidity, p.distance_m, static_cast<double>(ws.size()), widest});
            line += fmt::format(" rh={} d={}m count={} max_contiguous_hz={};",
                                format_number(p.humidity), format_number(p.distance_m), ws.size(),
                                format_number(widest));
        }
        write("windows.csv", list.str());
        write("windows_summary.csv", summary.str());
        line.pop_back();
        return line;
    }

    std::string rate()
    {
        const auto& s = config_.spectrum.search;
        const double bw = config_.spectrum.bandwidth_hz;
        std::string line = "rate:";
        for (const auto& p : humidity_distance_pairs(config_)) {
            const auto curve = rate_curve(model_, atmosphere_at(p.humidity), ctx_.hardware,
                                          p.distance_m, bw, std::min(ctx_.subchannel_width_hz, bw),
                                          s.f_low_hz, s.f_high_hz, config_.spectrum.rate_step_hz);
            CsvWriter csv{"frequency_hz", "rate_density_gbps_per_ghz"};
            double peak = 0.0, peak_f = 0.0;
            for (const auto& r : curve) {
                csv.row({r.frequency_hz, r.rate_density_gbps_per_ghz});
                if (r.rate_density_gbps_per_ghz > peak) {
                    peak = r.rate_density_gbps_per_ghz;
                    peak_f = r.frequency_hz;
                }
            }
            write(fmt::format("rate_{}.csv", pair_tag(p)), csv.str());
            line += fmt::format(" rh={} d={}m peak_gbps_per_ghz={} at_hz={};",
                                format_number(p.humidity), format_number(p.distance_m),
                                format_number(peak), format_number(peak_f));
        }
        line.pop_back();
        return line;
    }

    std::string backhaul()
    {
        const auto& p = config_.params;
        const double max_hop = max_hop_distance(ctx_, p.required_rate_bps,
                                                config_.spectrum.bandwidth_hz, p.d_max_search_m);
        const auto plan = plan_backhaul(p.total_distance_m, ctx_, p.required_rate_bps,
                                        config_.spectrum.bandwidth_hz, p.d_max_search_m);
        CsvWriter csv{"total_distance_m", "max_hop_m", "hop_distance_m", "repeater_count",
                      "per_hop_rate_bps", "band_center_hz", "bandwidth_hz"};
        csv.row({plan.total_distance_m, max_hop, plan.hop_distance_m,
                 static_cast<double>(plan.repeater_count), plan.per_hop_rate_bps,
                 plan.band.center_hz, plan.band.bandwidth_hz});
        write("backhaul.csv", csv.str());
        return fmt::format("backhaul: total={}m max_hop={}m repeaters={} per_hop_rate_bps={}",
                           format_number(plan.total_distance_m), format_number(max_hop),
                           plan.repeater_count, format_number(plan.per_hop_rate_bps));
    }

    std::string kiosk_c()
    {
        const auto& p = config_.params;
        std::vector<std::uint64_t> seeds;
        for (std::int64_t j = 0; j < p.seeds; ++j)
            seeds.push_back(config_.seed ^ static_cast<std::uint64_t>(j));
        const auto cls = mobility_class();
        const auto curve = kiosk_link_c_sweep(cls, deltas_rad(config_), ctx_, p.distance_m,
                                              config_.spectrum.bandwidth_hz, seeds,
                                              config_.mobility.settings, p.demand_rate_bps);
        CsvWriter csv{"delta_rad", "mean_throughput_bps", "served_count"};
        const ThroughputPoint* best = &curve.front();
        for (const auto& pt : curve) {
            csv.row({pt.delta_rad, pt.mean_throughput_bps, static_cast<double>(pt.served_count)});
            if (pt.mean_throughput_bps > best->mean_throughput_bps)
                best = &pt;
        }
        write("kiosk_c.csv", csv.str());
        if (config_.mobility.trace) {
            BeamConfig beam{best->delta_rad};
            write("trace_kiosk_c.csv", trajectory_trace_csv(sample_trajectory(cls, seeds.front()),
                                                            beam, config_.mobility.settings));
        }
        return fmt::format("kiosk-c: class={} best_delta_deg={} mean_throughput_bps={}",
                           to_string(cls.kind), format_number(rad_to_deg(best->delta_rad)),
                           format_number(best->mean_throughput_bps));
    }

    std::string kiosk_d()
    {
        const auto& p = config_.params;
        const auto cls = mobility_class();
        const auto field = kiosk_sector_field(static_cast<std::size_t>(p.users), p.r_min_m,
                                              p.r_max_m, deg_to_rad(p.sector_half_angle_deg), cls,
                                              config_.seed);
        const auto opt = kiosk_optimal_beamwidth(field, cls, deltas_rad(config_), p.demand_rate_bps,
                                                 ctx_, config_.spectrum.bandwidth_hz,
                                                 config_.mobility.settings);
        CsvWriter csv{"delta_rad", "mean_throughput_bps", "served_count"};
        for (const auto& cov : opt.curve)
            csv.row({cov.parameter.delta_rad,
                     cov.sum_rate_bps() / static_cast<double>(cov.per_user_rate_bps.size()),
                     static_cast<double>(cov.served_count)});
        write("kiosk_d.csv", csv.str());
        return fmt::format("kiosk-d: class={} optimal_delta_deg={} served={}/{}",
                           to_string(cls.kind), format_number(rad_to_deg(opt.delta_rad)),
                           opt.coverage.served_count, p.users);
    }

    std::string abs()
    {
        const auto& p = config_.params;
        const auto cls = mobility_class();
        const auto field =
            disk_field(static_cast<std::size_t>(p.users), p.disk_radius_m, cls, config_.seed);
        const auto opt = abs_optimize(field, config_.sweep.heights_m, deltas_rad(config_),
                                      config_.spectrum.bandwidth_hz, p.demand_rate_bps, ctx_,
                                      config_.mobility.settings);
        CsvWriter csv{"height_m", "delta_rad", "served_count", "sum_rate_bps"};
        for (const auto& g : opt.grid)
            csv.row({g.height_m, g.delta_rad, static_cast<double>(g.served_count), g.sum_rate_bps});
        write("abs.csv", csv.str());
        return fmt::format("abs: class={} optimal_height_m={} optimal_delta_deg={} served={}/{}",
                           to_string(cls.kind), format_number(opt.height_m),
                           format_number(rad_to_deg(opt.delta_rad)), opt.coverage.served_count,
                           p.users);
    }

    const SimConfig& config_;
    AbsorptionModel model_;
    fs::path dir_;
    LinkContext ctx_;
};

} // namespace

AbsorptionModel make_absorption_model(const SimConfig& config)
{
    const auto& a = config.absorption;
    if (a.source == "table")
        return AbsorptionModel(load_absorption_table(a.path), a.reference_density);
    if (a.source == "lines")
        return AbsorptionModel(load_line_set(a.path), a.continuum_floor, a.reference_density);
    const auto builtin = AbsorptionModel::builtin();
    return AbsorptionModel(builtin.lines(), a.continuum_floor, a.reference_density);
}

RadioHardware make_hardware(const SimConfig& config)
{
    RadioHardware hw;
    hw.tx_power_dbm = config.hardware.tx_power_dbm;
    hw.noise_figure_db = config.hardware.noise_figure_db;
    hw.system_temperature_k = config.hardware.system_temperature_k;
    hw.tx_beam.beamwidth_rad = deg_to_rad(config.hardware.tx_beamwidth_deg);
    hw.rx_beam.beamwidth_rad = deg_to_rad(config.hardware.rx_beamwidth_deg);
    return hw;
}

int run(const SimConfig& config, std::ostream& out, std::ostream& err)
{
    try {
        Runner runner(config);
        out << runner.run() << '\n';
        return kExitOk;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const LinkInfeasible& e) {
        err << "infeasible: " << e.what() << '\n';
        return kExitInfeasible;
    } catch (const NoFeasibleBand& e) {
        err << "infeasible: " << e.what() << '\n';
        return kExitInfeasible;
    } catch (const std::exception& e) {
        err << "error: " << to_string(config.scenario) << ": " << e.what() << '\n';
        return kExitDomainError;
    }
}

} // namespace thz
