#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <sys/wait.h>

#include "thz/csv.hpp"
#include "thz/run.hpp"

using namespace thz;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name)
{
    const auto dir = fs::temp_directory_path() / "thz_cli_tests" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run_config(const std::string& text, const ConfigOverrides& overrides)
{
    std::ostringstream out, err;
    const int code = run(parse_config(text, overrides), out, err);
    return {code, out.str(), err.str()};
}

int run_cli(const std::string& args)
{
    const std::string cmd = std::string(THZ_SIM_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::vector<std::vector<double>> read_csv(const fs::path& p, std::string_view header)
{
    return parse_numeric_csv(read_text_file(p.string()), header);
}

} // namespace

TEST_CASE("windows scenario: more humidity never widens the widest window")
{
    const auto a = scratch("windows_a");
    const auto b = scratch("windows_b");
    const std::string header = "relative_humidity,distance_m,window_count,max_contiguous_hz";
    REQUIRE(run_config("[scenario]\nname = windows\ndistance_m = 100\n[atmosphere]\nrelative_humidity = 100\n",
                       {{"run.output", a.string()}}).code == 0);
    REQUIRE(run_config("[scenario]\nname = windows\ndistance_m = 100\n[atmosphere]\nrelative_humidity = 50\n",
                       {{"run.output", b.string()}}).code == 0);
    const auto wet = read_csv(a / "windows_summary.csv", header);
    const auto dry = read_csv(b / "windows_summary.csv", header);
    REQUIRE(wet.size() == 1);
    REQUIRE(dry.size() == 1);
    CHECK(dry[0][3] >= wet[0][3]);
}

TEST_CASE("every CSV has a header, dot decimals and LF line ends")
{
    const auto dir = scratch("formats");
    for (const char* name : {"pathloss", "windows", "rate", "backhaul"}) {
        const auto r = run_config(std::string("[scenario]\nname = ") + name + "\n", {{"run.output", dir.string()}});
        CHECK_MESSAGE(r.code == 0, r.err);
        CHECK(r.out.rfind(name, 0) == 0);
        CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 1);
    }
    int files = 0;
    for (const auto& entry : fs::directory_iterator(dir)) {
        const auto text = read_text_file(entry.path().string());
        CHECK(text.find('\r') == std::string::npos);
        CHECK(text.back() == '\n');
        const auto first = text.substr(0, text.find('\n'));
        CHECK(first.find_first_of("0123456789") == std::string::npos);
        ++files;
    }
    CHECK(files == 5);
    CHECK(fs::exists(dir / "pathloss_rh50_d1.csv"));
    CHECK(fs::exists(dir / "rate_rh50_d1.csv"));
}

TEST_CASE("backhaul reports one repeater when the max hop is half the span")
{
    // Required rate is the capacity at exactly 50 m, so the max hop is 50 m.
    LinkContext ctx;
    const auto model = AbsorptionModel::builtin();
    ctx.model = &model;
    const double rate = adaptive_capacity(ctx, 50.0, 10e9)->capacity_bps;
    const auto dir = scratch("backhaul");
    const auto r = run_config("[scenario]\nname = backhaul\ntotal_distance_m = 100\n",
                              {{"scenario.required_rate_bps", format_number(rate)}, {"run.output", dir.string()}});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("repeaters=1") != std::string::npos);
    const auto rows = read_csv(dir / "backhaul.csv", "total_distance_m,max_hop_m,hop_distance_m,repeater_count,"
                                                     "per_hop_rate_bps,band_center_hz,bandwidth_hz");
    REQUIRE(rows.size() == 1);
    CHECK(rows[0][1] == doctest::Approx(50.0));
    CHECK(rows[0][3] == 1.0);
}

TEST_CASE("identical config and seed give byte-identical output")
{
    const std::string text = "[scenario]\nname = kiosk-c\nseeds = 8\n[mobility]\ntrace = true\n[sweep]\ndeltas_deg = 2:2:30\n";
    const auto a = scratch("det_a");
    const auto b = scratch("det_b");
    const auto c = scratch("det_c");
    REQUIRE(run_config(text, {{"run.output", a.string()}, {"run.seed", "5"}}).code == 0);
    REQUIRE(run_config(text, {{"run.output", b.string()}, {"run.seed", "5"}}).code == 0);
    REQUIRE(run_config(text, {{"run.output", c.string()}, {"run.seed", "6"}}).code == 0);
    for (const char* f : {"kiosk_c.csv", "trace_kiosk_c.csv"}) {
        CHECK(read_text_file((a / f).string()) == read_text_file((b / f).string()));
        CHECK(read_text_file((a / f).string()) != read_text_file((c / f).string()));
    }
}

TEST_CASE("kiosk-d and abs summaries name their optimum")
{
    const auto dir = scratch("optima");
    const auto d = run_config("[scenario]\nname = kiosk-d\n[sweep]\ndeltas_deg = 5:5:50\n", {{"run.output", dir.string()}});
    REQUIRE(d.code == 0);
    CHECK(d.out.find("optimal_delta_deg=") != std::string::npos);
    const auto rows = read_csv(dir / "kiosk_d.csv", "delta_rad,mean_throughput_bps,served_count");
    CHECK(rows.size() == 10);

    const auto a = run_config("[scenario]\nname = abs\nusers = 10\n[sweep]\nheights_m = 20,40\ndeltas_deg = 30:10:60\n",
                              {{"run.output", dir.string()}});
    REQUIRE(a.code == 0);
    CHECK(a.out.find("optimal_height_m=") != std::string::npos);
    CHECK(read_csv(dir / "abs.csv", "height_m,delta_rad,served_count,sum_rate_bps").size() == 8);
}

TEST_CASE("infeasible scenarios exit with 3")
{
    const auto dir = scratch("infeasible");
    const auto r = run_config("[scenario]\nname = backhaul\nrequired_rate_bps = 5e12\n", {{"run.output", dir.string()}});
    CHECK(r.code == kExitInfeasible);
    CHECK(r.err.find("infeasible") != std::string::npos);
}

TEST_CASE("command-line front end")
{
    const auto dir = scratch("binary");
    const auto cfg = dir / "windows.ini";
    write_text_file(cfg.string(), "[scenario]\nname = rate\n[atmosphere]\nrelative_humidity = 20\n");
    CHECK(run_cli("validate-config") == 2);
    CHECK(run_cli("validate-config --config " + cfg.string()) == 0);
    CHECK(run_cli("windows --config " + cfg.string() + " --out " + dir.string() +
                  " --set sweep.distances_m=1,10") == 0);
    CHECK(fs::exists(dir / "windows_summary.csv"));
    CHECK(read_csv(dir / "windows_summary.csv", "relative_humidity,distance_m,window_count,max_contiguous_hz")[0][0] == 20.0);
    CHECK(run_cli("windows --set atmosphere.bogus=1") == 2);
    CHECK(run_cli("windows --config /no/such/file.ini") == 2);
    CHECK(run_cli("backhaul --out " + dir.string() + " --set scenario.required_rate_bps=5e12") == 3);
    CHECK(run_cli("no-such-command") == 2);
}
