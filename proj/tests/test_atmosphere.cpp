#include <doctest.h>

#include <cmath>
#include <random>

#include "oracle.hpp"
#include "thz/atmosphere.hpp"

using namespace thz;

namespace {

Atmosphere at(double kelvin, double rh) { return {kelvin, 101.325, rh}; }

} // namespace

TEST_CASE("Buck saturation pressure")
{
    CHECK(saturation_vapor_pressure(273.15) == 0.61121);
    CHECK(std::abs(saturation_vapor_pressure(293.15) - 2.3388) <= 0.0005);
    // Frozen from a 30-digit evaluation of the same fit.
    CHECK(saturation_vapor_pressure(293.15) == doctest::Approx(2.33833997845).epsilon(1e-11));
    CHECK(saturation_vapor_pressure(303.15) == doctest::Approx(4.24512571625).epsilon(1e-11));
    for (double t = 200.0; t <= 330.0; t += 3.7)
        CHECK(saturation_vapor_pressure(t) == doctest::Approx(oracle::buck_kpa(t)).epsilon(1e-14));
}

TEST_CASE("saturation pressure rejects temperatures outside the fit")
{
    CHECK_THROWS_AS(saturation_vapor_pressure(199.9), std::domain_error);
    CHECK_THROWS_AS(saturation_vapor_pressure(330.1), std::domain_error);
    CHECK_NOTHROW(saturation_vapor_pressure(200.0));
    CHECK_NOTHROW(saturation_vapor_pressure(330.0));
    try {
        saturation_vapor_pressure(400.0);
    } catch (const std::domain_error& e) {
        CHECK(std::string(e.what()).find("200") != std::string::npos);
        CHECK(std::string(e.what()).find("330") != std::string::npos);
    }
}

TEST_CASE("water vapor density")
{
    CHECK(water_vapor_density(at(250.0, 0.0)) == 0.0);
    CHECK(water_vapor_density(at(310.0, 0.0)) == 0.0);
    const double full = water_vapor_density(at(293.15, 100.0));
    CHECK(std::abs(full - 17.29) <= 0.05);
    CHECK(full == doctest::Approx(17.2840713700).epsilon(1e-10));
    CHECK(water_vapor_density(at(293.15, 50.0)) == doctest::Approx(full / 2.0).epsilon(1e-15));
}

TEST_CASE("vapor density grows with temperature at fixed RH")
{
    for (double rh : {5.0, 50.0, 100.0}) {
        double prev = water_vapor_density(at(273.0, rh));
        for (double t = 273.5; t <= 313.0; t += 0.5) {
            const double now = water_vapor_density(at(t, rh));
            CHECK(now > prev);
            prev = now;
        }
    }
}

TEST_CASE("atmosphere validation")
{
    CHECK_NOTHROW(Atmosphere{}.validate());
    CHECK_THROWS_AS((Atmosphere{0.0, 101.0, 50.0}.validate()), std::domain_error);
    CHECK_THROWS_AS((Atmosphere{290.0, 0.0, 50.0}.validate()), std::domain_error);
    CHECK_THROWS_AS((Atmosphere{290.0, 101.0, -1.0}.validate()), std::domain_error);
    CHECK_THROWS_AS((Atmosphere{290.0, 101.0, 100.5}.validate()), std::domain_error);
}

TEST_CASE("zero humidity means a transparent atmosphere")
{
    const auto model = AbsorptionModel::builtin();
    for (double f = 0.1e12; f <= 3e12; f += 0.05e12)
        CHECK(absorption_coefficient(model, f, at(293.15, 0.0)) == 0.0);
}

TEST_CASE("single line peak value")
{
    const double rho_ref = water_vapor_density(at(293.15, 60.0));
    const AbsorptionModel model({{500e9, 2e9, 4e9}}, 1e-3, rho_ref);
    const double k = absorption_coefficient(model, 500e9, at(293.15, 60.0));
    CHECK(k == doctest::Approx(1e-3 + 2e9 / (oracle::pi * 4e9)).epsilon(1e-12));
}

TEST_CASE("table mode interpolates and refuses to extrapolate")
{
    const double rho_ref = water_vapor_density(at(293.15, 50.0));
    const AbsorptionModel model({{0.1e12, 1e-4}, {0.2e12, 3e-4}}, rho_ref);
    CHECK(absorption_coefficient(model, 0.15e12, at(293.15, 50.0)) == doctest::Approx(2e-4).epsilon(1e-12));
    CHECK(absorption_coefficient(model, 0.1e12, at(293.15, 50.0)) == doctest::Approx(1e-4).epsilon(1e-12));
    CHECK(absorption_coefficient(model, 0.2e12, at(293.15, 50.0)) == doctest::Approx(3e-4).epsilon(1e-12));
    CHECK(absorption_coefficient(model, 0.15e12, at(293.15, 100.0)) == doctest::Approx(4e-4).epsilon(1e-9));
    CHECK_THROWS_AS(absorption_coefficient(model, 0.25e12, at(293.15, 50.0)), std::domain_error);
}

TEST_CASE("table and line set validation")
{
    CHECK_THROWS_AS(AbsorptionModel(std::vector<TablePoint>{{0.1e12, 1e-4}}, 7.5), std::domain_error);
    CHECK_THROWS_AS(AbsorptionModel(std::vector<TablePoint>{{0.2e12, 1e-4}, {0.1e12, 1e-4}}, 7.5),
                    std::domain_error);
    CHECK_THROWS_AS(AbsorptionModel(std::vector<TablePoint>{{0.1e12, 1e-4}, {0.2e12, -1e-4}}, 7.5),
                    std::domain_error);
    CHECK_THROWS_AS(AbsorptionModel(std::vector<TablePoint>{{0.1e12, 1e-4}, {0.2e12, 1e-4}}, 0.0),
                    std::domain_error);
    CHECK_THROWS_AS(AbsorptionModel(std::vector<SpectralLine>{{500e9, 1.0, 0.0}}, 0.0, 7.5),
                    std::domain_error);
    CHECK_THROWS_AS(AbsorptionModel(std::vector<SpectralLine>{{500e9, -1.0, 1e9}}, 0.0, 7.5),
                    std::domain_error);
}

TEST_CASE("frequencies outside the THz band are refused")
{
    const auto model = AbsorptionModel::builtin();
    CHECK_THROWS_AS(absorption_coefficient(model, 0.09e12, Atmosphere{}), std::domain_error);
    CHECK_THROWS_AS(absorption_coefficient(model, 3.1e12, Atmosphere{}), std::domain_error);
}

TEST_CASE("builtin spectrum matches the independent transcription")
{
    const auto model = AbsorptionModel::builtin();
    REQUIRE(model.lines().size() == 9);
    for (double rh : {10.0, 50.0, 100.0})
        for (double f = 0.1e12; f <= 3e12; f += 7.3e9)
            CHECK(absorption_coefficient(model, f, at(293.15, rh)) ==
                  doctest::Approx(oracle::k_lines(f, 293.15, rh)).epsilon(1e-12));
    const double k300 = absorption_coefficient(model, 300e9, at(293.15, 50.0));
    CHECK(k300 >= 1e-4);
    CHECK(k300 <= 1e-2);
    CHECK(k300 == doctest::Approx(0.00201213371100).epsilon(1e-10));
}

TEST_CASE("shipped line-set file equals the builtin model")
{
    const auto lines = load_line_set(std::string(THZ_DATA_DIR) + "/h2o_lines.csv");
    CHECK(lines == AbsorptionModel::builtin().lines());
}

TEST_CASE("absorption is non-negative and linear in RH")
{
    const auto model = AbsorptionModel::builtin();
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> f_dist(0.1e12, 3e12), t_dist(250.0, 320.0),
        rh_dist(0.5, 100.0);
    for (int i = 0; i < 2000; ++i) {
        const double f = f_dist(rng), t = t_dist(rng), rh = rh_dist(rng);
        const double k = absorption_coefficient(model, f, at(t, rh));
        const double k_full = absorption_coefficient(model, f, at(t, 100.0));
        CHECK(k >= 0.0);
        CHECK(std::abs(k - k_full * rh / 100.0) <= 1e-9 * k);
    }
}

TEST_CASE("local maxima of k sit on line centres")
{
    const auto model = AbsorptionModel::builtin();
    const double step = 1e9; // finer than every 3 GHz half-width
    std::vector<double> f, k;
    for (double x = 0.1e12; x <= 3e12; x += step) {
        f.push_back(x);
        k.push_back(absorption_coefficient(model, x, Atmosphere{}));
    }
    int maxima = 0;
    for (std::size_t i = 1; i + 1 < k.size(); ++i) {
        if (k[i] > k[i - 1] && k[i] >= k[i + 1]) {
            ++maxima;
            bool near = false;
            for (const auto& l : model.lines())
                near = near || std::abs(f[i] - l.center_hz) <= step;
            CHECK_MESSAGE(near, "maximum at ", f[i]);
        }
    }
    CHECK(maxima > 0);
}

TEST_CASE("CSV loaders")
{
    const auto lines = parse_line_set("center_hz,strength,half_width_hz\n1e12,5,2e9\n");
    REQUIRE(lines.size() == 1);
    CHECK(lines[0] == SpectralLine{1e12, 5.0, 2e9});
    const auto table = parse_absorption_table("frequency_hz,k_np_per_m\n1e11,1e-4\n2e11,3e-4\n");
    REQUIRE(table.size() == 2);
    CHECK(table[1] == TablePoint{2e11, 3e-4});
    CHECK_THROWS(parse_absorption_table("freq,k\n1,2\n"));
    CHECK_THROWS(parse_absorption_table("frequency_hz,k_np_per_m\n1e11,abc\n"));
    CHECK_THROWS(parse_absorption_table("frequency_hz,k_np_per_m\n1e11\n"));
    CHECK_THROWS(load_line_set("/nonexistent/lines.csv"));
}
