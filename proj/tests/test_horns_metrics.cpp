#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "webster/horns.hpp"
#include "webster/metrics.hpp"
#include "webster/pipeline.hpp"

using namespace webster;

namespace {
constexpr double kPi = 3.14159265358979323846;
const PhysicalConstants kPc;
}  // namespace

TEST_CASE("horn geometry samples") {
    const auto uni = generate_area(UniformHorn{70e-6, 25e-3}, 0.1e-3);
    CHECK(uni.areas.size() == 251);
    CHECK(uni.areas.front() == doctest::Approx(70e-6));
    CHECK(uni.areas.back() == doctest::Approx(70e-6));
    for (const double e : uni.epsilon) CHECK(e == 0.0);

    const ExponentialHorn expo{40e-6, 50.0, 30e-3};
    CHECK(horn_area(expo, 30e-3) / horn_area(expo, 0.0) ==
          doctest::Approx(std::exp(1.5)));
    const auto ea = generate_area(expo, 0.1e-3);
    // constant flare: epsilon = flare_rate / 2 everywhere
    for (const double e : ea.epsilon) CHECK(e == doctest::Approx(25.0));

    const ConicalHorn cone{3e-3, 6e-3, 20e-3};
    CHECK(horn_area(cone, 0.0) == doctest::Approx(kPi * 9e-6));
    CHECK(horn_area(cone, 20e-3) / horn_area(cone, 0.0) == doctest::Approx(4.0));
    CHECK(horn_area(cone, 10e-3) == doctest::Approx(kPi * 4.5e-3 * 4.5e-3));

    const ParabolicHorn par{40e-6, 120e-6, 30e-3};
    CHECK(horn_area(par, 15e-3) == doctest::Approx(80e-6));

    const TaperedParabolicHorn tap{60e-6, 90e-6, 30e-6, 28e-3, 0.5};
    CHECK(horn_area(tap, 0.0) == doctest::Approx(60e-6));
    CHECK(horn_area(tap, 14e-3) == doctest::Approx(90e-6));
    CHECK(horn_area(tap, 28e-3) == doctest::Approx(30e-6));
}

TEST_CASE("stepped geometry") {
    const SteppedTubes st{{{10e-3, 9e-3}, {8e-3, 7e-3}}};
    const HornSpec spec = st;
    CHECK(horn_length(spec) == doctest::Approx(18e-3));
    CHECK(horn_area(spec, 5e-3) == doctest::Approx(kPi * 81e-6 / 4.0));
    CHECK(horn_area(spec, 15e-3) == doctest::Approx(kPi * 49e-6 / 4.0));
    const auto segs = horn_segments(spec, 0.1e-3);
    REQUIRE(segs.size() == 2);
    CHECK(segs[0].length == doctest::Approx(10e-3));
    CHECK(segs[1].area == doctest::Approx(kPi * 49e-6 / 4.0));
    const auto part = horn_segments(spec, 0.1e-3, 12e-3);
    REQUIRE(part.size() == 2);
    CHECK(part[1].length == doctest::Approx(2e-3));
    CHECK_THROWS_AS(horn_segments(spec, 0.1e-3, 30e-3), Error);
    CHECK_THROWS_AS(horn_length(HornSpec{SteppedTubes{}}), Error);
}

TEST_CASE("evaluation band layout") {
    const auto band = evaluation_band();
    REQUIRE(band.size() == 91);
    CHECK(band.front() == 1000.0);
    CHECK(band.back() == 10000.0);
    CHECK(band[1] - band[0] == doctest::Approx(100.0));
}

TEST_CASE("rms error examples") {
    const auto band = evaluation_band();
    ImpedanceSpectrum ref;
    ref.frequencies = band;
    ref.f_lim = band.back();
    for (const double f : band) ref.values.emplace_back(1e6, 0.5e6 * f / 1e4);

    SUBCASE("identical spectra") {
        const auto rep = rms_errors(ref, ref);
        CHECK(rep.l_rmse_db == doctest::Approx(0.0));
        CHECK(rep.theta_rmse_deg == doctest::Approx(0.0));
        CHECK(rep.n_f == 91);
    }
    SUBCASE("uniform factor of two") {
        auto mod = ref;
        for (auto& v : mod.values) v *= 2.0;
        const auto rep = rms_errors(mod, ref);
        CHECK(rep.l_rmse_db == doctest::Approx(20.0 * std::log10(2.0)));
        CHECK(rep.theta_rmse_deg == doctest::Approx(0.0));
        for (const double e : rep.level_error_db)
            CHECK(e == doctest::Approx(6.0206).epsilon(1e-4));
    }
    SUBCASE("uniform ten-degree rotation") {
        auto mod = ref;
        const Complex rot = std::polar(1.0, 10.0 * kPi / 180.0);
        for (auto& v : mod.values) v *= rot;
        const auto rep = rms_errors(mod, ref);
        CHECK(rep.l_rmse_db == doctest::Approx(0.0).epsilon(1e-9));
        CHECK(rep.theta_rmse_deg == doctest::Approx(10.0));
    }
    SUBCASE("band coverage is required") {
        ImpedanceSpectrum narrow;
        narrow.frequencies = {2e3, 8e3};
        narrow.values = {Complex(1, 0), Complex(1, 0)};
        narrow.f_lim = 8e3;
        CHECK_THROWS_AS(rms_errors(narrow, ref), Error);
    }
}

TEST_CASE("cutoff model") {
    CHECK(fcut_model(10e3) == doctest::Approx(17.38e3));
    CHECK(fcut_model(12e3) == doctest::Approx(19.48e3));
    CHECK(fcut_model(20e3) == doctest::Approx(27.88e3));
    // affine: equal f_lim steps give equal f_cut steps
    const double d1 = fcut_model(14e3) - fcut_model(12e3);
    const double d2 = fcut_model(16e3) - fcut_model(14e3);
    CHECK(d1 == doctest::Approx(d2));
    CHECK_THROWS_AS(fcut_model(0.0), Error);
}

TEST_CASE("regression fit") {
    std::vector<std::pair<double, double>> pts;
    for (double fl = 8e3; fl <= 20e3; fl += 2e3)
        pts.emplace_back(fl, 1.05 * fl + 6.88e3);
    const auto fit = fit_fcut_regression(pts);
    CHECK(fit.slope == doctest::Approx(1.05));
    CHECK(fit.intercept == doctest::Approx(6.88e3));
    CHECK(fit.r_squared == doctest::Approx(1.0));

    CHECK_THROWS_AS(fit_fcut_regression({{1e3, 2e3}}), Error);
    CHECK_THROWS_WITH_AS(
        fit_fcut_regression({{1e3, 2e3}, {1e3, 3e3}}),
        doctest::Contains("DegenerateFit"), Error);
}

TEST_CASE("termination scan recovers the true length on a known area") {
    const UniformHorn tube{70e-6, 25e-3};
    const auto af = generate_area(tube, 0.1e-3);
    const auto band = evaluation_band();
    const auto z_ec = synthesize_zec(tube, kPc, band);
    const auto z_ref = synthesize_ztrans_ref(tube, kPc, band, 25e-3);
    const auto res = find_l_lme(af, z_ec, z_ref, 15e-3, 45e-3, kPc);
    CHECK(res.l_lme == doctest::Approx(25e-3).epsilon(8e-3));
    CHECK(res.l_rmse_db <= 0.05);
    CHECK(res.theta_rmse_deg <= 0.5);
    REQUIRE(res.candidates.size() == res.curve.size());
    // interval clipped to the area extent
    CHECK(res.candidates.back() <= 25e-3 + 1e-9);
    CHECK_THROWS_AS(find_l_lme(af, z_ec, z_ref, 45e-3, 15e-3, kPc), Error);
}

TEST_CASE("cross validation on an exact line") {
    std::vector<std::vector<std::pair<double, double>>> samples(6);
    for (auto& subject : samples)
        for (double fl = 10e3; fl <= 20e3; fl += 5e3)
            subject.emplace_back(fl, 1.05 * fl + 6.88e3);

    const auto res = cross_validate(samples, 10, 4, 123);
    REQUIRE(res.slopes.size() == 10);
    for (const double s : res.slopes) CHECK(s == doctest::Approx(1.05));
    for (const double i : res.intercepts) CHECK(i == doctest::Approx(6.88e3));
    for (const double e : res.mean_errors)
        CHECK(std::abs(e) <= 1e-6);

    // deterministic for a fixed seed
    const auto again = cross_validate(samples, 10, 4, 123);
    CHECK(again.slopes == res.slopes);
    CHECK(again.mean_errors == res.mean_errors);

    CHECK_THROWS_WITH_AS(cross_validate(samples, 2, 6, 1),
                         doctest::Contains("InsufficientGroups"), Error);
}
