#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "webster/pipeline.hpp"
#include "webster/reflectance.hpp"
#include "webster/signal_core.hpp"

using namespace webster;

namespace {

constexpr double kPi = 3.14159265358979323846;

std::vector<double> band_frequencies(const PipelineConfig& cfg) {
    const FrequencyGrid g = make_grid(cfg.f_sup);
    std::vector<double> f;
    for (std::size_t n = 1; n < g.half_bins(); ++n) {
        const double fr = g.bin_freq(n);
        if (fr > cfg.f_lim) break;
        f.push_back(fr);
    }
    return f;
}

ImpedanceSpectrum uniform_tube_zec(double area, double length,
                                   const PipelineConfig& cfg) {
    auto z = synthesize_zec(UniformHorn{area, length}, cfg.constants,
                            band_frequencies(cfg));
    z.f_lim = cfg.f_lim;
    return z;
}

}  // namespace

TEST_CASE("window endpoints") {
    BlackmanWindowSpec w{0.16, 20e3, 3.5e6, 65536, false};
    CHECK(w.weight(0) == doctest::Approx(1.0));
    // aleph reaches pi at n = n_fft * f_cut / f_sup
    const auto n_pi = static_cast<std::size_t>(65536.0 * 20e3 / 3.5e6);
    CHECK(w.weight(n_pi + 1) == 0.0);
    CHECK(w.weight(65536 / 2) == 0.0);
    w.off = true;
    CHECK(w.weight(65536 / 2) == 1.0);
}

TEST_CASE("window weights stay in [0,1]") {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> fc(5e3, 100e3);
    for (int trial = 0; trial < 10; ++trial) {
        const double f_sup = 3.5e6;
        BlackmanWindowSpec w{0.16, fc(rng), f_sup, fft_length_for(f_sup), false};
        std::uniform_int_distribution<std::size_t> bin(0, w.n_fft / 2);
        for (int i = 0; i < 1000; ++i) {
            const double v = w.weight(bin(rng));
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
        }
    }
}

TEST_CASE("window matches the closed form at an interior bin") {
    BlackmanWindowSpec w{0.16, 28e3, 3.5e6, 65536, false};
    const std::size_t n = 200;
    const double aleph = kPi * static_cast<double>(n) * 3.5e6 / (65536.0 * 28e3);
    const double expect =
        (1.0 - 0.16 + std::cos(aleph) + 0.16 * std::cos(2.0 * aleph)) / 2.0;
    CHECK(w.weight(n) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("reflectance examples") {
    ImpedanceSpectrum z;
    z.frequencies = {1e3, 2e3, 3e3};
    const Complex z0(2.0, 0.0);
    z.values = {3.0 * z0, z0, Complex(0.0, 2.0)};
    const auto r = reflectance_from_impedance(z, z0);
    CHECK(std::abs(r[0] - Complex(0.5, 0.0)) <= 1e-15);
    CHECK(std::abs(r[1]) <= 1e-15);
    CHECK(std::abs(r[2]) == doctest::Approx(1.0));  // purely reactive load

    z.values[1] = -z0;
    CHECK_THROWS_WITH_AS(reflectance_from_impedance(z, z0),
                         doctest::Contains("PoleAtBin"), Error);
}

TEST_CASE("initial guess comes from the area guess") {
    PipelineConfig cfg;
    cfg.a_guess = 50e-6;
    CHECK(initial_z0_guess(cfg) ==
          doctest::Approx(cfg.constants.rho * cfg.constants.c / 50e-6));
    cfg.a_guess = 0.0;
    CHECK_THROWS_AS(initial_z0_guess(cfg), Error);
}

TEST_CASE("legacy upsampling zero-pads the half spectrum") {
    const std::vector<Complex> half = {Complex(1, 0), Complex(2, 0), Complex(3, 0)};
    const auto up = legacy_upsample(half, 4);
    REQUIRE(up.size() == 4 * 2 + 1);
    CHECK(up[0] == half[0]);
    CHECK(up[2] == half[2]);
    for (std::size_t i = 3; i < up.size(); ++i) CHECK(up[i] == Complex(0, 0));
    CHECK_THROWS_AS(legacy_upsample(half, 0), Error);
    CHECK_THROWS_AS(legacy_upsample({}, 2), Error);
}

TEST_CASE("geometric variant pins the entrance impedance") {
    PipelineConfig cfg;
    cfg.f_lim = 20e3;
    cfg.f_cut = 20e3;
    cfg.surge = SurgeVariant::Geometric;
    cfg.geometric_area = 70e-6;
    const auto z_band = uniform_tube_zec(70e-6, 25e-3, cfg);
    const FrequencyGrid g = make_grid(cfg.f_sup);
    const auto z_full = extrapolate_impedance(z_band, g);
    const auto st = surge_adjust(z_full, g, cfg);
    CHECK(st.z0 ==
          doctest::Approx(cfg.constants.rho * cfg.constants.c / 70e-6));
    CHECK(st.surge_trace.empty());
    CHECK(st.tdr.samples.size() == g.n_fft);
    CHECK(st.tdr.dt == doctest::Approx(g.dt()));
}

TEST_CASE("surge iteration settles near the entrance impedance") {
    PipelineConfig cfg;
    cfg.f_lim = 20e3;
    cfg.f_cut = 20e3;
    const double area = 70e-6;
    const auto z_band = uniform_tube_zec(area, 25e-3, cfg);
    const FrequencyGrid g = make_grid(cfg.f_sup);
    const auto z_full = extrapolate_impedance(z_band, g);
    const auto st = surge_adjust(z_full, g, cfg);
    CHECK(st.converged);
    CHECK(st.surge_trace.size() <= 100);
    const double z0_true = cfg.constants.rho * cfg.constants.c / area;
    CHECK(std::abs(st.z0 / z0_true - 1.0) <= 0.01);
    // the trace walks from the initial guess to the fixed point
    CHECK(st.surge_trace.front().z0 ==
          doctest::Approx(initial_z0_guess(cfg)));
    CHECK(std::abs(st.surge_trace.back().ratio) <= 1e-5);
}

TEST_CASE("time-reversed addition folds the tail back") {
    PipelineConfig cfg;
    cfg.f_lim = 20e3;
    cfg.f_cut = 20e3;
    cfg.surge = SurgeVariant::Geometric;
    cfg.geometric_area = 70e-6;
    const auto z_band = uniform_tube_zec(70e-6, 25e-3, cfg);
    const FrequencyGrid g = make_grid(cfg.f_sup);
    const auto z_full = extrapolate_impedance(z_band, g);

    const auto plain = surge_adjust(z_full, g, cfg);
    cfg.legacy.time_reversed_addition = true;
    const auto folded = surge_adjust(z_full, g, cfg);

    const auto& s = plain.tdr.samples;
    const std::size_t n = s.size();
    CHECK(folded.tdr.samples[0] == doctest::Approx(s[0]));
    for (std::size_t i : {std::size_t(1), std::size_t(17), n / 2, n - 1})
        CHECK(folded.tdr.samples[i] == doctest::Approx(s[i] + s[n - i]));
}
