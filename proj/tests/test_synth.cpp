#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>

#include "doctest.h"
#include "fmcw/errors.hpp"
#include "fmcw/fft.hpp"
#include "fmcw/synth.hpp"

using namespace fmcw;

namespace {

Scene one_target(double range_m, double amplitude = 1.0) {
    Scene scene;
    scene.targets.push_back({range_m, std::nullopt, amplitude});
    return scene;
}

}  // namespace

TEST_CASE("if_tone is linear in range and matches 2*S*d/c") {
    const RadarProfile p = make_profile(ProfileId::BGT60);
    const ChirpDerived d = derive_chirp_params(p);
    const double f1 = if_tone(p, 0.5);
    CHECK(f1 == doctest::Approx(2.0 * d.slope_hz_per_s * 0.5 / kSpeedOfLight));
    CHECK(if_tone(p, 1.0) == doctest::Approx(2.0 * f1));
    // one range bin <-> one FFT bin of the chirp-length transform
    CHECK(if_tone(p, d.range_bin_m) ==
          doctest::Approx(p.sample_rate_hz / p.samples_per_chirp));
    CHECK_THROWS_AS(if_tone(p, -0.1), OutOfRange);
    CHECK_THROWS_AS(if_tone(p, d.max_range_m + 1.0), OutOfRange);
}

TEST_CASE("angle gain: unity head-on, monotone, metal over gelatin") {
    CHECK(angle_gain(PhantomKind::Metal, 0.0) == doctest::Approx(1.0));
    CHECK(angle_gain(PhantomKind::Gelatin, 0.0) == doctest::Approx(1.0));
    double prev_m = 1.0, prev_g = 1.0;
    for (double a : {10.0, 20.0, 30.0, 45.0, 60.0, 80.0}) {
        const double m = angle_gain(PhantomKind::Metal, a);
        const double g = angle_gain(PhantomKind::Gelatin, a);
        CHECK(m <= prev_m);
        CHECK(g <= prev_g);
        CHECK(m >= g);
        prev_m = m;
        prev_g = g;
    }
    CHECK_THROWS_AS(angle_gain(PhantomKind::Metal, 90.0), OutOfRange);
    CHECK_THROWS_AS(angle_gain(PhantomKind::Metal, -1.0), OutOfRange);
}

TEST_CASE("bin-aligned target puts all energy in one FFT bin") {
    const RadarProfile p = make_profile(ProfileId::BGT60);
    const ChirpDerived d = derive_chirp_params(p);
    const int bin = 15;  // 45 cm
    const auto rec = synthesize_recording(p, one_target(bin * d.range_bin_m), {}, 0.5);

    std::vector<double> chirp(rec.samples.begin(), rec.samples.begin() + p.samples_per_chirp);
    const auto spectrum = fft::forward_real(chirp, p.samples_per_chirp);
    int argmax = 0;
    for (int k = 1; k <= p.samples_per_chirp / 2; ++k)
        if (std::abs(spectrum[k]) > std::abs(spectrum[argmax])) argmax = k;
    CHECK(argmax == bin);
    // a bin-aligned real tone leaks nothing into other bins
    for (int k = 1; k <= p.samples_per_chirp / 2; ++k)
        if (k != bin) CHECK(std::abs(spectrum[k]) < 1e-9 * std::abs(spectrum[bin]));
}

TEST_CASE("synthesis superposition within 1e-9") {
    const RadarProfile p = make_profile(ProfileId::BGT24);
    Scene a = one_target(0.42, 0.8);
    Scene b = one_target(0.73, 0.5);
    Scene both = a;
    both.targets.push_back(b.targets.front());

    const auto ra = synthesize_recording(p, a, {}, 1.0);
    const auto rb = synthesize_recording(p, b, {}, 1.0);
    const auto rab = synthesize_recording(p, both, {}, 1.0);
    REQUIRE(ra.samples.size() == rab.samples.size());
    for (std::size_t i = 0; i < rab.samples.size(); ++i)
        CHECK(rab.samples[i] == doctest::Approx(ra.samples[i] + rb.samples[i]).epsilon(1e-9));
}

TEST_CASE("serial and parallel synthesis are bit-identical") {
    const RadarProfile p = make_profile(ProfileId::BGT120);
    Scene scene = one_target(0.45);
    scene.targets.front().motion = sinusoid_motion(0.3e-3, 0.5, 2.0, 100.0, 0.0);
    scene.targets.front().motion->base_range_m = 0.45;
    const NoiseModel noise{0.05, 0.01, 1234};

    const auto serial = synthesize_recording_serial(p, scene, noise, 2.0);
    const auto parallel = synthesize_recording(p, scene, noise, 2.0);
    REQUIRE(serial.samples.size() == parallel.samples.size());
    for (std::size_t i = 0; i < serial.samples.size(); ++i)
        CHECK(serial.samples[i] == parallel.samples[i]);
    CHECK(serial.scene_digest == parallel.scene_digest);
}

TEST_CASE("same seed reproduces, different seed does not") {
    const RadarProfile p = make_profile(ProfileId::BGT60);
    const NoiseModel n1{0.1, 0.0, 42};
    const NoiseModel n2{0.1, 0.0, 43};
    const auto a = synthesize_recording(p, one_target(0.5), n1, 1.0);
    const auto b = synthesize_recording(p, one_target(0.5), n1, 1.0);
    const auto c = synthesize_recording(p, one_target(0.5), n2, 1.0);
    CHECK(a.samples == b.samples);
    CHECK(a.samples != c.samples);
    CHECK(a.scene_digest == b.scene_digest);
    CHECK(a.scene_digest != c.scene_digest);
}

TEST_CASE("noise statistics match the requested sigma") {
    const RadarProfile p = make_profile(ProfileId::BGT60);
    Scene scene = one_target(0.5, 0.0);  // zero-amplitude target: pure noise
    const double sigma = 0.2;
    const auto rec = synthesize_recording(p, scene, {sigma, 0.0, 7}, 10.0);
    double mean = 0.0;
    for (double v : rec.samples) mean += v;
    mean /= rec.samples.size();
    double var = 0.0;
    for (double v : rec.samples) var += (v - mean) * (v - mean);
    var /= rec.samples.size();
    CHECK(std::abs(mean) < 3.0 * sigma / std::sqrt(double(rec.samples.size())) + 1e-3);
    CHECK(std::sqrt(var) == doctest::Approx(sigma).epsilon(0.02));
}

TEST_CASE("scene validation") {
    const RadarProfile p = make_profile(ProfileId::BGT60);
    CHECK_THROWS_AS(synthesize_recording(p, Scene{}, {}, 1.0), OutOfRange);

    Scene far = one_target(100.0);  // beyond max range
    CHECK_THROWS_AS(synthesize_recording(p, far, {}, 1.0), OutOfRange);

    Scene moving = one_target(0.05);
    DisplacementTrace dive;
    dive.rate_hz = 100.0;
    dive.samples_m.assign(200, -0.1);  // drives range negative
    moving.targets.front().motion = dive;
    CHECK_THROWS_AS(synthesize_recording(p, moving, {}, 2.0), OutOfRange);
}

TEST_CASE("noise calibration hits the requested baseline within 20%") {
    const RadarProfile p = make_profile(ProfileId::BGT60);
    Scene scene = one_target(0.5);
    const double target = 0.005e-3;  // 5 um baseline
    const NoiseModel calibrated = noise_calibrate(p, scene, target);
    CHECK(calibrated.if_noise_sigma > 0.0);
    CHECK_THROWS_AS(noise_calibrate(p, scene, 1e-18), Unreachable);
}
