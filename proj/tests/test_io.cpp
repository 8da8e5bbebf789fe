#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "fmcw/errors.hpp"
#include "fmcw/recording_io.hpp"
#include "fmcw/scenario.hpp"
#include "fmcw/synth.hpp"

using namespace fmcw;
namespace fs = std::filesystem;

namespace {

std::string read_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_bytes(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

std::string temp_path(const char* name) { return (fs::temp_directory_path() / name).string(); }

ChirpRecording sample_recording() {
    const RadarProfile p = make_profile(ProfileId::BGT60);
    Scene scene;
    scene.targets.push_back({0.45, std::nullopt, 1.0});
    return synthesize_recording(p, scene, {0.02, 0.0, 99}, 1.0);
}

std::string write_scenario(const char* name, const std::string& text) {
    const std::string path = temp_path(name);
    std::ofstream out(path, std::ios::trunc);
    out << text;
    out.close();
    return path;
}

}  // namespace

TEST_CASE("recording file round trip is bit-exact") {
    const ChirpRecording original = sample_recording();
    const std::string p1 = temp_path("roundtrip1.fmcwrec");
    const std::string p2 = temp_path("roundtrip2.fmcwrec");

    write_recording(original, p1);
    const ChirpRecording loaded = read_recording(p1);
    CHECK(loaded.profile.id == ProfileId::BGT60);
    CHECK(loaded.chirps == original.chirps);
    CHECK(loaded.scene_digest == original.scene_digest);
    CHECK(loaded.profile.chirp_interval_s == original.profile.chirp_interval_s);

    // samples narrow to float32 on first write; thereafter the cycle is exact
    write_recording(loaded, p2);
    CHECK(read_bytes(p1) == read_bytes(p2));
    const ChirpRecording loaded2 = read_recording(p2);
    CHECK(loaded2.samples == loaded.samples);
    for (std::size_t i = 0; i < loaded.samples.size(); ++i)
        CHECK(loaded.samples[i] == static_cast<double>(static_cast<float>(original.samples[i])));
}

TEST_CASE("golden file parses to known header values") {
    const ChirpRecording rec =
        read_recording(std::string(FMCW_TEST_DATA_DIR) + "/golden.fmcwrec");
    CHECK(rec.profile.f_start_hz == 58e9);
    CHECK(rec.profile.f_end_hz == 63e9);
    CHECK(rec.profile.sample_rate_hz == 2e6);
    CHECK(rec.profile.samples_per_chirp == 2);
    CHECK(rec.chirps == 2);
    CHECK(rec.profile.chirp_interval_s == 0.01);
    CHECK(rec.profile.id == ProfileId::Custom);
    CHECK(rec.scene_digest == std::string(64, '0'));
    REQUIRE(rec.samples.size() == 4);
    CHECK(rec.samples == std::vector<double>{1.0, 2.0, 3.0, 4.0});
}

TEST_CASE("corrupted files raise the specific error") {
    const ChirpRecording original = sample_recording();
    const std::string path = temp_path("corrupt.fmcwrec");
    write_recording(original, path);
    const std::string good = read_bytes(path);

    std::string bad_magic = good;
    bad_magic[0] = 'X';
    write_bytes(path, bad_magic);
    CHECK_THROWS_AS(read_recording(path), BadMagic);

    std::string bad_version = good;
    bad_version[8] = 2;
    write_bytes(path, bad_version);
    CHECK_THROWS_AS(read_recording(path), VersionUnsupported);

    write_bytes(path, good.substr(0, good.size() - 10));
    CHECK_THROWS_AS(read_recording(path), TruncatedPayload);

    write_bytes(path, good.substr(0, 20));
    CHECK_THROWS_AS(read_recording(path), TruncatedPayload);
}

TEST_CASE("shipped range scenario parses to the documented distances") {
    const ScenarioConfig config = load_scenario(std::string(FMCW_CONFIG_DIR) + "/table2_metal.cfg");
    CHECK(config.experiment == "range");
    CHECK(config.seed == 1);
    REQUIRE(config.profiles.size() == 3);
    CHECK(config.phantom == PhantomKind::Metal);
    REQUIRE(config.distances_m.size() == 4);
    CHECK(config.distances_m[0] == doctest::Approx(0.30));
    CHECK(config.distances_m[1] == doctest::Approx(0.40));
    CHECK(config.distances_m[2] == doctest::Approx(0.50));
    CHECK(config.distances_m[3] == doctest::Approx(0.60));
}

TEST_CASE("every shipped scenario parses") {
    for (const char* name : {"table2_metal.cfg", "baseline_noise.cfg", "displacement_metal.cfg",
                             "vitals_bgt120.cfg", "sinusoid_sim.cfg"}) {
        CHECK_NOTHROW(load_scenario(std::string(FMCW_CONFIG_DIR) + "/" + name));
    }
}

TEST_CASE("scenario validation errors carry line context") {
    const std::string missing_unit = write_scenario("unit.cfg",
                                                    "[scenario]\n"
                                                    "profiles = BGT60\n"
                                                    "[motion]\n"
                                                    "amplitude = 0.3\n");
    CHECK_THROWS_AS(load_scenario(missing_unit), UnitViolation);
    try {
        load_scenario(missing_unit);
    } catch (const UnitViolation& e) {
        CHECK(std::string(e.what()).find("line 4") != std::string::npos);
    }

    const std::string unknown = write_scenario("unknown.cfg",
                                               "[scenario]\n"
                                               "profiles = BGT60\n"
                                               "bogus = 1\n");
    CHECK_THROWS_AS(load_scenario(unknown), UnknownKey);

    const std::string empty = write_scenario("empty.cfg", "");
    CHECK_THROWS_AS(load_scenario(empty), ParseError);

    const std::string no_section = write_scenario("nosection.cfg", "seed = 1\n");
    CHECK_THROWS_AS(load_scenario(no_section), ParseError);

    const std::string bad_number = write_scenario("badnum.cfg",
                                                  "[scenario]\n"
                                                  "profiles = BGT60\n"
                                                  "seed = banana\n");
    CHECK_THROWS_AS(load_scenario(bad_number), ParseError);
}

TEST_CASE("scenario values convert units into SI") {
    const std::string path = write_scenario("units.cfg",
                                            "[scenario]\n"
                                            "experiment = displacement\n"
                                            "profiles = BGT120\n"
                                            "seed = 9\n"
                                            "[scene]\n"
                                            "base_range_cm = 45\n"
                                            "[displacement]\n"
                                            "amplitudes_mm = 0.08, 0.3, 1.2\n"
                                            "[motion]\n"
                                            "quantization_um = 0.4\n");
    const ScenarioConfig config = load_scenario(path);
    CHECK(config.base_range_m == doctest::Approx(0.45));
    REQUIRE(config.amplitudes_m.size() == 3);
    CHECK(config.amplitudes_m[0] == doctest::Approx(0.08e-3));
    CHECK(config.quantization_step_m == doctest::Approx(0.4e-6));
    CHECK(config.seed == 9);
}
