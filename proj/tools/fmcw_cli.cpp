#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "fmcw/bench.hpp"
#include "fmcw/errors.hpp"
#include "fmcw/pipeline.hpp"
#include "fmcw/recording_io.hpp"
#include "fmcw/report.hpp"
#include "fmcw/scenario.hpp"

namespace {

using namespace fmcw;
namespace fs = std::filesystem;

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw ParseError("cannot open for writing: " + path);
    return out;
}

Scene scene_from(const ScenarioConfig& config, double slow_rate_hz) {
    Scene scene;
    scene.phantom = config.phantom;
    scene.incidence_angle_deg = config.angle_deg;
    SceneTarget target;
    target.base_range_m = config.base_range_m;
    if (config.chest_scene) {
        target.motion = chest_motion(config.chest, config.duration_s, slow_rate_hz).first;
        target.motion->base_range_m = config.base_range_m;
    } else if (config.motion_amplitude_m) {
        target.motion = sinusoid_motion(*config.motion_amplitude_m, config.motion_freq_hz,
                                        config.duration_s, slow_rate_hz,
                                        config.quantization_step_m);
        target.motion->base_range_m = config.base_range_m;
    }
    scene.targets.push_back(target);
    return scene;
}

int cmd_profile_show(const std::string& name) {
    const auto id = parse_profile_id(name);
    if (!id || *id == ProfileId::Custom) {
        std::cerr << "unknown profile: " << name << "\n";
        return 1;
    }
    const RadarProfile profile = make_profile(*id);
    const ChirpDerived d = derive_chirp_params(profile);
    std::cout << "profile:            " << to_string(profile.id) << "\n"
              << "sweep:              " << profile.f_start_hz / 1e9 << " - "
              << profile.f_end_hz / 1e9 << " GHz\n"
              << "bandwidth:          " << d.bandwidth_hz / 1e9 << " GHz\n"
              << "sample rate:        " << profile.sample_rate_hz / 1e6 << " MHz\n"
              << "samples per chirp:  " << profile.samples_per_chirp << "\n"
              << "chirp duration:     " << d.chirp_duration_s * 1e6 << " us\n"
              << "chirp interval:     " << profile.chirp_interval_s * 1e3 << " ms\n"
              << "slope:              " << d.slope_hz_per_s / 1e12 << " THz/s\n"
              << "range bin:          " << d.range_bin_m * 1e2 << " cm\n"
              << "usable range:       " << d.usable_range_m << " m\n"
              << "carrier wavelength: " << d.carrier_wavelength_m * 1e3 << " mm\n"
              << "slow-time rate:     " << d.slow_time_rate_hz << " Hz\n";
    return 0;
}

int cmd_simulate(const std::string& scenario_path, const std::string& out_path) {
    const ScenarioConfig config = load_scenario(scenario_path);
    const RadarProfile profile = make_profile(config.profiles.front());
    const ChirpDerived derived = derive_chirp_params(profile);
    NoiseModel noise = config.noise_model();
    const Scene scene = scene_from(config, derived.slow_time_rate_hz);
    if (config.calibrate_target_m)
        noise = noise_calibrate(profile, scene, *config.calibrate_target_m);
    const ChirpRecording rec =
        synthesize_recording(profile, scene, noise, config.duration_s);
    write_recording(rec, out_path);
    std::cout << "wrote " << rec.chirps << " chirps (" << to_string(profile.id) << ") to "
              << out_path << "\n";
    return 0;
}

int cmd_analyze(const std::string& rec_path, bool no_dc, std::optional<double> pad_cm,
                const std::string& out_path) {
    const ChirpRecording rec = read_recording(rec_path);
    PipelineOptions options;
    if (no_dc) options.dc_removal = false;
    if (pad_cm) options.pad = PadPolicy::target_bin(*pad_cm * 1e-2);
    const PipelineResult result = run_pipeline(rec, options);
    auto out = open_out(out_path);
    bench::write_trace_csv(result.displacement, out);
    std::cout << "range " << result.range_m << " m (bin " << result.bin << "); trace -> "
              << out_path << "\n";
    return 0;
}

void emit_report(const bench::ExperimentReport& report, const fs::path& dir,
                 const std::string& stem) {
    auto csv = open_out((dir / (stem + ".csv")).string());
    bench::write_csv(report, csv);
    auto md = open_out((dir / (stem + ".md")).string());
    bench::write_markdown(report, md);
}

int cmd_bench(const std::string& kind, const std::string& scenario_path,
              const std::string& out_dir) {
    const ScenarioConfig config = load_scenario(scenario_path);
    fs::create_directories(out_dir);
    const fs::path dir(out_dir);

    bench::ExperimentReport combined;
    combined.seed = config.seed;

    for (ProfileId id : config.profiles) {
        const RadarProfile profile = make_profile(id);
        const ChirpDerived derived = derive_chirp_params(profile);
        NoiseModel noise = config.noise_model();
        if (config.calibrate_target_m) {
            Scene calib;
            calib.targets.push_back({0.5, std::nullopt, 1.0});
            calib.phantom = config.phantom;
            calib.incidence_angle_deg = config.angle_deg;
            noise = noise_calibrate(profile, calib, *config.calibrate_target_m);
            noise.seed = config.seed;
        }

        if (kind == "range") {
            combined.experiment = "Range";
            const auto report =
                bench::range_experiment(profile, config.distances_m, config.phantom, noise);
            combined.rows.insert(combined.rows.end(), report.rows.begin(), report.rows.end());
        } else if (kind == "noise") {
            combined.experiment = "Baseline noise";
            const double std_m = bench::baseline_noise_experiment(profile, config.phantom,
                                                                  config.angle_deg, noise);
            combined.rows.push_back({std::string(to_string(id)) + " displacement std",
                                     std_m * 1e3, 0, false, "mm"});
        } else if (kind == "displacement") {
            combined.experiment = "Displacement";
            auto result = bench::displacement_experiment(profile, config.amplitudes_m,
                                                         config.phantom, noise);
            combined.rows.insert(combined.rows.end(), result.report.rows.begin(),
                                 result.report.rows.end());
            for (const auto& pair : result.traces) {
                char name[64];
                std::snprintf(name, sizeof name, "trace_%s_%gmm.csv", to_string(id),
                              pair.amplitude_m * 1e3);
                auto out = open_out((dir / name).string());
                bench::write_trace_csv(pair.estimate, out);
            }
        } else if (kind == "vitals") {
            combined.experiment = "Vitals";
            const auto result =
                bench::vitals_experiment(profile, config.chest, config.duration_s, noise);
            combined.rows.insert(combined.rows.end(), result.report.rows.begin(),
                                 result.report.rows.end());
            auto rates = open_out((dir / (std::string("rates_") + to_string(id) + ".csv")).string());
            bench::write_estimates_csv(result.estimates, rates);
            auto heart =
                open_out((dir / (std::string("heart_") + to_string(id) + ".csv")).string());
            bench::write_trace_csv(result.heart_filtered, heart);
        } else {
            std::cerr << "unknown bench kind: " << kind << "\n";
            return 1;
        }
        (void)derived;
    }

    if (combined.experiment == "Baseline noise")
        combined.footnotes.push_back(
            "reported as displacement standard deviation in mm; the phase-variance "
            "phrasing elsewhere is ambiguous (rad^2 vs mm)");
    emit_report(combined, dir, kind);
    std::cout << "wrote " << kind << " report to " << out_dir << "\n";
    return 0;
}

int cmd_report(const std::string& dir) {
    bool any = false;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.path().extension() != ".md") continue;
        std::ifstream in(entry.path());
        std::cout << in.rdbuf() << "\n";
        any = true;
    }
    if (!any) {
        std::cerr << "no reports found in " << dir << "\n";
        return 2;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"FMCW radar simulation and vital-sign extraction toolkit"};
    app.require_subcommand(1);

    auto* profile = app.add_subcommand("profile", "Inspect radar profiles");
    profile->require_subcommand(1);
    auto* show = profile->add_subcommand("show", "Print a built-in profile");
    std::string profile_name;
    show->add_option("id", profile_name, "BGT24, BGT60 or BGT120")->required();

    auto* simulate = app.add_subcommand("simulate", "Synthesize a recording from a scenario");
    std::string sim_scenario, sim_out;
    simulate->add_option("scenario", sim_scenario, "scenario file")->required();
    simulate->add_option("-o,--output", sim_out, "recording output path")->required();

    auto* analyze = app.add_subcommand("analyze", "Run the pipeline on a recording");
    std::string ana_rec, ana_out;
    bool ana_no_dc = false;
    std::optional<double> ana_pad_cm;
    analyze->add_option("recording", ana_rec, "recording file")->required();
    analyze->add_flag("--no-dc-removal", ana_no_dc, "disable slow-time DC removal");
    analyze->add_option("--pad-cm", ana_pad_cm, "range-FFT padding target bin size in cm");
    analyze->add_option("-o,--output", ana_out, "CSV output path")->required();

    auto* bench_cmd = app.add_subcommand("bench", "Run a characterization experiment");
    std::string bench_kind, bench_scenario, bench_out = ".";
    bench_cmd->add_option("kind", bench_kind, "range | noise | displacement | vitals")
        ->required();
    bench_cmd->add_option("scenario", bench_scenario, "scenario file")->required();
    bench_cmd->add_option("-o,--output", bench_out, "output directory");

    auto* report_cmd = app.add_subcommand("report", "Print markdown reports from a bench dir");
    std::string report_dir;
    report_cmd->add_option("dir", report_dir, "bench output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (show->parsed()) return cmd_profile_show(profile_name);
        if (simulate->parsed()) return cmd_simulate(sim_scenario, sim_out);
        if (analyze->parsed()) return cmd_analyze(ana_rec, ana_no_dc, ana_pad_cm, ana_out);
        if (bench_cmd->parsed()) return cmd_bench(bench_kind, bench_scenario, bench_out);
        if (report_cmd->parsed()) return cmd_report(report_dir);
    } catch (const fmcw::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
