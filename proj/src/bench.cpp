#include "fmcw/bench.hpp"

#include <cmath>
#include <cstdio>

#include "fmcw/errors.hpp"
#include "fmcw/filters.hpp"

namespace fmcw::bench {

namespace {

std::string cell_label(const RadarProfile& profile, PhantomKind phantom, const char* detail) {
    std::string s = to_string(profile.id);
    s += phantom == PhantomKind::Metal ? " metal " : " gelatin ";
    s += detail;
    return s;
}

std::string format_value(const char* fmt, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, v);
    return buf;
}

Scene static_scene(double range_m, PhantomKind phantom, double angle_deg = 0.0) {
    Scene scene;
    scene.targets.push_back({range_m, std::nullopt, 1.0});
    scene.phantom = phantom;
    scene.incidence_angle_deg = angle_deg;
    return scene;
}

}  // namespace

ExperimentReport range_experiment(const RadarProfile& profile,
                                  const std::vector<double>& distances_m, PhantomKind phantom,
                                  const NoiseModel& noise) {
    const ChirpDerived derived = derive_chirp_params(profile);
    constexpr double kDurationS = 60.0;
    constexpr int kSubIntervals = 12;

    ExperimentReport report;
    report.experiment = "Range";
    report.seed = noise.seed;

    for (double distance : distances_m) {
        if (distance <= 0.0 || distance >= derived.usable_range_m)
            throw OutOfRange("range-experiment distance outside usable range");

        const ChirpRecording rec =
            synthesize_recording(profile, static_scene(distance, phantom), noise, kDurationS);
        const int chirps_per_sub = rec.chirps / kSubIntervals;
        const int n = profile.samples_per_chirp;

        std::vector<double> errors;
        errors.reserve(kSubIntervals);
        for (int s = 0; s < kSubIntervals; ++s) {
            ChirpRecording sub;
            sub.profile = profile;
            sub.chirps = chirps_per_sub;
            sub.t0_s = s * chirps_per_sub * profile.chirp_interval_s;
            sub.scene_digest = rec.scene_digest;
            const auto begin = rec.samples.begin() +
                               static_cast<std::ptrdiff_t>(s) * chirps_per_sub * n;
            sub.samples.assign(begin, begin + static_cast<std::ptrdiff_t>(chirps_per_sub) * n);

            const RangeSpectrumSeries fine =
                range_fft(sub, PadPolicy::target_bin(kRangePadTargetM));
            const auto bins = select_target_bin_per_chirp(fine);
            double mean_range = 0.0;
            for (int b : bins) mean_range += bin_to_range(b, fine);
            mean_range /= static_cast<double>(bins.size());
            errors.push_back(mean_range - distance);
        }

        double mean = 0.0;
        for (double e : errors) mean += e;
        mean /= errors.size();
        double var = 0.0;
        for (double e : errors) var += (e - mean) * (e - mean);
        const double sd = std::sqrt(var / errors.size());

        ReportRow row;
        row.label = cell_label(profile, phantom, format_value("%g cm", distance * 100).c_str());
        row.value = mean * 100.0;
        row.std_dev = sd * 100.0;
        row.has_std = true;
        row.units = "cm";
        report.rows.push_back(row);
    }
    return report;
}

double baseline_noise_experiment(const RadarProfile& profile, PhantomKind phantom,
                                 double angle_deg, const NoiseModel& noise) {
    constexpr double kDurationS = 20.0;
    constexpr double kRangeM = 0.5;

    const ChirpRecording rec = synthesize_recording(
        profile, static_scene(kRangeM, phantom, angle_deg), noise, kDurationS);

    PipelineOptions options;
    options.dc_removal = false;  // single static target, nothing to declutter
    const PipelineResult result = run_pipeline(rec, options);

    const auto& x = result.displacement.samples_m;
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= x.size();
    double var = 0.0;
    for (double v : x) var += (v - mean) * (v - mean);
    return std::sqrt(var / x.size());
}

DisplacementResult displacement_experiment(const RadarProfile& profile,
                                           const std::vector<double>& amplitudes_m,
                                           PhantomKind phantom, const NoiseModel& noise) {
    const ChirpDerived derived = derive_chirp_params(profile);
    constexpr double kDurationS = 20.0;
    constexpr double kOscillationHz = 0.5;
    constexpr double kStepM = 0.4e-6;
    // separates the 0.5 Hz motion from broadband baseline noise before p2p
    constexpr double kP2pLowpassHz = 2.5;

    DisplacementResult result;
    result.report.experiment = "Displacement";
    result.report.seed = noise.seed;

    const auto lowpass = butter_lowpass(4, kP2pLowpassHz, derived.slow_time_rate_hz);

    for (double amplitude : amplitudes_m) {
        if (amplitude < 0.0) throw OutOfRange("negative amplitude");

        DisplacementTrace truth = sinusoid_motion(amplitude, kOscillationHz, kDurationS,
                                                  derived.slow_time_rate_hz, kStepM);
        truth.base_range_m = kMotionSceneRangeM;

        Scene scene;
        scene.targets.push_back({kMotionSceneRangeM, truth, 1.0});
        scene.phantom = phantom;
        const ChirpRecording rec = synthesize_recording(profile, scene, noise, kDurationS);

        PipelineOptions options;
        options.dc_removal = false;
        PipelineResult pipe = run_pipeline(rec, options);
        pipe.displacement.samples_m = filtfilt(lowpass, pipe.displacement.samples_m);

        ReportRow row;
        row.units = "mm";
        if (amplitude <= 0.0) {
            row.label = cell_label(profile, phantom, "0 mm (degenerate)");
            row.value = peak_to_peak(pipe.displacement) * 1e3;
            result.report.footnotes.push_back(
                "amplitude 0 row reports baseline-noise p2p, not an error");
        } else {
            row.label = cell_label(profile, phantom,
                                   format_value("%g mm", amplitude * 1e3).c_str());
            row.value = std::abs(peak_to_peak(pipe.displacement) - peak_to_peak(truth)) * 1e3;
        }
        result.report.rows.push_back(row);
        result.traces.push_back({amplitude, truth, pipe.displacement});
    }
    return result;
}

VitalsResult vitals_experiment(const RadarProfile& profile, const ChestParams& chest,
                               double duration_s, const NoiseModel& noise) {
    if (duration_s < 60.0) throw TraceTooShort("vitals experiment needs at least 60 s");
    const ChirpDerived derived = derive_chirp_params(profile);

    auto [motion, truth_beats] = chest_motion(chest, duration_s, derived.slow_time_rate_hz);
    motion.base_range_m = kMotionSceneRangeM;

    Scene scene;
    scene.targets.push_back({kMotionSceneRangeM, motion, 1.0});
    const ChirpRecording rec = synthesize_recording(profile, scene, noise, duration_s);

    const PipelineResult pipe = run_pipeline(rec);  // spec defaults incl. DC removal

    VitalsResult result;
    result.estimates = sliding_estimates(pipe.displacement);
    result.truth = truth_beats;
    result.heart_filtered = bandpass(pipe.displacement, Band::heart());
    result.detected = detect_beats(result.heart_filtered);
    result.beat_match = match_beats(result.detected, result.truth);

    std::vector<double> hr_est, rr_est;
    for (const auto& e : result.estimates) {
        hr_est.push_back(e.hr_bpm);
        rr_est.push_back(e.rr_brpm);
    }
    const std::vector<double> hr_truth(hr_est.size(), 60.0 * chest.hr_hz);
    const std::vector<double> rr_truth(rr_est.size(), 60.0 * chest.rr_hz);
    result.mae_hr_bpm = mae(hr_est, hr_truth);
    result.mae_rr_brpm = mae(rr_est, rr_truth);

    result.report.experiment = "Vitals";
    result.report.seed = noise.seed;
    result.report.rows = {
        {cell_label(profile, scene.phantom, "MAE HR"), result.mae_hr_bpm, 0, false, "bpm"},
        {cell_label(profile, scene.phantom, "MAE RR"), result.mae_rr_brpm, 0, false, "brpm"},
        {cell_label(profile, scene.phantom, "beat sensitivity"),
         result.beat_match.sensitivity(), 0, false, "ratio"},
        {cell_label(profile, scene.phantom, "beat precision"),
         result.beat_match.precision(), 0, false, "ratio"},
    };
    return result;
}

double mae(std::span<const double> estimates, std::span<const double> truth) {
    if (estimates.size() != truth.size()) throw LengthMismatch("mae: length mismatch");
    if (estimates.empty()) throw LengthMismatch("mae: empty series");
    double acc = 0.0;
    for (std::size_t i = 0; i < estimates.size(); ++i)
        acc += std::abs(estimates[i] - truth[i]);
    return acc / estimates.size();
}

}  // namespace fmcw::bench
