#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fmcw/motion.hpp"
#include "fmcw/pipeline.hpp"
#include "fmcw/profiles.hpp"
#include "fmcw/synth.hpp"
#include "fmcw/vitals.hpp"

namespace fmcw::bench {

inline constexpr const char* kToolkitVersion = "0.1.0";

/// Range-FFT padding used by the range experiment so all three radars
/// compare at the same theoretical precision.
inline constexpr double kRangePadTargetM = 0.157e-2;

struct ReportRow {
    std::string label;
    double value = 0.0;
    double std_dev = 0.0;
    bool has_std = false;
    std::string units;
};

struct ExperimentReport {
    std::string experiment;
    std::vector<ReportRow> rows;
    std::uint64_t seed = 0;
    std::string version = kToolkitVersion;
    std::vector<std::string> footnotes;
};

/// Static scenes at the given distances, 60 s each, split into 12 x 5 s
/// sub-intervals; per sub-interval the range is the mean of per-chirp
/// detected ranges. Rows report mean +- std of (estimate - truth).
ExperimentReport range_experiment(const RadarProfile& profile,
                                  const std::vector<double>& distances_m, PhantomKind phantom,
                                  const NoiseModel& noise);

/// Std of the displacement trace of a 20 s static scene at 50 cm.
double baseline_noise_experiment(const RadarProfile& profile, PhantomKind phantom,
                                 double angle_deg, const NoiseModel& noise);

struct DisplacementTracePair {
    double amplitude_m = 0.0;
    DisplacementTrace truth;
    DisplacementTrace estimate;
};

struct DisplacementResult {
    ExperimentReport report;
    std::vector<DisplacementTracePair> traces;
};

/// 0.5 Hz quantized sinusoids for 20 s; rows report |p2p error| per amplitude.
DisplacementResult displacement_experiment(const RadarProfile& profile,
                                           const std::vector<double>& amplitudes_m,
                                           PhantomKind phantom, const NoiseModel& noise);

struct VitalsResult {
    ExperimentReport report;
    std::vector<VitalsEstimate> estimates;
    DisplacementTrace heart_filtered;
    BeatTimes detected;
    BeatTimes truth;
    double mae_hr_bpm = 0.0;
    double mae_rr_brpm = 0.0;
    BeatMatch beat_match;
};

VitalsResult vitals_experiment(const RadarProfile& profile, const ChestParams& chest,
                               double duration_s, const NoiseModel& noise);

double mae(std::span<const double> estimates, std::span<const double> truth);

/// Base range shared by displacement and vitals scenes: 45 cm is bin-aligned
/// for all three built-in profiles, keeping the real-IF image in a spectral null.
inline constexpr double kMotionSceneRangeM = 0.45;

}  // namespace fmcw::bench
