#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fmcw/motion.hpp"
#include "fmcw/profiles.hpp"

namespace fmcw {

enum class PhantomKind { Metal, Gelatin };

struct SceneTarget {
    double base_range_m = 0.0;
    std::optional<DisplacementTrace> motion;  ///< nullopt = static target
    double reflect_amplitude = 1.0;           ///< in (0, 1]
};

struct ClutterTarget {
    double range_m = 0.0;
    double amplitude = 0.0;
};

struct Scene {
    std::vector<SceneTarget> targets;
    std::vector<ClutterTarget> clutter;
    PhantomKind phantom = PhantomKind::Metal;
    double incidence_angle_deg = 0.0;
};

/// Additive white Gaussian noise on IF samples plus a per-chirp DC term.
struct NoiseModel {
    double if_noise_sigma = 0.0;
    double dc_offset = 0.0;
    std::uint64_t seed = 0;
};

/// Raw IF samples, M chirps x n fast-time samples, row-major.
struct ChirpRecording {
    RadarProfile profile;
    int chirps = 0;
    std::vector<double> samples;
    double t0_s = 0.0;
    std::string scene_digest;  ///< 64 hex chars (SHA-256)

    double sample(int chirp, int i) const {
        return samples[static_cast<std::size_t>(chirp) * profile.samples_per_chirp + i];
    }
};

/// Beat frequency of a static target: f_IF = 2*S*d/c.
double if_tone(const RadarProfile& profile, double range_m);

/// Amplitude gain modeling phantom reflectance vs incidence angle.
/// gain(*, 0) = 1, non-increasing in angle, Metal >= Gelatin everywhere.
double angle_gain(PhantomKind kind, double incidence_angle_deg);

ChirpRecording synthesize_recording(const RadarProfile& profile, const Scene& scene,
                                    const NoiseModel& noise, double duration_s,
                                    bool parallel = true);

/// Serial reference kept for testing the parallel kernel against.
ChirpRecording synthesize_recording_serial(const RadarProfile& profile, const Scene& scene,
                                           const NoiseModel& noise, double duration_s);

/// Bisects if_noise_sigma until the simulated static-target baseline noise
/// (per bench::baseline_noise_experiment) lands within +-20% of target.
NoiseModel noise_calibrate(const RadarProfile& profile, const Scene& scene,
                           double target_baseline_m);

}  // namespace fmcw
