#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fmcw/motion.hpp"
#include "fmcw/profiles.hpp"
#include "fmcw/synth.hpp"

namespace fmcw {

/// Validated scenario file: INI-style sections, unknown keys rejected,
/// physical quantities must carry a unit suffix in the key name.
struct ScenarioConfig {
    std::string experiment;  ///< range | noise | displacement | vitals
    std::uint64_t seed = 0;
    std::vector<ProfileId> profiles;

    PhantomKind phantom = PhantomKind::Metal;
    double angle_deg = 0.0;
    double base_range_m = 0.45;
    double duration_s = 20.0;

    double if_noise_sigma = 0.0;
    double dc_offset = 0.0;
    std::optional<double> calibrate_target_m;  ///< run noise_calibrate to this std

    std::vector<double> distances_m;   ///< range experiment
    std::vector<double> amplitudes_m;  ///< displacement experiment

    // simulate-subcommand motion: a quantized sinusoid or the chest model
    std::optional<double> motion_amplitude_m;
    double motion_freq_hz = 0.5;
    double quantization_step_m = 0.0;
    bool chest_scene = false;
    ChestParams chest;

    NoiseModel noise_model() const { return {if_noise_sigma, dc_offset, seed}; }
};

/// Throws ParseError, UnknownKey or UnitViolation with line context.
ScenarioConfig load_scenario(const std::string& path);

}  // namespace fmcw
