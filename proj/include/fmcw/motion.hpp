#pragma once

#include <utility>
#include <vector>

namespace fmcw {

/// Uniformly sampled target displacement relative to a base range.
struct DisplacementTrace {
    double rate_hz = 0.0;
    std::vector<double> samples_m;
    double base_range_m = 0.0;
};

struct BreathHarmonic {
    int order = 0;
    double relative_amplitude = 0.0;
};

/// Parametric chest model: breathing fundamental (+ optional harmonics)
/// plus a raised-cosine heartbeat pulse train.
struct ChestParams {
    double rr_hz = 0.25;                 ///< in [0.1, 0.5]
    double hr_hz = 1.2;                  ///< in [0.7, 2.0]
    double breath_amplitude_m = 1.2e-3;
    double heart_amplitude_m = 0.3e-3;
    std::vector<BreathHarmonic> breath_harmonics;
    double heart_pulse_width_s = 0.120;
    double breath_phase_rad = 0.0;
    double heart_phase_rad = 0.0;        ///< phase of the beat cycle
};

struct BeatTimes {
    std::vector<double> times_s;  ///< strictly increasing
};

/// Servo-driven phantom motion: quantized sinusoid.
/// step_quantization_m = 0 yields the exact sinusoid.
DisplacementTrace sinusoid_motion(double amplitude_m, double freq_hz, double duration_s,
                                  double rate_hz, double step_quantization_m);

std::pair<DisplacementTrace, BeatTimes> chest_motion(const ChestParams& params,
                                                     double duration_s, double rate_hz);

double peak_to_peak(const DisplacementTrace& trace);

}  // namespace fmcw
