#pragma once

#include <vector>

#include "fmcw/motion.hpp"

namespace fmcw {

struct Band {
    double low_hz = 0.0;
    double high_hz = 0.0;

    /// 0.7-2 Hz, i.e. 42-120 bpm.
    static Band heart() { return {0.7, 2.0}; }
    /// 0.1-0.5 Hz, i.e. 6-30 breaths per minute.
    static Band respiration() { return {0.1, 0.5}; }
};

struct VitalsEstimate {
    double window_start_s = 0.0;
    double hr_bpm = 0.0;
    double rr_brpm = 0.0;
    double hr_peak_mag = 0.0;
    double rr_peak_mag = 0.0;
};

/// Zero-phase (forward-backward) 4th-order Butterworth band-pass.
DisplacementTrace bandpass(const DisplacementTrace& trace, const Band& band);

/// 60 x argmax-frequency of the band-passed trace's magnitude FFT, restricted
/// to [low, high]. With zero_pad, the spectrum is 8x padded and the peak
/// refined by parabolic interpolation; without, rates sit on the raw FFT grid.
double estimate_rate(const DisplacementTrace& trace, const Band& band, bool zero_pad = true);

std::vector<VitalsEstimate> sliding_estimates(const DisplacementTrace& trace,
                                              double window_s = 60.0, double step_s = 1.0);

/// Local maxima above rolling median + k*MAD, minimum spacing 0.5 s.
/// Expects a heart-band filtered trace.
BeatTimes detect_beats(const DisplacementTrace& trace);

struct BeatMatch {
    int true_pos = 0;
    int false_pos = 0;
    int false_neg = 0;

    double sensitivity() const {
        const int total = true_pos + false_neg;
        return total ? static_cast<double>(true_pos) / total : 0.0;
    }
    double precision() const {
        const int total = true_pos + false_pos;
        return total ? static_cast<double>(true_pos) / total : 0.0;
    }
};

/// Greedy one-to-one nearest matching of detected to ground-truth beats.
BeatMatch match_beats(const BeatTimes& detected, const BeatTimes& truth, double tol_s = 0.150);

}  // namespace fmcw
