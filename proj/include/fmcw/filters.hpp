#pragma once

#include <complex>
#include <span>
#include <vector>

namespace fmcw {

/// One second-order section, direct form II transposed, a0 normalized to 1.
struct Biquad {
    double b0 = 0, b1 = 0, b2 = 0;
    double a1 = 0, a2 = 0;
};

using SosCascade = std::vector<Biquad>;

/// Butterworth band-pass of the given overall order (must be even;
/// order 4 = two sections), designed via bilinear transform.
SosCascade butter_bandpass(int order, double low_hz, double high_hz, double fs_hz);

SosCascade butter_lowpass(int order, double cut_hz, double fs_hz);

/// Zero-phase forward-backward filtering with odd-reflection padding and
/// steady-state initial conditions (matches the usual filtfilt behavior).
std::vector<double> filtfilt(const SosCascade& sos, std::span<const double> x);

/// Frequency response at f, for tests and design verification.
std::complex<double> sos_response(const SosCascade& sos, double freq_hz, double fs_hz);

}  // namespace fmcw
