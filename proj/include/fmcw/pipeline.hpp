#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "fmcw/motion.hpp"
#include "fmcw/profiles.hpp"
#include "fmcw/synth.hpp"

namespace fmcw {

/// Padding policy for the range FFT: none, or pad until the achieved
/// bin size is at most target_bin_m (power-of-two N_fft).
struct PadPolicy {
    std::optional<double> target_bin_m;

    static PadPolicy none() { return {}; }
    static PadPolicy target_bin(double m) { return {m}; }
};

enum class BinPolicy { PerWindow, PerChirp };

/// Window applied before the range FFT. Auto = rectangular when unpadded
/// (keeps bin-aligned tones exact), Hann when padded (suppresses the
/// negative-frequency image of the real-valued IF signal, which otherwise
/// pulls the interpolated peak).
enum class RangeWindow { Auto, Rect, Hann };

/// Positive-frequency half of the per-chirp range spectra
/// (bins 0 .. nfft/2 inclusive; the IF signal is real).
struct RangeSpectrumSeries {
    RadarProfile profile;
    int chirps = 0;
    int nfft = 0;
    double bin_size_m = 0.0;  ///< R * n / nfft
    double slow_time_rate_hz = 0.0;
    std::vector<std::complex<double>> spectra;  ///< chirps x (nfft/2+1), row-major

    int bins_stored() const { return nfft / 2 + 1; }
    const std::complex<double>& at(int chirp, int bin) const {
        return spectra[static_cast<std::size_t>(chirp) * bins_stored() + bin];
    }
    std::complex<double>& at(int chirp, int bin) {
        return spectra[static_cast<std::size_t>(chirp) * bins_stored() + bin];
    }
};

struct PhaseSeries {
    double rate_hz = 0.0;
    std::vector<double> values_rad;
    int bin = 0;
    bool wrapped = true;
};

RangeSpectrumSeries range_fft(const ChirpRecording& recording, PadPolicy pad,
                              RangeWindow window = RangeWindow::Auto, bool parallel = true);

/// Subtracts the slow-time complex mean per range bin (static clutter removal).
RangeSpectrumSeries dc_offset_removal(const RangeSpectrumSeries& series);

/// Argmax of mean magnitude across chirps, over bins below Nyquist.
/// Ties break to the lowest bin index.
int select_target_bin(const RangeSpectrumSeries& series);

/// Per-chirp argmax, one bin index per chirp.
std::vector<int> select_target_bin_per_chirp(const RangeSpectrumSeries& series);

double bin_to_range(int bin, const RangeSpectrumSeries& series);

PhaseSeries extract_phase(const RangeSpectrumSeries& series, int bin);

PhaseSeries unwrap_phase(const PhaseSeries& series);

/// Delta_d = lambda * Delta_phi / (4 pi), anchored at 0 for the first sample.
DisplacementTrace phase_to_displacement(const PhaseSeries& series, double wavelength_m);

struct PipelineOptions {
    PadPolicy pad = PadPolicy::none();
    std::optional<bool> dc_removal;  ///< default: on for BGT60/BGT120, off for BGT24
    BinPolicy bin_policy = BinPolicy::PerWindow;
    bool parallel = true;
};

struct PipelineResult {
    double range_m = 0.0;
    DisplacementTrace displacement;
    int bin = 0;
};

/// Full chain: range FFT -> (DC removal) -> bin selection -> phase ->
/// unwrap -> displacement. When padded, bin selection runs on the padded
/// Hann spectra while phase is extracted from the unpadded rectangular
/// spectra at the corresponding coarse bin.
PipelineResult run_pipeline(const ChirpRecording& recording, const PipelineOptions& options = {});

bool default_dc_removal(const RadarProfile& profile);

}  // namespace fmcw
