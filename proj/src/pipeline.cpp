#include "fmcw/pipeline.hpp"

#include <algorithm>
#include <cmath>

#include "fmcw/errors.hpp"
#include "fmcw/fft.hpp"

namespace fmcw {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kPi = 3.1415926535897932384626433832795;

std::size_t pick_nfft(const ChirpDerived& d, int n, PadPolicy pad) {
    if (!pad.target_bin_m) return static_cast<std::size_t>(n);
    const double target = *pad.target_bin_m;
    if (target <= 0.0) throw OutOfRange("pad target bin must be positive");
    std::size_t nfft = fft::next_pow2(static_cast<std::size_t>(n));
    while (d.range_bin_m * n / static_cast<double>(nfft) > target) nfft <<= 1;
    return nfft;
}

}  // namespace

bool default_dc_removal(const RadarProfile& profile) {
    // DC removal helps when displacements are large relative to lambda;
    // for the 24 GHz band they are not.
    return profile.id == ProfileId::BGT60 || profile.id == ProfileId::BGT120;
}

RangeSpectrumSeries range_fft(const ChirpRecording& recording, PadPolicy pad,
                              RangeWindow window, bool parallel) {
    const RadarProfile& p = recording.profile;
    const ChirpDerived d = derive_chirp_params(p);
    const int n = p.samples_per_chirp;
    if (recording.chirps < 1 ||
        recording.samples.size() != static_cast<std::size_t>(recording.chirps) * n)
        throw OutOfRange("recording shape inconsistent");

    const std::size_t nfft = pick_nfft(d, n, pad);
    const bool use_hann = (window == RangeWindow::Hann) ||
                          (window == RangeWindow::Auto && nfft != static_cast<std::size_t>(n));

    RangeSpectrumSeries series;
    series.profile = p;
    series.chirps = recording.chirps;
    series.nfft = static_cast<int>(nfft);
    series.bin_size_m = d.range_bin_m * n / static_cast<double>(nfft);
    series.slow_time_rate_hz = d.slow_time_rate_hz;
    series.spectra.resize(static_cast<std::size_t>(recording.chirps) * (nfft / 2 + 1));

    const double* in = recording.samples.data();
    std::vector<double> windowed;
    if (use_hann) {
        windowed.resize(recording.samples.size());
        std::vector<double> w(n);
        for (int i = 0; i < n; ++i)
            w[i] = 0.5 * (1.0 - std::cos(kTwoPi * i / (n - 1)));
        for (int m = 0; m < recording.chirps; ++m)
            for (int i = 0; i < n; ++i)
                windowed[static_cast<std::size_t>(m) * n + i] =
                    recording.samples[static_cast<std::size_t>(m) * n + i] * w[i];
        in = windowed.data();
    }

    fft::forward_real_rows(in, recording.chirps, n, nfft, series.spectra.data(), parallel);
    return series;
}

RangeSpectrumSeries dc_offset_removal(const RangeSpectrumSeries& series) {
    if (series.chirps < 2) throw TooFewChirps("dc_offset_removal needs at least 2 chirps");
    RangeSpectrumSeries out = series;
    const int bins = series.bins_stored();
    std::vector<std::complex<double>> mean(bins, {0.0, 0.0});
    for (int m = 0; m < series.chirps; ++m)
        for (int b = 0; b < bins; ++b) mean[b] += series.at(m, b);
    const double inv = 1.0 / series.chirps;
    for (int b = 0; b < bins; ++b) mean[b] *= inv;
    for (int m = 0; m < series.chirps; ++m)
        for (int b = 0; b < bins; ++b) out.at(m, b) -= mean[b];
    return out;
}

int select_target_bin(const RangeSpectrumSeries& series) {
    if (series.chirps < 1) throw OutOfRange("empty spectrum series");
    const int limit = series.nfft / 2;  // bins below Nyquist
    int best = 0;
    double best_mag = -1.0;
    for (int b = 0; b < limit; ++b) {
        double acc = 0.0;
        for (int m = 0; m < series.chirps; ++m) acc += std::abs(series.at(m, b));
        if (acc > best_mag) {
            best_mag = acc;
            best = b;
        }
    }
    return best;
}

std::vector<int> select_target_bin_per_chirp(const RangeSpectrumSeries& series) {
    if (series.chirps < 1) throw OutOfRange("empty spectrum series");
    const int limit = series.nfft / 2;
    std::vector<int> bins(series.chirps, 0);
    for (int m = 0; m < series.chirps; ++m) {
        double best_mag = -1.0;
        for (int b = 0; b < limit; ++b) {
            const double mag = std::abs(series.at(m, b));
            if (mag > best_mag) {
                best_mag = mag;
                bins[m] = b;
            }
        }
    }
    return bins;
}

double bin_to_range(int bin, const RangeSpectrumSeries& series) {
    if (bin < 0 || bin >= series.nfft / 2)
        throw OutOfRange("bin at or above Nyquist");
    return bin * series.bin_size_m;
}

PhaseSeries extract_phase(const RangeSpectrumSeries& series, int bin) {
    if (bin < 0 || bin >= series.bins_stored()) throw OutOfRange("bin outside stored spectrum");
    PhaseSeries ph;
    ph.rate_hz = series.slow_time_rate_hz;
    ph.bin = bin;
    ph.wrapped = true;
    ph.values_rad.resize(series.chirps);
    for (int m = 0; m < series.chirps; ++m) {
        const auto z = series.at(m, bin);
        if (std::abs(z) < 1e-30)
            throw ZeroMagnitude("bin magnitude below numeric floor (bin dropout)");
        ph.values_rad[m] = std::atan2(z.imag(), z.real());
    }
    return ph;
}

PhaseSeries unwrap_phase(const PhaseSeries& series) {
    PhaseSeries out = series;
    out.wrapped = false;
    double offset = 0.0;
    for (std::size_t i = 1; i < out.values_rad.size(); ++i) {
        const double delta = series.values_rad[i] - series.values_rad[i - 1];
        if (delta > kPi) offset -= kTwoPi;
        else if (delta <= -kPi) offset += kTwoPi;
        out.values_rad[i] = series.values_rad[i] + offset;
    }
    return out;
}

DisplacementTrace phase_to_displacement(const PhaseSeries& series, double wavelength_m) {
    if (series.wrapped) throw OutOfRange("phase_to_displacement expects an unwrapped series");
    DisplacementTrace trace;
    trace.rate_hz = series.rate_hz;
    trace.samples_m.resize(series.values_rad.size());
    if (series.values_rad.empty()) return trace;
    const double first = series.values_rad.front();
    const double scale = wavelength_m / (4.0 * kPi);
    for (std::size_t i = 0; i < series.values_rad.size(); ++i)
        trace.samples_m[i] = scale * (series.values_rad[i] - first);
    return trace;
}

PipelineResult run_pipeline(const ChirpRecording& recording, const PipelineOptions& options) {
    const ChirpDerived d = derive_chirp_params(recording.profile);
    const bool dc = options.dc_removal.value_or(default_dc_removal(recording.profile));

    // Coarse rectangular spectra drive phase extraction; a padded Hann series
    // (when requested) refines the range estimate and bin choice.
    RangeSpectrumSeries coarse = range_fft(recording, PadPolicy::none(), RangeWindow::Rect,
                                           options.parallel);
    if (dc) coarse = dc_offset_removal(coarse);

    double range = 0.0;
    int coarse_bin = 0;
    if (options.pad.target_bin_m) {
        RangeSpectrumSeries fine = range_fft(recording, options.pad, RangeWindow::Auto,
                                             options.parallel);
        if (dc) fine = dc_offset_removal(fine);
        int fine_bin;
        if (options.bin_policy == BinPolicy::PerChirp) {
            const auto bins = select_target_bin_per_chirp(fine);
            double mean_range = 0.0;
            for (int b : bins) mean_range += bin_to_range(b, fine);
            range = mean_range / static_cast<double>(bins.size());
            fine_bin = bins.front();
        } else {
            fine_bin = select_target_bin(fine);
            range = bin_to_range(fine_bin, fine);
        }
        const double ratio = static_cast<double>(coarse.nfft) / fine.nfft;
        coarse_bin = std::min(static_cast<int>(std::lround(fine_bin * ratio)),
                              coarse.nfft / 2 - 1);
    } else {
        if (options.bin_policy == BinPolicy::PerChirp) {
            const auto bins = select_target_bin_per_chirp(coarse);
            double mean_range = 0.0;
            for (int b : bins) mean_range += bin_to_range(b, coarse);
            range = mean_range / static_cast<double>(bins.size());
            coarse_bin = bins.front();
        } else {
            coarse_bin = select_target_bin(coarse);
            range = bin_to_range(coarse_bin, coarse);
        }
    }

    const PhaseSeries wrapped = extract_phase(coarse, coarse_bin);
    const PhaseSeries unwrapped = unwrap_phase(wrapped);

    PipelineResult result;
    result.range_m = range;
    result.bin = coarse_bin;
    result.displacement = phase_to_displacement(unwrapped, d.carrier_wavelength_m);
    result.displacement.base_range_m = range;
    return result;
}

}  // namespace fmcw
