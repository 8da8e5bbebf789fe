#include "fmcw/vitals.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "fmcw/errors.hpp"
#include "fmcw/fft.hpp"
#include "fmcw/filters.hpp"

namespace fmcw {

namespace {

void check_band(const Band& band, double rate_hz) {
    if (!(0.0 < band.low_hz && band.low_hz < band.high_hz && band.high_hz < rate_hz / 2.0))
        throw BandInvalid("band must satisfy 0 < low < high < rate/2");
}

struct RatePeak {
    double per_minute = 0.0;
    double magnitude = 0.0;
};

RatePeak rate_from_filtered(std::span<const double> filtered, double rate_hz, const Band& band,
                            bool zero_pad) {
    const std::size_t n = filtered.size();
    const std::size_t nfft = zero_pad ? 8 * fft::next_pow2(n) : n;
    const auto spectrum = fft::forward_real(filtered, nfft);

    const double df = rate_hz / static_cast<double>(nfft);
    const auto lo = static_cast<std::size_t>(std::ceil(band.low_hz / df));
    const auto hi = std::min(static_cast<std::size_t>(std::floor(band.high_hz / df)), nfft / 2);
    if (lo > hi) throw NoPeak("band contains no FFT bins");

    std::size_t best = lo;
    double best_mag = -1.0;
    for (std::size_t k = lo; k <= hi; ++k) {
        const double mag = std::abs(spectrum[k]);
        if (mag > best_mag) {
            best_mag = mag;
            best = k;
        }
    }
    if (best_mag <= 1e-30) throw NoPeak("in-band spectrum numerically zero");

    double k_refined = static_cast<double>(best);
    if (zero_pad && best > 0 && best + 1 < spectrum.size()) {
        const double a = std::abs(spectrum[best - 1]);
        const double b = std::abs(spectrum[best]);
        const double c = std::abs(spectrum[best + 1]);
        const double denom = a - 2.0 * b + c;
        if (denom != 0.0) k_refined += 0.5 * (a - c) / denom;
    }
    return {60.0 * k_refined * df, best_mag};
}

}  // namespace

DisplacementTrace bandpass(const DisplacementTrace& trace, const Band& band) {
    check_band(band, trace.rate_hz);
    DisplacementTrace out = trace;
    const auto sos = butter_bandpass(4, band.low_hz, band.high_hz, trace.rate_hz);
    out.samples_m = filtfilt(sos, trace.samples_m);
    return out;
}

double estimate_rate(const DisplacementTrace& trace, const Band& band, bool zero_pad) {
    check_band(band, trace.rate_hz);
    const double duration = trace.samples_m.size() / trace.rate_hz;
    if (duration < 2.0 / band.low_hz)
        throw TraceTooShort("trace shorter than two periods of the band's low edge");
    const DisplacementTrace filtered = bandpass(trace, band);
    return rate_from_filtered(filtered.samples_m, trace.rate_hz, band, zero_pad).per_minute;
}

std::vector<VitalsEstimate> sliding_estimates(const DisplacementTrace& trace, double window_s,
                                              double step_s) {
    const double duration = trace.samples_m.size() / trace.rate_hz;
    if (duration < window_s) throw TraceTooShort("trace shorter than one analysis window");

    const DisplacementTrace heart = bandpass(trace, Band::heart());
    const DisplacementTrace resp = bandpass(trace, Band::respiration());

    const auto window = static_cast<std::size_t>(std::lround(window_s * trace.rate_hz));
    const auto step = static_cast<std::size_t>(std::lround(step_s * trace.rate_hz));

    std::vector<VitalsEstimate> estimates;
    for (std::size_t start = 0; start + window <= trace.samples_m.size(); start += step) {
        const auto hr = rate_from_filtered({heart.samples_m.data() + start, window},
                                           trace.rate_hz, Band::heart(), true);
        const auto rr = rate_from_filtered({resp.samples_m.data() + start, window},
                                           trace.rate_hz, Band::respiration(), true);
        estimates.push_back({start / trace.rate_hz, hr.per_minute, rr.per_minute,
                             hr.magnitude, rr.magnitude});
    }
    return estimates;
}

BeatTimes detect_beats(const DisplacementTrace& trace) {
    // rolling median + k*MAD; k = 1 because the band-passed beat train is
    // near-sinusoidal (MAD ~ 0.71 * amplitude), so larger k rejects every peak
    constexpr double kThresholdMads = 1.0;
    constexpr double kMinSpacingS = 0.5;  // 1 / (2 Hz band edge)
    constexpr double kStatWindowS = 2.0;

    const auto& y = trace.samples_m;
    const auto n = static_cast<long>(y.size());
    const auto half = static_cast<long>(kStatWindowS * trace.rate_hz);

    std::vector<long> candidates;
    std::vector<double> scratch;
    for (long i = 1; i + 1 < n; ++i) {
        if (!(y[i] >= y[i - 1] && y[i] > y[i + 1])) continue;
        const long lo = std::max(0L, i - half);
        const long hi = std::min(n, i + half);
        scratch.assign(y.begin() + lo, y.begin() + hi);
        auto mid = scratch.begin() + scratch.size() / 2;
        std::nth_element(scratch.begin(), mid, scratch.end());
        const double median = *mid;
        for (double& v : scratch) v = std::abs(v - median);
        std::nth_element(scratch.begin(), mid, scratch.end());
        const double mad = *mid;
        if (y[i] > median + kThresholdMads * mad) candidates.push_back(i);
    }

    std::vector<long> kept;
    for (long i : candidates) {
        if (!kept.empty() && (i - kept.back()) / trace.rate_hz < kMinSpacingS) {
            if (y[i] > y[kept.back()]) kept.back() = i;
        } else {
            kept.push_back(i);
        }
    }

    BeatTimes beats;
    beats.times_s.reserve(kept.size());
    for (long i : kept) beats.times_s.push_back(i / trace.rate_hz);
    return beats;
}

BeatMatch match_beats(const BeatTimes& detected, const BeatTimes& truth, double tol_s) {
    std::vector<bool> used(truth.times_s.size(), false);
    BeatMatch match;
    for (double t : detected.times_s) {
        const auto it = std::lower_bound(truth.times_s.begin(), truth.times_s.end(), t);
        long best = -1;
        double best_dist = tol_s;
        for (auto idx : {it == truth.times_s.begin() ? -1L : (it - truth.times_s.begin() - 1),
                         it == truth.times_s.end() ? -1L : it - truth.times_s.begin()}) {
            if (idx < 0 || used[static_cast<std::size_t>(idx)]) continue;
            const double dist = std::abs(truth.times_s[static_cast<std::size_t>(idx)] - t);
            if (dist <= best_dist) {
                best_dist = dist;
                best = idx;
            }
        }
        if (best >= 0) {
            used[static_cast<std::size_t>(best)] = true;
            ++match.true_pos;
        } else {
            ++match.false_pos;
        }
    }
    match.false_neg = static_cast<int>(truth.times_s.size()) - match.true_pos;
    return match;
}

}  // namespace fmcw
