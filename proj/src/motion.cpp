#include "fmcw/motion.hpp"

#include <cmath>

#include "fmcw/errors.hpp"

namespace fmcw {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

double quantize(double x, double step) {
    if (step <= 0.0) return x;
    return std::round(x / step) * step;
}

void check_sampling(double freq_hz, double rate_hz) {
    if (!(rate_hz > 0.0)) throw AliasedMotion("sampling rate must be positive");
    if (freq_hz >= rate_hz / 2.0) throw AliasedMotion("motion frequency at or above Nyquist");
}

}  // namespace

DisplacementTrace sinusoid_motion(double amplitude_m, double freq_hz, double duration_s,
                                  double rate_hz, double step_quantization_m) {
    check_sampling(freq_hz, rate_hz);
    const auto count = static_cast<std::size_t>(std::floor(duration_s * rate_hz));
    DisplacementTrace trace;
    trace.rate_hz = rate_hz;
    trace.samples_m.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double t = static_cast<double>(i) / rate_hz;
        trace.samples_m[i] = quantize(amplitude_m * std::sin(kTwoPi * freq_hz * t),
                                      step_quantization_m);
    }
    return trace;
}

std::pair<DisplacementTrace, BeatTimes> chest_motion(const ChestParams& params,
                                                     double duration_s, double rate_hz) {
    if (params.rr_hz < 0.1 || params.rr_hz > 0.5)
        throw AliasedMotion("rr outside [0.1, 0.5] Hz");
    if (params.hr_hz < 0.7 || params.hr_hz > 2.0)
        throw AliasedMotion("hr outside [0.7, 2.0] Hz");
    check_sampling(params.hr_hz, rate_hz);

    const auto count = static_cast<std::size_t>(std::floor(duration_s * rate_hz));
    DisplacementTrace trace;
    trace.rate_hz = rate_hz;
    trace.samples_m.assign(count, 0.0);

    for (std::size_t i = 0; i < count; ++i) {
        const double t = static_cast<double>(i) / rate_hz;
        double x = params.breath_amplitude_m *
                   std::sin(kTwoPi * params.rr_hz * t + params.breath_phase_rad);
        for (const auto& h : params.breath_harmonics) {
            x += params.breath_amplitude_m * h.relative_amplitude *
                 std::sin(kTwoPi * h.order * params.rr_hz * t + params.breath_phase_rad);
        }
        trace.samples_m[i] = x;
    }

    BeatTimes beats;
    const double beat_interval = 1.0 / params.hr_hz;
    const double first = params.heart_phase_rad / kTwoPi * beat_interval;
    const double pw = params.heart_pulse_width_s;
    for (double center = first; center < duration_s; center += beat_interval) {
        beats.times_s.push_back(center);
        if (params.heart_amplitude_m <= 0.0) continue;
        const auto lo = static_cast<long>(std::ceil((center - pw / 2.0) * rate_hz));
        const auto hi = static_cast<long>(std::floor((center + pw / 2.0) * rate_hz));
        for (long i = std::max(lo, 0L); i <= hi && i < static_cast<long>(count); ++i) {
            const double t = static_cast<double>(i) / rate_hz;
            trace.samples_m[static_cast<std::size_t>(i)] +=
                params.heart_amplitude_m * 0.5 * (1.0 + std::cos(kTwoPi * (t - center) / pw));
        }
    }
    return {std::move(trace), std::move(beats)};
}

double peak_to_peak(const DisplacementTrace& trace) {
    if (trace.samples_m.size() < 2) throw EmptyTrace("peak_to_peak needs at least 2 samples");
    double lo = trace.samples_m.front();
    double hi = lo;
    for (double v : trace.samples_m) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    return hi - lo;
}

}  // namespace fmcw
