#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "fmcw/errors.hpp"
#include "fmcw/vitals.hpp"

using namespace fmcw;

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

DisplacementTrace tone(double amplitude_m, double freq_hz, double duration_s,
                       double rate_hz = 100.0) {
    DisplacementTrace trace;
    trace.rate_hz = rate_hz;
    const auto count = static_cast<std::size_t>(duration_s * rate_hz);
    trace.samples_m.resize(count);
    for (std::size_t i = 0; i < count; ++i)
        trace.samples_m[i] = amplitude_m * std::sin(kTwoPi * freq_hz * i / rate_hz);
    return trace;
}

}  // namespace

TEST_CASE("estimate_rate recovers in-band tones to better than 1 per minute") {
    for (double hz : {0.8, 1.0, 1.2, 1.5, 1.9}) {
        const auto trace = tone(0.3e-3, hz, 60.0);
        CHECK(estimate_rate(trace, Band::heart()) == doctest::Approx(60.0 * hz).epsilon(0.01));
    }
    for (double hz : {0.15, 0.25, 0.45}) {
        const auto trace = tone(1.2e-3, hz, 60.0);
        CHECK(estimate_rate(trace, Band::respiration()) ==
              doctest::Approx(60.0 * hz).epsilon(0.02));
    }
}

TEST_CASE("estimate_rate picks the in-band component of a mixture") {
    auto trace = tone(1.2e-3, 0.25, 60.0);
    const auto heart = tone(0.3e-3, 1.2, 60.0);
    for (std::size_t i = 0; i < trace.samples_m.size(); ++i)
        trace.samples_m[i] += heart.samples_m[i];
    CHECK(estimate_rate(trace, Band::heart()) == doctest::Approx(72.0).epsilon(0.01));
    CHECK(estimate_rate(trace, Band::respiration()) == doctest::Approx(15.0).epsilon(0.02));
}

TEST_CASE("estimate_rate input validation") {
    const auto trace = tone(1e-3, 1.2, 60.0);
    CHECK_THROWS_AS(estimate_rate(trace, Band{2.0, 0.7}), BandInvalid);
    CHECK_THROWS_AS(estimate_rate(trace, Band{0.7, 60.0}), BandInvalid);
    const auto brief = tone(1e-3, 1.2, 2.0);
    CHECK_THROWS_AS(estimate_rate(brief, Band::heart()), TraceTooShort);
    auto flat = tone(0.0, 1.2, 60.0);
    CHECK_THROWS_AS(estimate_rate(flat, Band::heart()), NoPeak);
}

TEST_CASE("sliding_estimates: one window per step across the trace") {
    const auto trace = tone(0.3e-3, 1.2, 120.0);
    const auto estimates = sliding_estimates(trace);
    CHECK(estimates.size() == 61);  // (120 - 60) / 1 + 1
    for (const auto& e : estimates) CHECK(e.hr_bpm == doctest::Approx(72.0).epsilon(0.01));
    CHECK(estimates.front().window_start_s == doctest::Approx(0.0));
    CHECK(estimates.back().window_start_s == doctest::Approx(60.0));

    const auto brief = tone(0.3e-3, 1.2, 30.0);
    CHECK_THROWS_AS(sliding_estimates(brief), TraceTooShort);
}

TEST_CASE("detect_beats finds every cycle of a clean in-band tone") {
    const double hz = 1.0;
    const auto raw = tone(0.3e-3, hz, 22.0);
    const auto filtered = bandpass(raw, Band::heart());
    const auto beats = detect_beats(filtered);
    // 22 cycles, minus whatever the trace edges clip
    CHECK(beats.times_s.size() >= 20);
    CHECK(beats.times_s.size() <= 23);
    for (std::size_t i = 1; i < beats.times_s.size(); ++i)
        CHECK(beats.times_s[i] - beats.times_s[i - 1] == doctest::Approx(1.0 / hz).epsilon(0.05));
}

TEST_CASE("match_beats: greedy one-to-one within tolerance") {
    BeatTimes truth;
    truth.times_s = {1.0, 2.0, 3.0, 4.0};
    BeatTimes detected;
    detected.times_s = {1.05, 2.2, 3.0, 5.0};

    const BeatMatch match = match_beats(detected, truth, 0.150);
    CHECK(match.true_pos == 2);   // 1.05 and 3.0
    CHECK(match.false_pos == 2);  // 2.2 and 5.0
    CHECK(match.false_neg == 2);  // 2.0 and 4.0
    CHECK(match.sensitivity() == doctest::Approx(0.5));
    CHECK(match.precision() == doctest::Approx(0.5));

    // each truth beat is consumed at most once
    BeatTimes doubled;
    doubled.times_s = {0.95, 1.05};
    const BeatMatch dup = match_beats(doubled, truth, 0.150);
    CHECK(dup.true_pos == 1);
    CHECK(dup.false_pos == 1);
}

TEST_CASE("bandpass preserves trace metadata") {
    auto trace = tone(0.3e-3, 1.2, 30.0);
    trace.base_range_m = 0.45;
    const auto filtered = bandpass(trace, Band::heart());
    CHECK(filtered.rate_hz == trace.rate_hz);
    CHECK(filtered.base_range_m == 0.45);
    CHECK(filtered.samples_m.size() == trace.samples_m.size());
}
