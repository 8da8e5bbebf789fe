#include "fmcw/profiles.hpp"

#include <cmath>

#include "fmcw/errors.hpp"

namespace fmcw {

namespace {

RadarProfile builtin(ProfileId id, double f_start, double f_end) {
    RadarProfile p;
    p.id = id;
    p.f_start_hz = f_start;
    p.f_end_hz = f_end;
    p.sample_rate_hz = 2e6;
    p.samples_per_chirp = 128;
    p.chirp_interval_s = 10e-3;
    return p;
}

}  // namespace

RadarProfile make_profile(ProfileId id) {
    switch (id) {
        case ProfileId::BGT24: return builtin(id, 23e9, 25e9);
        case ProfileId::BGT60: return builtin(id, 58e9, 63e9);
        case ProfileId::BGT120: return builtin(id, 116e9, 126e9);
        case ProfileId::Custom: break;
    }
    throw InvalidProfile("make_profile: not a built-in profile id");
}

std::vector<std::string> validate_profile(const RadarProfile& p) {
    std::vector<std::string> violations;
    if (!(p.f_start_hz > 0.0))
        violations.push_back("f_start must be positive");
    if (!(p.f_end_hz > p.f_start_hz))
        violations.push_back(p.f_end_hz == p.f_start_hz ? "zero bandwidth"
                                                        : "f_end must exceed f_start");
    if (!(p.sample_rate_hz > 0.0))
        violations.push_back("sample rate must be positive");
    if (p.samples_per_chirp < 2)
        violations.push_back("need at least 2 samples per chirp");
    if (p.sample_rate_hz > 0.0 && p.samples_per_chirp >= 2 &&
        p.chirp_interval_s < p.samples_per_chirp / p.sample_rate_hz)
        violations.push_back("chirp longer than interval");
    return violations;
}

ChirpDerived derive_chirp_params(const RadarProfile& p) {
    auto violations = validate_profile(p);
    if (!violations.empty()) {
        std::string msg = "invalid profile:";
        for (const auto& v : violations) msg += " " + v + ";";
        throw InvalidProfile(msg);
    }
    ChirpDerived d;
    d.bandwidth_hz = p.f_end_hz - p.f_start_hz;
    d.chirp_duration_s = p.samples_per_chirp / p.sample_rate_hz;
    d.slope_hz_per_s = d.bandwidth_hz / d.chirp_duration_s;
    d.range_bin_m = kSpeedOfLight / (2.0 * d.bandwidth_hz);
    d.max_range_m = p.samples_per_chirp * d.range_bin_m;
    d.usable_range_m = d.max_range_m / 2.0;
    d.carrier_wavelength_m = kSpeedOfLight / (0.5 * (p.f_start_hz + p.f_end_hz));
    d.slow_time_rate_hz = 1.0 / p.chirp_interval_s;
    return d;
}

const char* to_string(ProfileId id) {
    switch (id) {
        case ProfileId::BGT24: return "BGT24";
        case ProfileId::BGT60: return "BGT60";
        case ProfileId::BGT120: return "BGT120";
        case ProfileId::Custom: return "Custom";
    }
    return "?";
}

std::optional<ProfileId> parse_profile_id(std::string_view name) {
    if (name == "BGT24") return ProfileId::BGT24;
    if (name == "BGT60") return ProfileId::BGT60;
    if (name == "BGT120") return ProfileId::BGT120;
    if (name == "Custom") return ProfileId::Custom;
    return std::nullopt;
}

}  // namespace fmcw
