#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fmcw {

// Table-1 convention: the published range bins (7.5/3/1.5 cm) assume c = 3e8.
inline constexpr double kSpeedOfLight = 3.0e8;

enum class ProfileId { BGT24, BGT60, BGT120, Custom };

/// Static radar configuration. The three built-ins share Fc = 2 MHz,
/// n = 128 and a 10 ms chirp interval; only the swept band differs.
struct RadarProfile {
    ProfileId id = ProfileId::Custom;
    double f_start_hz = 0.0;
    double f_end_hz = 0.0;
    double sample_rate_hz = 0.0;   ///< fast-time ADC rate Fc
    int samples_per_chirp = 0;     ///< n
    double chirp_interval_s = 0.0;
};

/// Constants derived from a profile; every equation downstream uses these.
struct ChirpDerived {
    double bandwidth_hz = 0.0;           ///< B = f_end - f_start
    double chirp_duration_s = 0.0;       ///< Tc = n / Fc
    double slope_hz_per_s = 0.0;         ///< S = B / Tc
    double range_bin_m = 0.0;            ///< R = c / (2B)
    double max_range_m = 0.0;            ///< n * R
    double usable_range_m = 0.0;         ///< n * R / 2 (real-valued IF sampling)
    double carrier_wavelength_m = 0.0;   ///< c / mid-band frequency
    double slow_time_rate_hz = 0.0;      ///< 1 / chirp_interval
};

RadarProfile make_profile(ProfileId id);

/// Returns every violated invariant as a message; empty means valid.
std::vector<std::string> validate_profile(const RadarProfile& profile);

/// Throws InvalidProfile if any RadarProfile invariant fails.
ChirpDerived derive_chirp_params(const RadarProfile& profile);

const char* to_string(ProfileId id);
std::optional<ProfileId> parse_profile_id(std::string_view name);

}  // namespace fmcw
