#include "fmcw/synth.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <cstring>

#include "fmcw/bench.hpp"
#include "fmcw/errors.hpp"

namespace fmcw {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kPi = 3.1415926535897932384626433832795;

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

double uniform01(std::uint64_t& state) {
    // 53-bit mantissa, strictly in (0, 1]
    return (static_cast<double>(splitmix64(state) >> 11) + 1.0) * 0x1p-53;
}

/// Counter-based Gaussian stream: each chirp owns an independent substream,
/// so parallel synthesis is bit-identical to serial at any thread count.
class GaussStream {
  public:
    GaussStream(std::uint64_t seed, std::uint64_t chirp) {
        state_ = seed ^ (0xD1B54A32D192ED03ull * (chirp + 1));
        splitmix64(state_);
    }
    double next() {
        if (have_) {
            have_ = false;
            return cached_;
        }
        const double u1 = uniform01(state_);
        const double u2 = uniform01(state_);
        const double r = std::sqrt(-2.0 * std::log(u1));
        cached_ = r * std::sin(kTwoPi * u2);
        have_ = true;
        return r * std::cos(kTwoPi * u2);
    }

  private:
    std::uint64_t state_;
    double cached_ = 0.0;
    bool have_ = false;
};

double interp_trace(const DisplacementTrace& trace, double t) {
    const auto n = trace.samples_m.size();
    if (n == 0) return 0.0;
    const double pos = t * trace.rate_hz;
    if (pos <= 0.0) return trace.samples_m.front();
    const auto i = static_cast<std::size_t>(pos);
    if (i + 1 >= n) return trace.samples_m.back();
    const double frac = pos - static_cast<double>(i);
    return trace.samples_m[i] * (1.0 - frac) + trace.samples_m[i + 1] * frac;
}

void digest_bytes(EVP_MD_CTX* ctx, const void* data, std::size_t len) {
    EVP_DigestUpdate(ctx, data, len);
}

void digest_double(EVP_MD_CTX* ctx, double v) { digest_bytes(ctx, &v, sizeof v); }

std::string scene_digest(const RadarProfile& profile, const Scene& scene,
                         const NoiseModel& noise, double duration_s) {
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
    digest_double(ctx, profile.f_start_hz);
    digest_double(ctx, profile.f_end_hz);
    digest_double(ctx, profile.sample_rate_hz);
    digest_double(ctx, profile.samples_per_chirp);
    digest_double(ctx, profile.chirp_interval_s);
    for (const auto& t : scene.targets) {
        digest_double(ctx, t.base_range_m);
        digest_double(ctx, t.reflect_amplitude);
        if (t.motion) {
            digest_double(ctx, t.motion->rate_hz);
            digest_bytes(ctx, t.motion->samples_m.data(),
                         t.motion->samples_m.size() * sizeof(double));
        }
    }
    for (const auto& c : scene.clutter) {
        digest_double(ctx, c.range_m);
        digest_double(ctx, c.amplitude);
    }
    digest_double(ctx, static_cast<double>(scene.phantom == PhantomKind::Gelatin));
    digest_double(ctx, scene.incidence_angle_deg);
    digest_double(ctx, noise.if_noise_sigma);
    digest_double(ctx, noise.dc_offset);
    digest_double(ctx, static_cast<double>(noise.seed));
    digest_double(ctx, duration_s);
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int md_len = 0;
    EVP_DigestFinal_ex(ctx, md, &md_len);
    EVP_MD_CTX_free(ctx);
    static const char* hex = "0123456789abcdef";
    std::string out(2 * md_len, '0');
    for (unsigned int i = 0; i < md_len; ++i) {
        out[2 * i] = hex[md[i] >> 4];
        out[2 * i + 1] = hex[md[i] & 0xF];
    }
    return out;
}

ChirpRecording synthesize_impl(const RadarProfile& profile, const Scene& scene,
                               const NoiseModel& noise, double duration_s, bool parallel) {
    const ChirpDerived d = derive_chirp_params(profile);
    if (scene.targets.empty()) throw OutOfRange("scene needs at least one target");
    if (duration_s < profile.chirp_interval_s)
        throw OutOfRange("duration shorter than one chirp interval");
    for (const auto& c : scene.clutter)
        if (c.range_m <= 0.0 || c.range_m >= d.max_range_m)
            throw OutOfRange("clutter range outside (0, max_range)");
    if (noise.if_noise_sigma < 0.0) throw OutOfRange("negative noise sigma");

    const int n = profile.samples_per_chirp;
    const int chirps = static_cast<int>(std::floor(duration_s * d.slow_time_rate_hz));
    const double gain = angle_gain(scene.phantom, scene.incidence_angle_deg);

    ChirpRecording rec;
    rec.profile = profile;
    rec.chirps = chirps;
    rec.samples.assign(static_cast<std::size_t>(chirps) * n, 0.0);
    rec.scene_digest = scene_digest(profile, scene, noise, duration_s);

    bool out_of_range = false;

    auto synth_chirp = [&](int m) {
        const double t_m = m * profile.chirp_interval_s;
        double* frame = rec.samples.data() + static_cast<std::size_t>(m) * n;
        for (const auto& target : scene.targets) {
            double range = target.base_range_m;
            if (target.motion) range += interp_trace(*target.motion, t_m);
            if (range <= 0.0 || range >= d.max_range_m) {
                out_of_range = true;
                return;
            }
            const double f_if = 2.0 * d.slope_hz_per_s * range / kSpeedOfLight;
            const double phase0 = 4.0 * kPi * profile.f_start_hz * range / kSpeedOfLight;
            const double amp = target.reflect_amplitude * gain;
            const double dphase = kTwoPi * f_if / profile.sample_rate_hz;
            for (int i = 0; i < n; ++i) frame[i] += amp * std::cos(phase0 + dphase * i);
        }
        for (const auto& c : scene.clutter) {
            const double f_if = 2.0 * d.slope_hz_per_s * c.range_m / kSpeedOfLight;
            const double phase0 = 4.0 * kPi * profile.f_start_hz * c.range_m / kSpeedOfLight;
            const double dphase = kTwoPi * f_if / profile.sample_rate_hz;
            for (int i = 0; i < n; ++i) frame[i] += c.amplitude * std::cos(phase0 + dphase * i);
        }
        if (noise.dc_offset != 0.0)
            for (int i = 0; i < n; ++i) frame[i] += noise.dc_offset;
        if (noise.if_noise_sigma > 0.0) {
            GaussStream g(noise.seed, static_cast<std::uint64_t>(m));
            for (int i = 0; i < n; ++i) frame[i] += noise.if_noise_sigma * g.next();
        }
    };

    if (parallel) {
#pragma omp parallel for schedule(static)
        for (int m = 0; m < chirps; ++m) synth_chirp(m);
    } else {
        for (int m = 0; m < chirps; ++m) synth_chirp(m);
    }

    if (out_of_range) throw OutOfRange("target range left (0, max_range) during motion");
    return rec;
}

}  // namespace

double if_tone(const RadarProfile& profile, double range_m) {
    const ChirpDerived d = derive_chirp_params(profile);
    if (range_m < 0.0 || range_m > d.max_range_m)
        throw OutOfRange("if_tone: range outside [0, max_range]");
    return 2.0 * d.slope_hz_per_s * range_m / kSpeedOfLight;
}

double angle_gain(PhantomKind kind, double incidence_angle_deg) {
    if (incidence_angle_deg < 0.0 || incidence_angle_deg >= 90.0)
        throw OutOfRange("incidence angle outside [0, 90)");
    const double c = std::cos(incidence_angle_deg * kPi / 180.0);
    // Metal keeps more of the return at grazing angles than gelatin.
    const double p = (kind == PhantomKind::Metal) ? 2.0 : 4.0;
    return std::pow(c, p);
}

ChirpRecording synthesize_recording(const RadarProfile& profile, const Scene& scene,
                                    const NoiseModel& noise, double duration_s, bool parallel) {
    return synthesize_impl(profile, scene, noise, duration_s, parallel);
}

ChirpRecording synthesize_recording_serial(const RadarProfile& profile, const Scene& scene,
                                           const NoiseModel& noise, double duration_s) {
    return synthesize_impl(profile, scene, noise, duration_s, false);
}

NoiseModel noise_calibrate(const RadarProfile& profile, const Scene& scene,
                           double target_baseline_m) {
    if (target_baseline_m <= 0.0) throw Unreachable("target baseline must be positive");

    constexpr std::uint64_t kCalibrationSeed = 0x5EEDCAB1Eull;
    auto measure = [&](double sigma) {
        NoiseModel nm{sigma, 0.0, kCalibrationSeed};
        return bench::baseline_noise_experiment(profile, scene.phantom,
                                                scene.incidence_angle_deg, nm);
    };

    const double floor = measure(0.0);
    if (target_baseline_m <= 2.0 * floor)
        throw Unreachable("target baseline below the numeric floor of the pipeline");

    double lo = 0.0, hi = 1.0;
    int guard = 0;
    while (measure(hi) < target_baseline_m) {
        hi *= 2.0;
        if (++guard > 40) throw Unreachable("target baseline not reachable by noise model");
    }
    for (int it = 0; it < 40; ++it) {
        const double mid = 0.5 * (lo + hi);
        (measure(mid) < target_baseline_m ? lo : hi) = mid;
    }
    const double sigma = 0.5 * (lo + hi);
    const double achieved = measure(sigma);
    if (achieved < 0.8 * target_baseline_m || achieved > 1.2 * target_baseline_m)
        throw Unreachable("calibration landed outside 20% of the target baseline");
    return NoiseModel{sigma, 0.0, kCalibrationSeed};
}

}  // namespace fmcw
