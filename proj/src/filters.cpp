#include "fmcw/filters.hpp"

#include <algorithm>
#include <cmath>

#include "fmcw/errors.hpp"

namespace fmcw {

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;

using cplx = std::complex<double>;

Biquad from_poles_zeros(cplx pole, double zero1, double zero2) {
    Biquad s;
    s.b0 = 1.0;
    s.b1 = -(zero1 + zero2);
    s.b2 = zero1 * zero2;
    s.a1 = -2.0 * pole.real();
    s.a2 = std::norm(pole);
    return s;
}

cplx bilinear(cplx s, double fs) { return (2.0 * fs + s) / (2.0 * fs - s); }

void normalize_gain(SosCascade& sos, double freq_hz, double fs_hz) {
    cplx h{1.0, 0.0};
    const cplx z = std::polar(1.0, 2.0 * kPi * freq_hz / fs_hz);
    for (const auto& s : sos) {
        h *= (s.b0 * z * z + s.b1 * z + s.b2) / (z * z + s.a1 * z + s.a2);
    }
    const double k = std::pow(1.0 / std::abs(h), 1.0 / sos.size());
    for (auto& s : sos) {
        s.b0 *= k;
        s.b1 *= k;
        s.b2 *= k;
    }
}

/// Unit-circle prototype poles with positive imaginary part, order even.
std::vector<cplx> butter_proto_upper(int order) {
    std::vector<cplx> poles;
    for (int k = 0; k < order / 2; ++k) {
        const double theta = kPi * (2.0 * k + order + 1.0) / (2.0 * order);
        poles.push_back(std::polar(1.0, theta));
    }
    return poles;
}

}  // namespace

SosCascade butter_bandpass(int order, double low_hz, double high_hz, double fs_hz) {
    if (order < 2 || order % 2 != 0) throw BandInvalid("band-pass order must be even and >= 2");
    if (!(0.0 < low_hz && low_hz < high_hz && high_hz < fs_hz / 2.0))
        throw BandInvalid("band edges must satisfy 0 < low < high < fs/2");

    const int proto_order = order / 2;
    if (proto_order % 2 != 0) throw BandInvalid("band-pass order must be a multiple of 4");

    const double w1 = 2.0 * fs_hz * std::tan(kPi * low_hz / fs_hz);
    const double w2 = 2.0 * fs_hz * std::tan(kPi * high_hz / fs_hz);
    const double bw = w2 - w1;
    const double w0 = std::sqrt(w1 * w2);

    SosCascade sos;
    // upper-half prototype poles suffice: each transformed pole pairs with
    // the conjugate contributed by the mirrored prototype pole
    for (const auto& p : butter_proto_upper(proto_order)) {
        const cplx q = 0.5 * bw * p;
        const cplx root = std::sqrt(q * q - w0 * w0);
        for (const cplx s : {q + root, q - root}) {
            // each digital pole pairs with its own conjugate
            sos.push_back(from_poles_zeros(bilinear(s, fs_hz), 1.0, -1.0));
        }
    }

    const double f0_digital = fs_hz / kPi * std::atan(w0 / (2.0 * fs_hz));
    normalize_gain(sos, f0_digital, fs_hz);
    return sos;
}

SosCascade butter_lowpass(int order, double cut_hz, double fs_hz) {
    if (order < 2 || order % 2 != 0) throw BandInvalid("low-pass order must be even and >= 2");
    if (!(0.0 < cut_hz && cut_hz < fs_hz / 2.0)) throw BandInvalid("cutoff must be in (0, fs/2)");

    const double wc = 2.0 * fs_hz * std::tan(kPi * cut_hz / fs_hz);
    SosCascade sos;
    for (const auto& p : butter_proto_upper(order)) {
        sos.push_back(from_poles_zeros(bilinear(wc * p, fs_hz), -1.0, -1.0));
    }
    normalize_gain(sos, 0.0, fs_hz);
    return sos;
}

std::complex<double> sos_response(const SosCascade& sos, double freq_hz, double fs_hz) {
    cplx h{1.0, 0.0};
    const cplx z = std::polar(1.0, 2.0 * kPi * freq_hz / fs_hz);
    for (const auto& s : sos)
        h *= (s.b0 * z * z + s.b1 * z + s.b2) / (z * z + s.a1 * z + s.a2);
    return h;
}

namespace {

/// Steady-state DF2T state for a unit-step input of the given level.
struct SectionState {
    double z1 = 0, z2 = 0;
};

double section_dc_gain(const Biquad& s) {
    return (s.b0 + s.b1 + s.b2) / (1.0 + s.a1 + s.a2);
}

std::vector<SectionState> steady_state(const SosCascade& sos, double level) {
    std::vector<SectionState> zi(sos.size());
    double x = level;
    for (std::size_t i = 0; i < sos.size(); ++i) {
        const double y = section_dc_gain(sos[i]) * x;
        zi[i].z1 = y - sos[i].b0 * x;
        zi[i].z2 = sos[i].b2 * x - sos[i].a2 * y;
        x = y;
    }
    return zi;
}

void sosfilt_inplace(const SosCascade& sos, std::vector<double>& x,
                     std::vector<SectionState> zi) {
    for (std::size_t s = 0; s < sos.size(); ++s) {
        const Biquad& q = sos[s];
        double z1 = zi[s].z1, z2 = zi[s].z2;
        for (double& v : x) {
            const double in = v;
            const double out = q.b0 * in + z1;
            z1 = q.b1 * in - q.a1 * out + z2;
            z2 = q.b2 * in - q.a2 * out;
            v = out;
        }
    }
}

}  // namespace

std::vector<double> filtfilt(const SosCascade& sos, std::span<const double> x) {
    if (sos.empty()) return {x.begin(), x.end()};
    const std::size_t n = x.size();
    if (n < 2) return {x.begin(), x.end()};

    const std::size_t padlen = std::min(n - 1, std::size_t{1000});
    std::vector<double> ext;
    ext.reserve(n + 2 * padlen);
    for (std::size_t i = padlen; i >= 1; --i) ext.push_back(2.0 * x[0] - x[i]);
    ext.insert(ext.end(), x.begin(), x.end());
    for (std::size_t i = 2; i <= padlen + 1; ++i) ext.push_back(2.0 * x[n - 1] - x[n - 1 - i + 1]);

    sosfilt_inplace(sos, ext, steady_state(sos, ext.front()));
    std::reverse(ext.begin(), ext.end());
    sosfilt_inplace(sos, ext, steady_state(sos, ext.front()));
    std::reverse(ext.begin(), ext.end());

    return {ext.begin() + padlen, ext.begin() + padlen + n};
}

}  // namespace fmcw
