#include "fmcw/recording_io.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

#include "fmcw/errors.hpp"

namespace fmcw {

namespace {

constexpr char kMagic[8] = {'F', 'M', 'C', 'W', 'R', 'E', 'C', '1'};
constexpr std::uint32_t kVersion = 1;
constexpr std::size_t kDigestBytes = 32;

template <typename T>
void put_le(std::string& out, T value) {
    for (std::size_t i = 0; i < sizeof(T); ++i)
        out.push_back(static_cast<char>((value >> (8 * i)) & 0xFF));
}

void put_f64(std::string& out, double value) {
    std::uint64_t bits;
    std::memcpy(&bits, &value, sizeof bits);
    put_le(out, bits);
}

void put_f32(std::string& out, float value) {
    std::uint32_t bits;
    std::memcpy(&bits, &value, sizeof bits);
    put_le(out, bits);
}

class Cursor {
  public:
    Cursor(const std::string& data) : data_(data) {}

    template <typename T>
    T get_le() {
        if (pos_ + sizeof(T) > data_.size()) throw TruncatedPayload("file ends inside header");
        T value = 0;
        for (std::size_t i = 0; i < sizeof(T); ++i)
            value |= static_cast<T>(static_cast<unsigned char>(data_[pos_ + i])) << (8 * i);
        pos_ += sizeof(T);
        return value;
    }

    double get_f64() {
        const auto bits = get_le<std::uint64_t>();
        double value;
        std::memcpy(&value, &bits, sizeof value);
        return value;
    }

    float get_f32() {
        const auto bits = get_le<std::uint32_t>();
        float value;
        std::memcpy(&value, &bits, sizeof value);
        return value;
    }

    std::size_t pos() const { return pos_; }
    std::size_t remaining() const { return data_.size() - pos_; }

  private:
    const std::string& data_;
    std::size_t pos_ = 0;
};

std::array<unsigned char, kDigestBytes> digest_bytes(const std::string& hex) {
    std::array<unsigned char, kDigestBytes> bytes{};
    if (hex.size() != 2 * kDigestBytes) return bytes;  // zero digest for absent/foreign values
    auto nibble = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        return 0;
    };
    for (std::size_t i = 0; i < kDigestBytes; ++i)
        bytes[i] = static_cast<unsigned char>(nibble(hex[2 * i]) << 4 | nibble(hex[2 * i + 1]));
    return bytes;
}

std::string digest_hex(const std::array<unsigned char, kDigestBytes>& bytes) {
    static const char* kHex = "0123456789abcdef";
    std::string hex;
    hex.reserve(2 * kDigestBytes);
    for (unsigned char b : bytes) {
        hex.push_back(kHex[b >> 4]);
        hex.push_back(kHex[b & 0xF]);
    }
    return hex;
}

ProfileId infer_id(const RadarProfile& profile) {
    for (ProfileId id : {ProfileId::BGT24, ProfileId::BGT60, ProfileId::BGT120}) {
        const RadarProfile built_in = make_profile(id);
        if (profile.f_start_hz == built_in.f_start_hz && profile.f_end_hz == built_in.f_end_hz &&
            profile.sample_rate_hz == built_in.sample_rate_hz &&
            profile.samples_per_chirp == built_in.samples_per_chirp &&
            profile.chirp_interval_s == built_in.chirp_interval_s)
            return id;
    }
    return ProfileId::Custom;
}

}  // namespace

void write_recording(const ChirpRecording& recording, const std::string& path) {
    std::string buffer;
    buffer.reserve(8 + 4 + 3 * 8 + 2 * 4 + 8 + kDigestBytes + 4 * recording.samples.size());
    buffer.append(kMagic, sizeof kMagic);
    put_le(buffer, kVersion);
    put_le(buffer, static_cast<std::uint64_t>(std::llround(recording.profile.f_start_hz)));
    put_le(buffer, static_cast<std::uint64_t>(std::llround(recording.profile.f_end_hz)));
    put_le(buffer, static_cast<std::uint64_t>(std::llround(recording.profile.sample_rate_hz)));
    put_le(buffer, static_cast<std::uint32_t>(recording.profile.samples_per_chirp));
    put_le(buffer, static_cast<std::uint32_t>(recording.chirps));
    put_f64(buffer, recording.profile.chirp_interval_s);
    const auto digest = digest_bytes(recording.scene_digest);
    buffer.append(reinterpret_cast<const char*>(digest.data()), digest.size());
    for (double s : recording.samples) put_f32(buffer, static_cast<float>(s));

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ParseError("cannot open for writing: " + path);
    out.write(buffer.data(), static_cast<std::streamsize>(buffer.size()));
    if (!out) throw ParseError("short write: " + path);
}

ChirpRecording read_recording(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open for reading: " + path);
    std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    if (data.size() < sizeof kMagic || std::memcmp(data.data(), kMagic, sizeof kMagic) != 0)
        throw BadMagic("not an FMCWREC1 file: " + path);

    Cursor cur(data);
    for (std::size_t i = 0; i < sizeof kMagic; ++i) cur.get_le<std::uint8_t>();
    const auto version = cur.get_le<std::uint32_t>();
    if (version != kVersion)
        throw VersionUnsupported("unsupported version " + std::to_string(version));

    ChirpRecording rec;
    rec.profile.f_start_hz = static_cast<double>(cur.get_le<std::uint64_t>());
    rec.profile.f_end_hz = static_cast<double>(cur.get_le<std::uint64_t>());
    rec.profile.sample_rate_hz = static_cast<double>(cur.get_le<std::uint64_t>());
    rec.profile.samples_per_chirp = static_cast<int>(cur.get_le<std::uint32_t>());
    rec.chirps = static_cast<int>(cur.get_le<std::uint32_t>());
    rec.profile.chirp_interval_s = cur.get_f64();
    rec.profile.id = infer_id(rec.profile);

    std::array<unsigned char, kDigestBytes> digest{};
    if (cur.remaining() < kDigestBytes) throw TruncatedPayload("file ends inside header");
    for (auto& b : digest) b = cur.get_le<std::uint8_t>();
    rec.scene_digest = digest_hex(digest);

    const std::size_t expected =
        static_cast<std::size_t>(rec.chirps) * static_cast<std::size_t>(rec.profile.samples_per_chirp);
    if (cur.remaining() < 4 * expected)
        throw TruncatedPayload("payload shorter than header claims");

    rec.samples.resize(expected);
    for (auto& s : rec.samples) s = static_cast<double>(cur.get_f32());
    return rec;
}

}  // namespace fmcw
