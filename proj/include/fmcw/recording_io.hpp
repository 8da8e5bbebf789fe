#pragma once

#include <string>

#include "fmcw/synth.hpp"

namespace fmcw {

/// Fixed little-endian layout, magic "FMCWREC1", version 1.
/// Header: f_start/f_end/Fc (u64 Hz), n/M (u32), chirp_interval (f64 s),
/// 32-byte scene digest. Payload: M*n float32 IF samples, chirp-major.
void write_recording(const ChirpRecording& recording, const std::string& path);

/// Throws BadMagic, VersionUnsupported or TruncatedPayload.
ChirpRecording read_recording(const std::string& path);

}  // namespace fmcw
