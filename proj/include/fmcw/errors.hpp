#pragma once

#include <stdexcept>
#include <string>

namespace fmcw {

/// Base for all toolkit errors; CLI maps these to exit code 2.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidProfile : Error { using Error::Error; };
struct OutOfRange : Error { using Error::Error; };
struct AliasedMotion : Error { using Error::Error; };
struct EmptyTrace : Error { using Error::Error; };
struct Unreachable : Error { using Error::Error; };

struct TooFewChirps : Error { using Error::Error; };
struct ZeroMagnitude : Error { using Error::Error; };

struct BandInvalid : Error { using Error::Error; };
struct NoPeak : Error { using Error::Error; };
struct TraceTooShort : Error { using Error::Error; };
struct LengthMismatch : Error { using Error::Error; };

struct BadMagic : Error { using Error::Error; };
struct VersionUnsupported : Error { using Error::Error; };
struct TruncatedPayload : Error { using Error::Error; };

struct ParseError : Error { using Error::Error; };
struct UnknownKey : Error { using Error::Error; };
struct UnitViolation : Error { using Error::Error; };

}  // namespace fmcw
