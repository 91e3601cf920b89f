#pragma once

#include <stdexcept>
#include <string>

namespace canbase {

inline constexpr const char* kVersion = "0.1.0";

// Base class for every failure the library can signal.  Callers that only
// care about "something went wrong" catch this; tests catch the precise type.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ring
struct SkewViolation : Error { using Error::Error; };
struct ConstantTermObstruction : Error { using Error::Error; };

// barsolve
struct NotInvolution : Error { using Error::Error; };
struct Obstruction : Error { using Error::Error; };
struct NotInSpan : Error { using Error::Error; };
struct NonLaurentCoefficient : Error { using Error::Error; };

// weyl
struct NotSimpleConjugate : Error { using Error::Error; };
struct BadCosetData : Error { using Error::Error; };

// tensor
struct NoSolution : Error { using Error::Error; };
struct NonUniqueSolution : Error { using Error::Error; };
struct NoIntertwiner : Error { using Error::Error; };
struct NonUniqueIntertwiner : Error { using Error::Error; };
struct RankTooSmall : Error { using Error::Error; };
struct SpanMismatch : Error { using Error::Error; };

// cli / configuration
struct RankLimit : Error { using Error::Error; };
struct InvalidParabolic : Error { using Error::Error; };
struct SizeLimit : Error { using Error::Error; };

struct InternalError : Error { using Error::Error; };

}  // namespace canbase
