#pragma once

#include <stdexcept>
#include <string>

namespace facelat {

/// Base class of every error raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define FACELAT_DEFINE_ERROR(Name)                                   \
    struct Name : Error {                                            \
        explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
    }

FACELAT_DEFINE_ERROR(NotALattice);
FACELAT_DEFINE_ERROR(DuplicateElement);
FACELAT_DEFINE_ERROR(DimensionMismatch);
FACELAT_DEFINE_ERROR(ZeroDirection);
FACELAT_DEFINE_ERROR(NotAFace);
FACELAT_DEFINE_ERROR(OriginNotInterior);
FACELAT_DEFINE_ERROR(PointNotInBody);
FACELAT_DEFINE_ERROR(HypothesisFailed);
FACELAT_DEFINE_ERROR(UndefinedTouchingCone);
FACELAT_DEFINE_ERROR(UnsupportedArcCenter);
FACELAT_DEFINE_ERROR(InvalidBody);
FACELAT_DEFINE_ERROR(ParseError);
FACELAT_DEFINE_ERROR(UnsupportedForBodyType);
FACELAT_DEFINE_ERROR(BadAngle);
FACELAT_DEFINE_ERROR(InvalidMatrix);
FACELAT_DEFINE_ERROR(EigenFailure);

#undef FACELAT_DEFINE_ERROR

}  // namespace facelat
