#ifndef GRAVITY_ERRORS_HPP
#define GRAVITY_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gravity {

enum class ErrorCode {
    ParseError = 2,
    NoFlightDetected = 3,
    NoValidSamples = 4,
    SegmentTooShort = 5,
    DegenerateDesign = 6,
    NoConsensus = 7,
    NonPositiveAcceleration = 8,
    ZeroDuration = 9,
    EmptyTrajectory = 10,
    NoDetections = 11,
    EmptyInput = 12,
    InvalidArgument = 13,
    BehindCamera = 14,
};

const char* error_name(ErrorCode code);

/// All library failures surface as this exception; the code maps 1:1 to a
/// CLI exit code (documented in the README).
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const { return code_; }
    const char* name() const { return error_name(code_); }

private:
    ErrorCode code_;
};

}  // namespace gravity

#endif
