#include "gravity/physics.hpp"

namespace gravity {

const char* error_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::NoFlightDetected: return "NoFlightDetected";
        case ErrorCode::NoValidSamples: return "NoValidSamples";
        case ErrorCode::SegmentTooShort: return "SegmentTooShort";
        case ErrorCode::DegenerateDesign: return "DegenerateDesign";
        case ErrorCode::NoConsensus: return "NoConsensus";
        case ErrorCode::NonPositiveAcceleration: return "NonPositiveAcceleration";
        case ErrorCode::ZeroDuration: return "ZeroDuration";
        case ErrorCode::EmptyTrajectory: return "EmptyTrajectory";
        case ErrorCode::NoDetections: return "NoDetections";
        case ErrorCode::EmptyInput: return "EmptyInput";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::BehindCamera: return "BehindCamera";
    }
    return "UnknownError";
}

Eigen::Vector3d free_fall_position(const FreeFallParams& params, double t) {
    return 0.5 * params.g_vec * t * t + params.v0 * t + params.p0;
}

ConversionFactor conversion_factor(double a_px, double g) {
    if (!(a_px > 0.0)) {
        throw Error(ErrorCode::NonPositiveAcceleration,
                    "no measurable gravity-induced image acceleration (a_px = " +
                        std::to_string(a_px) + " px/s^2)");
    }
    return ConversionFactor{g / a_px, a_px, g};
}

double pixel_to_metric_height(const HeightMeasurement& m, const ConversionFactor& q) {
    double h = m.h_px * q.q;
    if (m.kind == HeightKind::NoseAnklePx) {
        h *= m.correction_c;
    }
    return h;
}

}  // namespace gravity
