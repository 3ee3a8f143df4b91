#ifndef GRAVITY_PHYSICS_HPP
#define GRAVITY_PHYSICS_HPP

#include <Eigen/Dense>

#include "gravity/errors.hpp"

namespace gravity {

inline constexpr double kStandardGravity = 9.81;  // m/s^2

/// Ballistic state: p(t) = 1/2 g t^2 + v0 t + p0.
struct FreeFallParams {
    Eigen::Vector3d p0 = Eigen::Vector3d::Zero();                 // m
    Eigen::Vector3d v0 = Eigen::Vector3d::Zero();                 // m/s
    Eigen::Vector3d g_vec{0.0, -kStandardGravity, 0.0};           // m/s^2
};

Eigen::Vector3d free_fall_position(const FreeFallParams& params, double t);

/// Meter-per-pixel scale recovered from the observed vertical image
/// acceleration. q is stored redundantly next to its inputs for reporting.
struct ConversionFactor {
    double q;     // m/px
    double a_px;  // px/s^2, vertical, positive toward the floor
    double g;     // m/s^2
};

ConversionFactor conversion_factor(double a_px, double g = kStandardGravity);

enum class HeightKind { TotalPx, NoseAnklePx };

inline constexpr double kDefaultNoseAnkleCorrection = 1.17;

struct HeightMeasurement {
    double h_px;  // px, vertical image extent
    HeightKind kind = HeightKind::TotalPx;
    double correction_c = kDefaultNoseAnkleCorrection;  // applied for NoseAnklePx only
};

double pixel_to_metric_height(const HeightMeasurement& m, const ConversionFactor& q);

}  // namespace gravity

#endif
