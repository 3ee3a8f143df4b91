#ifndef GRAVITY_FIT_HPP
#define GRAVITY_FIT_HPP

#include <cstdint>
#include <vector>

#include "gravity/com.hpp"
#include "gravity/events.hpp"

namespace gravity {

struct TimedValue {
    double t;  // seconds
    double y;  // pixels
};

struct ParabolaFit {
    // y(t) = c2 t^2 + c1 t + c0
    double c2 = 0.0;  // px/s^2
    double c1 = 0.0;  // px/s
    double c0 = 0.0;  // px
    std::vector<bool> inlier_mask;
    double rms_residual = 0.0;  // px, over inliers

    double a_px() const { return 2.0 * c2; }
    int inlier_count() const;
    double evaluate(double t) const { return (c2 * t + c1) * t + c0; }
};

/// Least squares on a time variable centered at the sample midpoint, mapped
/// back to raw seconds afterward. All samples are marked inliers.
ParabolaFit fit_parabola_lsq(const std::vector<TimedValue>& samples);

struct RansacParams {
    int iterations = 500;
    double inlier_tol = 3.0;  // px, vertical residual
    std::uint64_t seed = 0;
    bool parallel = true;
};

/// Minimal-sample (3 point) consensus search followed by a least-squares
/// refit over the winning inlier set. Deterministic for a fixed seed; the
/// serial and parallel paths produce identical results.
ParabolaFit fit_parabola_ransac(const std::vector<TimedValue>& samples,
                                const RansacParams& params);

/// Zero-velocity-at-apex baseline: a_px = 2 (y_m - y_e) / (t_e - t_m)^2,
/// positive for a downward fall in up-positive coordinates.
double acceleration_distance_based(const Trajectory2D& traj, const FlightSegment& segment);

/// Angle that rotates the segment's fitted 2D acceleration onto the negative
/// vertical axis.
double max_acceleration_rotation_angle(const Trajectory2D& traj, const FlightSegment& segment);

Trajectory2D rotate_trajectory(const Trajectory2D& traj, double angle);

Trajectory2D rotate_to_max_acceleration(const Trajectory2D& traj, const FlightSegment& segment);

std::vector<TimedValue> segment_values_y(const Trajectory2D& traj, const FlightSegment& segment);
std::vector<TimedValue> segment_values_x(const Trajectory2D& traj, const FlightSegment& segment);

}  // namespace gravity

#endif
