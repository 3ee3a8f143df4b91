#ifndef GRAVITY_ESTIMATE_HPP
#define GRAVITY_ESTIMATE_HPP

#include <string>
#include <utility>
#include <vector>

#include "gravity/com.hpp"
#include "gravity/events.hpp"
#include "gravity/fit.hpp"
#include "gravity/physics.hpp"

namespace gravity {

enum class AccelMethod { CurveFit, DistanceBased };
enum class SegmentMode { OnSpot, Lateral };

inline constexpr double kPopulationMeanHeightCm = 168.9;
inline constexpr double kNoseAnkleCorrectionSd = 0.03;

struct EstimateConfig {
    AccelMethod method = AccelMethod::CurveFit;
    SegmentMode segment_mode = SegmentMode::OnSpot;
    bool use_ransac = false;
    RansacParams ransac;
    double conf_threshold = kDefaultConfThreshold;
    double fraction = kDefaultFlightFraction;
    double correction_c = kDefaultNoseAnkleCorrection;
    double g = kStandardGravity;
    int floor_frames = kDefaultFloorFrames;
    int standing_frames = kDefaultFloorFrames;
    int peak_half_window = kDefaultPeakHalfWindow;
    int min_segment_frames = 5;  // spurious micro-peaks yield shorter segments
    // Peaks rising above the floor by less than this fraction of the highest
    // peak's elevation are treated as detection noise, not jumps.
    double min_peak_elevation = 0.5;
    bool rotate = false;  // pre-rotate into the direction of maximal acceleration
};

struct SegmentEstimate {
    int id = 0;
    int start = 0;
    int end = 0;
    int peak = 0;
    double a_px = 0.0;  // px/s^2, positive downward
    double q = 0.0;     // m/px
    double h_px = 0.0;  // px, nose-to-ankle standing measurement
    double h = 0.0;     // m
    int ransac_outliers = 0;
};

struct HeightEstimate {
    std::vector<SegmentEstimate> per_segment;
    double aggregate_h = 0.0;  // m, median over segments
    double standing_h_px = 0.0;
    AccelMethod method = AccelMethod::CurveFit;
    double rotation_angle = 0.0;  // rad, applied when rotation is enabled
    int excluded_frames = 0;
    std::vector<std::string> warnings;
    Trajectory2D trajectory;  // COM trajectory the segments index into
    std::vector<std::vector<bool>> inlier_masks;  // per segment, over trajectory indices
};

/// Median vertical nose-to-ankle extent over the valid frames among the
/// first n_frames (ankle = mean of both ankles).
double measure_standing_height_px(const PoseSequence& seq, int n_frames = kDefaultFloorFrames,
                                  double conf_threshold = kDefaultConfThreshold);

HeightEstimate estimate_height(const PoseSequence& seq, const MassTable& masses,
                               const EstimateConfig& config);

struct ErrorReport {
    double me = 0.0;       // mean signed error
    double mae = 0.0;      // mean absolute error
    double sd_signed = 0.0;
    double sd_abs = 0.0;
    double rel_me = 0.0;   // %, normalized by the true values
    double rel_mae = 0.0;  // %
};

/// Sample standard deviations (n-1), matching the +-STD convention used in
/// the report output.
ErrorReport compute_error_report(const std::vector<std::pair<double, double>>& pred_true);

struct RigidSizeEstimate {
    std::vector<SegmentEstimate> per_segment;  // h fields hold per-segment size
    double size = 0.0;  // m, median over segments
};

/// Same q pipeline on an object-center trajectory; bounce arcs are segmented
/// with the lateral rule and no correction factor is applied.
RigidSizeEstimate estimate_rigid_size(const Trajectory2D& center_traj, double size_px,
                                      const EstimateConfig& config);

double median(std::vector<double> values);

}  // namespace gravity

#endif
