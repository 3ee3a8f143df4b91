#include "gravity/estimate.hpp"

#include <algorithm>
#include <cmath>

namespace gravity {

double median(std::vector<double> values) {
    if (values.empty()) {
        throw Error(ErrorCode::EmptyInput, "median of empty set");
    }
    std::sort(values.begin(), values.end());
    const std::size_t k = values.size();
    return k % 2 == 1 ? values[k / 2] : 0.5 * (values[k / 2 - 1] + values[k / 2]);
}

double measure_standing_height_px(const PoseSequence& seq, int n_frames, double conf_threshold) {
    if (seq.joint_count < kRightAnkleJoint + 1) {
        throw Error(ErrorCode::InvalidArgument, "sequence lacks nose/ankle joints");
    }
    const int n = std::min<int>(n_frames, static_cast<int>(seq.frames.size()));
    std::vector<double> values;
    for (int i = 0; i < n; ++i) {
        const auto& frame = seq.frames[i];
        if (!frame_passes_confidence(frame, conf_threshold)) continue;
        const double ankle_y =
            0.5 * (frame.joints[kLeftAnkleJoint].y + frame.joints[kRightAnkleJoint].y);
        values.push_back(frame.joints[kNoseJoint].y - ankle_y);
    }
    if (values.empty()) {
        throw Error(ErrorCode::NoValidSamples, "no valid frames in the standing window");
    }
    return std::abs(median(std::move(values)));
}

namespace {

struct SegmentAcceleration {
    double a_px = 0.0;  // positive downward
    int outliers = 0;
    std::vector<bool> inlier_mask;  // over the segment's valid samples
};

SegmentAcceleration segment_acceleration(const Trajectory2D& traj, const FlightSegment& segment,
                                         const EstimateConfig& config) {
    SegmentAcceleration out;
    if (config.method == AccelMethod::DistanceBased) {
        out.a_px = acceleration_distance_based(traj, segment);
        return out;
    }
    const std::vector<TimedValue> values = segment_values_y(traj, segment);
    const ParabolaFit fit = config.use_ransac ? fit_parabola_ransac(values, config.ransac)
                                              : fit_parabola_lsq(values);
    // Up-positive axis: a gravity parabola has negative curvature.
    out.a_px = -fit.a_px();
    out.inlier_mask = fit.inlier_mask;
    out.outliers = static_cast<int>(values.size()) - fit.inlier_count();
    return out;
}

PoseSequence rotate_pose(const PoseSequence& seq, double angle) {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    PoseSequence out = seq;
    for (auto& frame : out.frames) {
        for (auto& joint : frame.joints) {
            joint = {c * joint.x - s * joint.y, s * joint.x + c * joint.y};
        }
    }
    return out;
}

}  // namespace

HeightEstimate estimate_height(const PoseSequence& seq, const MassTable& masses,
                               const EstimateConfig& config) {
    HeightEstimate result;
    result.method = config.method;

    PoseSequence pose = seq;
    Trajectory2D traj = com_trajectory(pose, masses, config.conf_threshold);
    for (const auto& sample : traj.samples) {
        if (!sample.valid) ++result.excluded_frames;
    }

    if (config.rotate) {
        // Provisional lateral segment around the highest peak, used only to
        // recover the acceleration direction.
        const std::vector<int> peaks = find_peaks(traj, config.peak_half_window);
        if (peaks.empty()) {
            throw Error(ErrorCode::NoFlightDetected, "no trajectory peaks found");
        }
        int top = peaks.front();
        for (int m : peaks) {
            if (traj.samples[m].point.y > traj.samples[top].point.y) top = m;
        }
        const FlightSegment provisional = select_flight_segment_lateral(traj, top);
        result.rotation_angle = max_acceleration_rotation_angle(traj, provisional);
        traj = rotate_trajectory(traj, result.rotation_angle);
        pose = rotate_pose(pose, result.rotation_angle);
    }

    result.standing_h_px =
        measure_standing_height_px(pose, config.standing_frames, config.conf_threshold);
    const double floor_y = estimate_floor(traj, config.floor_frames);
    const std::vector<int> peaks = find_peaks(traj, config.peak_half_window);

    double max_elevation = 0.0;
    for (int peak : peaks) {
        max_elevation = std::max(max_elevation, traj.samples[peak].point.y - floor_y);
    }

    int next_id = 0;
    int last_end = -1;
    for (int peak : peaks) {
        if (peak <= last_end) continue;  // peak sits inside the previous segment
        const double elevation = traj.samples[peak].point.y - floor_y;
        if (!(elevation >= config.min_peak_elevation * max_elevation)) continue;
        FlightSegment segment;
        try {
            if (config.segment_mode == SegmentMode::OnSpot) {
                if (!(traj.samples[peak].point.y > floor_y)) continue;
                segment = select_flight_segment(traj, peak, floor_y, config.fraction);
            } else {
                segment = select_flight_segment_lateral(traj, peak);
            }
        } catch (const Error&) {
            continue;  // unusable jump candidate
        }
        if (segment.length() < config.min_segment_frames) continue;
        last_end = segment.end;

        try {
            const SegmentAcceleration accel = segment_acceleration(traj, segment, config);
            const ConversionFactor q = conversion_factor(accel.a_px, config.g);
            SegmentEstimate est;
            est.id = next_id;
            est.start = segment.start;
            est.end = segment.end;
            est.peak = segment.peak;
            est.a_px = accel.a_px;
            est.q = q.q;
            est.h_px = result.standing_h_px;
            est.h = pixel_to_metric_height(
                {result.standing_h_px, HeightKind::NoseAnklePx, config.correction_c}, q);
            est.ransac_outliers = accel.outliers;
            result.per_segment.push_back(est);

            std::vector<bool> mask(traj.size(), false);
            std::size_t vi = 0;
            for (int i = segment.start; i <= segment.end; ++i) {
                if (!traj.samples[i].valid) continue;
                mask[static_cast<std::size_t>(i)] =
                    accel.inlier_mask.empty() || accel.inlier_mask[vi];
                ++vi;
            }
            result.inlier_masks.push_back(std::move(mask));
            ++next_id;
        } catch (const Error& e) {
            result.warnings.push_back("segment at peak " + std::to_string(peak) +
                                      " skipped: " + std::string(e.name()));
        }
    }

    if (result.per_segment.empty()) {
        throw Error(ErrorCode::NoFlightDetected, "no usable flight segment detected");
    }
    std::vector<double> heights;
    heights.reserve(result.per_segment.size());
    for (const auto& est : result.per_segment) heights.push_back(est.h);
    result.aggregate_h = median(std::move(heights));
    result.trajectory = std::move(traj);
    return result;
}

ErrorReport compute_error_report(const std::vector<std::pair<double, double>>& pred_true) {
    if (pred_true.empty()) {
        throw Error(ErrorCode::EmptyInput, "no predictions to evaluate");
    }
    const double n = static_cast<double>(pred_true.size());
    ErrorReport report;
    std::vector<double> errors, abs_errors;
    for (const auto& [pred, truth] : pred_true) {
        const double e = pred - truth;
        errors.push_back(e);
        abs_errors.push_back(std::abs(e));
        report.rel_me += 100.0 * e / truth;
        report.rel_mae += 100.0 * std::abs(e) / truth;
    }
    for (double e : errors) report.me += e;
    for (double e : abs_errors) report.mae += e;
    report.me /= n;
    report.mae /= n;
    report.rel_me /= n;
    report.rel_mae /= n;
    if (pred_true.size() > 1) {
        double ss_signed = 0.0, ss_abs = 0.0;
        for (std::size_t i = 0; i < errors.size(); ++i) {
            ss_signed += (errors[i] - report.me) * (errors[i] - report.me);
            ss_abs += (abs_errors[i] - report.mae) * (abs_errors[i] - report.mae);
        }
        report.sd_signed = std::sqrt(ss_signed / (n - 1.0));
        report.sd_abs = std::sqrt(ss_abs / (n - 1.0));
    }
    return report;
}

RigidSizeEstimate estimate_rigid_size(const Trajectory2D& center_traj, double size_px,
                                      const EstimateConfig& config) {
    RigidSizeEstimate result;
    const std::vector<int> peaks = find_peaks(center_traj, config.peak_half_window);
    int next_id = 0;
    int last_end = -1;
    for (int peak : peaks) {
        if (peak <= last_end) continue;
        FlightSegment segment;
        try {
            segment = select_flight_segment_lateral(center_traj, peak);
        } catch (const Error&) {
            continue;
        }
        if (segment.length() < config.min_segment_frames) continue;
        last_end = segment.end;
        try {
            const SegmentAcceleration accel = segment_acceleration(center_traj, segment, config);
            const ConversionFactor q = conversion_factor(accel.a_px, config.g);
            SegmentEstimate est;
            est.id = next_id++;
            est.start = segment.start;
            est.end = segment.end;
            est.peak = segment.peak;
            est.a_px = accel.a_px;
            est.q = q.q;
            est.h_px = size_px;
            est.h = size_px * q.q;  // rigid objects take no correction factor
            est.ransac_outliers = accel.outliers;
            result.per_segment.push_back(est);
        } catch (const Error&) {
            continue;
        }
    }
    if (result.per_segment.empty()) {
        throw Error(ErrorCode::NoFlightDetected, "no free-fall arc detected");
    }
    std::vector<double> sizes;
    for (const auto& est : result.per_segment) sizes.push_back(est.h);
    result.size = median(std::move(sizes));
    return result;
}

}  // namespace gravity
