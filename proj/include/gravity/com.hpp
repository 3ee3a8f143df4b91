#ifndef GRAVITY_COM_HPP
#define GRAVITY_COM_HPP

#include <string>
#include <vector>

#include "gravity/errors.hpp"

namespace gravity {

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

inline constexpr int kJointCount = 17;

// COCO keypoint order: 0 nose, 1/2 eyes, 3/4 ears, 5/6 shoulders,
// 7/8 elbows, 9/10 wrists, 11/12 hips, 13/14 knees, 15/16 ankles.
inline constexpr int kNoseJoint = 0;
inline constexpr int kLeftAnkleJoint = 15;
inline constexpr int kRightAnkleJoint = 16;

struct KeypointFrame {
    std::vector<Point2> joints;   // size J, pixels, up-positive y
    std::vector<double> scores;   // size J, nonnegative
};

struct PoseSequence {
    std::vector<KeypointFrame> frames;
    double fps = 0.0;
    int joint_count = kJointCount;
};

/// Per-joint body mass fractions; normalized to sum 1 on construction.
class MassTable {
public:
    explicit MassTable(std::vector<double> weights);

    /// Clauser-style segment masses distributed onto the 17 COCO keypoints.
    static MassTable coco17_default();
    static MassTable load(const std::string& path);

    const std::vector<double>& weights() const { return weights_; }
    int size() const { return static_cast<int>(weights_.size()); }

private:
    std::vector<double> weights_;
};

struct TrajectorySample {
    double t = 0.0;       // seconds
    Point2 point;         // pixels, up-positive y
    bool valid = false;
};

struct Trajectory2D {
    std::vector<TrajectorySample> samples;

    std::size_t size() const { return samples.size(); }
};

Point2 com_point(const KeypointFrame& frame, const MassTable& masses);

inline constexpr double kDefaultConfThreshold = 2.0;

/// A frame is usable when every joint is present (score > 0) and the mean
/// joint score reaches the threshold.
bool frame_passes_confidence(const KeypointFrame& frame, double conf_threshold);

/// One sample per frame at t = index/fps. A frame is invalid when any joint
/// is missing (score 0) or the mean joint score falls below the threshold.
/// Input joints are expected in up-positive pixel coordinates (ingestion
/// flips image rows; see io module).
Trajectory2D com_trajectory(const PoseSequence& seq, const MassTable& masses,
                            double conf_threshold = kDefaultConfThreshold);

/// Largest bounding-box area over joints with positive score; ties go to the
/// lowest person index.
const KeypointFrame& select_primary_person(const std::vector<KeypointFrame>& detections);

}  // namespace gravity

#endif
