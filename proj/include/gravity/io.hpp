#ifndef GRAVITY_IO_HPP
#define GRAVITY_IO_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "gravity/com.hpp"
#include "gravity/estimate.hpp"
#include "gravity/sim.hpp"

namespace gravity {

// Keypoint file, line-delimited text ("gravity-keypoints 1"):
//   gravity-keypoints 1
//   fps <float>
//   image_height <float>
//   frame <index>
//   person <J> x y s  x y s ... (J triples, image coordinates, y down)
// Multiple person lines per frame are allowed; ingestion keeps the largest
// person and flips rows to up-positive via y' = image_height - y.

struct KeypointFile {
    PoseSequence sequence;   // up-positive, primary person per frame
    double image_height = 0.0;
};

KeypointFile read_keypoints(const std::string& path);
KeypointFile parse_keypoints(std::istream& in, const std::string& origin);

void write_keypoints(std::ostream& out, const PoseSequence& seq, double image_height);
void write_keypoints(const std::string& path, const PoseSequence& seq, double image_height);

// Truth sidecar ("gravity-truth 1"): q_true, h_true, apex times, and a 0/1
// contact flag per frame.
void write_truth(const std::string& path, const SceneTruth& truth);
SceneTruth read_truth(const std::string& path);

MassTable read_mass_table(const std::string& path);
void write_mass_table(const std::string& path, const MassTable& table);

std::string format_report(const HeightEstimate& estimate, const EstimateConfig& config);

/// Per-sample plot data: t,x,y,valid,inlier (inlier refers to segment fits).
std::string format_plot_csv(const Trajectory2D& traj, const std::vector<SegmentEstimate>& segments,
                            const std::vector<std::vector<bool>>& inlier_masks);

}  // namespace gravity

#endif
