#include "gravity/com.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

namespace gravity {

MassTable::MassTable(std::vector<double> weights) : weights_(std::move(weights)) {
    if (weights_.empty()) {
        throw Error(ErrorCode::InvalidArgument, "mass table must not be empty");
    }
    double sum = 0.0;
    for (double w : weights_) {
        if (w < 0.0 || !std::isfinite(w)) {
            throw Error(ErrorCode::InvalidArgument, "mass fractions must be nonnegative");
        }
        sum += w;
    }
    if (sum <= 0.0) {
        throw Error(ErrorCode::InvalidArgument, "mass fractions must not all be zero");
    }
    for (double& w : weights_) {
        w /= sum;
    }
}

MassTable MassTable::coco17_default() {
    // Segment masses (head 7.3%, trunk 50.7%, upper arm 2.6%, forearm 1.6%,
    // hand 0.7%, thigh 10.3%, calf 4.3%, foot 1.5% per side) spread equally
    // over the adjacent COCO keypoints.
    return MassTable({
        1.46,           // nose
        1.46, 1.46,     // eyes
        1.46, 1.46,     // ears
        13.975, 13.975, // shoulders (trunk share + upper arm)
        2.1, 2.1,       // elbows (upper arm + forearm)
        1.5, 1.5,       // wrists (forearm + hand)
        17.825, 17.825, // hips (trunk share + thigh)
        7.3, 7.3,       // knees (thigh + calf)
        3.65, 3.65,     // ankles (calf + foot)
    });
}

MassTable MassTable::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::ParseError, "cannot open mass table: " + path);
    }
    std::vector<std::pair<int, double>> entries;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        int index;
        double weight;
        if (!(ls >> index >> weight) || index < 0) {
            throw Error(ErrorCode::ParseError,
                        path + ":" + std::to_string(line_no) + ": expected \"index weight\"");
        }
        entries.emplace_back(index, weight);
    }
    if (entries.empty()) {
        throw Error(ErrorCode::ParseError, "mass table is empty: " + path);
    }
    int max_index = 0;
    for (const auto& [index, weight] : entries) {
        max_index = std::max(max_index, index);
    }
    std::vector<double> weights(static_cast<std::size_t>(max_index) + 1, 0.0);
    for (const auto& [index, weight] : entries) {
        weights[static_cast<std::size_t>(index)] = weight;
    }
    return MassTable(std::move(weights));
}

Point2 com_point(const KeypointFrame& frame, const MassTable& masses) {
    const auto& w = masses.weights();
    if (frame.joints.size() != w.size()) {
        throw Error(ErrorCode::InvalidArgument, "mass table does not cover all joints");
    }
    Point2 com;
    for (std::size_t j = 0; j < w.size(); ++j) {
        com.x += w[j] * frame.joints[j].x;
        com.y += w[j] * frame.joints[j].y;
    }
    return com;
}

bool frame_passes_confidence(const KeypointFrame& frame, double conf_threshold) {
    if (frame.joints.empty() || frame.scores.size() != frame.joints.size()) {
        return false;
    }
    double sum = 0.0;
    for (double s : frame.scores) {
        if (s <= 0.0) return false;  // missing joint invalidates the frame
        sum += s;
    }
    return sum / static_cast<double>(frame.scores.size()) >= conf_threshold;
}

Trajectory2D com_trajectory(const PoseSequence& seq, const MassTable& masses,
                            double conf_threshold) {
    if (!(seq.fps > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "fps must be positive");
    }
    Trajectory2D traj;
    traj.samples.reserve(seq.frames.size());
    bool any_valid = false;
    for (std::size_t i = 0; i < seq.frames.size(); ++i) {
        TrajectorySample sample;
        sample.t = static_cast<double>(i) / seq.fps;
        if (frame_passes_confidence(seq.frames[i], conf_threshold)) {
            sample.point = com_point(seq.frames[i], masses);
            sample.valid = true;
            any_valid = true;
        }
        traj.samples.push_back(sample);
    }
    if (!any_valid) {
        throw Error(ErrorCode::EmptyTrajectory, "no frame passed the confidence rule");
    }
    return traj;
}

const KeypointFrame& select_primary_person(const std::vector<KeypointFrame>& detections) {
    if (detections.empty()) {
        throw Error(ErrorCode::NoDetections, "no person detections");
    }
    std::size_t best = 0;
    double best_area = -1.0;
    for (std::size_t i = 0; i < detections.size(); ++i) {
        const auto& person = detections[i];
        double min_x = std::numeric_limits<double>::infinity();
        double max_x = -min_x;
        double min_y = min_x;
        double max_y = -min_x;
        bool any = false;
        for (std::size_t j = 0; j < person.joints.size(); ++j) {
            if (j < person.scores.size() && person.scores[j] <= 0.0) continue;
            min_x = std::min(min_x, person.joints[j].x);
            max_x = std::max(max_x, person.joints[j].x);
            min_y = std::min(min_y, person.joints[j].y);
            max_y = std::max(max_y, person.joints[j].y);
            any = true;
        }
        double area = any ? (max_x - min_x) * (max_y - min_y) : 0.0;
        if (area > best_area) {
            best_area = area;
            best = i;
        }
    }
    return detections[best];
}

}  // namespace gravity
