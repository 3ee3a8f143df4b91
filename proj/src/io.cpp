#include "gravity/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace gravity {

namespace {

[[noreturn]] void parse_fail(const std::string& origin, int line_no, const std::string& what) {
    throw Error(ErrorCode::ParseError, origin + ":" + std::to_string(line_no) + ": " + what);
}

std::string fmt(const char* spec, double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, value);
    return buf;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw Error(ErrorCode::ParseError, "cannot open for writing: " + path);
    }
    return out;
}

}  // namespace

KeypointFile parse_keypoints(std::istream& in, const std::string& origin) {
    std::string line;
    int line_no = 0;

    if (!std::getline(in, line)) {
        throw Error(ErrorCode::ParseError, origin + ": empty file");
    }
    ++line_no;
    if (line != "gravity-keypoints 1") {
        parse_fail(origin, line_no, "expected header \"gravity-keypoints 1\"");
    }

    KeypointFile file;
    file.sequence.fps = -1.0;
    file.image_height = -1.0;
    std::vector<std::vector<KeypointFrame>> frames;  // per frame, per person

    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        if (key == "fps") {
            if (!(ls >> file.sequence.fps) || file.sequence.fps <= 0.0) {
                parse_fail(origin, line_no, "invalid fps value");
            }
        } else if (key == "image_height") {
            if (!(ls >> file.image_height) || file.image_height <= 0.0) {
                parse_fail(origin, line_no, "invalid image_height value");
            }
        } else if (key == "frame") {
            int index;
            if (!(ls >> index) || index != static_cast<int>(frames.size())) {
                parse_fail(origin, line_no, "frame indices must be contiguous from 0");
            }
            frames.emplace_back();
        } else if (key == "person") {
            if (frames.empty()) {
                parse_fail(origin, line_no, "person record before any frame record");
            }
            int joints;
            if (!(ls >> joints) || joints <= 0) {
                parse_fail(origin, line_no, "invalid joint count");
            }
            KeypointFrame person;
            person.joints.resize(static_cast<std::size_t>(joints));
            person.scores.resize(static_cast<std::size_t>(joints));
            for (int j = 0; j < joints; ++j) {
                if (!(ls >> person.joints[static_cast<std::size_t>(j)].x >>
                      person.joints[static_cast<std::size_t>(j)].y >>
                      person.scores[static_cast<std::size_t>(j)])) {
                    parse_fail(origin, line_no, "expected " + std::to_string(joints) +
                                                    " x y score triples");
                }
            }
            frames.back().push_back(std::move(person));
        } else {
            parse_fail(origin, line_no, "unknown record \"" + key + "\"");
        }
    }

    if (file.sequence.fps < 0.0) {
        throw Error(ErrorCode::ParseError, origin + ": missing required field \"fps\"");
    }
    if (file.image_height < 0.0) {
        throw Error(ErrorCode::ParseError, origin + ": missing required field \"image_height\"");
    }
    if (frames.empty()) {
        throw Error(ErrorCode::ParseError, origin + ": no frame records");
    }

    // Keep the largest person and flip rows to up-positive.
    for (auto& persons : frames) {
        if (persons.empty()) {
            file.sequence.frames.emplace_back();
            continue;
        }
        KeypointFrame frame = select_primary_person(persons);
        for (auto& joint : frame.joints) {
            joint.y = file.image_height - joint.y;
        }
        file.sequence.frames.push_back(std::move(frame));
    }
    for (const auto& frame : file.sequence.frames) {
        if (!frame.joints.empty()) {
            file.sequence.joint_count = static_cast<int>(frame.joints.size());
            break;
        }
    }
    return file;
}

KeypointFile read_keypoints(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::ParseError, "cannot open keypoint file: " + path);
    }
    return parse_keypoints(in, path);
}

void write_keypoints(std::ostream& out, const PoseSequence& seq, double image_height) {
    out << "gravity-keypoints 1\n";
    out << "fps " << fmt("%.17g", seq.fps) << "\n";
    out << "image_height " << fmt("%.17g", image_height) << "\n";
    for (std::size_t i = 0; i < seq.frames.size(); ++i) {
        const auto& frame = seq.frames[i];
        out << "frame " << i << "\n";
        out << "person " << frame.joints.size();
        for (std::size_t j = 0; j < frame.joints.size(); ++j) {
            out << " " << fmt("%.17g", frame.joints[j].x) << " "
                << fmt("%.17g", image_height - frame.joints[j].y) << " "
                << fmt("%.17g", frame.scores[j]);
        }
        out << "\n";
    }
}

void write_keypoints(const std::string& path, const PoseSequence& seq, double image_height) {
    auto out = open_out(path);
    write_keypoints(out, seq, image_height);
}

void write_truth(const std::string& path, const SceneTruth& truth) {
    auto out = open_out(path);
    out << "gravity-truth 1\n";
    out << "q_true " << fmt("%.17g", truth.q_true) << "\n";
    out << "h_true " << fmt("%.17g", truth.h_true) << "\n";
    out << "apex_times " << truth.apex_times.size();
    for (double t : truth.apex_times) out << " " << fmt("%.17g", t);
    out << "\n";
    out << "contacts ";
    for (bool c : truth.contact) out << (c ? '1' : '0');
    out << "\n";
}

SceneTruth read_truth(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::ParseError, "cannot open truth file: " + path);
    }
    SceneTruth truth;
    std::string line;
    int line_no = 0;
    if (!std::getline(in, line) || line != "gravity-truth 1") {
        throw Error(ErrorCode::ParseError, path + ": expected header \"gravity-truth 1\"");
    }
    ++line_no;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        if (key == "q_true") {
            ls >> truth.q_true;
        } else if (key == "h_true") {
            ls >> truth.h_true;
        } else if (key == "apex_times") {
            std::size_t n;
            ls >> n;
            truth.apex_times.resize(n);
            for (auto& t : truth.apex_times) ls >> t;
        } else if (key == "contacts") {
            std::string bits;
            ls >> bits;
            truth.contact.clear();
            for (char c : bits) truth.contact.push_back(c == '1');
        } else {
            parse_fail(path, line_no, "unknown record \"" + key + "\"");
        }
        if (!ls) {
            parse_fail(path, line_no, "malformed \"" + key + "\" record");
        }
    }
    return truth;
}

MassTable read_mass_table(const std::string& path) { return MassTable::load(path); }

void write_mass_table(const std::string& path, const MassTable& table) {
    auto out = open_out(path);
    out << "# joint-index mass-fraction\n";
    for (std::size_t j = 0; j < table.weights().size(); ++j) {
        out << j << " " << fmt("%.17g", table.weights()[j]) << "\n";
    }
}

std::string format_report(const HeightEstimate& estimate, const EstimateConfig& config) {
    std::ostringstream out;
    out << "# gravity height report\n";
    out << "method " << (estimate.method == AccelMethod::CurveFit ? "curve" : "distance") << "\n";
    out << "segment_mode " << (config.segment_mode == SegmentMode::OnSpot ? "onspot" : "lateral")
        << "\n";
    out << "ransac " << (config.use_ransac ? 1 : 0) << "\n";
    out << "standing_h_px " << fmt("%.6f", estimate.standing_h_px) << "\n";
    out << "correction_c " << fmt("%.6f", config.correction_c) << "\n";
    out << "excluded_frames " << estimate.excluded_frames << "\n";
    if (config.rotate) {
        out << "rotation_angle_deg " << fmt("%.6f", estimate.rotation_angle * 180.0 / M_PI)
            << "\n";
    }
    out << "segments " << estimate.per_segment.size() << "\n";
    for (const auto& s : estimate.per_segment) {
        out << "segment " << s.id << " frames " << s.start << ".." << s.end << " peak " << s.peak
            << " a_px " << fmt("%.6f", s.a_px) << " q " << fmt("%.8f", s.q) << " h_px "
            << fmt("%.6f", s.h_px) << " h " << fmt("%.6f", s.h) << " outliers "
            << s.ransac_outliers << "\n";
    }
    out << "aggregate_h " << fmt("%.6f", estimate.aggregate_h) << "\n";
    // The +-0.03 spread of the nose-ankle factor enters as a systematic
    // uncertainty, not as a propagated error bar.
    out << "systematic_c_uncertainty "
        << fmt("%.6f", estimate.aggregate_h * kNoseAnkleCorrectionSd / config.correction_c)
        << "\n";
    out << "population_mean_baseline_cm " << fmt("%.1f", kPopulationMeanHeightCm) << "\n";
    out << "warnings " << estimate.warnings.size() << "\n";
    for (const auto& w : estimate.warnings) {
        out << "warning " << w << "\n";
    }
    return out.str();
}

std::string format_plot_csv(const Trajectory2D& traj, const std::vector<SegmentEstimate>& segments,
                            const std::vector<std::vector<bool>>& inlier_masks) {
    std::ostringstream out;
    out << "t,x,y,valid,inlier\n";
    for (std::size_t i = 0; i < traj.samples.size(); ++i) {
        const auto& s = traj.samples[i];
        bool inlier = false;
        for (std::size_t k = 0; k < inlier_masks.size(); ++k) {
            if (i < inlier_masks[k].size() && inlier_masks[k][i]) inlier = true;
        }
        out << fmt("%.9g", s.t) << "," << fmt("%.9g", s.valid ? s.point.x : 0.0) << ","
            << fmt("%.9g", s.valid ? s.point.y : 0.0) << "," << (s.valid ? 1 : 0) << ","
            << (inlier ? 1 : 0) << "\n";
    }
    (void)segments;
    return out.str();
}

}  // namespace gravity
