#include "gravity/sim.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "gravity/estimate.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gravity {

Eigen::Matrix3d CameraModel::rotation() const {
    const Eigen::AngleAxisd r_yaw(yaw, Eigen::Vector3d::UnitY());
    const Eigen::AngleAxisd r_pitch(pitch, Eigen::Vector3d::UnitX());
    const Eigen::AngleAxisd r_roll(roll, Eigen::Vector3d::UnitZ());
    return (r_roll * r_pitch * r_yaw).toRotationMatrix();
}

Point2 CameraModel::project(const Eigen::Vector3d& world) const {
    const Eigen::Vector3d pc = rotation() * (world - Eigen::Vector3d(0.0, height, 0.0));
    switch (kind) {
        case CameraKind::Perspective: {
            if (pc.z() <= 0.0) {
                throw Error(ErrorCode::BehindCamera, "point is behind the camera");
            }
            return {cx + f * pc.x() / pc.z(), cy + f * pc.y() / pc.z()};
        }
        case CameraKind::ScaledOrthographic:
            return {cx + (f / d) * pc.x(), cy + (f / d) * pc.y()};
        case CameraKind::Affine: {
            const Eigen::Vector2d p = affine * pc;
            return {cx + p.x(), cy + p.y()};
        }
    }
    throw Error(ErrorCode::InvalidArgument, "unknown camera kind");
}

double CameraModel::q_true(double g) const {
    const Eigen::Vector3d g_cam = rotation() * Eigen::Vector3d(0.0, -g, 0.0);
    double a_vertical = 0.0;
    switch (kind) {
        case CameraKind::Perspective:
        case CameraKind::ScaledOrthographic:
            a_vertical = (f / d) * g_cam.y();
            break;
        case CameraKind::Affine:
            a_vertical = (affine * g_cam).y();
            break;
    }
    return g / std::abs(a_vertical);
}

Skeleton3d reference_skeleton(double person_height) {
    const double h = person_height;
    const double ankle_y = 0.045 * h;
    // Nose-to-ankle chosen so that applying the 1.17 correction returns the
    // total height without model error.
    const double nose_y = ankle_y + h / kDefaultNoseAnkleCorrection;
    Skeleton3d s;
    s[0] = {0.0, nose_y, 0.0};
    s[1] = {0.020 * h, nose_y + 0.020 * h, 0.0};
    s[2] = {-0.020 * h, nose_y + 0.020 * h, 0.0};
    s[3] = {0.045 * h, nose_y + 0.015 * h, 0.0};
    s[4] = {-0.045 * h, nose_y + 0.015 * h, 0.0};
    s[5] = {0.105 * h, 0.815 * h, 0.0};
    s[6] = {-0.105 * h, 0.815 * h, 0.0};
    s[7] = {0.125 * h, 0.630 * h, 0.0};
    s[8] = {-0.125 * h, 0.630 * h, 0.0};
    s[9] = {0.135 * h, 0.450 * h, 0.0};
    s[10] = {-0.135 * h, 0.450 * h, 0.0};
    s[11] = {0.060 * h, 0.520 * h, 0.0};
    s[12] = {-0.060 * h, 0.520 * h, 0.0};
    s[13] = {0.065 * h, 0.280 * h, 0.0};
    s[14] = {-0.065 * h, 0.280 * h, 0.0};
    s[15] = {0.070 * h, ankle_y, 0.0};
    s[16] = {-0.070 * h, ankle_y, 0.0};
    return s;
}

JumperFrames3d generate_jumper_3d(const JumperScene& scene) {
    if (!(scene.person_height > 0.0) || !(scene.fps > 0.0) || scene.jump_height < 0.0 ||
        scene.jumps < 1) {
        throw Error(ErrorCode::InvalidArgument, "invalid jumper scene");
    }
    const double g = kStandardGravity;
    const double flight_time =
        scene.jump_height > 0.0 ? 2.0 * std::sqrt(2.0 * scene.jump_height / g) : 0.0;
    const double v0 = 0.5 * g * flight_time;
    const double alpha = scene.approach_angle_deg * M_PI / 180.0;
    // Horizontal travel per jump; depth decreases toward the camera. The arc
    // is centered over the stance spot, so the apex depth equals the
    // standing depth.
    const Eigen::Vector3d travel{scene.jump_length * std::cos(alpha), 0.0,
                                 -scene.jump_length * std::sin(alpha)};

    const double duration =
        scene.stand_time + scene.jumps * (flight_time + scene.rest_time);
    const int n_frames = static_cast<int>(std::floor(duration * scene.fps)) + 1;
    const Skeleton3d skeleton = reference_skeleton(scene.person_height);

    JumperFrames3d out;
    out.fps = scene.fps;
    out.truth.h_true = scene.person_height;
    out.frames.reserve(static_cast<std::size_t>(n_frames));
    out.truth.contact.reserve(static_cast<std::size_t>(n_frames));

    for (int j = 0; j < scene.jumps && flight_time > 0.0; ++j) {
        out.truth.apex_times.push_back(scene.stand_time + j * (flight_time + scene.rest_time) +
                                       0.5 * flight_time);
    }

    for (int k = 0; k < n_frames; ++k) {
        const double t = static_cast<double>(k) / scene.fps;
        Eigen::Vector3d root{0.0, 0.0, scene.distance};
        bool contact = true;
        if (flight_time > 0.0 && t >= scene.stand_time) {
            const double cycle = flight_time + scene.rest_time;
            const double local = t - scene.stand_time;
            const int j = std::min<int>(static_cast<int>(local / cycle), scene.jumps - 1);
            const double tau = local - j * cycle;
            const Eigen::Vector3d stance =
                Eigen::Vector3d(0.0, 0.0, scene.distance) + static_cast<double>(j) * travel;
            if (tau > 0.0 && tau < flight_time) {
                contact = false;
                root = stance - 0.5 * travel + (tau / flight_time) * travel;
                root.y() = v0 * tau - 0.5 * g * tau * tau;
            } else if (tau >= flight_time) {
                // rest at the landing spot; the next cycle's arc starts there
                root = stance + 0.5 * travel;
            } else {
                root = stance - 0.5 * travel;
            }
        }
        Skeleton3d frame;
        for (int j = 0; j < kJointCount; ++j) {
            frame[j] = root + skeleton[j];
        }
        out.frames.push_back(frame);
        out.truth.contact.push_back(contact);
    }
    return out;
}

PoseSequence project_sequence(const CameraModel& camera, const JumperFrames3d& frames,
                              double joint_score) {
    PoseSequence seq;
    seq.fps = frames.fps;
    seq.frames.reserve(frames.frames.size());
    for (const auto& frame3d : frames.frames) {
        KeypointFrame frame;
        frame.joints.reserve(kJointCount);
        frame.scores.assign(kJointCount, joint_score);
        for (const auto& joint : frame3d) {
            frame.joints.push_back(camera.project(joint));
        }
        seq.frames.push_back(std::move(frame));
    }
    return seq;
}

SyntheticSequence generate_jumper(const JumperScene& scene, const CameraModel& camera) {
    JumperFrames3d frames = generate_jumper_3d(scene);
    SyntheticSequence out;
    out.pose = project_sequence(camera, frames);
    out.truth = std::move(frames.truth);
    out.truth.q_true = camera.q_true();
    out.image_height = camera.image_height;
    return out;
}

ProjectileResult generate_projectile(const FreeFallParams& params, double fps, double duration,
                                     double ground_y, double restitution) {
    if (!(fps > 0.0) || !(duration > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "fps and duration must be positive");
    }
    const double g = -params.g_vec.y();  // downward magnitude; vertical gravity assumed
    if (!(g > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "projectile generation needs downward gravity");
    }

    ProjectileResult out;
    const int n_frames = static_cast<int>(std::floor(duration * fps)) + 1;

    // Event-driven arcs: advance analytically, reflect the vertical velocity
    // at each ground contact, and rest once the rebound is negligible.
    double t0 = 0.0;
    Eigen::Vector3d p0 = params.p0;
    Eigen::Vector3d v0 = params.v0;
    bool resting = false;

    auto arc_pos = [&](double tau) -> Eigen::Vector3d {
        return 0.5 * params.g_vec * tau * tau + v0 * tau + p0;
    };
    auto next_contact = [&]() -> double {  // tau of the next downward ground crossing
        // ground_y = -g/2 tau^2 + vy tau + y0
        const double a = -0.5 * g, b = v0.y(), c = p0.y() - ground_y;
        const double disc = b * b - 4.0 * a * c;
        if (disc < 0.0) return -1.0;
        const double tau = (-b - std::sqrt(disc)) / (2.0 * a);  // larger root, falling branch
        return tau > 1e-12 ? tau : -1.0;
    };

    for (int k = 0; k < n_frames; ++k) {
        const double t = static_cast<double>(k) / fps;
        if (!resting) {
            double tau_c = next_contact();
            while (tau_c >= 0.0 && t0 + tau_c <= t) {
                if (v0.y() > 0.0) {
                    out.apex_times.push_back(t0 + v0.y() / g);
                }
                const Eigen::Vector3d pc = arc_pos(tau_c);
                const double vy_in = v0.y() - g * tau_c;
                out.contact_times.push_back(t0 + tau_c);
                t0 += tau_c;
                p0 = pc;
                p0.y() = ground_y;
                v0.y() = -restitution * vy_in;
                if (v0.y() < 1e-9) {
                    resting = true;
                    v0.setZero();
                    break;
                }
                tau_c = next_contact();
            }
        }
        ProjectileSample sample;
        sample.t = t;
        sample.contact = resting;
        sample.p = resting ? p0 : arc_pos(t - t0);
        out.samples.push_back(sample);
    }
    return out;
}

SyntheticSequence corrupt(const SyntheticSequence& seq, const CorruptionParams& params) {
    SyntheticSequence out = seq;
    if (params.noise_sigma == 0.0 && params.outlier_rate == 0.0) {
        return out;
    }
    std::mt19937_64 rng(params.seed);
    std::normal_distribution<double> noise(0.0, params.noise_sigma);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
    for (auto& frame : out.pose.frames) {
        for (std::size_t j = 0; j < frame.joints.size(); ++j) {
            if (params.noise_sigma > 0.0) {
                frame.joints[j].x += noise(rng);
                frame.joints[j].y += noise(rng);
            }
            if (params.outlier_rate > 0.0 && unit(rng) < params.outlier_rate) {
                const double theta = angle(rng);
                frame.joints[j].x += params.outlier_magnitude * std::cos(theta);
                frame.joints[j].y += params.outlier_magnitude * std::sin(theta);
                if (params.outlier_score >= 0.0) {
                    frame.scores[j] = params.outlier_score;
                }
            }
        }
    }
    return out;
}

namespace {

// Ground-level camera; the steep-approach error decays with distance fast
// enough that the far columns stay below a centimeter.
constexpr double kTableCameraHeight = 0.0;

double table_cell(const TableOptions& options, double angle_deg, double distance) {
    JumperScene scene;
    scene.approach_angle_deg = angle_deg;
    scene.distance = distance;
    scene.fps = options.fps;

    CameraModel camera;
    camera.kind = options.camera;
    camera.f = options.f;
    camera.d = distance;
    camera.height = kTableCameraHeight;
    camera.affine << options.f / distance, 0.0, 0.0, 0.0, options.f / distance, 0.0;

    // Jumps that travel in depth shift the projected stance level between
    // takeoff and landing under perspective, so the floor-relative fraction
    // rule would swallow stance frames; the per-side lateral rule keeps only
    // the flight arc.
    EstimateConfig config;
    config.segment_mode = SegmentMode::Lateral;

    try {
        const SyntheticSequence seq = generate_jumper(scene, camera);
        const HeightEstimate estimate =
            estimate_height(seq.pose, MassTable::coco17_default(), config);
        return std::abs(estimate.aggregate_h - scene.person_height) * 100.0;
    } catch (const Error&) {
        // surfaces as a visibly failed cell instead of crossing the parallel loop
        return std::numeric_limits<double>::quiet_NaN();
    }
}

}  // namespace

Eigen::MatrixXd appendix_error_table(const TableOptions& options) {
    const int rows = static_cast<int>(options.angles.size());
    const int cols = static_cast<int>(options.distances.size());
    Eigen::MatrixXd table(rows, cols);
#ifdef _OPENMP
#pragma omp parallel for collapse(2) schedule(dynamic) if (options.parallel)
#endif
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            table(r, c) = table_cell(options, options.angles[static_cast<std::size_t>(r)],
                                     options.distances[static_cast<std::size_t>(c)]);
        }
    }
    return table;
}

}  // namespace gravity
