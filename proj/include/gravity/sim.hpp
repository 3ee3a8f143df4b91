#ifndef GRAVITY_SIM_HPP
#define GRAVITY_SIM_HPP

#include <array>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "gravity/com.hpp"
#include "gravity/physics.hpp"

namespace gravity {

enum class CameraKind { Perspective, ScaledOrthographic, Affine };

/// Virtual camera at (0, height, 0) looking along +z; world y is up.
/// Projected pixels are up-positive with the principal point at (cx, cy).
struct CameraModel {
    CameraKind kind = CameraKind::Perspective;
    double f = 1000.0;   // px (Perspective, ScaledOrthographic)
    double d = 4.0;      // m, reference subject distance (ScaledOrthographic)
    Eigen::Matrix<double, 2, 3> affine = (Eigen::Matrix<double, 2, 3>() << 250, 0, 0, 0, 250, 0).finished();
    double roll = 0.0;   // rad, about the optical axis
    double pitch = 0.0;
    double yaw = 0.0;
    double height = 1.0;  // m, camera center above the ground
    double cx = 960.0;
    double cy = 540.0;
    double image_height = 1080.0;

    Eigen::Matrix3d rotation() const;
    Point2 project(const Eigen::Vector3d& world) const;
    /// Scale the faithful reconstruction would use; what the pipeline must recover.
    double q_true(double g = kStandardGravity) const;
};

struct JumperScene {
    double person_height = 1.8;      // m
    double jump_height = 0.15;       // m, apex above standing
    double jump_length = 1.0;        // m, horizontal travel per jump
    double approach_angle_deg = 0.0; // 0 = fronto-parallel, 90 = straight toward camera
    double distance = 4.0;           // m, subject (apex) depth
    double fps = 30.0;
    double stand_time = 3.5;         // s, leading stance
    double rest_time = 1.5;          // s, stance between jumps and at the end
    int jumps = 1;
};

struct SceneTruth {
    double q_true = 0.0;
    double h_true = 0.0;
    std::vector<bool> contact;        // per frame; false while airborne
    std::vector<double> apex_times;   // s
};

struct SyntheticSequence {
    PoseSequence pose;                // up-positive pixel coordinates
    SceneTruth truth;
    double image_height = 1080.0;
};

using Skeleton3d = std::array<Eigen::Vector3d, kJointCount>;

/// Static 17-joint skeleton scaled so nose-to-ankle * 1.17 equals the total
/// height exactly.
Skeleton3d reference_skeleton(double person_height);

struct JumperFrames3d {
    std::vector<Skeleton3d> frames;
    double fps = 0.0;
    SceneTruth truth;  // q_true filled in at projection time
};

JumperFrames3d generate_jumper_3d(const JumperScene& scene);

PoseSequence project_sequence(const CameraModel& camera, const JumperFrames3d& frames,
                              double joint_score = 10.0);

SyntheticSequence generate_jumper(const JumperScene& scene, const CameraModel& camera);

struct ProjectileSample {
    double t = 0.0;
    Eigen::Vector3d p = Eigen::Vector3d::Zero();
    bool contact = false;  // resting on the ground
};

struct ProjectileResult {
    std::vector<ProjectileSample> samples;
    std::vector<double> contact_times;  // bounce instants, exact
    std::vector<double> apex_times;
};

inline constexpr double kDefaultRestitution = 0.707;

ProjectileResult generate_projectile(const FreeFallParams& params, double fps, double duration,
                                     double ground_y = 0.0,
                                     double restitution = kDefaultRestitution);

struct CorruptionParams {
    double noise_sigma = 0.0;       // px, isotropic Gaussian per joint
    double outlier_rate = 0.0;      // fraction of joints displaced
    double outlier_magnitude = 50.0;  // px
    double outlier_score = -1.0;    // replaces the joint score when >= 0
    std::uint64_t seed = 0;
};

SyntheticSequence corrupt(const SyntheticSequence& seq, const CorruptionParams& params);

struct TableOptions {
    std::vector<double> distances{4.0, 7.0, 15.0, 30.0};   // m
    std::vector<double> angles{0.0, 10.0, 45.0, 90.0};     // deg
    CameraKind camera = CameraKind::Perspective;
    double f = 1000.0;
    double fps = 30.0;
    bool parallel = true;
};

/// Absolute height error in cm, rows = angles, cols = distances; each cell
/// runs the full noiseless pipeline on the synthetic jumper.
Eigen::MatrixXd appendix_error_table(const TableOptions& options);

}  // namespace gravity

#endif
