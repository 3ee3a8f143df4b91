#include <doctest.h>

#include <random>

#include "gravity/com.hpp"
#include "gravity/sim.hpp"

using namespace gravity;

namespace {

KeypointFrame uniform_frame(double x, double y, double score = 5.0) {
    KeypointFrame frame;
    frame.joints.assign(kJointCount, {x, y});
    frame.scores.assign(kJointCount, score);
    return frame;
}

}  // namespace

TEST_CASE("com of identical joints is that point") {
    const Point2 com = com_point(uniform_frame(100.0, 200.0), MassTable::coco17_default());
    CHECK(com.x == doctest::Approx(100.0).epsilon(1e-15));
    CHECK(com.y == doctest::Approx(200.0).epsilon(1e-15));
}

TEST_CASE("two-joint toy table gives the midpoint") {
    MassTable table({0.5, 0.5});
    KeypointFrame frame;
    frame.joints = {{0.0, 0.0}, {10.0, 20.0}};
    frame.scores = {1.0, 1.0};
    const Point2 com = com_point(frame, table);
    CHECK(com.x == doctest::Approx(5.0));
    CHECK(com.y == doctest::Approx(10.0));
}

TEST_CASE("com matches an independent weighted summation") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> coord(-500.0, 500.0);
    const MassTable table = MassTable::coco17_default();
    for (int trial = 0; trial < 50; ++trial) {
        KeypointFrame frame;
        for (int j = 0; j < kJointCount; ++j) {
            frame.joints.push_back({coord(rng), coord(rng)});
            frame.scores.push_back(5.0);
        }
        // brute-force oracle
        double ox = 0.0, oy = 0.0;
        for (int j = 0; j < kJointCount; ++j) {
            ox += table.weights()[static_cast<std::size_t>(j)] * frame.joints[static_cast<std::size_t>(j)].x;
            oy += table.weights()[static_cast<std::size_t>(j)] * frame.joints[static_cast<std::size_t>(j)].y;
        }
        const Point2 com = com_point(frame, table);
        CHECK(com.x == doctest::Approx(ox).epsilon(1e-12));
        CHECK(com.y == doctest::Approx(oy).epsilon(1e-12));
    }
}

TEST_CASE("mass table normalizes any nonnegative weight vector") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> w(0.0, 10.0);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> weights;
        for (int j = 0; j < kJointCount; ++j) weights.push_back(w(rng));
        weights[0] += 1e-3;  // keep the sum positive
        const MassTable table(weights);
        double sum = 0.0;
        for (double v : table.weights()) sum += v;
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
    }
    CHECK_THROWS_AS(MassTable({-1.0, 2.0}), Error);
    CHECK_THROWS_AS(MassTable(std::vector<double>{}), Error);
}

TEST_CASE("com trajectory applies the per-frame confidence rule") {
    PoseSequence seq;
    seq.fps = 10.0;
    for (int i = 0; i < 5; ++i) {
        seq.frames.push_back(uniform_frame(10.0, 20.0, 3.0));
    }
    seq.frames[2] = uniform_frame(10.0, 20.0, 1.0);  // mean score below threshold

    const Trajectory2D traj = com_trajectory(seq, MassTable::coco17_default());
    REQUIRE(traj.size() == 5);
    CHECK(traj.samples[0].valid);
    CHECK_FALSE(traj.samples[2].valid);
    CHECK(traj.samples[3].valid);
    CHECK(traj.samples[3].t == doctest::Approx(0.3));

    SUBCASE("a missing joint invalidates the frame") {
        seq.frames[4].scores[7] = 0.0;
        const Trajectory2D t2 = com_trajectory(seq, MassTable::coco17_default());
        CHECK_FALSE(t2.samples[4].valid);
    }

    SUBCASE("all-invalid sequences raise EmptyTrajectory") {
        for (auto& frame : seq.frames) frame.scores.assign(kJointCount, 0.5);
        CHECK_THROWS_AS(com_trajectory(seq, MassTable::coco17_default()), Error);
    }
}

TEST_CASE("primary person selection prefers the largest bounding box") {
    std::vector<KeypointFrame> people;
    KeypointFrame big;
    big.joints = {{0.0, 0.0}, {100.0, 200.0}};
    big.scores = {1.0, 1.0};
    KeypointFrame small;
    small.joints = {{0.0, 0.0}, {50.0, 100.0}};
    small.scores = {1.0, 1.0};

    SUBCASE("single person") {
        people = {small};
        CHECK(&select_primary_person(people) == &people[0]);
    }
    SUBCASE("larger area wins") {
        people = {big, small};
        CHECK(&select_primary_person(people) == &people[0]);
        people = {small, big};
        CHECK(&select_primary_person(people) == &people[1]);
    }
    SUBCASE("ties break toward the lowest index") {
        people = {small, small, small};
        CHECK(&select_primary_person(people) == &people[0]);
    }
    SUBCASE("empty list raises NoDetections") {
        people.clear();
        CHECK_THROWS_AS(select_primary_person(people), Error);
    }
}

TEST_CASE("com commutes with affine projection") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> coord(-2.0, 2.0);
    std::uniform_real_distribution<double> entry(-300.0, 300.0);
    const MassTable table = MassTable::coco17_default();
    for (int trial = 0; trial < 200; ++trial) {
        CameraModel camera;
        camera.kind = CameraKind::Affine;
        camera.height = 0.0;
        camera.affine << entry(rng), entry(rng), entry(rng), entry(rng), entry(rng), entry(rng);

        std::array<Eigen::Vector3d, kJointCount> joints3d;
        Eigen::Vector3d com3d = Eigen::Vector3d::Zero();
        KeypointFrame frame;
        for (int j = 0; j < kJointCount; ++j) {
            joints3d[static_cast<std::size_t>(j)] = {coord(rng), coord(rng), coord(rng) + 5.0};
            com3d += table.weights()[static_cast<std::size_t>(j)] * joints3d[static_cast<std::size_t>(j)];
            frame.joints.push_back(camera.project(joints3d[static_cast<std::size_t>(j)]));
            frame.scores.push_back(5.0);
        }
        const Point2 com2d = com_point(frame, table);
        const Point2 projected_com = camera.project(com3d);
        CHECK(com2d.x == doctest::Approx(projected_com.x).epsilon(1e-9));
        CHECK(com2d.y == doctest::Approx(projected_com.y).epsilon(1e-9));
    }
}

TEST_CASE("synthetic jumper com equals the projected 3d com") {
    JumperScene scene;
    scene.fps = 50.0;
    CameraModel camera;
    camera.kind = CameraKind::Affine;
    camera.affine << 240.0, 0.0, 0.0, 0.0, 250.0, 10.0;

    const JumperFrames3d frames3d = generate_jumper_3d(scene);
    const PoseSequence pose = project_sequence(camera, frames3d);
    const MassTable table = MassTable::coco17_default();
    const Trajectory2D traj = com_trajectory(pose, table);

    for (std::size_t i = 0; i < frames3d.frames.size(); i += 7) {
        Eigen::Vector3d com3d = Eigen::Vector3d::Zero();
        for (int j = 0; j < kJointCount; ++j) {
            com3d += table.weights()[static_cast<std::size_t>(j)] *
                     frames3d.frames[i][static_cast<std::size_t>(j)];
        }
        const Point2 projected = camera.project(com3d);
        CHECK(traj.samples[i].point.x == doctest::Approx(projected.x).epsilon(1e-9));
        CHECK(traj.samples[i].point.y == doctest::Approx(projected.y).epsilon(1e-9));
    }
}

TEST_CASE("translating all joints translates the com exactly") {
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> coord(-100.0, 100.0);
    const MassTable table = MassTable::coco17_default();
    for (int trial = 0; trial < 100; ++trial) {
        KeypointFrame frame;
        for (int j = 0; j < kJointCount; ++j) {
            frame.joints.push_back({coord(rng), coord(rng)});
            frame.scores.push_back(5.0);
        }
        const double dx = coord(rng), dy = coord(rng);
        KeypointFrame shifted = frame;
        for (auto& joint : shifted.joints) {
            joint.x += dx;
            joint.y += dy;
        }
        const Point2 a = com_point(frame, table);
        const Point2 b = com_point(shifted, table);
        CHECK(b.x - a.x == doctest::Approx(dx).epsilon(1e-9));
        CHECK(b.y - a.y == doctest::Approx(dy).epsilon(1e-9));
    }
}
