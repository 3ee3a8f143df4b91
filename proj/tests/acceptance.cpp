// End-to-end acceptance checks. Each criterion prints a single PASS/FAIL
// line; the process exit code is the number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gravity/estimate.hpp"
#include "gravity/io.hpp"
#include "gravity/sim.hpp"

using namespace gravity;

namespace {

int failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail = "") {
    std::cout << "criterion " << id << " (" << name << "): " << (pass ? "PASS" : "FAIL");
    if (!detail.empty()) std::cout << "  [" << detail << "]";
    std::cout << "\n";
    if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// --- criterion 1: noiseless oracle round trip ------------------------------

void criterion_round_trip() {
    const auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> height_dist(1.5, 2.0);
    std::uniform_real_distribution<double> jump_dist(0.12, 0.4);
    std::uniform_real_distribution<double> length_dist(0.0, 1.0);
    std::uniform_real_distribution<double> scale_dist(150.0, 400.0);
    std::uniform_real_distribution<double> offset_dist(-200.0, 200.0);

    double worst = 0.0;
    bool ok = true;
    std::string detail;
    try {
        for (int trial = 0; trial < 20; ++trial) {
            JumperScene scene;
            scene.person_height = height_dist(rng);
            scene.jump_height = jump_dist(rng);
            scene.jump_length = length_dist(rng);
            scene.fps = trial % 2 == 0 ? 50.0 : 60.0;
            scene.jumps = 1 + trial % 3;

            CameraModel camera;
            if (trial % 2 == 0) {
                camera.kind = CameraKind::ScaledOrthographic;
                camera.f = scale_dist(rng) * 4.0;
                camera.d = 4.0;
            } else {
                camera.kind = CameraKind::Affine;
                camera.affine << scale_dist(rng), offset_dist(rng) * 0.1, offset_dist(rng), 0.0,
                    scale_dist(rng), offset_dist(rng);
            }
            const SyntheticSequence seq = generate_jumper(scene, camera);
            const HeightEstimate est =
                estimate_height(seq.pose, MassTable::coco17_default(), EstimateConfig{});
            const double rel = std::abs(est.aggregate_h - seq.truth.h_true) / seq.truth.h_true;
            worst = std::max(worst, rel);
            if (!(rel < 1e-6)) ok = false;
        }
    } catch (const Error& e) {
        ok = false;
        detail = std::string("error: ") + e.what();
    }
    const double elapsed = seconds_since(start);
    if (elapsed >= 10.0) ok = false;
    if (detail.empty()) {
        std::ostringstream s;
        s << "worst rel err " << worst << ", " << elapsed << " s";
        detail = s.str();
    }
    report(1, "noiseless oracle round trip", ok, detail);
}

// --- criterion 2: angle/distance error table -------------------------------

void criterion_table() {
    const auto start = std::chrono::steady_clock::now();
    bool ok = true;
    std::ostringstream detail;
    try {
        TableOptions options;  // perspective camera, 4 angles x 4 distances
        const Eigen::MatrixXd table = appendix_error_table(options);

        for (std::size_t r = 0; r < options.angles.size(); ++r) {
            for (std::size_t c = 0; c < options.distances.size(); ++c) {
                const bool claimed = options.angles[r] <= 10.0 || options.distances[c] >= 15.0;
                if (claimed && !(table(static_cast<int>(r), static_cast<int>(c)) < 1.0)) {
                    ok = false;
                    detail << "cell(" << options.angles[r] << "," << options.distances[c]
                           << ")=" << table(static_cast<int>(r), static_cast<int>(c)) << " ";
                }
            }
        }
        for (int c = 1; c < table.cols(); ++c) {
            if (table(0, c) > table(0, c - 1) + 1e-6) {
                ok = false;
                detail << "fronto row not monotone ";
            }
        }
        const double steep = table(3, 0);  // alpha = 90 deg, d = 4 m
        if (!(steep >= 10.5 && steep <= 31.5)) {
            ok = false;
            detail << "steep cell " << steep << " cm ";
        }

        options.camera = CameraKind::Affine;
        const Eigen::MatrixXd affine_table = appendix_error_table(options);
        const double affine_max = affine_table.cwiseAbs().maxCoeff();
        if (!(affine_max < 1e-4)) {
            ok = false;
            detail << "affine max " << affine_max << " cm ";
        }
        detail << "steep=" << steep << " cm, affine max=" << affine_max << " cm";
    } catch (const Error& e) {
        ok = false;
        detail << "error: " << e.what();
    }
    const double elapsed = seconds_since(start);
    if (elapsed >= 30.0) ok = false;
    detail << ", " << elapsed << " s";
    report(2, "angle/distance error table", ok, detail.str());
}

// --- criterion 3: robust fitting -------------------------------------------

void criterion_ransac() {
    bool ok = true;
    std::ostringstream detail;
    try {
        JumperScene scene;
        scene.jump_height = 0.3;
        scene.fps = 60.0;
        CameraModel camera;
        camera.kind = CameraKind::ScaledOrthographic;
        const SyntheticSequence seq = generate_jumper(scene, camera);
        const Trajectory2D traj = com_trajectory(seq.pose, MassTable::coco17_default());
        const double floor = estimate_floor(traj);
        const std::vector<int> peaks = find_peaks(traj);
        int top = peaks.at(0);
        for (int m : peaks) {
            if (traj.samples[m].point.y > traj.samples[top].point.y) top = m;
        }
        const FlightSegment segment = select_flight_segment(traj, top, floor);
        const std::vector<TimedValue> clean = segment_values_y(traj, segment);
        const double a_true = kStandardGravity / seq.truth.q_true;

        int good = 0;
        std::mt19937_64 rng(3);
        std::uniform_real_distribution<double> sign(0.0, 1.0);
        for (int trial = 0; trial < 100; ++trial) {
            std::vector<TimedValue> samples = clean;
            std::vector<std::size_t> order(samples.size());
            for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
            std::shuffle(order.begin(), order.end(), rng);
            const std::size_t n_out = samples.size() / 5;  // 20%
            for (std::size_t k = 0; k < n_out; ++k) {
                samples[order[k]].y += sign(rng) < 0.5 ? 50.0 : -50.0;
            }
            RansacParams params;
            params.seed = static_cast<std::uint64_t>(trial);
            const ParabolaFit fit = fit_parabola_ransac(samples, params);
            if (std::abs(std::abs(fit.a_px()) - a_true) / a_true < 0.02) ++good;
        }
        if (good < 95) ok = false;
        detail << good << "/100 trials within 2%";

        // single-outlier scenario: the consensus fit matches the clean fit
        std::vector<TimedValue> samples;
        for (int i = 0; i <= 30; ++i) {
            const double t = i / 60.0;
            samples.push_back({t, 400.0 + 150.0 * t - 0.5 * 2452.5 * t * t});
        }
        const ParabolaFit clean_fit = fit_parabola_lsq(samples);
        samples[12].y += 50.0;
        const ParabolaFit robust = fit_parabola_ransac(samples, RansacParams{});
        const double dc2 = std::abs(robust.c2 - clean_fit.c2);
        const double dc1 = std::abs(robust.c1 - clean_fit.c1);
        const double dc0 = std::abs(robust.c0 - clean_fit.c0);
        if (!(dc2 < 1e-9 && dc1 < 1e-9 && dc0 < 1e-9)) {
            ok = false;
            detail << ", single-outlier deltas " << dc2 << "/" << dc1 << "/" << dc0;
        }
    } catch (const Error& e) {
        ok = false;
        detail << "error: " << e.what();
    }
    report(3, "robust fitting", ok, detail.str());
}

// --- criterion 4: invariance properties ------------------------------------

void criterion_invariances() {
    bool ok = true;
    std::ostringstream detail;
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> unit(0.1, 1.0);
    std::uniform_real_distribution<double> wide(-500.0, 500.0);

    // pixel-scale invariance of the metric height
    for (int i = 0; i < 1000 && ok; ++i) {
        const double a_px = 500.0 + 4000.0 * unit(rng);
        const double h_px = 100.0 + 600.0 * unit(rng);
        const double g = 9.0 + unit(rng);
        const double c = 1.0 + 0.3 * unit(rng);
        const double s = 0.1 + 10.0 * unit(rng);
        const double h1 = pixel_to_metric_height({h_px, HeightKind::NoseAnklePx, c},
                                                 conversion_factor(a_px, g));
        const double h2 = pixel_to_metric_height({s * h_px, HeightKind::NoseAnklePx, c},
                                                 conversion_factor(s * a_px, g));
        if (std::abs(h1 - h2) > 1e-9 * h1) {
            ok = false;
            detail << "pixel-scale invariance broken ";
        }
    }

    // time-shift invariance of the quadratic coefficient
    for (int i = 0; i < 1000 && ok; ++i) {
        const double c2 = wide(rng), c1 = wide(rng), c0 = wide(rng);
        const double shift = wide(rng) * 0.01;
        std::vector<TimedValue> a, b;
        for (int k = 0; k < 25; ++k) {
            const double t = k / 30.0;
            const double y = (c2 * t + c1) * t + c0;
            a.push_back({t, y});
            b.push_back({t + shift, y});
        }
        const ParabolaFit fa = fit_parabola_lsq(a);
        const ParabolaFit fb = fit_parabola_lsq(b);
        if (std::abs(fa.c2 - fb.c2) > 1e-6 * std::max(1.0, std::abs(fa.c2))) {
            ok = false;
            detail << "time-shift invariance broken ";
        }
    }

    // com commutes with affine projection
    const MassTable table = MassTable::coco17_default();
    for (int i = 0; i < 1000 && ok; ++i) {
        CameraModel camera;
        camera.kind = CameraKind::Affine;
        camera.affine << wide(rng), wide(rng), wide(rng), wide(rng), wide(rng), wide(rng);
        Eigen::Vector3d com3d = Eigen::Vector3d::Zero();
        KeypointFrame frame;
        for (int j = 0; j < kJointCount; ++j) {
            const Eigen::Vector3d p{unit(rng), unit(rng), unit(rng)};
            com3d += table.weights()[static_cast<std::size_t>(j)] * p;
            frame.joints.push_back(camera.project(p));
            frame.scores.push_back(5.0);
        }
        const Point2 lhs = com_point(frame, table);
        const Point2 rhs = camera.project(com3d);
        if (std::abs(lhs.x - rhs.x) > 1e-8 || std::abs(lhs.y - rhs.y) > 1e-8) {
            ok = false;
            detail << "com/projection commutation broken ";
        }
    }

    // mass table normalization
    for (int i = 0; i < 1000 && ok; ++i) {
        std::vector<double> weights;
        for (int j = 0; j < kJointCount; ++j) weights.push_back(unit(rng) * 10.0);
        const MassTable t(weights);
        double sum = 0.0;
        for (double w : t.weights()) sum += w;
        if (std::abs(sum - 1.0) > 1e-9) {
            ok = false;
            detail << "mass normalization broken ";
        }
    }

    // mae dominates |me|
    for (int i = 0; i < 1000 && ok; ++i) {
        std::vector<std::pair<double, double>> pairs;
        const int n = 2 + i % 12;
        for (int k = 0; k < n; ++k) pairs.emplace_back(170.0 + wide(rng) * 0.02, 170.0);
        const ErrorReport r = compute_error_report(pairs);
        if (r.mae < std::abs(r.me) - 1e-12) {
            ok = false;
            detail << "mae < |me| ";
        }
    }

    report(4, "invariance suite (5 x 1000 cases)", ok, detail.str());
}

// --- criterion 5: arithmetic reproduction ----------------------------------

void criterion_arithmetic() {
    bool ok = true;
    std::ostringstream detail;
    const std::vector<double> errors_cm{1.3, -2.4, 1.3,  -2.6, -2.8, 1.1,
                                        -4.7, -6.1, 13.2, 7.9,  0.0,  3.4};
    std::vector<std::pair<double, double>> pairs;
    for (double e : errors_cm) pairs.emplace_back(170.0 + e, 170.0);
    const ErrorReport r = compute_error_report(pairs);
    if (std::abs(r.mae - 3.9) > 0.05 || std::abs(r.me - 0.8) > 0.05) ok = false;
    detail << "mae=" << r.mae << " cm, me=" << r.me << " cm";

    const double a_px = kStandardGravity / 0.0041;
    const ConversionFactor q = conversion_factor(a_px);
    if (std::abs(q.q - 0.0041) > 1e-12) {
        ok = false;
        detail << ", q=" << q.q;
    }
    report(5, "error statistics and q arithmetic", ok, detail.str());
}

// --- criterion 6: free-fall sanity -----------------------------------------

void criterion_free_fall() {
    bool ok = true;
    std::ostringstream detail;

    FreeFallParams drop;
    const Eigen::Vector3d p1 = free_fall_position(drop, 1.0);
    const double fall = -p1.y();
    if (std::abs(fall - 4.905) > 1e-12) ok = false;
    detail << "1 s drop " << fall << " m";

    try {
        CameraModel camera;
        camera.kind = CameraKind::ScaledOrthographic;
        camera.height = 0.5;
        FreeFallParams params;
        params.p0 = {0.0, 1.0, 4.0};
        const ProjectileResult ball = generate_projectile(params, 240.0, 2.5);
        Trajectory2D traj;
        for (const auto& s : ball.samples) {
            traj.samples.push_back({s.t, camera.project(s.p), true});
        }
        const double diameter = 0.073;
        const RigidSizeEstimate est =
            estimate_rigid_size(traj, diameter / camera.q_true(), EstimateConfig{});
        if (std::abs(est.size - diameter) > 1e-6 * diameter) ok = false;
        detail << ", ball " << est.size * 100.0 << " cm";
    } catch (const Error& e) {
        ok = false;
        detail << ", error: " << e.what();
    }
    report(6, "free-fall sanity", ok, detail.str());
}

// --- criterion 7: CLI determinism ------------------------------------------

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void criterion_determinism() {
    bool ok = true;
    std::ostringstream detail;
#ifdef GRAVITY_CLI_PATH
    const std::string cli = GRAVITY_CLI_PATH;
    const std::string quiet = " > acc_cli_stdout.txt 2>&1";
    const std::string sim = "\"" + cli +
                            "\" simulate --out acc_kp.txt --camera ortho --jumps 2"
                            " --scene-fps 60 --noise-sigma 0.4 --outlier-rate 0.02"
                            " --sim-seed 7" +
                            quiet;
    const std::string est_a = "\"" + cli +
                              "\" estimate acc_kp.txt --ransac --seed 5"
                              " --out acc_report_a.txt --plot acc_plot_a.csv" +
                              quiet;
    const std::string est_b = "\"" + cli +
                              "\" estimate acc_kp.txt --ransac --seed 5"
                              " --out acc_report_b.txt --plot acc_plot_b.csv" +
                              quiet;
    if (std::system(sim.c_str()) != 0 || std::system(est_a.c_str()) != 0 ||
        std::system(est_b.c_str()) != 0) {
        ok = false;
        detail << "cli invocation failed";
    } else {
        const std::string a = slurp("acc_report_a.txt");
        const std::string b = slurp("acc_report_b.txt");
        if (a.empty() || a != b) {
            ok = false;
            detail << "reports differ";
        }
        if (slurp("acc_plot_a.csv") != slurp("acc_plot_b.csv")) {
            ok = false;
            detail << " plot data differ";
        }
        if (ok) detail << "byte-identical reports (" << a.size() << " bytes)";
    }
    for (const char* f : {"acc_kp.txt", "acc_report_a.txt", "acc_report_b.txt", "acc_plot_a.csv",
                          "acc_plot_b.csv", "acc_cli_stdout.txt"}) {
        std::remove(f);
    }
#else
    ok = false;
    detail << "cli path not configured";
#endif
    report(7, "cli determinism", ok, detail.str());
}

}  // namespace

int main() {
    criterion_round_trip();
    criterion_table();
    criterion_ransac();
    criterion_invariances();
    criterion_arithmetic();
    criterion_free_fall();
    criterion_determinism();
    std::cout << (failures == 0 ? "all criteria passed" : "some criteria FAILED") << "\n";
    return failures;
}
