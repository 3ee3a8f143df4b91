#include "gravity/fit.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <set>

#include <Eigen/Dense>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gravity {

int ParabolaFit::inlier_count() const {
    return static_cast<int>(std::count(inlier_mask.begin(), inlier_mask.end(), true));
}

namespace {

int distinct_times(const std::vector<TimedValue>& samples) {
    std::set<double> times;
    for (const auto& s : samples) times.insert(s.t);
    return static_cast<int>(times.size());
}

// Least squares on tau = t - t_mid; second-order Vandermonde on raw seconds
// is ill-conditioned for long videos.
ParabolaFit lsq_impl(const std::vector<TimedValue>& samples, const std::vector<bool>* mask) {
    double t_mid = 0.0;
    int n = 0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (mask && !(*mask)[i]) continue;
        t_mid += samples[i].t;
        ++n;
    }
    t_mid /= static_cast<double>(n);

    Eigen::Matrix3d ata = Eigen::Matrix3d::Zero();
    Eigen::Vector3d atb = Eigen::Vector3d::Zero();
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (mask && !(*mask)[i]) continue;
        const double tau = samples[i].t - t_mid;
        const Eigen::Vector3d row{tau * tau, tau, 1.0};
        ata += row * row.transpose();
        atb += row * samples[i].y;
    }
    Eigen::FullPivLU<Eigen::Matrix3d> lu(ata);
    if (!lu.isInvertible()) {
        throw Error(ErrorCode::DegenerateDesign, "sample times are not distinct enough");
    }
    const Eigen::Vector3d c = lu.solve(atb);

    ParabolaFit fit;
    fit.c2 = c[0];
    fit.c1 = c[1] - 2.0 * c[0] * t_mid;
    fit.c0 = (c[0] * t_mid - c[1]) * t_mid + c[2];
    fit.inlier_mask = mask ? *mask : std::vector<bool>(samples.size(), true);

    double ss = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (!fit.inlier_mask[i]) continue;
        const double r = samples[i].y - fit.evaluate(samples[i].t);
        ss += r * r;
    }
    fit.rms_residual = std::sqrt(ss / static_cast<double>(n));
    return fit;
}

}  // namespace

ParabolaFit fit_parabola_lsq(const std::vector<TimedValue>& samples) {
    if (samples.size() < 3 || distinct_times(samples) < 3) {
        throw Error(ErrorCode::DegenerateDesign,
                    "parabola fit needs at least 3 samples with distinct times");
    }
    return lsq_impl(samples, nullptr);
}

namespace {

struct Hypothesis {
    int count = -1;
    double c2 = 0.0, c1 = 0.0, c0 = 0.0;
};

// Exact quadratic through 3 points, centered for conditioning.
bool fit_triple(const std::vector<TimedValue>& samples, const std::array<int, 3>& idx,
                Hypothesis& h) {
    const double t0 = samples[idx[0]].t, t1 = samples[idx[1]].t, t2 = samples[idx[2]].t;
    if (t0 == t1 || t0 == t2 || t1 == t2) return false;
    const double t_mid = (t0 + t1 + t2) / 3.0;
    Eigen::Matrix3d a;
    Eigen::Vector3d b;
    for (int k = 0; k < 3; ++k) {
        const double tau = samples[idx[k]].t - t_mid;
        a.row(k) << tau * tau, tau, 1.0;
        b[k] = samples[idx[k]].y;
    }
    const Eigen::Vector3d c = a.fullPivLu().solve(b);
    h.c2 = c[0];
    h.c1 = c[1] - 2.0 * c[0] * t_mid;
    h.c0 = (c[0] * t_mid - c[1]) * t_mid + c[2];
    return true;
}

int count_inliers(const std::vector<TimedValue>& samples, const Hypothesis& h, double tol) {
    int count = 0;
    for (const auto& s : samples) {
        const double r = s.y - ((h.c2 * s.t + h.c1) * s.t + h.c0);
        if (std::abs(r) <= tol) ++count;
    }
    return count;
}

}  // namespace

ParabolaFit fit_parabola_ransac(const std::vector<TimedValue>& samples,
                                const RansacParams& params) {
    const int n = static_cast<int>(samples.size());
    if (n < 4) {
        return fit_parabola_lsq(samples);
    }

    // Minimal samples are drawn up front from one seeded stream so the
    // serial and parallel evaluation orders cannot change the result.
    std::mt19937_64 rng(params.seed);
    std::uniform_int_distribution<int> pick(0, n - 1);
    std::vector<std::array<int, 3>> triples(static_cast<std::size_t>(params.iterations));
    for (auto& triple : triples) {
        triple[0] = pick(rng);
        do { triple[1] = pick(rng); } while (triple[1] == triple[0]);
        do { triple[2] = pick(rng); } while (triple[2] == triple[0] || triple[2] == triple[1]);
    }

    std::vector<Hypothesis> hypotheses(triples.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (params.parallel)
#endif
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(triples.size()); ++i) {
        Hypothesis h;
        if (fit_triple(samples, triples[static_cast<std::size_t>(i)], h)) {
            h.count = count_inliers(samples, h, params.inlier_tol);
        }
        hypotheses[static_cast<std::size_t>(i)] = h;
    }

    // Consensus-maximal model; ties resolved toward the lowest iteration.
    std::size_t best = 0;
    for (std::size_t i = 1; i < hypotheses.size(); ++i) {
        if (hypotheses[i].count > hypotheses[best].count) best = i;
    }
    if (hypotheses[best].count < 4) {
        throw Error(ErrorCode::NoConsensus, "best RANSAC model has fewer than 4 inliers");
    }

    std::vector<bool> mask(samples.size(), false);
    const Hypothesis& h = hypotheses[best];
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double r = samples[i].y - ((h.c2 * samples[i].t + h.c1) * samples[i].t + h.c0);
        mask[i] = std::abs(r) <= params.inlier_tol;
    }
    return lsq_impl(samples, &mask);
}

double acceleration_distance_based(const Trajectory2D& traj, const FlightSegment& segment) {
    if (segment.end <= segment.peak) {
        throw Error(ErrorCode::ZeroDuration, "segment end does not follow the peak");
    }
    const auto& peak = traj.samples[segment.peak];
    const auto& end = traj.samples[segment.end];
    if (!peak.valid || !end.valid) {
        throw Error(ErrorCode::InvalidArgument, "peak or end sample is invalid");
    }
    const double dt = end.t - peak.t;
    if (dt <= 0.0) {
        throw Error(ErrorCode::ZeroDuration, "peak and end coincide in time");
    }
    // Downward fall in up-positive coordinates gives a positive value.
    return 2.0 * (peak.point.y - end.point.y) / (dt * dt);
}

std::vector<TimedValue> segment_values_y(const Trajectory2D& traj, const FlightSegment& segment) {
    std::vector<TimedValue> values;
    for (int i = segment.start; i <= segment.end; ++i) {
        if (!traj.samples[i].valid) continue;
        values.push_back({traj.samples[i].t, traj.samples[i].point.y});
    }
    return values;
}

std::vector<TimedValue> segment_values_x(const Trajectory2D& traj, const FlightSegment& segment) {
    std::vector<TimedValue> values;
    for (int i = segment.start; i <= segment.end; ++i) {
        if (!traj.samples[i].valid) continue;
        values.push_back({traj.samples[i].t, traj.samples[i].point.x});
    }
    return values;
}

double max_acceleration_rotation_angle(const Trajectory2D& traj, const FlightSegment& segment) {
    const ParabolaFit fit_x = fit_parabola_lsq(segment_values_x(traj, segment));
    const ParabolaFit fit_y = fit_parabola_lsq(segment_values_y(traj, segment));
    const double ax = fit_x.a_px();
    const double ay = fit_y.a_px();
    // Rotate the acceleration vector onto the negative vertical axis.
    return -M_PI / 2.0 - std::atan2(ay, ax);
}

Trajectory2D rotate_trajectory(const Trajectory2D& traj, double angle) {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    Trajectory2D out = traj;
    for (auto& sample : out.samples) {
        if (!sample.valid) continue;
        const Point2 p = sample.point;
        sample.point = {c * p.x - s * p.y, s * p.x + c * p.y};
    }
    return out;
}

Trajectory2D rotate_to_max_acceleration(const Trajectory2D& traj, const FlightSegment& segment) {
    return rotate_trajectory(traj, max_acceleration_rotation_angle(traj, segment));
}

}  // namespace gravity
