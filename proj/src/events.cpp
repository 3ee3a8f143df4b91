#include "gravity/events.hpp"

#include <algorithm>
#include <vector>

namespace gravity {

std::vector<int> find_peaks(const Trajectory2D& traj, int half_window) {
    const int n = static_cast<int>(traj.size());
    std::vector<int> peaks;
    for (int m = 0; m < n; ++m) {
        if (!traj.samples[m].valid) continue;
        const double y_m = traj.samples[m].point.y;
        bool is_peak = true;
        bool dominates_any = false;
        const int lo = std::max(0, m - half_window);
        const int hi = std::min(n - 1, m + half_window);
        for (int t = lo; t <= hi && is_peak; ++t) {
            if (t == m || !traj.samples[t].valid) continue;
            const double y_t = traj.samples[t].point.y;
            // Strict dominance; plateaus keep the lowest index only, and an
            // all-equal window is no peak at all.
            if (y_t > y_m || (y_t == y_m && t < m)) {
                is_peak = false;
            } else if (y_t < y_m) {
                dominates_any = true;
            }
        }
        if (is_peak && dominates_any) peaks.push_back(m);
    }
    return peaks;
}

double estimate_floor(const Trajectory2D& traj, int n_frames) {
    const int n = std::min<int>(n_frames, static_cast<int>(traj.size()));
    std::vector<double> values;
    for (int i = 0; i < n; ++i) {
        if (traj.samples[i].valid) values.push_back(traj.samples[i].point.y);
    }
    if (values.empty()) {
        throw Error(ErrorCode::NoValidSamples, "no valid samples in the floor window");
    }
    std::sort(values.begin(), values.end());
    const std::size_t k = values.size();
    return k % 2 == 1 ? values[k / 2] : 0.5 * (values[k / 2 - 1] + values[k / 2]);
}

namespace {

FlightSegment make_segment(const Trajectory2D& traj, int s, int e, int peak, double floor_y) {
    if (e - s < 2) {
        throw Error(ErrorCode::SegmentTooShort,
                    "flight segment around peak " + std::to_string(peak) + " has only " +
                        std::to_string(e - s + 1) + " samples");
    }
    (void)traj;
    return FlightSegment{s, e, peak, floor_y};
}

}  // namespace

FlightSegment select_flight_segment(const Trajectory2D& traj, int peak, double floor_y,
                                    double fraction) {
    const int n = static_cast<int>(traj.size());
    if (peak < 0 || peak >= n || !traj.samples[peak].valid) {
        throw Error(ErrorCode::InvalidArgument, "peak index is out of range or invalid");
    }
    const double y_m = traj.samples[peak].point.y;
    if (!(y_m > floor_y)) {
        throw Error(ErrorCode::InvalidArgument, "peak does not rise above the floor");
    }
    const double cut = floor_y + fraction * (y_m - floor_y);
    int s = peak;
    while (s > 0 && traj.samples[s - 1].valid && traj.samples[s - 1].point.y >= cut) --s;
    int e = peak;
    while (e + 1 < n && traj.samples[e + 1].valid && traj.samples[e + 1].point.y >= cut) ++e;
    return make_segment(traj, s, e, peak, floor_y);
}

namespace {

// Lowest valid value on one side of the peak. A plain minimum (rather than a
// walk that stops at the first ascent) keeps isolated outliers from
// truncating the half-height reference.
double side_minimum(const Trajectory2D& traj, int peak, int step) {
    const int n = static_cast<int>(traj.size());
    double value = traj.samples[peak].point.y;
    for (int j = peak + step; j >= 0 && j < n; j += step) {
        if (!traj.samples[j].valid) continue;
        value = std::min(value, traj.samples[j].point.y);
    }
    return value;
}

}  // namespace

FlightSegment select_flight_segment_lateral(const Trajectory2D& traj, int peak) {
    const int n = static_cast<int>(traj.size());
    if (peak < 0 || peak >= n || !traj.samples[peak].valid) {
        throw Error(ErrorCode::InvalidArgument, "peak index is out of range or invalid");
    }
    const double y_m = traj.samples[peak].point.y;
    const double v_left = side_minimum(traj, peak, -1);
    const double v_right = side_minimum(traj, peak, +1);
    const double cut_left = v_left + 0.5 * (y_m - v_left);
    const double cut_right = v_right + 0.5 * (y_m - v_right);
    int s = peak;
    while (s > 0 && traj.samples[s - 1].valid && traj.samples[s - 1].point.y >= cut_left) --s;
    int e = peak;
    while (e + 1 < n && traj.samples[e + 1].valid && traj.samples[e + 1].point.y >= cut_right) ++e;
    return make_segment(traj, s, e, peak, std::min(v_left, v_right));
}

}  // namespace gravity
