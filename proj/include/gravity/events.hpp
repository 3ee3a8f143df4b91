#ifndef GRAVITY_EVENTS_HPP
#define GRAVITY_EVENTS_HPP

#include <vector>

#include "gravity/com.hpp"

namespace gravity {

/// Contiguous run of trajectory indices attributed to free fall.
struct FlightSegment {
    int start = 0;      // inclusive
    int end = 0;        // inclusive
    int peak = 0;
    double floor_y = 0.0;  // meaningful for on-spot selection only

    int length() const { return end - start + 1; }
};

inline constexpr int kDefaultPeakHalfWindow = 10;
inline constexpr int kDefaultFloorFrames = 100;
inline constexpr double kDefaultFlightFraction = 0.15;

/// Indices whose vertical value dominates a +-half_window neighborhood.
/// Plateaus report the lowest index only; windows truncate at boundaries and
/// invalid samples are skipped.
std::vector<int> find_peaks(const Trajectory2D& traj,
                            int half_window = kDefaultPeakHalfWindow);

/// Median vertical value of the valid samples among the first n_frames.
double estimate_floor(const Trajectory2D& traj, int n_frames = kDefaultFloorFrames);

/// On-spot rule: maximal contiguous valid run around the peak whose samples
/// stay at least `fraction` of the peak elevation above the floor.
FlightSegment select_flight_segment(const Trajectory2D& traj, int peak, double floor_y,
                                    double fraction = kDefaultFlightFraction);

/// Lateral rule: per side of the peak, find the nearest local minimum
/// (boundaries count) and keep samples in the upper half between that
/// minimum and the peak.
FlightSegment select_flight_segment_lateral(const Trajectory2D& traj, int peak);

}  // namespace gravity

#endif
