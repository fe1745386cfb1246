#pragma once

#include <array>
#include <map>
#include <utility>
#include <vector>

#include "evodrive/world.hpp"

namespace evodrive {

// Absolute right-of-way rectangle in the road frame. The lateral extent is
// exactly the owner's width; the longitudinal extent is the density-adjusted
// stopping distance projected on the lane direction.
struct ARowRegion {
    double x_min = 0.0;
    double x_max = 0.0;
    double y_min = 0.0;
    double y_max = 0.0;
    int owner_id = 0;

    double area() const { return (x_max - x_min) * (y_max - y_min); }
};

struct RowViolationEvent {
    int violator_id = 0;
    int victim_id = 0;
    int tick = 0;
    double overlap_area = 0.0;    // [m^2]
    double duration_so_far = 0.0; // [s], 0 on the tick the intersection starts
};

// Convex quadrilateral footprint of a vehicle (center, half extents, heading).
struct OrientedRect {
    double cx = 0.0;
    double cy = 0.0;
    double half_length = 0.0;
    double half_width = 0.0;
    double heading = 0.0; // [rad]

    std::array<std::array<double, 2>, 4> corners() const;

    static OrientedRect from_state(const VehicleState& s) {
        return {s.x, s.y, s.length / 2.0, s.width / 2.0, s.heading};
    }
    static OrientedRect axis_aligned(double x_min, double x_max, double y_min, double y_max) {
        return {(x_min + x_max) / 2.0, (y_min + y_max) / 2.0,
                (x_max - x_min) / 2.0, (y_max - y_min) / 2.0, 0.0};
    }
};

// Density-adjusted stopping distance: L = v^2 / (2 a_max) * 1 / (1 + k_rho rho).
// rho is the local density (vehicles within the +-50 m window, i.e. per 100 m).
double stopping_distance(double v, double a_max, double rho, double k_rho);

// A_ROW bounds for one vehicle. Bounds anchor at the vehicle position and
// extend forward by L cos(heading); a negative extent clamps to zero area.
ARowRegion a_row(const VehicleState& state, double rho, double k_rho, double a_max);

// Local density around `owner`: vehicles (other than the owner) within
// +-50 m longitudinally, any lane. The window is 100 m, so the count is
// already in vehicles per 100 m.
double local_density(const std::vector<VehicleState>& world, std::size_t owner_index,
                     double road_length);

// Exact intersection area of two convex quadrilaterals (Sutherland-Hodgman).
double polygon_intersection_area(const OrientedRect& a, const OrientedRect& b);

// Exact area of footprint inside the region rectangle.
double overlap_area(const OrientedRect& footprint, const ARowRegion& region);

// Separating-axis overlap test for two oriented rectangles.
bool rects_overlap(const OrientedRect& a, const OrientedRect& b);

// Per-pair overlap bookkeeping for the dynamic right-of-way reward: the signed
// change of the overlap area and the time since the intersection started.
struct PairOverlapDelta {
    int violator_id = 0;
    int victim_id = 0;
    double area = 0.0;        // [m^2], current overlap (0 when it just vanished)
    double delta_area = 0.0;  // [m^2], area - previous tick's area
    double seconds_since_start = 0.0;
};

struct ViolationScan {
    std::vector<RowViolationEvent> events;
    std::vector<PairOverlapDelta> deltas;
};

// Stateful detector: regions are recomputed from scratch every tick, but a
// pair that stays in contact across consecutive ticks keeps one event identity
// and a growing duration_so_far.
class ViolationTracker {
public:
    ViolationTracker(double road_length, double tick_seconds, double k_rho, double a_max,
                     double area_epsilon = 0.01)
        : road_length_(road_length), dt_(tick_seconds), k_rho_(k_rho), a_max_(a_max),
          eps_(area_epsilon) {}

    ViolationScan detect(const std::vector<VehicleState>& world, int tick);

    void reset() { active_.clear(); }

private:
    struct Active {
        int start_tick = 0;
        double prev_area = 0.0;
        int last_tick = -1;
    };

    double road_length_;
    double dt_;
    double k_rho_;
    double a_max_;
    double eps_;
    std::map<std::pair<int, int>, Active> active_; // (violator, victim) -> state
};

} // namespace evodrive
