#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "evodrive/rng.hpp"

namespace evodrive {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InfeasibleDensity : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Driving intention of a tracked vehicle.
enum class IntentLabel : int { LeftTurn = 0, Straight = 1, RightTurn = 2 };

// High-level maneuver selected by the ego policy.
enum class Maneuver : int { LeftChange = 0, Keep = 1, RightChange = 2 };

enum class Outcome : int { SafeArrived = 0, Collision = 1, WrongLane = 2, Timeout = 3 };

const char* to_string(IntentLabel label);
const char* to_string(Maneuver m);
const char* to_string(Outcome o);
IntentLabel intent_from_string(const std::string& s);
Maneuver maneuver_from_string(const std::string& s);
Outcome outcome_from_string(const std::string& s);

// Hierarchical ego action: discrete maneuver plus two continuous parameters.
// heading in [-0.5, 0.5] rad, accel in [-5, 5] m/s^2.
struct ControlCommand {
    Maneuver maneuver = Maneuver::Keep;
    double heading = 0.0; // [rad]
    double accel = 0.0;   // [m/s^2]

    static constexpr double kHeadingBound = 0.5;
    static constexpr double kAccelBound = 5.0;
};

// Kinematic snapshot of one vehicle in the road frame.
// x is longitudinal (wraps on the ring), y is lateral from the right road edge.
struct VehicleState {
    int id = 0;
    double x = 0.0;       // [m]
    double y = 0.0;       // [m]
    double v_x = 0.0;     // [m/s]
    double v_y = 0.0;     // [m/s]
    double a_x = 0.0;     // [m/s^2]
    double a_y = 0.0;     // [m/s^2]
    double heading = 0.0; // [rad], relative to lane direction
    int lane_index = 0;
    double width = 2.0;   // [m]
    double length = 4.5;  // [m]

    double speed() const { return std::hypot(v_x, v_y); }

    bool operator==(const VehicleState&) const = default;
};

// Scenario parameters. rng_seed fully determines a run.
struct ScenarioConfig {
    int lane_count = 3;
    double road_length = 1000.0; // [m], ring topology
    double density = 100.0;      // [vehicles/km]
    double tick = 0.1;           // [s]
    int max_ticks = 400;
    std::uint64_t rng_seed = 1;
    double ego_desired_speed = 14.0;              // [m/s]
    std::pair<double, double> npc_speed_range = {6.0, 16.0}; // [m/s]
    double k_rho = 0.5;   // density adjustment coefficient
    double a_max = 5.0;   // [m/s^2], max deceleration for stopping distance
    double v_max_world = 40.0;  // [m/s], hard speed cap
    double lane_width = 3.5;    // [m]
    double vehicle_length = 4.5; // [m]
    double vehicle_width = 2.0;  // [m]
    double min_spawn_gap = 8.0;  // [m], bumper-to-bumper at spawn

    double road_width() const { return lane_count * lane_width; }
    double lane_center(int lane) const { return (lane + 0.5) * lane_width; }
    int vehicle_count() const {
        return static_cast<int>(std::floor(density * road_length / 1000.0));
    }
    void validate() const;
};

// Ring helpers. All longitudinal geometry goes through these.
inline double wrap_position(double x, double road_length) {
    x = std::fmod(x, road_length);
    return x < 0.0 ? x + road_length : x;
}

// Shortest signed delta from a to b, in [-road_length/2, road_length/2).
inline double signed_delta(double a, double b, double road_length) {
    double d = std::fmod(b - a, road_length);
    if (d < -road_length / 2.0) d += road_length;
    if (d >= road_length / 2.0) d -= road_length;
    return d;
}

// Forward (downstream) distance from a to b, in [0, road_length).
inline double forward_delta(double a, double b, double road_length) {
    double d = std::fmod(b - a, road_length);
    return d < 0.0 ? d + road_length : d;
}

// One neighbor as seen by the ego, with its inferred intention if any.
struct Neighbor {
    VehicleState state;
    bool intent_known = false;
    IntentLabel intent = IntentLabel::Straight;
    double distance = 0.0; // [m], Euclidean with wrapped dx
};

// Ego-centric view: up to capacity nearest vehicles, sorted by distance.
struct NeighborSet {
    static constexpr int kCapacity = 6;
    VehicleState ego;
    std::vector<Neighbor> neighbors;
};

// Nearest-neighbor extraction around `ego_index`, capped at NeighborSet::kCapacity.
NeighborSet gather_neighbors(const std::vector<VehicleState>& world, std::size_t ego_index,
                             double road_length);

// Place floor(density * road_km) vehicles on the ring with bumper gaps >=
// min_spawn_gap. Ego is vehicle 0, placed mid-lane at a speed that cannot
// collide on the first ticks. Throws InfeasibleDensity when they cannot fit.
std::vector<VehicleState> build_scenario(const ScenarioConfig& config);

} // namespace evodrive
