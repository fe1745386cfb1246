#include "evodrive/world.hpp"

#include <algorithm>

namespace evodrive {

const char* to_string(IntentLabel label) {
    switch (label) {
        case IntentLabel::LeftTurn: return "left";
        case IntentLabel::Straight: return "straight";
        case IntentLabel::RightTurn: return "right";
    }
    return "straight";
}

const char* to_string(Maneuver m) {
    switch (m) {
        case Maneuver::LeftChange: return "left_change";
        case Maneuver::Keep: return "keep";
        case Maneuver::RightChange: return "right_change";
    }
    return "keep";
}

const char* to_string(Outcome o) {
    switch (o) {
        case Outcome::SafeArrived: return "safe_arrived";
        case Outcome::Collision: return "collision";
        case Outcome::WrongLane: return "wrong_lane";
        case Outcome::Timeout: return "timeout";
    }
    return "timeout";
}

IntentLabel intent_from_string(const std::string& s) {
    if (s == "left") return IntentLabel::LeftTurn;
    if (s == "right") return IntentLabel::RightTurn;
    if (s == "straight") return IntentLabel::Straight;
    throw ConfigError("unknown intent label: " + s);
}

Maneuver maneuver_from_string(const std::string& s) {
    if (s == "left_change") return Maneuver::LeftChange;
    if (s == "keep") return Maneuver::Keep;
    if (s == "right_change") return Maneuver::RightChange;
    throw ConfigError("unknown maneuver: " + s);
}

Outcome outcome_from_string(const std::string& s) {
    if (s == "safe_arrived") return Outcome::SafeArrived;
    if (s == "collision") return Outcome::Collision;
    if (s == "wrong_lane") return Outcome::WrongLane;
    if (s == "timeout") return Outcome::Timeout;
    throw ConfigError("unknown outcome: " + s);
}

void ScenarioConfig::validate() const {
    if (lane_count < 1) throw ConfigError("lane_count must be >= 1");
    if (road_length <= 0.0) throw ConfigError("road_length must be positive");
    if (density < 0.0) throw ConfigError("density must be non-negative");
    if (tick <= 0.0) throw ConfigError("tick must be positive");
    if (max_ticks < 1) throw ConfigError("max_ticks must be >= 1");
    if (ego_desired_speed < 0.0) throw ConfigError("ego_desired_speed must be non-negative");
    if (npc_speed_range.first < 0.0 || npc_speed_range.second < npc_speed_range.first)
        throw ConfigError("npc_speed_range must be a non-negative, ordered pair");
    if (k_rho < 0.0) throw ConfigError("k_rho must be non-negative");
    if (a_max <= 0.0) throw ConfigError("a_max must be positive");
    if (vehicle_length <= 0.0 || vehicle_width <= 0.0)
        throw ConfigError("vehicle dimensions must be positive");
    if (vehicle_width > lane_width) throw ConfigError("vehicle_width exceeds lane_width");
    if (min_spawn_gap <= 0.0) throw ConfigError("min_spawn_gap must be positive");
}

NeighborSet gather_neighbors(const std::vector<VehicleState>& world, std::size_t ego_index,
                             double road_length) {
    NeighborSet out;
    out.ego = world[ego_index];
    out.neighbors.reserve(NeighborSet::kCapacity);

    std::vector<Neighbor> all;
    all.reserve(world.size());
    for (std::size_t i = 0; i < world.size(); ++i) {
        if (i == ego_index) continue;
        Neighbor n;
        n.state = world[i];
        const double dx = signed_delta(out.ego.x, world[i].x, road_length);
        const double dy = world[i].y - out.ego.y;
        n.distance = std::hypot(dx, dy);
        all.push_back(n);
    }
    std::sort(all.begin(), all.end(), [](const Neighbor& a, const Neighbor& b) {
        if (a.distance != b.distance) return a.distance < b.distance;
        return a.state.id < b.state.id; // stable tie-break for determinism
    });
    const std::size_t take = std::min<std::size_t>(NeighborSet::kCapacity, all.size());
    out.neighbors.assign(all.begin(), all.begin() + take);
    return out;
}

std::vector<VehicleState> build_scenario(const ScenarioConfig& config) {
    config.validate();
    const int count = config.vehicle_count();
    const double slot = config.min_spawn_gap + config.vehicle_length; // center-to-center
    const int per_lane_capacity = static_cast<int>(std::floor(config.road_length / slot));
    if (count > per_lane_capacity * config.lane_count) {
        throw InfeasibleDensity("cannot place " + std::to_string(count) + " vehicles on " +
                                std::to_string(config.road_length) + " m x " +
                                std::to_string(config.lane_count) +
                                " lanes with min gap " + std::to_string(config.min_spawn_gap));
    }

    Rng rng(mix_seed(config.rng_seed, 0));
    std::vector<VehicleState> world;
    world.reserve(count);
    if (count == 0) return world;

    // Vehicles per lane, ego's lane gets the ego slot first.
    const int ego_lane = config.lane_count / 2;
    std::vector<int> lane_counts(config.lane_count, 0);
    for (int i = 0; i < count; ++i) lane_counts[i % config.lane_count] += 1;
    // keep every lane within capacity (round-robin guarantees this given the
    // total fits, since counts differ by at most one)

    int next_id = 0;
    for (int lane = 0; lane < config.lane_count; ++lane) {
        const int n = lane_counts[lane];
        if (n == 0) continue;
        const double pitch = config.road_length / n;
        // Even placement with a bounded jitter that preserves the min gap.
        const double jitter_max = std::max(0.0, (pitch - slot) / 2.0) * 0.9;
        const double phase = rng.uniform(0.0, config.road_length);
        for (int k = 0; k < n; ++k) {
            VehicleState v;
            v.id = next_id++;
            v.x = wrap_position(phase + k * pitch + rng.uniform(-jitter_max, jitter_max),
                                config.road_length);
            v.lane_index = lane;
            v.y = config.lane_center(lane);
            v.width = config.vehicle_width;
            v.length = config.vehicle_length;
            v.v_x = rng.uniform(config.npc_speed_range.first, config.npc_speed_range.second);
            world.push_back(v);
        }
    }

    // Promote the vehicle nearest the ego-lane start to ego (id 0): swap ids so
    // the ego is always id 0 and sits in the middle lane.
    std::size_t ego_idx = 0;
    for (std::size_t i = 0; i < world.size(); ++i) {
        if (world[i].lane_index == ego_lane) {
            ego_idx = i;
            break;
        }
    }
    std::swap(world[0], world[ego_idx]);
    for (std::size_t i = 0; i < world.size(); ++i) world[i].id = static_cast<int>(i);

    // Ego speed: desired speed, capped so that it cannot out-run the gap to its
    // leader within the first second (avoids collisions at the outset).
    VehicleState& ego = world[0];
    double leader_gap = config.road_length;
    double leader_speed = config.ego_desired_speed;
    for (std::size_t i = 1; i < world.size(); ++i) {
        if (world[i].lane_index != ego.lane_index) continue;
        const double fd = forward_delta(ego.x, world[i].x, config.road_length);
        if (fd > 0.0 && fd < leader_gap) {
            leader_gap = fd;
            leader_speed = world[i].v_x;
        }
    }
    const double bumper_gap = leader_gap - config.vehicle_length;
    ego.v_x = std::min(config.ego_desired_speed, std::max(leader_speed, bumper_gap));
    ego.v_x = std::min(ego.v_x, config.v_max_world);

    for (auto& v : world) v.v_x = std::min(v.v_x, config.v_max_world);
    return world;
}

} // namespace evodrive
