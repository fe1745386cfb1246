#include "evodrive/row.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

namespace evodrive {

std::array<std::array<double, 2>, 4> OrientedRect::corners() const {
    const double c = std::cos(heading);
    const double s = std::sin(heading);
    // local axes: u along heading, v across
    const double ux = c * half_length, uy = s * half_length;
    const double vx = -s * half_width, vy = c * half_width;
    return {{{cx + ux + vx, cy + uy + vy},
             {cx + ux - vx, cy + uy - vy},
             {cx - ux - vx, cy - uy - vy},
             {cx - ux + vx, cy - uy + vy}}};
}

double stopping_distance(double v, double a_max, double rho, double k_rho) {
    if (a_max <= 0.0) throw DomainError("stopping_distance: a_max must be positive");
    const double base = v * v / (2.0 * a_max);
    return base / (1.0 + k_rho * rho);
}

ARowRegion a_row(const VehicleState& state, double rho, double k_rho, double a_max) {
    const double speed = state.speed();
    const double len = stopping_distance(speed, a_max, rho, k_rho);
    ARowRegion r;
    r.owner_id = state.id;
    r.x_min = state.x;
    r.x_max = state.x + len * std::cos(state.heading);
    if (r.x_max < r.x_min) r.x_max = r.x_min; // backward-facing extent clamps to zero
    r.y_min = state.y - state.width / 2.0;
    r.y_max = state.y + state.width / 2.0;
    return r;
}

double local_density(const std::vector<VehicleState>& world, std::size_t owner_index,
                     double road_length) {
    int count = 0;
    const double x0 = world[owner_index].x;
    for (std::size_t i = 0; i < world.size(); ++i) {
        if (i == owner_index) continue;
        if (std::abs(signed_delta(x0, world[i].x, road_length)) <= 50.0) ++count;
    }
    return static_cast<double>(count);
}

namespace {

using Poly = std::vector<std::array<double, 2>>;

// Clip `poly` against the half-plane to the left of edge (a -> b).
Poly clip_edge(const Poly& poly, const std::array<double, 2>& a, const std::array<double, 2>& b) {
    Poly out;
    out.reserve(poly.size() + 1);
    const double ex = b[0] - a[0];
    const double ey = b[1] - a[1];
    auto side = [&](const std::array<double, 2>& p) {
        return ex * (p[1] - a[1]) - ey * (p[0] - a[0]);
    };
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const auto& cur = poly[i];
        const auto& nxt = poly[(i + 1) % n];
        const double sc = side(cur);
        const double sn = side(nxt);
        if (sc >= 0.0) out.push_back(cur);
        if ((sc > 0.0 && sn < 0.0) || (sc < 0.0 && sn > 0.0)) {
            const double t = sc / (sc - sn);
            out.push_back({cur[0] + t * (nxt[0] - cur[0]), cur[1] + t * (nxt[1] - cur[1])});
        }
    }
    return out;
}

double shoelace(const Poly& poly) {
    if (poly.size() < 3) return 0.0;
    double twice = 0.0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const auto& p = poly[i];
        const auto& q = poly[(i + 1) % poly.size()];
        twice += p[0] * q[1] - q[0] * p[1];
    }
    return std::abs(twice) / 2.0;
}

} // namespace

double polygon_intersection_area(const OrientedRect& a, const OrientedRect& b) {
    const auto ca = a.corners();
    const auto cb = b.corners();
    Poly poly(ca.begin(), ca.end());
    for (int i = 0; i < 4 && !poly.empty(); ++i) {
        poly = clip_edge(poly, cb[i], cb[(i + 1) % 4]);
    }
    return shoelace(poly);
}

double overlap_area(const OrientedRect& footprint, const ARowRegion& region) {
    if (region.x_max <= region.x_min || region.y_max <= region.y_min) return 0.0;
    const OrientedRect box =
        OrientedRect::axis_aligned(region.x_min, region.x_max, region.y_min, region.y_max);
    return polygon_intersection_area(footprint, box);
}

bool rects_overlap(const OrientedRect& a, const OrientedRect& b) {
    const auto ca = a.corners();
    const auto cb = b.corners();
    // Candidate separating axes: the two edge normals of each rectangle.
    const std::array<std::array<double, 2>, 4> axes = {{
        {std::cos(a.heading), std::sin(a.heading)},
        {-std::sin(a.heading), std::cos(a.heading)},
        {std::cos(b.heading), std::sin(b.heading)},
        {-std::sin(b.heading), std::cos(b.heading)},
    }};
    for (const auto& ax : axes) {
        double amin = 1e300, amax = -1e300, bmin = 1e300, bmax = -1e300;
        for (const auto& p : ca) {
            const double t = p[0] * ax[0] + p[1] * ax[1];
            amin = std::min(amin, t);
            amax = std::max(amax, t);
        }
        for (const auto& p : cb) {
            const double t = p[0] * ax[0] + p[1] * ax[1];
            bmin = std::min(bmin, t);
            bmax = std::max(bmax, t);
        }
        if (amax < bmin || bmax < amin) return false;
    }
    return true;
}

ViolationScan ViolationTracker::detect(const std::vector<VehicleState>& world, int tick) {
    ViolationScan scan;
    const std::size_t n = world.size();

    // Regions recomputed every tick from the current motion state.
    std::vector<ARowRegion> regions(n);
    std::vector<double> region_reach(n);
    for (std::size_t i = 0; i < n; ++i) {
        regions[i] = a_row(world[i], local_density(world, i, road_length_), k_rho_, a_max_);
        region_reach[i] = regions[i].x_max - regions[i].x_min;
    }

    std::map<std::pair<int, int>, double> current; // (violator, victim) -> area
    for (std::size_t victim = 0; victim < n; ++victim) {
        const ARowRegion& region = regions[victim];
        if (region.area() <= 0.0) continue;
        for (std::size_t violator = 0; violator < n; ++violator) {
            if (violator == victim) continue;
            const VehicleState& v = world[violator];
            // Broad phase: shift the violator next to the victim on the ring
            // and reject far-apart pairs cheaply.
            const double dx = signed_delta(world[victim].x, v.x, road_length_);
            if (dx < -v.length || dx > region_reach[victim] + v.length) continue;
            if (std::abs(v.y - world[victim].y) >
                (region.y_max - region.y_min) / 2.0 + v.width / 2.0 + v.length / 2.0)
                continue;
            OrientedRect fp = OrientedRect::from_state(v);
            fp.cx = world[victim].x + dx;
            const double area = overlap_area(fp, region);
            if (area > 0.0) {
                current[{v.id, world[victim].id}] = area;
            }
        }
    }

    // Merge with active pairs: extend, open, or close.
    for (const auto& [key, area] : current) {
        auto it = active_.find(key);
        if (it == active_.end() && area > eps_) {
            it = active_.emplace(key, Active{tick, 0.0, tick}).first;
        }
        if (it != active_.end()) {
            // Pairs continuing below eps_ stay open until they fully separate.
            PairOverlapDelta d;
            d.violator_id = key.first;
            d.victim_id = key.second;
            d.area = area;
            d.delta_area = area - it->second.prev_area;
            d.seconds_since_start = (tick - it->second.start_tick) * dt_;
            scan.deltas.push_back(d);
            if (area > eps_) {
                RowViolationEvent ev;
                ev.violator_id = key.first;
                ev.victim_id = key.second;
                ev.tick = tick;
                ev.overlap_area = area;
                ev.duration_so_far = (tick - it->second.start_tick) * dt_;
                scan.events.push_back(ev);
            }
            it->second.prev_area = area;
            it->second.last_tick = tick;
        }
    }
    // Close pairs that separated this tick; report the final shrink to zero.
    for (auto it = active_.begin(); it != active_.end();) {
        if (it->second.last_tick != tick) {
            PairOverlapDelta d;
            d.violator_id = it->first.first;
            d.victim_id = it->first.second;
            d.area = 0.0;
            d.delta_area = -it->second.prev_area;
            d.seconds_since_start = (tick - it->second.start_tick) * dt_;
            scan.deltas.push_back(d);
            it = active_.erase(it);
        } else {
            ++it;
        }
    }
    // Deterministic order for downstream consumers.
    std::sort(scan.events.begin(), scan.events.end(), [](const auto& a, const auto& b) {
        return std::tie(a.violator_id, a.victim_id) < std::tie(b.violator_id, b.victim_id);
    });
    std::sort(scan.deltas.begin(), scan.deltas.end(), [](const auto& a, const auto& b) {
        return std::tie(a.violator_id, a.victim_id) < std::tie(b.violator_id, b.victim_id);
    });
    return scan;
}

} // namespace evodrive
