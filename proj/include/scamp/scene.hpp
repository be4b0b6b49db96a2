#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "scamp/body.hpp"
#include "scamp/rng.hpp"
#include "scamp/sim.hpp"

namespace scamp {

enum class object_kind { seat, bed, box, platform, marker };

inline const char* object_kind_name(object_kind k) {
    switch (k) {
        case object_kind::seat: return "seat";
        case object_kind::bed: return "bed";
        case object_kind::box: return "box";
        case object_kind::platform: return "platform";
        case object_kind::marker: return "marker";
    }
    return "?";
}

enum class task_kind { sit, lie, carry };

inline const char* task_name(task_kind t) {
    switch (t) {
        case task_kind::sit: return "sit";
        case task_kind::lie: return "lie";
        case task_kind::carry: return "carry";
    }
    return "?";
}

inline task_kind parse_task(const std::string& s) {
    if (s == "sit") return task_kind::sit;
    if (s == "lie") return task_kind::lie;
    if (s == "carry") return task_kind::carry;
    throw config_error("unknown task: " + s);
}

// A scene element. Extents are stored as HALF-extents; half_d is the
// out-of-plane half-depth (bookkeeping only, it never touches the solver).
// `anchor` is the pelvis-position target for sit/lie and the box-center
// target for carry markers; `head_anchor` is the target head height when
// lying. Anchors always lie on/inside the object's bounding volume.
struct scene_object {
    object_kind kind = object_kind::marker;
    int body = -1;  // index into world.bodies, -1 for marker
    double half_w = 0.0, half_h = 0.0, half_d = 0.0;
    double density = 0.0;  // kg/m^3 (dynamic boxes)
    Vector2d anchor{0.0, 0.0};
    Vector2d init_pos{0.0, 0.0};  // body center at rest; pose fallback without a body
    double head_anchor = 0.0;

    Eigen::Vector3d extents() const {
        return Eigen::Vector3d(2.0 * half_w, 2.0 * half_h, 2.0 * half_d);
    }
    Vector2d position(const world& w) const {
        return body >= 0 ? w.bodies[size_t(body)].pos : init_pos;
    }
    double angle(const world& w) const {
        return body >= 0 ? w.bodies[size_t(body)].angle : 0.0;
    }
};

namespace dims {
// Unscaled full extents (w, h, d) of the stock objects, meters.
inline constexpr double seat_w = 0.5, seat_h = 0.45, seat_d = 0.5;
inline constexpr double bed_w = 1.8, bed_h = 0.35, bed_d = 0.9;
inline constexpr double box_w = 0.5, box_h = 0.35, box_d = 0.3;
inline constexpr double platform_w = 0.5, platform_h = 0.6, platform_d = 0.5;
inline constexpr double box_density = 100.0;  // default, ~5.25 kg at scale 1
// Seated pelvis-center height above a seat top face (half pelvis thickness
// plus skin clearance); shared by the clip generator and the sit target.
inline constexpr double sit_rest_hover = 0.045;
}  // namespace dims

// Pure descriptors (body = -1). The synthetic clip generator works from
// these without a simulator; the add_* builders below attach the matching
// rigid body to a world.

inline scene_object seat_desc(double x, double scale) {
    scene_object o;
    o.kind = object_kind::seat;
    o.half_w = 0.5 * dims::seat_w * scale;
    o.half_h = 0.5 * dims::seat_h * scale;
    o.half_d = 0.5 * dims::seat_d * scale;
    o.anchor = Vector2d(x, 2.0 * o.half_h);  // center of the top face
    o.init_pos = Vector2d(x, o.half_h);
    return o;
}

inline scene_object bed_desc(double x, double scale) {
    scene_object o;
    o.kind = object_kind::bed;
    o.half_w = 0.5 * dims::bed_w * scale;
    o.half_h = 0.5 * dims::bed_h * scale;
    o.half_d = 0.5 * dims::bed_d * scale;
    o.anchor = Vector2d(x, 2.0 * o.half_h);
    o.init_pos = Vector2d(x, o.half_h);
    o.head_anchor = 2.0 * o.half_h;  // head resting height = top surface
    return o;
}

inline scene_object platform_desc(double x, double w_scale = 1.0) {
    scene_object o;
    o.kind = object_kind::platform;
    o.half_w = 0.5 * dims::platform_w * w_scale;
    o.half_h = 0.5 * dims::platform_h;
    o.half_d = 0.5 * dims::platform_d;
    o.anchor = Vector2d(x, 2.0 * o.half_h);
    o.init_pos = Vector2d(x, o.half_h);
    return o;
}

// Descriptor for a box resting with its bottom face at y_bottom; anchor is
// the center. position()/angle() fall back to the anchor while body < 0.
inline scene_object box_desc(double x, double y_bottom, double scale,
                             double density = dims::box_density) {
    scene_object o;
    o.kind = object_kind::box;
    o.half_w = 0.5 * dims::box_w * scale;
    o.half_h = 0.5 * dims::box_h * scale;
    o.half_d = 0.5 * dims::box_d * scale;
    o.density = density;
    o.anchor = Vector2d(x, y_bottom + o.half_h);
    o.init_pos = o.anchor;
    return o;
}

inline scene_object marker_desc(Vector2d pos) {
    scene_object o;
    o.kind = object_kind::marker;
    o.anchor = pos;
    o.init_pos = pos;
    return o;
}

inline scene_object add_seat(world& w, double x, double scale, double friction = 0.8) {
    scene_object o = seat_desc(x, scale);
    o.body = w.add_static_box(Vector2d(x, o.half_h), o.half_w, o.half_h, friction);
    return o;
}

inline scene_object add_bed(world& w, double x, double scale, double friction = 0.8) {
    scene_object o = bed_desc(x, scale);
    o.body = w.add_static_box(Vector2d(x, o.half_h), o.half_w, o.half_h, friction);
    return o;
}

// Platforms support the box but never collide with the character: in the
// full 3D scene they stand beside the walking line, so the planar slice
// keeps only their box-support role. They share the character's collision
// group to realize that.
inline scene_object add_platform(world& w, double x, double friction = 0.8,
                                 double w_scale = 1.0) {
    scene_object o = platform_desc(x, w_scale);
    o.body = w.add_static_box(Vector2d(x, o.half_h), o.half_w, o.half_h, friction,
                              kCharacterGroup);
    return o;
}

// Dynamic box resting with its bottom face at y_bottom. Mass comes from the
// full 3D volume times density, inertia from the planar cross-section.
inline scene_object add_box(world& w, double x, double y_bottom, double scale,
                            double density = dims::box_density, double friction = 0.6) {
    scene_object o = box_desc(x, y_bottom, scale, density);
    double mass = density * o.extents().prod();
    check(mass > 0.0, "add_box: non-positive mass");
    body_builder bb;
    bb.add_box(Vector2d(0.0, 0.0), o.half_w, o.half_h, mass);
    rigid_body b = bb.finalize(friction, -1);
    b.pos = o.init_pos;
    b.update_bound();
    o.body = w.add_body(b);
    return o;
}

inline const scene_object* find_object(const std::vector<scene_object>& scene, object_kind kind) {
    for (const scene_object& o : scene)
        if (o.kind == kind) return &o;
    return nullptr;
}

// Non-physical target marker (e.g. where a carried box should end up).
inline scene_object add_marker(Vector2d pos) { return marker_desc(pos); }

// Scene randomization ranges shared by training environments and the
// synthetic data generator, so reference clips and rollouts see the same
// object distribution.
struct scene_ranges {
    double dist_lo = 1.0, dist_hi = 10.0;  // object anchor distance, m
    double sitlie_scale_lo = 0.8, sitlie_scale_hi = 1.2;
    double carry_scale_lo = 0.5, carry_scale_hi = 1.5;
    bool randomize_density = false;  // draw box mass instead of the default density
    double mass_lo = 5.0, mass_hi = 26.0;
    double target_gap_lo = 1.5, target_gap_hi = 4.0;  // carry target beyond the pickup
};

// Canonical (right-facing) scene draw. The raw orientation angle is kept;
// in the plane it degenerates to which side of the character the scene
// sits on, realized as a whole-world mirror by the environment.
struct scene_draw {
    std::vector<scene_object> objects;
    double theta = 0.0;  // U[0, 2pi)
    int side = 1;        // +1 when cos(theta) >= 0, else -1
};

inline scene_draw randomize_scene_descs(task_kind task, rng& r, const scene_ranges& g = {}) {
    scene_draw d;
    d.theta = r.uniform(0.0, 2.0 * kPi);
    d.side = std::cos(d.theta) >= 0.0 ? 1 : -1;
    double dist = r.uniform(g.dist_lo, g.dist_hi);
    if (task == task_kind::sit) {
        d.objects.push_back(seat_desc(dist, r.uniform(g.sitlie_scale_lo, g.sitlie_scale_hi)));
        return d;
    }
    if (task == task_kind::lie) {
        d.objects.push_back(bed_desc(dist, r.uniform(g.sitlie_scale_lo, g.sitlie_scale_hi)));
        return d;
    }
    double scale = r.uniform(g.carry_scale_lo, g.carry_scale_hi);
    double density = dims::box_density;
    if (g.randomize_density) {
        scene_object probe = box_desc(0.0, 0.0, scale);
        density = r.uniform(g.mass_lo, g.mass_hi) / probe.extents().prod();
    }
    double plat_w_scale = scale + 0.4;  // pickup/drop platforms wider than the box
    scene_object pick = platform_desc(dist, plat_w_scale);
    scene_object box = box_desc(dist, 2.0 * pick.half_h, scale, density);
    double target_x = dist + r.uniform(g.target_gap_lo, g.target_gap_hi);
    scene_object drop = platform_desc(target_x, plat_w_scale);
    scene_object target = marker_desc(Vector2d(target_x, 2.0 * drop.half_h + box.half_h));
    d.objects = {box, target, pick, drop};
    return d;
}

}  // namespace scamp
