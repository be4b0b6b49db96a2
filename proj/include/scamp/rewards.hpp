#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "scamp/body.hpp"
#include "scamp/scene.hpp"

namespace scamp {

// Task objectives: shaped rewards, success tests, and episode termination.
// All distances are in-plane (x = heading axis, y = height).

struct task_spec {
    task_kind kind = task_kind::sit;
    double episode_s = 10.0;  // training horizon; 15 for carry
    double timeout_s = 20.0;  // evaluation success window
    double success_dist = 0.2;  // hip-to-anchor (sit), box-to-target (carry); 0.3 for lie
    double success_head = 0.3;  // lie: head height window
    double fall_height = 0.2;   // lowest non-extremity surface point below this fails
    double box_low = 0.3;       // carry: box center below this fails (once armed)
    double box_arm = 0.45;      // carry: box-low check arms after the center first exceeds this
    double walk_speed = 1.5;    // target approach speed
    double carry_speed = 1.5;   // target box transport speed
    scene_ranges ranges;

    static task_spec defaults(task_kind k) {
        task_spec s;
        s.kind = k;
        if (k == task_kind::lie) s.success_dist = 0.3;
        if (k == task_kind::carry) s.episode_s = 15.0;
        return s;
    }
};

// Per-episode goal geometry, fixed at scene creation. Live object state
// (the carried box) is passed into the reward at each step instead.
struct task_context {
    task_kind kind = task_kind::sit;
    Vector2d object_pos{0.0, 0.0};   // object center (seat/bed)
    Vector2d root_anchor{0.0, 0.0};  // where the hip should come to rest
    double head_target = 0.0;        // lie: head center height at rest
    Vector2d carry_target{0.0, 0.0};  // carry: box center at rest on the drop platform
    double walk_speed = 1.5;
    double carry_speed = 1.5;
};

inline task_context make_task_context(const task_spec& spec,
                                      const std::vector<scene_object>& scene,
                                      const body_def& def) {
    task_context ctx;
    ctx.kind = spec.kind;
    ctx.walk_speed = spec.walk_speed;
    ctx.carry_speed = spec.carry_speed;
    if (spec.kind == task_kind::sit) {
        const scene_object* seat = find_object(scene, object_kind::seat);
        check(seat, "task context: no seat in scene");
        ctx.object_pos = seat->init_pos;
        // the pelvis rests a little above the top face
        ctx.root_anchor = seat->anchor + Vector2d(0.0, dims::sit_rest_hover);
    } else if (spec.kind == task_kind::lie) {
        const scene_object* bed = find_object(scene, object_kind::bed);
        check(bed, "task context: no bed in scene");
        ctx.object_pos = bed->init_pos;
        // lying flat, both pelvis and head centers sit one torso radius
        // above the top surface
        ctx.root_anchor = bed->anchor + Vector2d(0.0, def.torso_r);
        ctx.head_target = bed->head_anchor + def.torso_r;
    } else {
        const scene_object* box = find_object(scene, object_kind::box);
        const scene_object* marker = find_object(scene, object_kind::marker);
        check(box && marker, "task context: carry scene needs box and marker");
        ctx.object_pos = box->init_pos;
        ctx.carry_target = marker->anchor;
    }
    return ctx;
}

// Speed toward a goal along the ground: the horizontal unit vector from
// `from` to `to` dotted with the velocity. Degenerates to signed horizontal
// speed in the plane; zero when the goal is exactly overhead.
inline double speed_toward(const Vector2d& from, const Vector2d& to, const Vector2d& vel) {
    double dx = to.x() - from.x();
    if (dx == 0.0) return 0.0;
    return (dx > 0.0 ? 1.0 : -1.0) * vel.x();
}

// Approach shaping shared by sit and lie: come closer, and move at the
// target speed while far.
inline double reward_approach(const character_state& st, const task_context& ctx) {
    double d2 = (ctx.object_pos - st.root_pos).squaredNorm();
    double v = speed_toward(st.root_pos, ctx.object_pos, st.root_vel);
    double dv = ctx.walk_speed - v;
    return 0.5 * std::exp(-0.5 * d2) + 0.5 * std::exp(-2.0 * dv * dv);
}

inline double reward_sit_near(const character_state& st, const task_context& ctx) {
    return std::exp(-10.0 * (ctx.root_anchor - st.root_pos).squaredNorm());
}

inline double reward_lie_near(const body_def& def, const character_state& st,
                              const task_context& ctx) {
    double dh = ctx.head_target - character_keypoints(def, st).head_center.y();
    return std::exp(-10.0 * (ctx.root_anchor - st.root_pos).squaredNorm() - 10.0 * dh * dh);
}

inline double reward_sit(const character_state& st, const task_context& ctx) {
    double near = reward_sit_near(st, ctx);
    bool far = (ctx.object_pos - st.root_pos).norm() > 0.5;
    return 0.7 * near + 0.3 * (far ? reward_approach(st, ctx) : 1.0);
}

inline double reward_lie(const body_def& def, const character_state& st,
                         const task_context& ctx) {
    double near = reward_lie_near(def, st, ctx);
    bool far = (ctx.object_pos - st.root_pos).norm() > 0.5;
    return 0.7 * near + 0.3 * (far ? reward_approach(st, ctx) : 1.0);
}

// Walk to the box and stay close.
inline double reward_carry_walk(const character_state& st, const Vector2d& box_pos,
                                const task_context& ctx) {
    double d2 = (box_pos - st.root_pos).squaredNorm();
    if (d2 <= 0.25) return 0.2;
    double dv = ctx.walk_speed - speed_toward(st.root_pos, box_pos, st.root_vel);
    return 0.1 * std::exp(-0.5 * d2) + 0.1 * std::exp(-2.0 * dv * dv);
}

// Bring the box to the target: approach + transport-speed + keep-the-hand-
// on-the-box terms while far, a placement term near the target.
inline double reward_carry_transport(const body_def& def, const character_state& st,
                                     const Vector2d& box_pos, const Vector2d& box_vel,
                                     const task_context& ctx) {
    double d2 = (ctx.carry_target - box_pos).squaredNorm();
    double near = 0.2 * std::exp(-10.0 * d2);
    if (d2 <= 0.25) return 0.2 + near;
    double dv = ctx.carry_speed - speed_toward(box_pos, ctx.carry_target, box_vel);
    double dh = character_keypoints(def, st).hand.y() - box_pos.y();
    return 0.2 * std::exp(-0.5 * d2) + 0.2 * std::exp(-2.0 * dv * dv) +
           0.1 * std::exp(-10.0 * dh * dh) + near;
}

inline double reward_carry(const body_def& def, const character_state& st,
                           const Vector2d& box_pos, const Vector2d& box_vel,
                           const task_context& ctx) {
    return reward_carry_walk(st, box_pos, ctx) +
           reward_carry_transport(def, st, box_pos, box_vel, ctx);
}

// Dispatch on the task. Box state is ignored for sit/lie.
inline double task_reward(const task_spec& spec, const body_def& def, const character_state& st,
                          const Vector2d& box_pos, const Vector2d& box_vel,
                          const task_context& ctx) {
    switch (spec.kind) {
        case task_kind::sit: return reward_sit(st, ctx);
        case task_kind::lie: return reward_lie(def, st, ctx);
        case task_kind::carry: return reward_carry(def, st, box_pos, box_vel, ctx);
    }
    return 0.0;
}

inline bool success(const task_spec& spec, const body_def& def, const character_state& st,
                    const Vector2d& box_pos, const task_context& ctx) {
    switch (spec.kind) {
        case task_kind::sit:
            return (st.root_pos - ctx.root_anchor).norm() <= spec.success_dist;
        case task_kind::lie: {
            double head_err =
                std::abs(character_keypoints(def, st).head_center.y() - ctx.head_target);
            return (st.root_pos - ctx.root_anchor).norm() <= spec.success_dist &&
                   head_err <= spec.success_head;
        }
        case task_kind::carry:
            return (box_pos - ctx.carry_target).norm() <= spec.success_dist;
    }
    return false;
}

enum class term_kind { running, fail, timeout };

// Episode termination. The box-low check only arms after the box has been
// lifted once (it legitimately starts resting low in some scenes), so a
// box that was never touched cannot end the episode.
struct termination_tracker {
    bool box_was_high = false;

    term_kind update(const task_spec& spec, const world& w, double box_height, double t) {
        if (lowest_nonextremity_height(w) < spec.fall_height) return term_kind::fail;
        if (spec.kind == task_kind::carry) {
            if (box_height > spec.box_arm) box_was_high = true;
            if (box_was_high && box_height < spec.box_low) return term_kind::fail;
        }
        if (t >= spec.episode_s) return term_kind::timeout;
        return term_kind::running;
    }
};

// Scene draw plus the goal geometry derived from it.
struct task_scene {
    scene_draw draw;
    task_context ctx;
};

inline task_scene randomize_scene(const task_spec& spec, const body_def& def, rng& r) {
    task_scene ts;
    ts.draw = randomize_scene_descs(spec.kind, r, spec.ranges);
    ts.ctx = make_task_context(spec, ts.draw.objects, def);
    return ts;
}

}  // namespace scamp
