#pragma once

#include <cmath>
#include <vector>

#include "scamp/body.hpp"
#include "scamp/clips.hpp"
#include "scamp/scene.hpp"

namespace scamp {

// Gait and phase-timing knobs for the scripted clip generator.
struct synth_params {
    double fps = 30.0;
    double walk_speed = 1.4;  // m/s nominal
    double accel = 2.0;       // m/s^2 speed ramp
    double cycle = 0.60;      // s per full stride cycle
    double duty = 0.55;       // stance fraction of the cycle
    double walk_hip = 0.86;   // pelvis height while walking
    double bob = 0.015;       // pelvis bob amplitude
    double lean = -0.06;      // torso pitch at full stride (forward)
    double arm_swing = 0.25;  // shoulder swing amplitude, rad
    double step_h = 0.09;     // swing-foot clearance
    double idle_time = 0.6;   // lead-in stand
    double settle_time = 1.5; // hold at the end
    double sit_hover = dims::sit_rest_hover;  // seated pelvis height above the anchor
    double carry_speed = 1.1;
    double locomotion_dist = 4.0;  // plain walking clips
    double idle_clip_time = 3.0;

    void jitter(rng& r) {
        walk_speed *= r.uniform(0.88, 1.12);
        cycle *= r.uniform(0.92, 1.08);
        walk_hip += r.uniform(-0.02, 0.02);
        arm_swing *= r.uniform(0.7, 1.3);
        step_h *= r.uniform(0.8, 1.2);
        lean *= r.uniform(0.6, 1.4);
        carry_speed *= r.uniform(0.9, 1.1);
    }
};

namespace synth_detail {

inline double smoothstep(double u) {
    u = clamp(u, 0.0, 1.0);
    return u * u * (3.0 - 2.0 * u);
}

inline double move_toward(double cur, double target, double max_step) {
    double d = target - cur;
    return cur + clamp(d, -max_step, max_step);
}

// Two-link leg inverse kinematics. The default branch bends the knee the
// walking way (shin swept backward, q_knee <= 0); the tuck branch folds it
// the other way, which keeps the knees up and back when the feet are
// planted behind the hip (sitting down, lying with bent legs) instead of
// driving them forward into whatever the character is settling onto.
// Unreachable targets are pulled onto the reach envelope. Returns
// (q_hip, q_knee).
inline Vector2d leg_ik(const body_def& def, const Vector2d& hip, double root_angle,
                       Vector2d ankle, bool tuck = false) {
    const double l1 = def.thigh_len, l2 = def.shin_len;
    Vector2d d = ankle - hip;
    double r = d.norm();
    if (r < 1e-9) {
        d = Vector2d(0.0, -1.0);
        r = 1.0;
    }
    double rc = clamp(r, std::abs(l1 - l2) + 1e-3, (l1 + l2) * 0.999);
    d *= rc / r;
    double cq = clamp((rc * rc - l1 * l1 - l2 * l2) / (2.0 * l1 * l2), -1.0, 1.0);
    double q_knee = tuck ? std::acos(cq) : -std::acos(cq);
    double beta = std::atan2(l2 * std::sin(q_knee), l1 + l2 * std::cos(q_knee));
    double a = std::atan2(d.x(), -d.y()) - beta;
    auto lim = joint_limit_table(def);
    double q_hip = clamp(wrap_angle(a - root_angle), lim[2].first, lim[2].second);
    q_knee = tuck ? clamp(q_knee, 0.01, lim[3].second) : clamp(q_knee, lim[3].first, -0.01);
    return Vector2d(q_hip, q_knee);
}

// Sequentially scripted pose track. Walking feet come from a phase
// integrator driven by the current root speed, so steps shorten naturally
// as the character decelerates and freeze at rest.
struct clip_builder {
    const body_def& def;
    synth_params p;
    double dt;

    // live state
    double x = 0.0, y = 0.0, pitch = 0.0, q_neck = 0.0, q_shoulder = 0.0;
    double speed = 0.0;
    double phase = 0.0;
    bool swinging[2] = {false, false};
    double lift_x[2] = {0.0, 0.0};
    Vector2d foot[2];
    Vector2d obj{0.0, 0.0};
    double obj_angle = 0.0;
    bool tuck = false;  // leg IK branch: knees folded up/back instead of forward
    // While carrying, the box rides against the torso front and the arm
    // drapes over its top: both poses are fixed in the root frame.
    enum arm_state { arm_swing, arm_carry };
    arm_state arm = arm_swing;
    Vector2d carry_box_local{0.0, 0.0};
    Vector2d carry_hand_local{0.0, 0.0};

    struct sample {
        double x, y, pitch, q_neck, q_shoulder;
        Vector2d foot_l, foot_r, obj;
        double obj_angle;
        bool tuck;
    };
    std::vector<sample> samples;

    clip_builder(const body_def& d, const synth_params& pp, double start_x, rng& r)
        : def(d), p(pp), dt(1.0 / pp.fps) {
        x = start_x;
        y = d.standing_hip_height();
        double stagger = r.uniform(0.05, 0.09);
        foot[0] = Vector2d(x + stagger, d.ankle_height());
        foot[1] = Vector2d(x - stagger, d.ankle_height());
        phase = r.uniform(0.0, 0.2);
    }

    Vector2d shoulder_point() const {
        return Vector2d(x, y) + rot2(pitch).apply(Vector2d(0.0, def.torso_len - def.shoulder_drop));
    }
    Vector2d hand_point() const {
        return shoulder_point() +
               rot2(pitch + q_shoulder).apply(Vector2d(0.0, -def.arm_len));
    }
    // shoulder angle that puts the hand at h (clamped to arm reach)
    double solve_arm(Vector2d h) const {
        Vector2d s = shoulder_point();
        Vector2d d = h - s;
        if (d.norm() < 1e-9) d = Vector2d(0.0, -1.0);
        double theta = std::atan2(d.x(), -d.y());
        return wrap_angle(theta - pitch);
    }

    void emit() {
        if (arm == arm_carry) {
            obj = Vector2d(x, y) + rot2(pitch).apply(carry_box_local);
            obj_angle = pitch;
        }
        samples.push_back(
            {x, y, pitch, q_neck, q_shoulder, foot[0], foot[1], obj, obj_angle, tuck});
    }

    void gait_step() {
        double stride = std::max(0.2, p.walk_speed * p.cycle);
        bool moving = speed > 0.05;
        // floor on the cycle rate so an in-flight swing finishes promptly
        // even as the root stops
        double rate = std::max(speed, 0.8) / stride;
        bool any_swing = swinging[0] || swinging[1];
        if (moving || any_swing) phase += rate * dt;
        for (int leg = 0; leg < 2; ++leg) {
            double ph = std::fmod(phase + (leg == 1 ? 0.5 : 0.0), 1.0);
            bool stance = ph < p.duty;
            if (stance) {
                if (swinging[leg]) swinging[leg] = false;  // touchdown: freeze where it landed
                foot[leg].y() = def.ankle_height();
                continue;
            }
            if (!swinging[leg]) {
                if (!moving) continue;  // no new steps at rest
                swinging[leg] = true;
                lift_x[leg] = foot[leg].x();
            }
            double u = (ph - p.duty) / (1.0 - p.duty);
            double t_rem = (1.0 - ph) / rate;
            double land = x + speed * t_rem + 0.45 * speed * p.duty * p.cycle;
            foot[leg].x() = lift_x[leg] + smoothstep(u) * (land - lift_x[leg]);
            foot[leg].y() =
                def.ankle_height() +
                p.step_h * std::sin(kPi * u) * clamp(speed / p.walk_speed, 0.2, 1.0);
        }
    }

    // posture blend toward the walking pose as speed picks up
    void auto_posture() {
        double b = clamp(speed / 0.6, 0.0, 1.0);
        double y_walk = p.walk_hip + p.bob * std::sin(4.0 * kPi * phase);
        double y_target = def.standing_hip_height() + (y_walk - def.standing_hip_height()) * b;
        y = move_toward(y, y_target, 0.6 * dt);
        pitch = move_toward(pitch, p.lean * b, 0.8 * dt);
        if (arm == arm_swing)
            q_shoulder = move_toward(
                q_shoulder, p.arm_swing * std::sin(2.0 * kPi * phase + kPi) * b, 4.0 * dt);
        else
            q_shoulder = solve_arm(Vector2d(x, y) + rot2(pitch).apply(carry_hand_local));
        q_neck = move_toward(q_neck, -0.5 * pitch, 1.0 * dt);
    }

    // freeze the whole pose; stand() would pull the root back up to the
    // standing posture, which must not happen after sitting or lying down
    void hold(double seconds) {
        speed = 0.0;
        int n = std::max(1, int(std::lround(seconds / dt)));
        for (int i = 0; i < n; ++i) emit();
    }

    void stand(double seconds) {
        int n = std::max(1, int(std::lround(seconds / dt)));
        for (int i = 0; i < n; ++i) {
            speed = std::max(0.0, speed - p.accel * dt);
            x += speed * dt;
            gait_step();
            auto_posture();
            emit();
        }
    }

    void walk_to(double x_goal, double v_max) {
        check(x_goal > x + 0.02, "synthetic clip: zero-length walk");
        int guard = int(60.0 / dt);  // hard cap, never hit in practice
        while ((x_goal - x > 0.01 || speed > 0.02) && guard-- > 0) {
            double remaining = std::max(0.0, x_goal - x);
            double braking = speed * speed / (2.0 * p.accel);
            if (remaining <= braking + speed * dt)
                speed = std::max(0.0, speed - p.accel * dt);
            else
                speed = std::min(v_max, speed + p.accel * dt);
            x = std::min(x + speed * dt, x_goal);
            gait_step();
            auto_posture();
            emit();
        }
        check(guard > 0, "synthetic clip: walk did not converge");
    }

    // script a smooth move of root/pitch/arm over T seconds; feet stay
    // planted unless foot targets are supplied
    void scripted(double seconds, Vector2d root_to, double pitch_to, double arm_to,
                  double neck_to, const Vector2d* foot_l_to = nullptr,
                  const Vector2d* foot_r_to = nullptr) {
        int n = std::max(1, int(std::lround(seconds / dt)));
        double x0 = x, y0 = y, p0 = pitch, a0 = q_shoulder, n0 = q_neck;
        Vector2d fl0 = foot[0], fr0 = foot[1];
        for (int i = 1; i <= n; ++i) {
            double u = smoothstep(double(i) / n);
            x = x0 + (root_to.x() - x0) * u;
            y = y0 + (root_to.y() - y0) * u;
            pitch = p0 + (pitch_to - p0) * u;
            q_shoulder = a0 + (arm_to - a0) * u;
            q_neck = n0 + (neck_to - n0) * u;
            if (foot_l_to) foot[0] = fl0 + (*foot_l_to - fl0) * u;
            if (foot_r_to) foot[1] = fr0 + (*foot_r_to - fr0) * u;
            emit();
        }
        speed = 0.0;
    }

    // like scripted() but the hand tracks a moving target exactly
    void scripted_hand(double seconds, Vector2d hand_to) {
        int n = std::max(1, int(std::lround(seconds / dt)));
        Vector2d h0 = hand_point();
        for (int i = 1; i <= n; ++i) {
            double u = smoothstep(double(i) / n);
            Vector2d h = h0 + (hand_to - h0) * u;
            q_shoulder = solve_arm(h);
            emit();
        }
    }

    // move the box (and the hand draped over it) between a world rest pose
    // and the chest-carry pose; the root stays put while the arm drags the
    // box in (pick) or sets it down (place)
    void blend_carry(double seconds, Vector2d box_rest, Vector2d hand_rest, bool pick) {
        int n = std::max(1, int(std::lround(seconds / dt)));
        Vector2d root(x, y);
        for (int i = 1; i <= n; ++i) {
            double u = smoothstep(double(i) / n);
            double s = pick ? u : 1.0 - u;
            Vector2d box_chest = root + rot2(pitch).apply(carry_box_local);
            Vector2d hand_chest = root + rot2(pitch).apply(carry_hand_local);
            obj = box_rest + (box_chest - box_rest) * s;
            obj_angle = s * pitch;
            q_shoulder = solve_arm(hand_rest + (hand_chest - hand_rest) * s);
            emit();
        }
    }

    motion_clip finish(clip_tag tag) const {
        motion_clip clip;
        clip.fps = p.fps;
        clip.body_hash = def.hash();
        clip.tag = tag;
        clip.frames.reserve(samples.size());
        for (const sample& s : samples) {
            motion_frame f;
            f.st.root_pos = Vector2d(s.x, s.y);
            f.st.root_angle = s.pitch;
            f.st.q[0] = s.q_neck;
            f.st.q[1] = s.q_shoulder;
            Vector2d hip(s.x, s.y);
            Vector2d ql = leg_ik(def, hip, s.pitch, s.foot_l, s.tuck);
            Vector2d qr = leg_ik(def, hip, s.pitch, s.foot_r, s.tuck);
            f.st.q[2] = ql.x();
            f.st.q[3] = ql.y();
            f.st.q[4] = qr.x();
            f.st.q[5] = qr.y();
            f.obj_pos = s.obj;
            f.obj_angle = s.obj_angle;
            clip.frames.push_back(f);
        }
        // forward-difference velocities: consistent with positions by
        // construction, last frame repeats the previous rate
        for (size_t i = 0; i + 1 < clip.frames.size(); ++i) {
            character_state& a = clip.frames[i].st;
            const character_state& b = clip.frames[i + 1].st;
            a.root_vel = (b.root_pos - a.root_pos) * p.fps;
            a.root_omega = wrap_angle(b.root_angle - a.root_angle) * p.fps;
            for (int j = 0; j < body_def::kNumJoints; ++j)
                a.qd[j] = wrap_angle(b.q[j] - a.q[j]) * p.fps;
        }
        if (clip.frames.size() >= 2) {
            character_state& last = clip.frames.back().st;
            const character_state& prev = clip.frames[clip.frames.size() - 2].st;
            last.root_vel = prev.root_vel;
            last.root_omega = prev.root_omega;
            last.qd = prev.qd;
        }
        clip.validate();
        return clip;
    }
};

}  // namespace synth_detail

// Kinematically scripted reference clip: stand, walk in from the left, and
// perform the task against the supplied (canonical, right-facing) scene.
// Velocities are finite differences of the pose track by construction.
inline motion_clip generate_synthetic(clip_tag tag, const body_def& def,
                                      const std::vector<scene_object>& scene,
                                      const synth_params& params, rng& r) {
    using namespace synth_detail;
    for (const scene_object& o : scene)
        check(o.anchor.y() >= 0.0, "synthetic clip: anchor underground");
    clip_builder b(def, params, 0.0, r);

    const scene_object* obj = nullptr;
    for (const scene_object& o : scene)
        if (o.kind != object_kind::marker && o.kind != object_kind::platform) obj = &o;
    if (obj == nullptr && !scene.empty()) obj = &scene.front();
    if (obj != nullptr) {
        b.obj = obj->init_pos;  // body center, matching live featurization
        b.obj_angle = 0.0;
    }

    switch (tag) {
        case clip_tag::idle: {
            b.stand(params.idle_clip_time);
            break;
        }
        case clip_tag::locomotion: {
            check(params.locomotion_dist > 0.0, "synthetic clip: zero-length walk");
            b.stand(params.idle_time);
            b.walk_to(params.locomotion_dist, params.walk_speed);
            b.stand(params.settle_time);
            break;
        }
        case clip_tag::sit: {
            const scene_object* seat = find_object(scene, object_kind::seat);
            check(seat != nullptr, "synthetic clip: sit needs a seat");
            b.stand(params.idle_time);
            double x_stand = seat->anchor.x() - seat->half_w - 0.15;
            b.walk_to(x_stand, params.walk_speed);
            b.stand(0.4);
            // pelvis just above the anchor; the torso capsule overlaps the
            // seat a little, which the position solver absorbs in one step.
            // Knees tuck so they fold back past the seat face instead of
            // into it; arm forward over the lap, clear of the seat box.
            // Slow enough that PD-tracked joints can follow the descent.
            b.tuck = true;
            Vector2d seat_root(seat->anchor.x(), seat->anchor.y() + params.sit_hover);
            b.scripted(2.2, seat_root, -0.08, 0.95, 0.04);
            b.hold(params.settle_time);
            break;
        }
        case clip_tag::lie: {
            const scene_object* bed = find_object(scene, object_kind::bed);
            check(bed != nullptr, "synthetic clip: lie needs a bed");
            b.stand(params.idle_time);
            double x_edge = bed->anchor.x() - bed->half_w;
            double top = bed->anchor.y();
            b.walk_to(x_edge - 0.15, params.walk_speed);
            b.stand(0.4);
            // sit on the near edge first, knees tucked clear of the bed face
            b.tuck = true;
            Vector2d edge_root(x_edge + 0.18, top + params.sit_hover);
            b.scripted(1.8, edge_root, -0.08, 0.95, 0.04);
            // swing the feet up over the near edge while leaning back; the
            // arm starts sweeping up so it clears the mattress as the
            // torso goes down (it ends extended past the head, the only
            // collision-free resting direction the shoulder range allows)
            Vector2d lift_l(x_edge - 0.10, top + 0.12);
            Vector2d lift_r(x_edge - 0.06, top + 0.10);
            b.scripted(0.7, Vector2d(x_edge + 0.20, top + 0.07), -0.35, 1.7, 0.06, &lift_l,
                       &lift_r);
            // recline toward the far side with the pelvis floating just
            // above the surface so it never plows along the top, then
            // settle the last bit straight down; the lying torso rests one
            // capsule radius above the surface
            double lie_pitch = -0.5 * kPi + 0.02;
            Vector2d hover1(bed->anchor.x() - 0.35, top + def.torso_r + 0.03);
            Vector2d mid_l(x_edge + 0.02, top + 0.11);
            Vector2d mid_r(x_edge + 0.06, top + 0.09);
            b.scripted(1.3, hover1, -1.1, 2.5, 0.08, &mid_l, &mid_r);
            Vector2d hover2(bed->anchor.x(), top + def.torso_r + 0.03);
            Vector2d foot_l(bed->anchor.x() - 0.82, top + 0.05);
            Vector2d foot_r(bed->anchor.x() - 0.78, top + 0.05);
            b.scripted(1.1, hover2, lie_pitch, 2.95, 0.08, &foot_l, &foot_r);
            Vector2d lie_root(bed->anchor.x(), top + def.torso_r);
            b.scripted(0.5, lie_root, lie_pitch, 2.95, 0.08);
            b.hold(params.settle_time);
            break;
        }
        case clip_tag::carry: {
            const scene_object* box = find_object(scene, object_kind::box);
            const scene_object* target = find_object(scene, object_kind::marker);
            check(box != nullptr && target != nullptr,
                  "synthetic clip: carry needs a box and a target");
            b.stand(params.idle_time);
            const double torso_up = def.torso_len - def.shoulder_drop;
            const double w_half = box->half_w, h_half = box->half_h;

            // Carried pose, fixed in the root frame: box front face against
            // the torso at chest height, arm draped over the top toward the
            // far corner (the hand-vs-torso friction grip). Chest height is
            // chosen so the box bottom clears platform tops while walking.
            const double chest_y = std::max(h_half - 0.175, 0.02);
            {
                double reach = def.arm_len - 0.02;
                double dy = torso_up - (chest_y + h_half + def.arm_r);
                double dx_max = std::sqrt(std::max(reach * reach - dy * dy, 0.0));
                double t_x = std::min(w_half + def.arm_r, dx_max - (def.torso_r + w_half));
                check(t_x > -0.8 * w_half, "synthetic clip: box too large to carry");
                b.carry_box_local = Vector2d(def.torso_r + w_half, chest_y);
                b.carry_hand_local =
                    Vector2d(def.torso_r + w_half + t_x, chest_y + h_half + def.arm_r);
            }

            // The arm is a single rigid link, so the hand lives on a sphere
            // of radius arm_len around the shoulder: reach targets must sit
            // on that sphere, which fixes where each walk leg stops.
            auto reach_stop = [&](const Vector2d& hand_target) {
                double dy = def.standing_hip_height() + torso_up - hand_target.y();
                double dx2 = def.arm_len * def.arm_len - dy * dy;
                check(dx2 > 0.01, "synthetic clip: object out of vertical reach");
                return hand_target.x() - std::sqrt(dx2);
            };

            // Grab the near top corner: from the matching stop, the swing
            // up from a hanging arm grazes past the box's near face, and
            // the hug then drags the box in against the chest.
            Vector2d grab(box->init_pos.x() - w_half,
                          box->init_pos.y() + h_half + def.arm_r + 0.01);
            b.walk_to(reach_stop(grab) - 0.02, params.walk_speed);
            b.stand(0.35);
            b.scripted_hand(0.5, grab);
            b.blend_carry(0.9, box->init_pos, b.hand_point(), true);
            b.arm = clip_builder::arm_carry;

            Vector2d place_hand(target->anchor.x(),
                                target->anchor.y() + h_half + def.arm_r + 0.01);
            b.walk_to(reach_stop(place_hand), params.carry_speed);
            b.stand(0.3);
            b.arm = clip_builder::arm_swing;
            b.blend_carry(0.9, target->anchor, place_hand, false);
            // retreat up and back, then freeze clear of the placed box
            b.scripted_hand(0.4, b.hand_point() + Vector2d(-0.22, 0.2));
            b.hold(params.settle_time);
            break;
        }
    }
    return b.finish(tag);
}

// Convenience: tag for the clip that demonstrates a task.
inline clip_tag task_clip_tag(task_kind t) {
    switch (t) {
        case task_kind::sit: return clip_tag::sit;
        case task_kind::lie: return clip_tag::lie;
        case task_kind::carry: return clip_tag::carry;
    }
    return clip_tag::locomotion;
}

}  // namespace scamp
