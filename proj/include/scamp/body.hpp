#pragma once

#include <Eigen/Core>
#include <array>
#include <cmath>
#include <cstdio>
#include <string>

#include "scamp/config.hpp"
#include "scamp/sim.hpp"

namespace scamp {

// Planar 7-link character: torso (root), head, one arm ending in the hand,
// and two legs (thigh + shin, the shin carrying an L-shaped foot plate).
// Six actuated joints: neck, shoulder, hip x2, knee x2. All dimensions are
// segment lengths between joint anchors, in meters.
struct body_def {
    double torso_len = 0.55, torso_r = 0.10, torso_m = 24.0;
    double head_len = 0.11, head_r = 0.055, head_m = 5.0, head_gap = 0.05;
    double arm_len = 0.72, arm_r = 0.04, arm_m = 4.0, shoulder_drop = 0.06;
    double thigh_len = 0.42, thigh_r = 0.06, thigh_m = 5.0;
    double shin_len = 0.45, shin_r = 0.05, shin_m = 3.0;
    double foot_len = 0.15, foot_r = 0.03, foot_m = 0.5;
    double friction = 0.8;

    double neck_lo = -0.8, neck_hi = 0.8, neck_kp = 50.0, neck_kd = 5.0, neck_tau = 30.0;
    double shoulder_lo = -3.0, shoulder_hi = 3.0, shoulder_kp = 150.0, shoulder_kd = 15.0,
           shoulder_tau = 120.0;
    double hip_lo = -2.2, hip_hi = 2.2, hip_kp = 300.0, hip_kd = 30.0, hip_tau = 250.0;
    double knee_lo = -2.4, knee_hi = 2.4, knee_kp = 300.0, knee_kd = 30.0, knee_tau = 250.0;

    static constexpr int kNumJoints = 6;

    double ankle_height() const { return 2.0 * foot_r; }
    double standing_hip_height() const { return ankle_height() + shin_len + thigh_len; }
    double total_mass() const {
        return torso_m + head_m + arm_m + 2.0 * (thigh_m + shin_m + foot_m);
    }

    static body_def from_kv(const kv_file& kv) {
        body_def d;
        auto g = [&kv](const char* k, double def) { return kv.get_double(k, def); };
        d.torso_len = g("torso_len", d.torso_len);
        d.torso_r = g("torso_r", d.torso_r);
        d.torso_m = g("torso_m", d.torso_m);
        d.head_len = g("head_len", d.head_len);
        d.head_r = g("head_r", d.head_r);
        d.head_m = g("head_m", d.head_m);
        d.head_gap = g("head_gap", d.head_gap);
        d.arm_len = g("arm_len", d.arm_len);
        d.arm_r = g("arm_r", d.arm_r);
        d.arm_m = g("arm_m", d.arm_m);
        d.shoulder_drop = g("shoulder_drop", d.shoulder_drop);
        d.thigh_len = g("thigh_len", d.thigh_len);
        d.thigh_r = g("thigh_r", d.thigh_r);
        d.thigh_m = g("thigh_m", d.thigh_m);
        d.shin_len = g("shin_len", d.shin_len);
        d.shin_r = g("shin_r", d.shin_r);
        d.shin_m = g("shin_m", d.shin_m);
        d.foot_len = g("foot_len", d.foot_len);
        d.foot_r = g("foot_r", d.foot_r);
        d.foot_m = g("foot_m", d.foot_m);
        d.friction = g("friction", d.friction);
        d.neck_lo = g("neck_lo", d.neck_lo);
        d.neck_hi = g("neck_hi", d.neck_hi);
        d.neck_kp = g("neck_kp", d.neck_kp);
        d.neck_kd = g("neck_kd", d.neck_kd);
        d.neck_tau = g("neck_tau", d.neck_tau);
        d.shoulder_lo = g("shoulder_lo", d.shoulder_lo);
        d.shoulder_hi = g("shoulder_hi", d.shoulder_hi);
        d.shoulder_kp = g("shoulder_kp", d.shoulder_kp);
        d.shoulder_kd = g("shoulder_kd", d.shoulder_kd);
        d.shoulder_tau = g("shoulder_tau", d.shoulder_tau);
        d.hip_lo = g("hip_lo", d.hip_lo);
        d.hip_hi = g("hip_hi", d.hip_hi);
        d.hip_kp = g("hip_kp", d.hip_kp);
        d.hip_kd = g("hip_kd", d.hip_kd);
        d.hip_tau = g("hip_tau", d.hip_tau);
        d.knee_lo = g("knee_lo", d.knee_lo);
        d.knee_hi = g("knee_hi", d.knee_hi);
        d.knee_kp = g("knee_kp", d.knee_kp);
        d.knee_kd = g("knee_kd", d.knee_kd);
        d.knee_tau = g("knee_tau", d.knee_tau);
        d.validate();
        return d;
    }

    void validate() const {
        check(torso_len > 0 && head_len > 0 && arm_len > 0 && thigh_len > 0 && shin_len > 0 &&
                  foot_len > 0,
              "body_def: lengths must be positive");
        check(torso_m > 0 && head_m > 0 && arm_m > 0 && thigh_m > 0 && shin_m > 0 && foot_m > 0,
              "body_def: masses must be positive");
        check(neck_kd >= 0 && shoulder_kd >= 0 && hip_kd >= 0 && knee_kd >= 0,
              "body_def: kd must be non-negative");
        check(neck_lo < neck_hi && shoulder_lo < shoulder_hi && hip_lo < hip_hi &&
                  knee_lo < knee_hi,
              "body_def: joint limits inverted");
    }

    std::uint64_t hash() const {
        const double v[] = {torso_len,    torso_r,     torso_m,     head_len,    head_r,
                            head_m,       head_gap,    arm_len,     arm_r,       arm_m,
                            shoulder_drop, thigh_len,  thigh_r,     thigh_m,     shin_len,
                            shin_r,       shin_m,      foot_len,    foot_r,      foot_m,
                            friction,     neck_lo,     neck_hi,     neck_kp,     neck_kd,
                            neck_tau,     shoulder_lo, shoulder_hi, shoulder_kp, shoulder_kd,
                            shoulder_tau, hip_lo,      hip_hi,      hip_kp,      hip_kd,
                            hip_tau,      knee_lo,     knee_hi,     knee_kp,     knee_kd,
                            knee_tau};
        std::string s;
        char buf[32];
        for (double x : v) {
            std::snprintf(buf, sizeof(buf), "%.17g,", x);
            s += buf;
        }
        return fnv1a(s);
    }
};

// Reduced-coordinate view of the character: root = pelvis point (the hip
// anchor on the torso), joint order = neck, shoulder, hip L, knee L, hip R,
// knee R (the actuation order).
struct character_state {
    Vector2d root_pos{0.0, 0.0};
    double root_angle = 0.0;
    Vector2d root_vel{0.0, 0.0};  // velocity of the pelvis material point
    double root_omega = 0.0;
    Eigen::VectorXd q = Eigen::VectorXd::Zero(body_def::kNumJoints);
    Eigen::VectorXd qd = Eigen::VectorXd::Zero(body_def::kNumJoints);

    bool finite() const {
        return root_pos.allFinite() && std::isfinite(root_angle) && root_vel.allFinite() &&
               std::isfinite(root_omega) && q.allFinite() && qd.allFinite();
    }

    // Planar mirror about the vertical axis (x -> -x): flips positions,
    // rotations, and all joint angles. Used to canonicalize left-facing
    // scenes onto the right-facing character.
    character_state mirrored() const {
        character_state m = *this;
        m.root_pos.x() = -root_pos.x();
        m.root_angle = -root_angle;
        m.root_vel.x() = -root_vel.x();
        m.root_omega = -root_omega;
        m.q = -q;
        m.qd = -qd;
        return m;
    }
};

struct character {
    int torso = -1, head = -1, arm = -1, thigh_l = -1, shin_l = -1, thigh_r = -1, shin_r = -1;
    int neck = -1, shoulder = -1, hip_l = -1, knee_l = -1, hip_r = -1, knee_r = -1;
    body_def def;
    double facing = 1.0;  // +1: toes/front toward +x
    // pelvis / hand / ankle anchors in their bodies' local frames
    Vector2d pelvis_local{0.0, 0.0};
    Vector2d hand_local{0.0, 0.0};
    Vector2d ankle_local{0.0, 0.0};

    std::array<int, 7> body_ids() const { return {torso, head, arm, thigh_l, shin_l, thigh_r, shin_r}; }
    std::array<int, body_def::kNumJoints> joint_ids() const {
        return {neck, shoulder, hip_l, knee_l, hip_r, knee_r};
    }
};

// Collision group shared by all character links (they never self-collide).
inline constexpr int kCharacterGroup = 1;

// Builds the character standing at horizontal position x with the feet
// touching the ground plane y=0. `facing` = -1 mirrors the geometry.
inline character build_character(world& w, const body_def& def, double x, double facing = 1.0) {
    def.validate();
    check(facing == 1.0 || facing == -1.0, "build_character: facing must be +-1");
    character c;
    c.def = def;
    c.facing = facing;

    const double ankle_y = def.ankle_height();
    const double knee_y = ankle_y + def.shin_len;
    const double hip_y = knee_y + def.thigh_len;
    const double neck_y = hip_y + def.torso_len;
    const double shoulder_y = neck_y - def.shoulder_drop;
    const int group = kCharacterGroup;

    auto v = [&](double lx, double ly) { return Vector2d(x + facing * lx, ly); };

    body_builder torso_b;
    torso_b.add_capsule(v(0, hip_y), v(0, neck_y), def.torso_r, def.torso_m);
    rigid_body torso = torso_b.finalize(def.friction, group);
    torso.character_link = true;
    c.torso = w.add_body(torso);
    c.pelvis_local = v(0, hip_y) - w.bodies[size_t(c.torso)].pos;

    body_builder head_b;
    head_b.add_capsule(v(0, neck_y + def.head_gap), v(0, neck_y + def.head_gap + def.head_len),
                       def.head_r, def.head_m);
    rigid_body head = head_b.finalize(def.friction, group);
    head.character_link = true;
    c.head = w.add_body(head);

    body_builder arm_b;
    arm_b.add_capsule(v(0, shoulder_y), v(0, shoulder_y - def.arm_len), def.arm_r, def.arm_m);
    rigid_body arm = arm_b.finalize(def.friction, group);
    arm.character_link = true;
    arm.extremity = true;
    c.arm = w.add_body(arm);
    c.hand_local = v(0, shoulder_y - def.arm_len) - w.bodies[size_t(c.arm)].pos;

    auto build_leg = [&](int& thigh_id, int& shin_id) {
        body_builder thigh_b;
        thigh_b.add_capsule(v(0, hip_y), v(0, knee_y), def.thigh_r, def.thigh_m);
        rigid_body thigh = thigh_b.finalize(def.friction, group);
        thigh.character_link = true;
        thigh_id = w.add_body(thigh);

        body_builder shin_b;
        shin_b.add_capsule(v(0, knee_y), v(0, ankle_y), def.shin_r, def.shin_m);
        shin_b.add_capsule(v(-def.foot_r, def.foot_r), v(def.foot_len - def.foot_r, def.foot_r),
                           def.foot_r, def.foot_m);
        rigid_body shin = shin_b.finalize(def.friction, group);
        shin.character_link = true;
        shin.extremity = true;
        shin_id = w.add_body(shin);
        c.ankle_local = v(0, ankle_y) - w.bodies[size_t(shin_id)].pos;
    };
    build_leg(c.thigh_l, c.shin_l);
    build_leg(c.thigh_r, c.shin_r);

    auto jl = [&](double lo, double hi, double kp, double kd, double tau) {
        joint_config jc;
        // mirror swaps the sense of every hinge, so limits flip with facing
        jc.lo = facing > 0 ? lo : -hi;
        jc.hi = facing > 0 ? hi : -lo;
        jc.kp = kp;
        jc.kd = kd;
        jc.tau_max = tau;
        return jc;
    };
    c.neck = w.add_joint(c.torso, c.head, v(0, neck_y),
                         jl(def.neck_lo, def.neck_hi, def.neck_kp, def.neck_kd, def.neck_tau));
    c.shoulder = w.add_joint(c.torso, c.arm, v(0, shoulder_y),
                             jl(def.shoulder_lo, def.shoulder_hi, def.shoulder_kp, def.shoulder_kd,
                                def.shoulder_tau));
    c.hip_l = w.add_joint(c.torso, c.thigh_l, v(0, hip_y),
                          jl(def.hip_lo, def.hip_hi, def.hip_kp, def.hip_kd, def.hip_tau));
    c.knee_l = w.add_joint(c.thigh_l, c.shin_l, v(0, knee_y),
                           jl(def.knee_lo, def.knee_hi, def.knee_kp, def.knee_kd, def.knee_tau));
    c.hip_r = w.add_joint(c.torso, c.thigh_r, v(0, hip_y),
                          jl(def.hip_lo, def.hip_hi, def.hip_kp, def.hip_kd, def.hip_tau));
    c.knee_r = w.add_joint(c.thigh_r, c.shin_r, v(0, knee_y),
                           jl(def.knee_lo, def.knee_hi, def.knee_kp, def.knee_kd, def.knee_tau));
    return c;
}

// World pose of the pelvis point.
inline Vector2d pelvis_position(const world& w, const character& c) {
    const rigid_body& t = w.bodies[size_t(c.torso)];
    return t.pos + rot2(t.angle).apply(c.pelvis_local);
}

inline Vector2d hand_position(const world& w, const character& c) {
    const rigid_body& a = w.bodies[size_t(c.arm)];
    return a.pos + rot2(a.angle).apply(c.hand_local);
}

inline Vector2d ankle_position(const world& w, const character& c, bool left) {
    const rigid_body& s = w.bodies[size_t(left ? c.shin_l : c.shin_r)];
    return s.pos + rot2(s.angle).apply(c.ankle_local);
}

// Extracts the reduced-coordinate state in WORLD frame (not canonicalized).
inline character_state get_character_state(const world& w, const character& c) {
    character_state st;
    const rigid_body& t = w.bodies[size_t(c.torso)];
    st.root_pos = pelvis_position(w, c);
    st.root_angle = t.angle;
    st.root_vel = t.velocity_at(st.root_pos);
    st.root_omega = t.omega;
    auto jids = c.joint_ids();
    for (int i = 0; i < body_def::kNumJoints; ++i) {
        st.q[i] = w.joint_angle(jids[size_t(i)]);
        st.qd[i] = w.joint_velocity(jids[size_t(i)]);
    }
    return st;
}

// Writes a reduced-coordinate state into the simulator by forward
// kinematics from the pelvis through the joint tree. Joint anchors end up
// exactly coincident (zero constraint error).
inline void set_character_state(world& w, const character& c, const character_state& st) {
    check(st.finite(), "set_character_state: non-finite state");
    rigid_body& torso = w.bodies[size_t(c.torso)];
    torso.angle = st.root_angle;
    torso.pos = st.root_pos - rot2(torso.angle).apply(c.pelvis_local);
    torso.omega = st.root_omega;
    torso.vel = st.root_vel + torso.omega * perp(torso.pos - st.root_pos);

    auto place_child = [&w](const joint& j, double q, double qd) {
        const rigid_body& parent = w.bodies[size_t(j.parent)];
        rigid_body& child = w.bodies[size_t(j.child)];
        child.angle = parent.angle + j.ref_angle + q;
        Vector2d anchor = parent.pos + rot2(parent.angle).apply(j.local_a);
        child.pos = anchor - rot2(child.angle).apply(j.local_b);
        child.omega = parent.omega + qd;
        Vector2d v_anchor = parent.velocity_at(anchor);
        child.vel = v_anchor + child.omega * perp(child.pos - anchor);
    };
    auto jids = c.joint_ids();
    for (int i = 0; i < body_def::kNumJoints; ++i)
        place_child(w.joints[size_t(jids[size_t(i)])], st.q[i], st.qd[i]);
}

// (lo, hi) per joint in actuation order: neck, shoulder, hip_l, knee_l,
// hip_r, knee_r. Canonical right-facing sense.
inline std::array<std::pair<double, double>, body_def::kNumJoints> joint_limit_table(
    const body_def& d) {
    return {{{d.neck_lo, d.neck_hi},
             {d.shoulder_lo, d.shoulder_hi},
             {d.hip_lo, d.hip_hi},
             {d.knee_lo, d.knee_hi},
             {d.hip_lo, d.hip_hi},
             {d.knee_lo, d.knee_hi}}};
}

// Key body points computed by forward kinematics straight from the reduced
// state (canonical right-facing geometry) — no simulator needed. Matches the
// world-side accessors exactly when the world holds the same state.
struct keypoints {
    Vector2d hand{0.0, 0.0};
    Vector2d foot_l{0.0, 0.0};
    Vector2d foot_r{0.0, 0.0};
    Vector2d head_center{0.0, 0.0};
};

inline keypoints character_keypoints(const body_def& def, const character_state& st) {
    keypoints k;
    rot2 rt(st.root_angle);
    Vector2d shoulder = st.root_pos + rt.apply(Vector2d(0.0, def.torso_len - def.shoulder_drop));
    k.hand = shoulder + rot2(st.root_angle + st.q[1]).apply(Vector2d(0.0, -def.arm_len));

    Vector2d neck = st.root_pos + rt.apply(Vector2d(0.0, def.torso_len));
    k.head_center = neck + rot2(st.root_angle + st.q[0])
                               .apply(Vector2d(0.0, def.head_gap + 0.5 * def.head_len));

    auto leg = [&](double q_hip, double q_knee) {
        double thigh_a = st.root_angle + q_hip;
        Vector2d knee = st.root_pos + rot2(thigh_a).apply(Vector2d(0.0, -def.thigh_len));
        return Vector2d(knee + rot2(thigh_a + q_knee).apply(Vector2d(0.0, -def.shin_len)));
    };
    k.foot_l = leg(st.q[2], st.q[3]);
    k.foot_r = leg(st.q[4], st.q[5]);
    return k;
}

// Minimum height of any surface point of the non-extremity character links
// (torso, head, thighs). Standing this is the knee area; lying it is ~0.
inline double lowest_nonextremity_height(const world& w) {
    double lowest = 1e30;
    for (const auto& b : w.bodies) {
        if (!b.character_link || b.extremity) continue;
        rot2 r(b.angle);
        for (const auto& s : b.shapes) {
            placed_shape p = place(s, b.pos, r);
            if (s.kind == shape_kind::capsule) {
                Vector2d e0, e1;
                capsule_endpoints(p, e0, e1);
                lowest = std::min(lowest, std::min(e0.y(), e1.y()) - s.radius);
            } else {
                double ext = std::abs(p.rot.c) * s.hy + std::abs(p.rot.s) * s.hx;
                lowest = std::min(lowest, p.pos.y() - ext);
            }
        }
    }
    return lowest;
}

}  // namespace scamp
