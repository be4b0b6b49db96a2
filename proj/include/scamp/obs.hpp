#pragma once

#include <Eigen/Core>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "scamp/body.hpp"
#include "scamp/scene.hpp"

namespace scamp {

using Eigen::Vector3d;
using Eigen::VectorXd;

// Planar rotation encoding: (cos, sin). Unit norm by construction.
inline Vector2d encode_rotation(double angle) { return Vector2d(std::cos(angle), std::sin(angle)); }

// --- layout -----------------------------------------------------------
//
// Character block (root features, joint features, keypoints) followed by
// one object block describing the single task object. Velocities and
// keypoints live in the root-attached frame; goals use the ground-projected
// root frame (origin under the pelvis, axes world-aligned) so a target at
// the character's feet reads as (0, 0).

inline constexpr int kObjectObsDim = 4;

inline int character_obs_dim(int num_joints = body_def::kNumJoints) {
    // root: height + rotation enc + linear vel + angular vel = 6
    // joints: rotation enc (2J) + velocity (J)
    // keypoints: hand, foot_l, foot_r as local xy = 6
    return 6 + 3 * num_joints + 6;
}

inline int obs_dim(int num_joints = body_def::kNumJoints) {
    return character_obs_dim(num_joints) + kObjectObsDim;
}

inline const std::array<const char*, body_def::kNumJoints>& joint_names() {
    static const std::array<const char*, body_def::kNumJoints> names = {
        "neck", "shoulder", "hip_l", "knee_l", "hip_r", "knee_r"};
    return names;
}

// Text manifest enumerating every observation index by name. Downstream
// tooling reads this; its hash is stamped into checkpoints and checked at
// load so a stale network can never be applied to a reordered layout.
inline std::string obs_layout_manifest(int num_joints = body_def::kNumJoints) {
    std::string out = "observation layout v1 (planar)\n";
    out += "joints: " + std::to_string(num_joints) + "\n";
    out += "character block: " + std::to_string(character_obs_dim(num_joints)) + " values\n";
    out += "object block: " + std::to_string(kObjectObsDim) + " values\n";
    int i = 0;
    auto row = [&](const std::string& name) {
        out += "[" + std::to_string(i++) + "] " + name + "\n";
    };
    row("root_height");
    row("root_rot_cos");
    row("root_rot_sin");
    row("root_vel_x_local");
    row("root_vel_y_local");
    row("root_angvel");
    auto jname = [&](int j) {
        return j < int(joint_names().size()) ? std::string(joint_names()[size_t(j)])
                                             : "joint" + std::to_string(j);
    };
    for (int j = 0; j < num_joints; ++j) {
        row(jname(j) + "_rot_cos");
        row(jname(j) + "_rot_sin");
    }
    for (int j = 0; j < num_joints; ++j) row(jname(j) + "_vel");
    for (const char* kp : {"hand", "foot_l", "foot_r"}) {
        row(std::string(kp) + "_x_local");
        row(std::string(kp) + "_y_local");
    }
    row("object_pos_x_local");
    row("object_pos_y_local");
    row("object_rot_cos_rel");
    row("object_rot_sin_rel");
    return out;
}

inline std::uint64_t obs_layout_hash(int num_joints = body_def::kNumJoints) {
    return fnv1a(obs_layout_manifest(num_joints));
}

// --- observation ------------------------------------------------------

inline VectorXd character_obs(const body_def& def, const character_state& st) {
    check(st.finite(), "character_obs: non-finite state");
    const int nj = body_def::kNumJoints;
    VectorXd o(character_obs_dim(nj));
    rot2 r(st.root_angle);
    o[0] = st.root_pos.y();
    o.segment<2>(1) = encode_rotation(st.root_angle);
    o.segment<2>(3) = r.unapply(st.root_vel);
    o[5] = st.root_omega;
    for (int j = 0; j < nj; ++j) o.segment<2>(6 + 2 * j) = encode_rotation(st.q[size_t(j)]);
    for (int j = 0; j < nj; ++j) o[6 + 2 * nj + j] = st.qd[size_t(j)];
    keypoints k = character_keypoints(def, st);
    int base = 6 + 3 * nj;
    o.segment<2>(base + 0) = r.unapply(k.hand - st.root_pos);
    o.segment<2>(base + 2) = r.unapply(k.foot_l - st.root_pos);
    o.segment<2>(base + 4) = r.unapply(k.foot_r - st.root_pos);
    return o;
}

inline VectorXd object_obs(const character_state& st, const Vector2d& obj_pos, double obj_angle) {
    VectorXd o(kObjectObsDim);
    rot2 r(st.root_angle);
    o.segment<2>(0) = r.unapply(Vector2d(obj_pos - st.root_pos));
    o.segment<2>(2) = encode_rotation(obj_angle - st.root_angle);
    return o;
}

// Full policy/value/discriminator observation: character block + the task
// object's block. Both networks consume this same vector.
inline VectorXd observe(const body_def& def, const character_state& st, const Vector2d& obj_pos,
                        double obj_angle) {
    VectorXd o(obs_dim());
    o.head(character_obs_dim()) = character_obs(def, st);
    o.tail(kObjectObsDim) = object_obs(st, obj_pos, obj_angle);
    return o;
}

// --- goals ------------------------------------------------------------

struct goal_config {
    bool bounding_box = true;  // ablation flag: drop the 3 extent values
    bool density = false;      // carry only: append the box density draw
};

inline int goal_dim(task_kind task, const goal_config& cfg) {
    int extents = cfg.bounding_box ? 3 : 0;
    switch (task) {
        case task_kind::sit:
        case task_kind::lie: return extents;
        case task_kind::carry: return 2 + extents + (cfg.density ? 1 : 0);
    }
    return 0;
}

// Sit/lie: the target object's full bounding-box extents (w, h, d).
// Carry: drop target in the ground-projected root frame, then the box
// extents reordered (h, w, d), then the density value when enabled.
inline VectorXd goal_features(task_kind task, const character_state& st,
                              const std::vector<scene_object>& scene, const goal_config& cfg) {
    VectorXd g(goal_dim(task, cfg));
    int i = 0;
    if (task == task_kind::carry) {
        const scene_object* box = find_object(scene, object_kind::box);
        const scene_object* target = find_object(scene, object_kind::marker);
        check(box != nullptr && target != nullptr, "goal_features: missing task object");
        g[i++] = target->anchor.x() - st.root_pos.x();
        g[i++] = target->anchor.y();
        if (cfg.bounding_box) {
            Vector3d e = box->extents();
            g[i++] = e.y();
            g[i++] = e.x();
            g[i++] = e.z();
        }
        if (cfg.density) g[i++] = box->density;
        return g;
    }
    const scene_object* obj =
        find_object(scene, task == task_kind::sit ? object_kind::seat : object_kind::bed);
    check(obj != nullptr, "goal_features: missing task object");
    if (cfg.bounding_box) {
        Vector3d e = obj->extents();
        g[i++] = e.x();
        g[i++] = e.y();
        g[i++] = e.z();
    }
    return g;
}

}  // namespace scamp
