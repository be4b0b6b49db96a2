#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <fstream>
#include <sstream>

#include "scamp/body.hpp"
#include "scamp/obs.hpp"
#include "scamp/rng.hpp"
#include "scamp/scene.hpp"
#include "scamp/sim.hpp"

using namespace scamp;

namespace {

character_state rest_pose(const body_def& def, double x = 0.0) {
    character_state st;
    st.root_pos = Vector2d(x, def.standing_hip_height());
    return st;
}

character_state random_state(rng& r) {
    character_state st;
    st.root_pos = Vector2d(r.uniform(-3, 3), r.uniform(0.3, 1.5));
    st.root_angle = r.uniform(-2.5, 2.5);
    st.root_vel = Vector2d(r.uniform(-3, 3), r.uniform(-3, 3));
    st.root_omega = r.uniform(-5, 5);
    for (int i = 0; i < body_def::kNumJoints; ++i) {
        st.q[i] = r.uniform(-2, 2);
        st.qd[i] = r.uniform(-6, 6);
    }
    return st;
}

}  // namespace

TEST(obs, encode_rotation_examples) {
    Vector2d z = encode_rotation(0.0);
    EXPECT_DOUBLE_EQ(z.x(), 1.0);
    EXPECT_DOUBLE_EQ(z.y(), 0.0);
    Vector2d q = encode_rotation(M_PI / 2.0);
    EXPECT_NEAR(q.x(), 0.0, 1e-15);
    EXPECT_DOUBLE_EQ(q.y(), 1.0);
    rng r(7);
    for (int i = 0; i < 200; ++i)
        EXPECT_NEAR(encode_rotation(r.uniform(-50, 50)).norm(), 1.0, 1e-12);
}

TEST(obs, layout_dims_and_manifest) {
    EXPECT_EQ(character_obs_dim(), 30);
    EXPECT_EQ(obs_dim(), 34);
    std::string m = obs_layout_manifest();
    EXPECT_NE(m.find("[0] root_height"), std::string::npos);
    EXPECT_NE(m.find("[24] hand_x_local"), std::string::npos);
    EXPECT_NE(m.find("[33] object_rot_sin_rel"), std::string::npos);
    // one line per index plus the four header lines
    int lines = 0;
    for (char ch : m)
        if (ch == '\n') ++lines;
    EXPECT_EQ(lines, obs_dim() + 4);
    EXPECT_NE(obs_layout_hash(), 0u);
    EXPECT_NE(obs_layout_hash(), obs_layout_hash(5));
}

TEST(obs, golden_rest_pose_vector) {
    std::ifstream f(std::string(SCAMP_TEST_DATA_DIR) + "/golden_rest_obs.txt");
    ASSERT_TRUE(f.good()) << "missing golden file";
    std::vector<double> want;
    double v;
    while (f >> v) want.push_back(v);
    body_def def;
    VectorXd o = character_obs(def, rest_pose(def));
    ASSERT_EQ(int(want.size()), int(o.size()));
    for (int i = 0; i < o.size(); ++i) EXPECT_DOUBLE_EQ(o[i], want[i]) << "index " << i;
    // spot checks against hand-derived values
    EXPECT_NEAR(o[0], 0.93, 1e-12);              // pelvis height
    EXPECT_NEAR(o[24 + 1], 0.70 - 0.93, 1e-12);  // hand 0.23 below pelvis
    EXPECT_NEAR(o[24 + 3], 0.06 - 0.93, 1e-12);  // ankle 0.87 below pelvis
}

TEST(obs, translation_invariance) {
    body_def def;
    VectorXd a = character_obs(def, rest_pose(def, 0.0));
    VectorXd b = character_obs(def, rest_pose(def, 5.0));
    for (int i = 0; i < a.size(); ++i) EXPECT_DOUBLE_EQ(a[i], b[i]) << "index " << i;

    rng r(11);
    for (int trial = 0; trial < 50; ++trial) {
        character_state st = random_state(r);
        character_state shifted = st;
        shifted.root_pos.x() += r.uniform(-20, 20);
        VectorXd oa = character_obs(def, st);
        VectorXd ob = character_obs(def, shifted);
        EXPECT_NEAR((oa - ob).lpNorm<Eigen::Infinity>(), 0.0, 1e-12);
    }
}

TEST(obs, velocity_block_corotates_with_root) {
    body_def def;
    rng r(12);
    for (int trial = 0; trial < 50; ++trial) {
        character_state st = random_state(r);
        double phi = r.uniform(-3, 3);
        character_state rotated = st;
        rotated.root_angle += phi;
        rotated.root_vel = rot2(phi).apply(st.root_vel);
        VectorXd oa = character_obs(def, st);
        VectorXd ob = character_obs(def, rotated);
        // local velocity block identical
        EXPECT_NEAR((oa.segment<3>(3) - ob.segment<3>(3)).lpNorm<Eigen::Infinity>(), 0.0, 1e-12);
        // keypoints rigidly attached to the root: local block also identical
        EXPECT_NEAR((oa.segment<6>(24) - ob.segment<6>(24)).lpNorm<Eigen::Infinity>(), 0.0, 1e-9);
        // joint blocks are frame-independent
        EXPECT_EQ((oa.segment<18>(6) - ob.segment<18>(6)).lpNorm<Eigen::Infinity>(), 0.0);
        // height unchanged, rotation encoding not
        EXPECT_DOUBLE_EQ(oa[0], ob[0]);
    }
}

TEST(obs, keypoints_match_world_fk) {
    world w;
    w.add_static_box({0.0, -0.5}, 50.0, 0.5, 0.8);
    body_def def;
    character c = build_character(w, def, 0.0);
    rng r(13);
    for (int trial = 0; trial < 20; ++trial) {
        character_state st = random_state(r);
        set_character_state(w, c, st);
        keypoints k = character_keypoints(def, st);
        EXPECT_NEAR((k.hand - hand_position(w, c)).norm(), 0.0, 1e-12);
        EXPECT_NEAR((k.foot_l - ankle_position(w, c, true)).norm(), 0.0, 1e-12);
        EXPECT_NEAR((k.foot_r - ankle_position(w, c, false)).norm(), 0.0, 1e-12);
        // single-capsule head: its center of mass is the capsule midpoint
        EXPECT_NEAR((k.head_center - w.bodies[size_t(c.head)].pos).norm(), 0.0, 1e-12);
    }
}

TEST(obs, object_two_meters_ahead) {
    body_def def;
    character_state st = rest_pose(def);
    VectorXd o = object_obs(st, st.root_pos + Vector2d(2.0, 0.0), 0.0);
    EXPECT_DOUBLE_EQ(o[0], 2.0);
    EXPECT_DOUBLE_EQ(o[1], 0.0);
    EXPECT_DOUBLE_EQ(o[2], 1.0);
    EXPECT_DOUBLE_EQ(o[3], 0.0);
}

TEST(obs, object_position_flips_when_root_rotated_pi) {
    body_def def;
    character_state st = rest_pose(def);
    st.root_angle = M_PI;
    VectorXd o = object_obs(st, st.root_pos + Vector2d(2.0, 0.0), 0.0);
    EXPECT_NEAR(o[0], -2.0, 1e-12);
    EXPECT_NEAR(o[1], 0.0, 1e-12);
    EXPECT_NEAR(o[2], -1.0, 1e-12);
    EXPECT_NEAR(o[3], 0.0, 1e-12);
}

TEST(obs, object_obs_matches_transform_oracle) {
    rng r(14);
    auto hom = [](const Vector2d& p, double a) {
        Eigen::Matrix3d t = Eigen::Matrix3d::Identity();
        t.topLeftCorner<2, 2>() << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
        t.topRightCorner<2, 1>() = p;
        return t;
    };
    for (int trial = 0; trial < 200; ++trial) {
        character_state st;
        st.root_pos = Vector2d(r.uniform(-5, 5), r.uniform(-5, 5));
        st.root_angle = r.uniform(-6, 6);
        Vector2d op(r.uniform(-5, 5), r.uniform(-5, 5));
        double oa = r.uniform(-6, 6);
        Eigen::Matrix3d rel = hom(st.root_pos, st.root_angle).inverse() * hom(op, oa);
        VectorXd o = object_obs(st, op, oa);
        EXPECT_NEAR(o[0], rel(0, 2), 1e-12);
        EXPECT_NEAR(o[1], rel(1, 2), 1e-12);
        EXPECT_NEAR(o[2], rel(0, 0), 1e-12);
        EXPECT_NEAR(o[3], rel(1, 0), 1e-12);
    }
}

TEST(obs, rotation_encodings_unit_norm) {
    body_def def;
    rng r(15);
    for (int trial = 0; trial < 50; ++trial) {
        character_state st = random_state(r);
        VectorXd o = observe(def, st, Vector2d(r.uniform(-5, 5), r.uniform(0, 2)),
                             r.uniform(-6, 6));
        EXPECT_TRUE(o.allFinite());
        EXPECT_NEAR(o.segment<2>(1).norm(), 1.0, 1e-9);
        for (int j = 0; j < body_def::kNumJoints; ++j)
            EXPECT_NEAR(o.segment<2>(6 + 2 * j).norm(), 1.0, 1e-9);
        EXPECT_NEAR(o.segment<2>(32).norm(), 1.0, 1e-9);
    }
}

TEST(obs, observe_is_concat_of_blocks) {
    body_def def;
    rng r(16);
    character_state st = random_state(r);
    Vector2d op(1.7, 0.4);
    VectorXd full = observe(def, st, op, 0.3);
    ASSERT_EQ(int(full.size()), obs_dim());
    EXPECT_EQ((full.head(30) - character_obs(def, st)).lpNorm<Eigen::Infinity>(), 0.0);
    EXPECT_EQ((full.tail(4) - object_obs(st, op, 0.3)).lpNorm<Eigen::Infinity>(), 0.0);
}

// ---------- goals ----------

TEST(goal, sit_and_lie_extents_passthrough) {
    world w;
    std::vector<scene_object> scene;
    scene.push_back(add_seat(w, 2.0, 1.0));
    body_def def;
    character_state st = rest_pose(def);
    VectorXd g = goal_features(task_kind::sit, st, scene, goal_config{});
    ASSERT_EQ(g.size(), 3);
    EXPECT_DOUBLE_EQ(g[0], 0.5);
    EXPECT_DOUBLE_EQ(g[1], 0.45);
    EXPECT_DOUBLE_EQ(g[2], 0.5);

    std::vector<scene_object> scene2;
    scene2.push_back(add_bed(w, 3.0, 1.0));
    VectorXd g2 = goal_features(task_kind::lie, st, scene2, goal_config{});
    ASSERT_EQ(g2.size(), 3);
    EXPECT_DOUBLE_EQ(g2[0], 1.8);
    EXPECT_DOUBLE_EQ(g2[1], 0.35);
    EXPECT_DOUBLE_EQ(g2[2], 0.9);
}

TEST(goal, carry_target_at_feet_reads_near_zero) {
    world w;
    w.add_static_box({0.0, -0.5}, 50.0, 0.5, 0.8);
    std::vector<scene_object> scene;
    scene.push_back(add_box(w, 3.0, 0.6, 1.0));
    scene.push_back(add_marker(Vector2d(1.25, 0.0)));  // on the ground at the character's feet
    body_def def;
    character_state st = rest_pose(def, 1.25);
    VectorXd g = goal_features(task_kind::carry, st, scene, goal_config{});
    ASSERT_EQ(g.size(), 5);
    EXPECT_DOUBLE_EQ(g[0], 0.0);
    EXPECT_DOUBLE_EQ(g[1], 0.0);
    // box extents reordered (h, w, d)
    EXPECT_DOUBLE_EQ(g[2], 0.35);
    EXPECT_DOUBLE_EQ(g[3], 0.5);
    EXPECT_DOUBLE_EQ(g[4], 0.3);

    goal_config with_density;
    with_density.density = true;
    VectorXd gd = goal_features(task_kind::carry, st, scene, with_density);
    ASSERT_EQ(gd.size(), 6);
    EXPECT_EQ((gd.head(5) - g).lpNorm<Eigen::Infinity>(), 0.0);
    EXPECT_DOUBLE_EQ(gd[5], 100.0);
}

TEST(goal, carry_target_offset_is_root_relative) {
    world w;
    std::vector<scene_object> scene;
    scene.push_back(add_box(w, 3.0, 0.6, 1.0));
    scene.push_back(add_marker(Vector2d(4.0, 0.775)));
    body_def def;
    character_state st = rest_pose(def, 1.0);
    VectorXd g = goal_features(task_kind::carry, st, scene, goal_config{});
    EXPECT_DOUBLE_EQ(g[0], 3.0);
    EXPECT_DOUBLE_EQ(g[1], 0.775);
    // translating character and scene together changes nothing
    character_state st2 = rest_pose(def, 7.0);
    std::vector<scene_object> scene2 = scene;
    scene2[1].anchor.x() += 6.0;
    VectorXd g2 = goal_features(task_kind::carry, st2, scene2, goal_config{});
    EXPECT_EQ((g2 - g).lpNorm<Eigen::Infinity>(), 0.0);
}

TEST(goal, ablation_drops_exactly_three) {
    goal_config on;
    goal_config off;
    off.bounding_box = false;
    for (task_kind t : {task_kind::sit, task_kind::lie, task_kind::carry})
        EXPECT_EQ(goal_dim(t, on) - goal_dim(t, off), 3);

    world w;
    std::vector<scene_object> scene;
    scene.push_back(add_box(w, 3.0, 0.6, 1.0));
    scene.push_back(add_marker(Vector2d(4.0, 0.775)));
    body_def def;
    character_state st = rest_pose(def, 1.0);
    VectorXd g = goal_features(task_kind::carry, st, scene, off);
    ASSERT_EQ(g.size(), 2);
    EXPECT_DOUBLE_EQ(g[0], 3.0);
    EXPECT_DOUBLE_EQ(g[1], 0.775);

    std::vector<scene_object> seat_scene;
    seat_scene.push_back(add_seat(w, 2.0, 1.0));
    EXPECT_EQ(goal_features(task_kind::sit, st, seat_scene, off).size(), 0);
}

TEST(goal, missing_task_object_throws) {
    std::vector<scene_object> empty;
    body_def def;
    character_state st = rest_pose(def);
    EXPECT_THROW(goal_features(task_kind::sit, st, empty, goal_config{}), error);
    EXPECT_THROW(goal_features(task_kind::lie, st, empty, goal_config{}), error);
    EXPECT_THROW(goal_features(task_kind::carry, st, empty, goal_config{}), error);
}

TEST(goal, task_names_roundtrip) {
    for (task_kind t : {task_kind::sit, task_kind::lie, task_kind::carry})
        EXPECT_EQ(parse_task(task_name(t)), t);
    EXPECT_THROW(parse_task("swim"), config_error);
}
