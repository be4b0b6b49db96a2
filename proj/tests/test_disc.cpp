#include <gtest/gtest.h>

#include <cmath>

#include "scamp/disc.hpp"
#include "scamp/optim.hpp"
#include "scamp/rng.hpp"

using namespace scamp;

namespace {

transition make_transition(rng& r, int dim) {
    transition t;
    t.obs = VectorXd::NullaryExpr(dim, [&](Eigen::Index) { return r.normal(); });
    t.obs_next = VectorXd::NullaryExpr(dim, [&](Eigen::Index) { return r.normal(); });
    return t;
}

std::vector<transition> make_batch(rng& r, int n, int dim) {
    std::vector<transition> b;
    for (int i = 0; i < n; ++i) b.push_back(make_transition(r, dim));
    return b;
}

net_params linear_net(const VectorXd& w, double b) {
    net_params p;
    dense_layer l;
    l.w = w.transpose();
    l.b = VectorXd::Constant(1, b);
    p.layers.push_back(l);
    return p;
}

}  // namespace

TEST(disc, zero_weight_net_is_maximally_unsure) {
    rng r(7);
    net_params net = make_mlp(12, {8, 8}, 1, r);
    net.set_zero();
    disc_params d{net, obs_layout_hash()};
    transition t = make_transition(r, 6);
    EXPECT_DOUBLE_EQ(disc_logit(d, t), 0.0);
    EXPECT_DOUBLE_EQ(sigmoid(disc_logit(d, t)), 0.5);

    auto data = make_batch(r, 5, 6);
    auto pol = make_batch(r, 9, 6);
    disc_loss_result res = disc_loss_and_grads(d, data, pol, 0.0);
    EXPECT_NEAR(res.loss, 2.0 * std::log(2.0), 1e-12);
    EXPECT_NEAR(res.mean_p_dataset, 0.5, 1e-12);
    EXPECT_NEAR(res.mean_p_policy, 0.5, 1e-12);
    // zero weights -> zero input gradient -> the penalty adds nothing
    disc_loss_result res_gp = disc_loss_and_grads(d, data, pol, 5.0);
    EXPECT_NEAR(res_gp.loss, 2.0 * std::log(2.0), 1e-12);
    EXPECT_DOUBLE_EQ(res_gp.gp, 0.0);
}

TEST(disc, linear_net_scores_dot_product) {
    rng r(11);
    VectorXd w(4);
    w << 1.5, -2.0, 0.25, 3.0;
    disc_params d{linear_net(w, 0.5), obs_layout_hash()};
    for (int i = 0; i < 20; ++i) {
        transition t = make_transition(r, 2);
        EXPECT_NEAR(disc_logit(d, t), w.dot(disc_input(t)) + 0.5, 1e-12);
    }
}

TEST(disc, linear_penalty_is_squared_weight_norm) {
    rng r(3);
    VectorXd w(2);
    w << 3.0, 4.0;
    net_params net = linear_net(w, -0.7);
    for (int nd : {1, 5, 17}) {
        MatrixXd data = MatrixXd::NullaryExpr(2, nd, [&](Eigen::Index, Eigen::Index) { return r.normal(); });
        MatrixXd pol = MatrixXd::NullaryExpr(2, 8, [&](Eigen::Index, Eigen::Index) { return r.normal(); });
        disc_loss_result with = disc_loss_and_grads_x(net, data, pol, 1.0);
        disc_loss_result without = disc_loss_and_grads_x(net, data, pol, 0.0);
        EXPECT_NEAR(with.gp, 25.0, 1e-12) << "batch " << nd;
        EXPECT_NEAR(with.loss - without.loss, 25.0, 1e-12);
        // penalty gradient of ||w||^2 is 2w, independent of batch size
        MatrixXd dw = with.grads.layers[0].w - without.grads.layers[0].w;
        EXPECT_NEAR(dw(0, 0), 6.0, 1e-12);
        EXPECT_NEAR(dw(0, 1), 8.0, 1e-12);
        EXPECT_NEAR((with.grads.layers[0].b - without.grads.layers[0].b).norm(), 0.0, 1e-12);
    }
}

TEST(disc, batch_scoring_matches_single) {
    rng r(19);
    net_params net = make_mlp(12, {9, 7}, 1, r);
    disc_params d{net, obs_layout_hash()};
    auto batch = make_batch(r, 6, 6);
    VectorXd logits = disc_logits(net, disc_input_batch(batch));
    for (int i = 0; i < 6; ++i) EXPECT_NEAR(logits[i], disc_logit(d, batch[i]), 1e-12);
}

TEST(disc, loss_gradients_match_finite_differences) {
    for (unsigned seed : {1u, 2u, 3u}) {
        rng r(seed);
        net_params net = make_mlp(10, {7, 5}, 1, r);
        MatrixXd data = MatrixXd::NullaryExpr(10, 6, [&](Eigen::Index, Eigen::Index) { return r.normal(); });
        MatrixXd pol = MatrixXd::NullaryExpr(10, 4, [&](Eigen::Index, Eigen::Index) { return r.normal(); });
        for (double w_gp : {0.0, 5.0}) {
            disc_loss_result res = disc_loss_and_grads_x(net, data, pol, w_gp);
            const double h = 1e-5;
            for (size_t l = 0; l < net.layers.size(); ++l) {
                auto fd_check = [&](double& param, double analytic) {
                    double save = param;
                    param = save + h;
                    double up = disc_loss_and_grads_x(net, data, pol, w_gp).loss;
                    param = save - h;
                    double dn = disc_loss_and_grads_x(net, data, pol, w_gp).loss;
                    param = save;
                    double fd = (up - dn) / (2.0 * h);
                    EXPECT_NEAR(analytic, fd, 1e-4 * std::max(1.0, std::abs(fd)))
                        << "seed " << seed << " layer " << l << " w_gp " << w_gp;
                };
                for (int i = 0; i < net.layers[l].w.rows(); ++i)
                    for (int j = 0; j < net.layers[l].w.cols(); ++j)
                        fd_check(net.layers[l].w(i, j), res.grads.layers[l].w(i, j));
                for (int i = 0; i < net.layers[l].b.size(); ++i)
                    fd_check(net.layers[l].b(i), res.grads.layers[l].b(i));
            }
        }
    }
}

TEST(disc, style_reward_known_values_and_clamp) {
    EXPECT_NEAR(style_reward(0.0), std::log(2.0), 1e-12);
    EXPECT_NEAR(style_reward(std::log(9.0)), -std::log(0.1), 1e-12);  // p = 0.9
    EXPECT_NEAR(style_reward(1e9), -std::log(1e-4), 1e-12);
    EXPECT_NEAR(style_reward(-1e9), -std::log1p(-1e-4), 1e-12);
    EXPECT_NEAR(style_reward(1e9), 9.21034, 1e-5);
}

TEST(disc, style_reward_monotone_and_bounded) {
    double prev = -1.0;
    for (int i = 0; i <= 4000; ++i) {
        double logit = -40.0 + 0.02 * i;
        double s = style_reward(logit);
        EXPECT_GE(s, prev);
        EXPECT_GT(s, 0.0);
        EXPECT_LT(s, 9.2104);
        prev = s;
    }
}

TEST(disc, layout_hash_guard_rejects_stale_weights) {
    rng r(23);
    disc_params d{make_mlp(12, {8}, 1, r), obs_layout_hash() ^ 0xdeadbeefull};
    transition t = make_transition(r, 6);
    EXPECT_THROW(disc_logit(d, t), error);
    EXPECT_THROW(disc_loss_and_grads(d, {t}, {t}, 1.0), error);
}

TEST(disc, rejects_empty_and_mismatched_batches) {
    rng r(29);
    net_params net = make_mlp(12, {8}, 1, r);
    MatrixXd x = MatrixXd::Random(12, 3);
    EXPECT_THROW(disc_loss_and_grads_x(net, MatrixXd(12, 0), x, 1.0), error);
    EXPECT_THROW(disc_loss_and_grads_x(net, x, MatrixXd(12, 0), 1.0), error);
    transition bad;
    bad.obs = VectorXd::Zero(6);
    bad.obs_next = VectorXd::Zero(5);
    EXPECT_THROW(disc_input(bad), error);
}

// Real transitions are temporally coherent (next ~ current), fake ones jump
// randomly. A small discriminator must learn to tell them apart and the
// style reward must separate by a wide margin.
TEST(disc, mini_training_separates_real_from_noise) {
    rng r(101);
    const int dim = 6;
    auto real_one = [&]() {
        transition t;
        t.obs = VectorXd::NullaryExpr(dim, [&](Eigen::Index) { return r.normal(); });
        t.obs_next =
            t.obs + 0.05 * VectorXd::NullaryExpr(dim, [&](Eigen::Index) { return r.normal(); });
        return t;
    };
    auto fake_one = [&]() { return make_transition(r, dim); };

    net_params net = make_mlp(2 * dim, {24, 16}, 1, r);
    optim_state opt = optim_state::for_params(net);
    adam_config cfg;
    cfg.lr = 1e-3;
    for (int it = 0; it < 400; ++it) {
        std::vector<transition> data, pol;
        for (int i = 0; i < 64; ++i) {
            data.push_back(real_one());
            pol.push_back(fake_one());
        }
        disc_loss_result res =
            disc_loss_and_grads_x(net, disc_input_batch(data), disc_input_batch(pol), 1.0);
        adam_step(net, res.grads, opt, cfg);
    }

    int correct = 0;
    double mean_real = 0.0, mean_fake = 0.0;
    const int trials = 400;
    for (int i = 0; i < trials; ++i) {
        double lr_ = disc_logits(net, disc_input(real_one()))(0);
        double lf = disc_logits(net, disc_input(fake_one()))(0);
        correct += (lr_ > 0.0) + (lf < 0.0);
        mean_real += style_reward(lr_) / trials;
        mean_fake += style_reward(lf) / trials;
    }
    EXPECT_GE(double(correct) / (2 * trials), 0.95);
    EXPECT_GE(mean_real - mean_fake, 0.5);
}

// The scene block is part of both observations; a discriminator trained on
// motion-matches-scene data must react when the scene block of a transition
// is swapped with another scene.
TEST(disc, trained_disc_reacts_to_scene_block_swap) {
    rng r(202);
    const int motion = 3, scene = 3, dim = motion + scene;
    auto real_one = [&]() {
        VectorXd obj = VectorXd::NullaryExpr(scene, [&](Eigen::Index) { return r.normal(); });
        transition t;
        t.obs = VectorXd(dim);
        t.obs_next = VectorXd(dim);
        for (int k = 0; k < motion; ++k) {
            t.obs[k] = obj[k] + 0.05 * r.normal();
            t.obs_next[k] = obj[k] + 0.05 * r.normal();
        }
        t.obs.tail(scene) = obj;
        t.obs_next.tail(scene) = obj;
        return t;
    };
    auto fake_one = [&]() { return make_transition(r, dim); };

    net_params net = make_mlp(2 * dim, {24, 16}, 1, r);
    optim_state opt = optim_state::for_params(net);
    adam_config cfg;
    cfg.lr = 1e-3;
    for (int it = 0; it < 400; ++it) {
        std::vector<transition> data, pol;
        for (int i = 0; i < 64; ++i) {
            data.push_back(real_one());
            pol.push_back(fake_one());
        }
        disc_loss_result res =
            disc_loss_and_grads_x(net, disc_input_batch(data), disc_input_batch(pol), 1.0);
        adam_step(net, res.grads, opt, cfg);
    }

    disc_params d{net, obs_layout_hash()};
    int changed = 0;
    const int probes = 100;
    for (int i = 0; i < probes; ++i) {
        transition a = real_one(), b = real_one();
        double before = disc_logit(d, a);
        transition swapped = a;
        swapped.obs.tail(scene) = b.obs.tail(scene);
        swapped.obs_next.tail(scene) = b.obs_next.tail(scene);
        if (std::abs(disc_logit(d, swapped) - before) > 1e-3) ++changed;
    }
    EXPECT_GE(changed, 90);
}
