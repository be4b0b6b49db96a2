#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "scamp/optim.hpp"
#include "scamp/rng.hpp"

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;
using scamp::adam_config;
using scamp::net_params;
using scamp::optim_state;

net_params tiny_params() {
    net_params p;
    p.layers.push_back({MatrixXd::Zero(2, 2), VectorXd::Zero(2)});
    return p;
}

TEST(optim, zero_gradient_is_identity) {
    net_params p = tiny_params();
    p.layers[0].w << 1.0, 2.0, 3.0, 4.0;
    p.layers[0].b << -1.0, 5.0;
    net_params before = p;
    optim_state st = optim_state::for_params(p);
    scamp::adam_step(p, p.zeros_like(), st, {});
    EXPECT_TRUE(p.layers[0].w.isApprox(before.layers[0].w, 0.0));
    EXPECT_TRUE(p.layers[0].b.isApprox(before.layers[0].b, 0.0));
    EXPECT_EQ(st.step, 1);
}

TEST(optim, first_step_magnitude_is_lr) {
    // With bias correction, step 1 moves each coordinate by lr*g/(|g|+eps).
    net_params p = tiny_params();
    net_params g = p.zeros_like();
    g.layers[0].w << 1.0, -1.0, 100.0, -0.01;
    optim_state st = optim_state::for_params(p);
    adam_config cfg;
    cfg.lr = 1e-3;
    scamp::adam_step(p, g, st, cfg);
    EXPECT_NEAR(p.layers[0].w(0, 0), -1e-3, 1e-9);
    EXPECT_NEAR(p.layers[0].w(0, 1), 1e-3, 1e-9);
    EXPECT_NEAR(p.layers[0].w(1, 0), -1e-3, 1e-9);
    EXPECT_NEAR(p.layers[0].w(1, 1), 1e-3, 2e-6);  // small g, eps visible
}

TEST(optim, zero_lr_is_identity) {
    net_params p = tiny_params();
    p.layers[0].w << 1.0, 2.0, 3.0, 4.0;
    net_params before = p;
    net_params g = p.zeros_like();
    g.layers[0].w.setConstant(3.0);
    optim_state st = optim_state::for_params(p);
    adam_config cfg;
    cfg.lr = 0.0;
    for (int i = 0; i < 5; ++i) scamp::adam_step(p, g, st, cfg);
    EXPECT_TRUE(p.layers[0].w.isApprox(before.layers[0].w, 0.0));
}

TEST(optim, rejects_non_finite_gradients) {
    net_params p = tiny_params();
    net_params g = p.zeros_like();
    g.layers[0].w(0, 0) = std::numeric_limits<double>::quiet_NaN();
    optim_state st = optim_state::for_params(p);
    EXPECT_THROW(scamp::adam_step(p, g, st, {}), scamp::error);
    g.layers[0].w(0, 0) = std::numeric_limits<double>::infinity();
    EXPECT_THROW(scamp::adam_step(p, g, st, {}), scamp::error);
    EXPECT_EQ(st.step, 0);  // failed steps do not advance the counter
}

TEST(optim, minimizes_quadratic) {
    // L = 0.5 * ||p - target||^2, grad = p - target.
    net_params p = tiny_params();
    net_params target = tiny_params();
    target.layers[0].w << 0.3, -0.7, 1.2, 0.05;
    target.layers[0].b << -0.4, 0.9;
    optim_state st = optim_state::for_params(p);
    adam_config cfg;
    cfg.lr = 0.05;
    for (int i = 0; i < 2000; ++i) {
        net_params g = p;
        g.add_scaled(target, -1.0);
        scamp::adam_step(p, g, st, cfg);
    }
    EXPECT_LT((p.layers[0].w - target.layers[0].w).cwiseAbs().maxCoeff(), 1e-4);
    EXPECT_LT((p.layers[0].b - target.layers[0].b).cwiseAbs().maxCoeff(), 1e-4);
}

TEST(optim, layer_count_mismatch_throws) {
    net_params p = tiny_params();
    net_params g;  // no layers
    optim_state st = optim_state::for_params(p);
    EXPECT_THROW(scamp::adam_step(p, g, st, {}), scamp::shape_error);
}

}  // namespace
