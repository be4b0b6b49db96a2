#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "scamp/net.hpp"
#include "scamp/rng.hpp"

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;
using scamp::net_params;
using scamp::rng;

// Reference forward pass written with plain scalar loops, independent of the
// Eigen path under test.
std::vector<double> ref_forward(const net_params& p, const std::vector<double>& input) {
    std::vector<double> a = input;
    for (size_t l = 0; l < p.layers.size(); ++l) {
        const auto& w = p.layers[l].w;
        const auto& b = p.layers[l].b;
        std::vector<double> z(size_t(w.rows()), 0.0);
        for (int r = 0; r < w.rows(); ++r) {
            double s = b[r];
            for (int c = 0; c < w.cols(); ++c) s += w(r, c) * a[size_t(c)];
            z[size_t(r)] = (l + 1 < p.layers.size() && s < 0.0) ? 0.0 : s;
        }
        a = std::move(z);
    }
    return a;
}

net_params random_net(rng& rg, int in, std::vector<int> hidden, int out) {
    return scamp::make_mlp(in, hidden, out, rg);
}

TEST(net, single_layer_is_affine) {
    net_params p;
    p.layers.push_back({MatrixXd(2, 3), VectorXd(2)});
    p.layers[0].w << 1.0, 2.0, 3.0, -1.0, 0.5, 0.0;
    p.layers[0].b << 10.0, -20.0;
    VectorXd x(3);
    x << 1.0, -1.0, 2.0;
    VectorXd y = scamp::mlp_forward(p, x);
    EXPECT_DOUBLE_EQ(y[0], 1.0 - 2.0 + 6.0 + 10.0);
    EXPECT_DOUBLE_EQ(y[1], -1.0 - 0.5 + 0.0 - 20.0);
}

TEST(net, output_layer_has_no_relu) {
    net_params p;
    p.layers.push_back({-MatrixXd::Identity(2, 2), VectorXd::Zero(2)});
    VectorXd x(2);
    x << 3.0, 4.0;
    VectorXd y = scamp::mlp_forward(p, x);
    EXPECT_DOUBLE_EQ(y[0], -3.0);  // negative output survives
    EXPECT_DOUBLE_EQ(y[1], -4.0);
}

TEST(net, matches_scalar_reference) {
    rng rg(123);
    for (int trial = 0; trial < 20; ++trial) {
        int in = 1 + rg.uniform_int(8);
        int h1 = 1 + rg.uniform_int(16);
        int h2 = 1 + rg.uniform_int(16);
        int out = 1 + rg.uniform_int(4);
        net_params p = random_net(rg, in, {h1, h2}, out);
        std::vector<double> xin(size_t(in), 0.0);
        VectorXd x(in);
        for (int i = 0; i < in; ++i) {
            x[i] = rg.uniform(-2.0, 2.0);
            xin[size_t(i)] = x[i];
        }
        VectorXd got = scamp::mlp_forward(p, x);
        std::vector<double> want = ref_forward(p, xin);
        ASSERT_EQ(got.size(), int(want.size()));
        for (int i = 0; i < out; ++i) EXPECT_NEAR(got[i], want[size_t(i)], 1e-12);
    }
}

TEST(net, batch_forward_matches_vector_forward) {
    rng rg(5);
    net_params p = random_net(rg, 6, {12, 9}, 3);
    MatrixXd batch(6, 17);
    for (int c = 0; c < batch.cols(); ++c)
        for (int r = 0; r < 6; ++r) batch(r, c) = rg.uniform(-1.5, 1.5);
    MatrixXd out = scamp::mlp_forward_batch(p, batch);
    ASSERT_EQ(out.rows(), 3);
    ASSERT_EQ(out.cols(), 17);
    for (int c = 0; c < batch.cols(); ++c) {
        VectorXd y = scamp::mlp_forward(p, batch.col(c));
        for (int r = 0; r < 3; ++r) EXPECT_NEAR(out(r, c), y[r], 1e-13);
    }
}

TEST(net, xavier_bounds_and_final_scale) {
    rng rg(77);
    net_params p = scamp::make_mlp(10, {20}, 5, rg, 0.01);
    double bound0 = std::sqrt(6.0 / (10 + 20));
    for (int r = 0; r < 20; ++r)
        for (int c = 0; c < 10; ++c) EXPECT_LE(std::abs(p.layers[0].w(r, c)), bound0);
    double bound1 = 0.01 * std::sqrt(6.0 / (20 + 5));
    for (int r = 0; r < 5; ++r)
        for (int c = 0; c < 20; ++c) EXPECT_LE(std::abs(p.layers[1].w(r, c)), bound1);
    EXPECT_TRUE(p.layers[0].b.isZero(0.0));
}

// Finite-difference check of dL/dtheta where L = sum_n upstream_n . f(x_n).
void check_grads_fd(net_params& p, const MatrixXd& x, const MatrixXd& upstream, double tol) {
    scamp::forward_cache cache;
    scamp::mlp_forward_batch(p, x, &cache);
    scamp::backward_result r = scamp::mlp_backward_batch(p, cache, upstream);

    auto loss = [&]() {
        MatrixXd y = scamp::mlp_forward_batch(p, x);
        return (y.array() * upstream.array()).sum();
    };
    const double h = 1e-5;
    for (size_t l = 0; l < p.layers.size(); ++l) {
        auto check_entry = [&](double& theta, double analytic) {
            double save = theta;
            theta = save + h;
            double lp = loss();
            theta = save - h;
            double lm = loss();
            theta = save;
            double fd = (lp - lm) / (2.0 * h);
            double scale = std::max({1.0, std::abs(fd), std::abs(analytic)});
            ASSERT_NEAR(analytic, fd, tol * scale);
        };
        for (int i = 0; i < p.layers[l].w.size(); ++i)
            check_entry(p.layers[l].w.data()[i], r.grads.layers[l].w.data()[i]);
        for (int i = 0; i < p.layers[l].b.size(); ++i)
            check_entry(p.layers[l].b.data()[i], r.grads.layers[l].b.data()[i]);
    }
}

TEST(net, gradients_match_finite_differences) {
    rng rg(31);
    for (int trial = 0; trial < 10; ++trial) {
        int in = 2 + rg.uniform_int(4);
        int out = 1 + rg.uniform_int(3);
        net_params p = random_net(rg, in, {7, 5}, out);
        int n = 1 + rg.uniform_int(6);
        MatrixXd x(in, n), up(out, n);
        for (int c = 0; c < n; ++c) {
            for (int r = 0; r < in; ++r) x(r, c) = rg.uniform(-1.0, 1.0);
            for (int r = 0; r < out; ++r) up(r, c) = rg.uniform(-1.0, 1.0);
        }
        check_grads_fd(p, x, up, 1e-6);
    }
}

TEST(net, input_gradient_matches_finite_differences) {
    rng rg(37);
    net_params p = random_net(rg, 5, {9, 6}, 2);
    VectorXd x(5), up(2);
    for (int i = 0; i < 5; ++i) x[i] = rg.uniform(-1.0, 1.0);
    up << 0.7, -1.3;

    scamp::forward_cache cache;
    scamp::mlp_forward_batch(p, x, &cache);
    scamp::backward_result r = scamp::mlp_backward_batch(p, cache, up);
    ASSERT_EQ(r.input_grad.rows(), 5);
    ASSERT_EQ(r.input_grad.cols(), 1);

    const double h = 1e-6;
    for (int i = 0; i < 5; ++i) {
        VectorXd xp = x, xm = x;
        xp[i] += h;
        xm[i] -= h;
        double lp = up.dot(scamp::mlp_forward(p, xp));
        double lm = up.dot(scamp::mlp_forward(p, xm));
        double fd = (lp - lm) / (2.0 * h);
        EXPECT_NEAR(r.input_grad(i, 0), fd, 1e-5 * std::max(1.0, std::abs(fd)));
    }
}

TEST(net, batch_gradient_equals_sum_of_per_sample) {
    rng rg(41);
    net_params p = random_net(rg, 4, {8}, 3);
    const int n = 5;
    MatrixXd x(4, n), up(3, n);
    for (int c = 0; c < n; ++c) {
        for (int r = 0; r < 4; ++r) x(r, c) = rg.uniform(-1.0, 1.0);
        for (int r = 0; r < 3; ++r) up(r, c) = rg.uniform(-1.0, 1.0);
    }
    scamp::forward_cache cache;
    scamp::mlp_forward_batch(p, x, &cache);
    scamp::backward_result batch = scamp::mlp_backward_batch(p, cache, up);

    net_params sum = p.zeros_like();
    for (int c = 0; c < n; ++c) {
        auto [g, gin] = scamp::mlp_backward(p, x.col(c), up.col(c));
        sum.add_scaled(g, 1.0);
        (void)gin;
    }
    for (size_t l = 0; l < p.layers.size(); ++l) {
        EXPECT_LT((batch.grads.layers[l].w - sum.layers[l].w).cwiseAbs().maxCoeff(), 1e-12);
        EXPECT_LT((batch.grads.layers[l].b - sum.layers[l].b).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(net, dead_relu_unit_gets_zero_gradient) {
    net_params p;
    p.layers.push_back({MatrixXd(2, 1), VectorXd(2)});
    p.layers[0].w << 1.0, 1.0;
    p.layers[0].b << 0.0, -100.0;  // unit 1 never fires for small inputs
    p.layers.push_back({MatrixXd(1, 2), VectorXd(1)});
    p.layers[1].w << 1.0, 1.0;
    p.layers[1].b << 0.0;

    VectorXd x(1), up(1);
    x << 0.5;
    up << 1.0;
    auto [g, gin] = scamp::mlp_backward(p, x, up);
    EXPECT_DOUBLE_EQ(g.layers[0].w(1, 0), 0.0);
    EXPECT_DOUBLE_EQ(g.layers[0].b[1], 0.0);
    EXPECT_DOUBLE_EQ(g.layers[0].w(0, 0), 0.5);
    EXPECT_DOUBLE_EQ(gin[0], 1.0);
    (void)gin;
}

TEST(net, shape_errors) {
    rng rg(1);
    net_params p = random_net(rg, 3, {4}, 2);
    VectorXd bad(5);
    bad.setZero();
    EXPECT_THROW(scamp::mlp_forward(p, bad), scamp::shape_error);
    scamp::forward_cache cache;
    scamp::mlp_forward_batch(p, MatrixXd::Zero(3, 2), &cache);
    EXPECT_THROW(scamp::mlp_backward_batch(p, cache, MatrixXd::Zero(2, 3)), scamp::shape_error);
    EXPECT_THROW(scamp::mlp_backward_batch(p, cache, MatrixXd::Zero(1, 2)), scamp::shape_error);
}

TEST(net, validate_catches_mismatch) {
    net_params p;
    p.layers.push_back({MatrixXd::Zero(4, 3), VectorXd::Zero(4)});
    p.layers.push_back({MatrixXd::Zero(2, 5), VectorXd::Zero(2)});  // expects 4 inputs
    EXPECT_THROW(p.validate(), scamp::shape_error);
}

}  // namespace
