#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "scamp/clips.hpp"
#include "scamp/net.hpp"
#include "scamp/obs.hpp"

namespace scamp {

// Adversarial discriminator scoring observation pairs. Scene conditioning
// happens upstream: the object block rides inside both observations of a
// transition, so the score depends on how the motion relates to the scene.

struct disc_config {
    double w_gp = 5.0;     // gradient penalty weight
    int updates = 2;       // discriminator updates per policy iteration
    int batch_dataset = 256;
    int batch_policy = 256;
    double lr = 1e-4;
};

// Network plus the observation-layout stamp it was trained with. Scoring
// checks the stamp against the running binary so weights never silently
// consume features laid out differently from what they saw in training.
struct disc_params {
    net_params net;
    std::uint64_t layout_hash = 0;
};

inline VectorXd disc_input(const transition& t) {
    check(t.obs.size() == t.obs_next.size() && t.obs.size() > 0,
          "transition: observation length mismatch");
    VectorXd x(t.obs.size() * 2);
    x << t.obs, t.obs_next;
    return x;
}

// Columns are stacked transitions.
inline MatrixXd disc_input_batch(const std::vector<transition>& batch) {
    check(!batch.empty(), "discriminator: empty batch");
    const Eigen::Index d = batch[0].obs.size() + batch[0].obs_next.size();
    MatrixXd x(d, Eigen::Index(batch.size()));
    for (size_t i = 0; i < batch.size(); ++i) x.col(Eigen::Index(i)) = disc_input(batch[i]);
    return x;
}

inline VectorXd disc_logits(const net_params& net, const MatrixXd& x) {
    check(net.output_dim() == 1, "discriminator: net must have scalar output");
    return mlp_forward_batch(net, x).row(0).transpose();
}

inline double disc_logit(const disc_params& d, const transition& t) {
    check(d.layout_hash == obs_layout_hash(),
          "discriminator: observation layout mismatch (stale weights?)");
    check(d.net.output_dim() == 1, "discriminator: net must have scalar output");
    return mlp_forward(d.net, disc_input(t))(0);
}

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// -log sigmoid(l) and -log(1 - sigmoid(l)) without overflow.
inline double softplus(double x) { return std::max(x, 0.0) + std::log1p(std::exp(-std::abs(x))); }

// Probability the motion is judged reference-like, clamped away from 0 and 1
// so the reward below stays finite: r in [-log(1 - 1e-4), -log(1e-4)].
inline double style_reward(double logit) {
    double p = std::clamp(sigmoid(logit), 1e-4, 1.0 - 1e-4);
    return -std::log1p(-p);
}

struct disc_loss_result {
    double loss = 0.0;  // bce + w_gp * gp
    double bce = 0.0;
    double gp = 0.0;  // mean ||d logit / d input||^2 over the dataset batch, unweighted
    double mean_p_dataset = 0.0;
    double mean_p_policy = 0.0;
    net_params grads;
};

// Binary cross-entropy pushing dataset transitions toward 1 and policy
// transitions toward 0, plus a gradient penalty on the raw logit evaluated
// at dataset samples only. Both terms average over their batch. Gradients
// are exact (the penalty contributes through a second backward pass).
inline disc_loss_result disc_loss_and_grads_x(const net_params& net, const MatrixXd& dataset_x,
                                              const MatrixXd& policy_x, double w_gp) {
    const int nd = int(dataset_x.cols());
    const int np = int(policy_x.cols());
    check(nd > 0 && np > 0, "discriminator: both batches must be non-empty");
    check(net.output_dim() == 1, "discriminator: net must have scalar output");

    forward_cache cache_d, cache_p;
    VectorXd ld = mlp_forward_batch(net, dataset_x, &cache_d).row(0).transpose();
    VectorXd lp = mlp_forward_batch(net, policy_x, &cache_p).row(0).transpose();

    disc_loss_result r;
    MatrixXd up_d(1, nd), up_p(1, np);
    for (int i = 0; i < nd; ++i) {
        double s = sigmoid(ld[i]);
        r.bce += softplus(-ld[i]) / nd;  // -log D
        r.mean_p_dataset += s / nd;
        up_d(0, i) = (s - 1.0) / nd;
    }
    for (int i = 0; i < np; ++i) {
        double s = sigmoid(lp[i]);
        r.bce += softplus(lp[i]) / np;  // -log(1 - D)
        r.mean_p_policy += s / np;
        up_p(0, i) = s / np;
    }

    r.grads = mlp_backward_batch(net, cache_d, up_d).grads;
    r.grads.add_scaled(mlp_backward_batch(net, cache_p, up_p).grads, 1.0);
    net_params pen =
        mlp_grad_penalty_backward(net, cache_d, VectorXd::Constant(nd, 1.0 / nd), &r.gp);
    if (w_gp != 0.0) r.grads.add_scaled(pen, w_gp);
    r.loss = r.bce + w_gp * r.gp;
    check(std::isfinite(r.loss), "discriminator: non-finite loss");
    return r;
}

inline disc_loss_result disc_loss_and_grads(const disc_params& d,
                                            const std::vector<transition>& dataset_batch,
                                            const std::vector<transition>& policy_batch,
                                            double w_gp) {
    check(d.layout_hash == obs_layout_hash(),
          "discriminator: observation layout mismatch (stale weights?)");
    return disc_loss_and_grads_x(d.net, disc_input_batch(dataset_batch),
                                 disc_input_batch(policy_batch), w_gp);
}

}  // namespace scamp
