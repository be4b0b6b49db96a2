#pragma once

#include <Eigen/Core>
#include <cmath>

#include "scamp/common.hpp"
#include "scamp/rng.hpp"

namespace scamp {

using Eigen::VectorXd;

// Diagonal Gaussian density, exact:
//   log p(x) = sum_i [ -0.5 ((x_i - mu_i)/s_i)^2 - log s_i - 0.5 log(2 pi) ]
inline double gaussian_logprob(const VectorXd& x, const VectorXd& mean, const VectorXd& sigma) {
    if (x.size() != mean.size() || x.size() != sigma.size())
        throw shape_error("gaussian_logprob: size mismatch");
    double lp = 0.0;
    for (int i = 0; i < x.size(); ++i) {
        if (!(sigma[i] > 0.0)) throw error("gaussian_logprob: sigma must be positive");
        const double z = (x[i] - mean[i]) / sigma[i];
        lp += -0.5 * z * z - std::log(sigma[i]);
    }
    return lp - 0.5 * double(x.size()) * std::log(2.0 * kPi);
}

// d log p / d mu = (x - mu) / sigma^2, elementwise.
inline VectorXd gaussian_logprob_grad_mean(const VectorXd& x, const VectorXd& mean,
                                           const VectorXd& sigma) {
    if (x.size() != mean.size() || x.size() != sigma.size())
        throw shape_error("gaussian_logprob_grad_mean: size mismatch");
    return ((x - mean).array() / sigma.array().square()).matrix();
}

// Draws mean + sigma*eps. A zero sigma component returns the mean exactly
// and consumes no randomness for that component.
inline VectorXd gaussian_sample(const VectorXd& mean, const VectorXd& sigma, rng& rg) {
    if (mean.size() != sigma.size()) throw shape_error("gaussian_sample: size mismatch");
    VectorXd x = mean;
    for (int i = 0; i < x.size(); ++i) {
        if (sigma[i] < 0.0) throw error("gaussian_sample: negative sigma");
        if (sigma[i] > 0.0) x[i] += sigma[i] * rg.normal();
    }
    return x;
}

}  // namespace scamp
