#pragma once

#include <Eigen/Core>

#include "scamp/common.hpp"

namespace scamp {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Frozen affine input normalizer: y = (x - mean) / std. Fitted once from
// reference-data statistics before training starts and never updated after,
// so the mapping each network sees is constant over a run.
struct normalizer {
    VectorXd mean;
    VectorXd stddev;  // floored so apply() never divides by ~0

    int dim() const { return int(mean.size()); }

    static normalizer identity(int d) {
        normalizer n;
        n.mean = VectorXd::Zero(d);
        n.stddev = VectorXd::Ones(d);
        return n;
    }

    // samples are columns
    static normalizer fit(const MatrixXd& samples, double std_floor = 1e-2) {
        check(samples.cols() > 0, "normalizer: no samples");
        normalizer n;
        n.mean = samples.rowwise().mean();
        VectorXd var = (samples.colwise() - n.mean).array().square().matrix().rowwise().mean();
        n.stddev = var.array().sqrt().max(std_floor).matrix();
        return n;
    }

    VectorXd apply(const VectorXd& x) const {
        if (x.size() != mean.size()) throw shape_error("normalizer: input size mismatch");
        return ((x - mean).array() / stddev.array()).matrix();
    }

    MatrixXd apply_batch(const MatrixXd& x) const {
        if (x.rows() != mean.size()) throw shape_error("normalizer: batch dim mismatch");
        return ((x.colwise() - mean).array().colwise() / stddev.array()).matrix();
    }

    // chain rule through apply(): upstream gradients w.r.t. y become
    // gradients w.r.t. x.
    MatrixXd backprop_batch(const MatrixXd& dy) const {
        if (dy.rows() != mean.size()) throw shape_error("normalizer: grad dim mismatch");
        return (dy.array().colwise() / stddev.array()).matrix();
    }
};

}  // namespace scamp
