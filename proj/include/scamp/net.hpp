#pragma once

#include <Eigen/Core>
#include <vector>

#include "scamp/common.hpp"
#include "scamp/rng.hpp"

namespace scamp {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Fully-connected network with ReLU hidden units and an identity output
// layer. Weights/biases live here; the same container doubles as the
// gradient accumulator (grads have the shapes of the parameters).
struct dense_layer {
    MatrixXd w;  // out x in
    VectorXd b;  // out
};

struct net_params {
    std::vector<dense_layer> layers;

    int input_dim() const { return layers.empty() ? 0 : int(layers.front().w.cols()); }
    int output_dim() const { return layers.empty() ? 0 : int(layers.back().w.rows()); }

    void validate() const {
        check(!layers.empty(), "net: no layers");
        for (size_t i = 0; i < layers.size(); ++i) {
            const auto& l = layers[i];
            if (l.b.size() != l.w.rows())
                throw shape_error("net: bias/weight row mismatch at layer " + std::to_string(i));
            if (i > 0 && layers[i - 1].w.rows() != l.w.cols())
                throw shape_error("net: dimension mismatch between layers " +
                                  std::to_string(i - 1) + " and " + std::to_string(i));
            if (!l.w.allFinite() || !l.b.allFinite())
                throw error("net: non-finite parameter at layer " + std::to_string(i));
        }
    }

    net_params zeros_like() const {
        net_params g;
        g.layers.reserve(layers.size());
        for (const auto& l : layers)
            g.layers.push_back({MatrixXd::Zero(l.w.rows(), l.w.cols()), VectorXd::Zero(l.b.size())});
        return g;
    }

    void set_zero() {
        for (auto& l : layers) {
            l.w.setZero();
            l.b.setZero();
        }
    }

    void add_scaled(const net_params& other, double s) {
        for (size_t i = 0; i < layers.size(); ++i) {
            layers[i].w += s * other.layers[i].w;
            layers[i].b += s * other.layers[i].b;
        }
    }

    size_t num_params() const {
        size_t n = 0;
        for (const auto& l : layers) n += size_t(l.w.size()) + size_t(l.b.size());
        return n;
    }
};

// Uniform Xavier init; the final layer may be scaled down (policy nets use
// 0.01 so initial actions are near-zero PD offsets).
inline net_params make_mlp(int in_dim, const std::vector<int>& hidden, int out_dim, rng& rg,
                           double final_scale = 1.0) {
    net_params p;
    std::vector<int> dims;
    dims.push_back(in_dim);
    for (int h : hidden) dims.push_back(h);
    dims.push_back(out_dim);
    for (size_t i = 0; i + 1 < dims.size(); ++i) {
        dense_layer l;
        l.w.resize(dims[i + 1], dims[i]);
        double bound = std::sqrt(6.0 / double(dims[i] + dims[i + 1]));
        for (int r = 0; r < l.w.rows(); ++r)
            for (int c = 0; c < l.w.cols(); ++c) l.w(r, c) = rg.uniform(-bound, bound);
        l.b = VectorXd::Zero(dims[i + 1]);
        if (i + 2 == dims.size()) l.w *= final_scale;
        p.layers.push_back(std::move(l));
    }
    return p;
}

inline VectorXd mlp_forward(const net_params& p, const VectorXd& input) {
    if (input.size() != p.input_dim())
        throw shape_error("mlp_forward: input size " + std::to_string(input.size()) +
                          " != " + std::to_string(p.input_dim()));
    VectorXd a = input;
    for (size_t i = 0; i < p.layers.size(); ++i) {
        a = (p.layers[i].w * a + p.layers[i].b).eval();
        if (i + 1 < p.layers.size()) a = a.cwiseMax(0.0);
    }
    return a;
}

// Batched forward; samples are columns. Keeps pre-activation masks and
// activations when a cache is supplied so a backward pass can follow.
struct forward_cache {
    std::vector<MatrixXd> act;  // act[0] = input, act[l] = post-activation of layer l
};

inline MatrixXd mlp_forward_batch(const net_params& p, const MatrixXd& input,
                                  forward_cache* cache = nullptr) {
    if (input.rows() != p.input_dim()) throw shape_error("mlp_forward_batch: input dim mismatch");
    if (cache) {
        cache->act.clear();
        cache->act.push_back(input);
    }
    MatrixXd a = input;
    for (size_t i = 0; i < p.layers.size(); ++i) {
        MatrixXd z = (p.layers[i].w * a).colwise() + p.layers[i].b;
        if (i + 1 < p.layers.size()) z = z.cwiseMax(0.0);
        a = std::move(z);
        if (cache) cache->act.push_back(a);
    }
    return a;
}

// Exact gradients of sum_n (upstream_n . output_n) w.r.t. parameters and
// inputs. Gradients over the batch are summed; callers scale as needed.
// The input gradient feeds the discriminator's gradient penalty.
struct backward_result {
    net_params grads;
    MatrixXd input_grad;  // in x N
};

inline backward_result mlp_backward_batch(const net_params& p, const forward_cache& cache,
                                          const MatrixXd& upstream) {
    const int L = int(p.layers.size());
    if (int(cache.act.size()) != L + 1) throw shape_error("mlp_backward: stale cache");
    if (upstream.rows() != p.output_dim() || upstream.cols() != cache.act[0].cols())
        throw shape_error("mlp_backward: upstream shape mismatch");

    backward_result r;
    r.grads.layers.resize(L);
    MatrixXd delta = upstream;  // dL/dz of current layer
    for (int l = L - 1; l >= 0; --l) {
        if (l < L - 1) {
            // ReLU mask from the stored post-activation (positive iff z > 0).
            delta = ((cache.act[l + 1].array() > 0.0).cast<double>() * delta.array()).matrix();
        }
        r.grads.layers[l].w.noalias() = delta * cache.act[l].transpose();
        r.grads.layers[l].b = delta.rowwise().sum();
        if (l > 0)
            delta = (p.layers[l].w.transpose() * delta).eval();
        else
            r.input_grad.noalias() = p.layers[l].w.transpose() * delta;
    }
    return r;
}

inline std::pair<net_params, VectorXd> mlp_backward(const net_params& p, const VectorXd& input,
                                                    const VectorXd& upstream) {
    forward_cache cache;
    mlp_forward_batch(p, input, &cache);
    if (upstream.size() != p.output_dim()) throw shape_error("mlp_backward: upstream size mismatch");
    backward_result r = mlp_backward_batch(p, cache, upstream);
    return {std::move(r.grads), VectorXd(r.input_grad.col(0))};
}

// Parameter gradients of P = sum_n coeff_n * ||d out_n / d in_n||^2 for a
// scalar-output network, reusing the forward cache of the same batch. The
// per-sample input gradient g_n is a product of weight matrices and ReLU
// masks; the masks are locally constant almost everywhere, so P is (locally)
// a polynomial in the weights with zero bias dependence. Backpropagating
// through the gradient chain itself gives the exact a.e. derivative:
//   dz[L-1] = 1,  dz[l] = mask_l . (W_{l+1}^T dz[l+1]),  g = W_0^T dz[0]
//   vt = 2 g diag(coeff);  dP/dW_0 = dz[0] vt^T;  v = W_0 vt
//   for l = 1..L-1:  m = mask_{l-1} . v;  dP/dW_l = dz[l] m^T;  v = W_l m
// Returns the gradients; writes P to *penalty when requested.
inline net_params mlp_grad_penalty_backward(const net_params& p, const forward_cache& cache,
                                            const VectorXd& coeff, double* penalty = nullptr) {
    const int L = int(p.layers.size());
    if (p.output_dim() != 1) throw shape_error("grad penalty: scalar output only");
    if (int(cache.act.size()) != L + 1) throw shape_error("grad penalty: stale cache");
    const int N = int(cache.act[0].cols());
    if (coeff.size() != N) throw shape_error("grad penalty: coeff size mismatch");

    std::vector<MatrixXd> dz(static_cast<size_t>(L));
    dz[size_t(L - 1)] = MatrixXd::Ones(1, N);
    for (int l = L - 2; l >= 0; --l)
        dz[size_t(l)] = ((cache.act[size_t(l) + 1].array() > 0.0).cast<double>() *
                         (p.layers[size_t(l) + 1].w.transpose() * dz[size_t(l) + 1]).array())
                            .matrix();
    MatrixXd g = p.layers[0].w.transpose() * dz[0];  // in x N, per-sample input gradients
    if (penalty) *penalty = (g.array().square().colwise().sum().transpose() * coeff.array()).sum();

    net_params grads = p.zeros_like();
    MatrixXd vt = 2.0 * g * coeff.asDiagonal();
    grads.layers[0].w.noalias() = dz[0] * vt.transpose();
    if (L == 1) return grads;
    MatrixXd v = p.layers[0].w * vt;
    for (int l = 1; l < L; ++l) {
        MatrixXd m = ((cache.act[size_t(l)].array() > 0.0).cast<double>() * v.array()).matrix();
        grads.layers[size_t(l)].w.noalias() = dz[size_t(l)] * m.transpose();
        if (l + 1 < L) v.noalias() = p.layers[size_t(l)].w * m;
    }
    return grads;
}

}  // namespace scamp
