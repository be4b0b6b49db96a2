#pragma once

#include <Eigen/Core>

#include "scamp/net.hpp"

namespace scamp {

// First/second-moment adaptive update with bias correction.
struct optim_state {
    long step = 0;
    net_params m;  // first moments, parameter-shaped
    net_params v;  // second moments

    static optim_state for_params(const net_params& p) {
        optim_state s;
        s.m = p.zeros_like();
        s.v = p.zeros_like();
        return s;
    }
};

struct adam_config {
    double lr = 3e-4;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
};

inline void adam_step(net_params& params, const net_params& grads, optim_state& state,
                      const adam_config& cfg) {
    if (params.layers.size() != grads.layers.size())
        throw shape_error("adam_step: grads/params layer count mismatch");
    for (size_t i = 0; i < grads.layers.size(); ++i) {
        if (!grads.layers[i].w.allFinite() || !grads.layers[i].b.allFinite())
            throw error("adam_step: non-finite gradient at layer " + std::to_string(i));
    }
    state.step += 1;
    const double c1 = 1.0 - std::pow(cfg.beta1, double(state.step));
    const double c2 = 1.0 - std::pow(cfg.beta2, double(state.step));
    for (size_t i = 0; i < params.layers.size(); ++i) {
        auto upd = [&](auto& p, const auto& g, auto& m, auto& v) {
            m = cfg.beta1 * m + (1.0 - cfg.beta1) * g;
            v = cfg.beta2 * v + (1.0 - cfg.beta2) * g.cwiseProduct(g);
            p.array() -= cfg.lr * (m.array() / c1) / ((v.array() / c2).sqrt() + cfg.eps);
        };
        upd(params.layers[i].w, grads.layers[i].w, state.m.layers[i].w, state.v.layers[i].w);
        upd(params.layers[i].b, grads.layers[i].b, state.m.layers[i].b, state.v.layers[i].b);
    }
}

}  // namespace scamp
