#pragma once

#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "scamp/common.hpp"
#include "scamp/net.hpp"
#include "scamp/norm.hpp"
#include "scamp/optim.hpp"

namespace scamp {

// Little-endian binary encoding; doubles round-trip bit-exactly.
struct byte_writer {
    std::vector<uint8_t> buf;

    void put_u32(uint32_t v) {
        for (int i = 0; i < 4; ++i) buf.push_back(uint8_t(v >> (8 * i)));
    }
    void put_u64(uint64_t v) {
        for (int i = 0; i < 8; ++i) buf.push_back(uint8_t(v >> (8 * i)));
    }
    void put_i64(int64_t v) { put_u64(uint64_t(v)); }
    void put_double(double d) {
        uint64_t v;
        std::memcpy(&v, &d, 8);
        put_u64(v);
    }
    void put_string(const std::string& s) {
        put_u32(uint32_t(s.size()));
        buf.insert(buf.end(), s.begin(), s.end());
    }
    void put_vector(const VectorXd& v) {
        put_u32(uint32_t(v.size()));
        for (int i = 0; i < v.size(); ++i) put_double(v[i]);
    }
    void put_matrix(const MatrixXd& m) {
        put_u32(uint32_t(m.rows()));
        put_u32(uint32_t(m.cols()));
        for (int c = 0; c < m.cols(); ++c)
            for (int r = 0; r < m.rows(); ++r) put_double(m(r, c));
    }
    void put_params(const net_params& p) {
        put_u32(uint32_t(p.layers.size()));
        for (const auto& l : p.layers) {
            put_matrix(l.w);
            put_vector(l.b);
        }
    }
    void put_optim(const optim_state& s) {
        put_i64(s.step);
        put_params(s.m);
        put_params(s.v);
    }
};

struct byte_reader {
    const uint8_t* data;
    size_t size;
    size_t pos = 0;

    void need(size_t n) {
        if (pos + n > size) throw io_error("checkpoint: truncated data");
    }
    uint32_t get_u32() {
        need(4);
        uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= uint32_t(data[pos + i]) << (8 * i);
        pos += 4;
        return v;
    }
    uint64_t get_u64() {
        need(8);
        uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= uint64_t(data[pos + i]) << (8 * i);
        pos += 8;
        return v;
    }
    int64_t get_i64() { return int64_t(get_u64()); }
    double get_double() {
        uint64_t v = get_u64();
        double d;
        std::memcpy(&d, &v, 8);
        return d;
    }
    std::string get_string() {
        uint32_t n = get_u32();
        need(n);
        std::string s(reinterpret_cast<const char*>(data + pos), n);
        pos += n;
        return s;
    }
    VectorXd get_vector() {
        uint32_t n = get_u32();
        VectorXd v(n);
        for (uint32_t i = 0; i < n; ++i) v[i] = get_double();
        return v;
    }
    MatrixXd get_matrix() {
        uint32_t rows = get_u32();
        uint32_t cols = get_u32();
        MatrixXd m(rows, cols);
        for (uint32_t c = 0; c < cols; ++c)
            for (uint32_t r = 0; r < rows; ++r) m(r, c) = get_double();
        return m;
    }
    net_params get_params() {
        uint32_t n = get_u32();
        net_params p;
        p.layers.resize(n);
        for (uint32_t i = 0; i < n; ++i) {
            p.layers[i].w = get_matrix();
            p.layers[i].b = get_vector();
        }
        return p;
    }
    optim_state get_optim() {
        optim_state s;
        s.step = long(get_i64());
        s.m = get_params();
        s.v = get_params();
        return s;
    }
};

// Full training snapshot. The observation-layout hash guards against
// loading weights into a binary whose feature layout has drifted.
struct checkpoint {
    static constexpr uint32_t kVersion = 1;
    static constexpr uint64_t kMagic = 0x31504d4143535350ull;  // "PSSCAMP1"

    uint64_t obs_layout_hash = 0;
    std::string task;
    int64_t iteration = 0;
    int64_t env_steps = 0;
    VectorXd sigma;
    net_params policy, value, disc;
    optim_state policy_opt, value_opt, disc_opt;
    normalizer obs_norm;

    std::vector<uint8_t> serialize() const {
        byte_writer w;
        w.put_u64(kMagic);
        w.put_u32(kVersion);
        w.put_u64(obs_layout_hash);
        w.put_string(task);
        w.put_i64(iteration);
        w.put_i64(env_steps);
        w.put_vector(sigma);
        w.put_params(policy);
        w.put_params(value);
        w.put_params(disc);
        w.put_optim(policy_opt);
        w.put_optim(value_opt);
        w.put_optim(disc_opt);
        w.put_vector(obs_norm.mean);
        w.put_vector(obs_norm.stddev);
        return std::move(w.buf);
    }

    static checkpoint deserialize(const uint8_t* data, size_t size) {
        byte_reader r{data, size};
        if (r.get_u64() != kMagic) throw io_error("checkpoint: bad magic");
        uint32_t ver = r.get_u32();
        if (ver != kVersion)
            throw io_error("checkpoint: unsupported version " + std::to_string(ver));
        checkpoint c;
        c.obs_layout_hash = r.get_u64();
        c.task = r.get_string();
        c.iteration = r.get_i64();
        c.env_steps = r.get_i64();
        c.sigma = r.get_vector();
        c.policy = r.get_params();
        c.value = r.get_params();
        c.disc = r.get_params();
        c.policy_opt = r.get_optim();
        c.value_opt = r.get_optim();
        c.disc_opt = r.get_optim();
        c.obs_norm.mean = r.get_vector();
        c.obs_norm.stddev = r.get_vector();
        if (r.pos != r.size) throw io_error("checkpoint: trailing bytes");
        return c;
    }

    void save(const std::string& path) const {
        auto bytes = serialize();
        std::ofstream f(path, std::ios::binary);
        if (!f) throw io_error("checkpoint: cannot open for write: " + path);
        f.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
        if (!f) throw io_error("checkpoint: write failed: " + path);
    }

    static checkpoint load(const std::string& path) {
        std::ifstream f(path, std::ios::binary | std::ios::ate);
        if (!f) throw io_error("checkpoint: cannot open: " + path);
        std::streamsize n = f.tellg();
        f.seekg(0);
        std::vector<uint8_t> bytes(size_t(n), 0);
        f.read(reinterpret_cast<char*>(bytes.data()), n);
        if (!f) throw io_error("checkpoint: read failed: " + path);
        return deserialize(bytes.data(), bytes.size());
    }
};

}  // namespace scamp
