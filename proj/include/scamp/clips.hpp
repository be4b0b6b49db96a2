#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "scamp/body.hpp"
#include "scamp/obs.hpp"
#include "scamp/rng.hpp"

namespace scamp {

enum class clip_tag { sit, lie, carry, locomotion, idle };

inline const char* clip_tag_name(clip_tag t) {
    switch (t) {
        case clip_tag::sit: return "sit";
        case clip_tag::lie: return "lie";
        case clip_tag::carry: return "carry";
        case clip_tag::locomotion: return "locomotion";
        case clip_tag::idle: return "idle";
    }
    return "?";
}

inline clip_tag parse_clip_tag(const std::string& s) {
    for (clip_tag t : {clip_tag::sit, clip_tag::lie, clip_tag::carry, clip_tag::locomotion,
                       clip_tag::idle})
        if (s == clip_tag_name(t)) return t;
    throw io_error("unknown clip tag: " + s);
}

// One reference frame: character state plus the task object's pose. Static
// objects just repeat their pose; the carry box actually moves.
struct motion_frame {
    character_state st;
    Vector2d obj_pos{0.0, 0.0};
    double obj_angle = 0.0;
};

struct motion_clip {
    double fps = 30.0;
    std::uint64_t body_hash = 0;
    clip_tag tag = clip_tag::locomotion;
    std::vector<motion_frame> frames;

    double duration() const { return frames.empty() ? 0.0 : double(frames.size() - 1) / fps; }

    // Stored velocities must track forward differences of the position
    // track: 10% relative with a 0.1 m/s (rad/s) absolute floor so rest
    // frames don't need bit-exact zeros.
    void validate() const {
        check(fps > 0.0, "clip: fps must be positive");
        check(frames.size() >= 2, "clip: needs at least 2 frames");
        for (const motion_frame& f : frames)
            check(f.st.finite() && f.obj_pos.allFinite() && std::isfinite(f.obj_angle),
                  "clip: non-finite frame");
        const double dt = 1.0 / fps;
        auto ok = [](double v, double fd) { return std::abs(v - fd) <= 0.1 * std::abs(fd) + 0.1; };
        for (size_t i = 0; i + 1 < frames.size(); ++i) {
            const character_state& a = frames[i].st;
            const character_state& b = frames[i + 1].st;
            Vector2d fd_v = (b.root_pos - a.root_pos) / dt;
            check(ok(a.root_vel.x(), fd_v.x()) && ok(a.root_vel.y(), fd_v.y()),
                  "clip: root velocity inconsistent with positions");
            check(ok(a.root_omega, wrap_angle(b.root_angle - a.root_angle) / dt),
                  "clip: root angular velocity inconsistent");
            for (int j = 0; j < body_def::kNumJoints; ++j)
                check(ok(a.qd[j], wrap_angle(b.q[j] - a.q[j]) / dt),
                      "clip: joint velocity inconsistent");
        }
    }
};

// --- serialization ------------------------------------------------------
//
// Line-delimited text, one frame per line after a fixed header. %.17g keeps
// doubles bit-exact across a save/load round trip.

inline void save_clip(const std::string& path, const motion_clip& clip) {
    std::ofstream f(path);
    if (!f) throw io_error("cannot write " + path);
    char buf[64];
    auto num = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
    };
    f << "scamp-clip v1\n";
    f << "fps " << num(clip.fps) << "\n";
    f << "body_hash " << clip.body_hash << "\n";
    f << "task " << clip_tag_name(clip.tag) << "\n";
    f << "frames " << clip.frames.size() << "\n";
    for (const motion_frame& fr : clip.frames) {
        const character_state& s = fr.st;
        f << "f " << num(s.root_pos.x()) << ' ' << num(s.root_pos.y()) << ' '
          << num(s.root_angle) << ' ' << num(s.root_vel.x()) << ' ' << num(s.root_vel.y()) << ' '
          << num(s.root_omega);
        for (int j = 0; j < body_def::kNumJoints; ++j) f << ' ' << num(s.q[j]);
        for (int j = 0; j < body_def::kNumJoints; ++j) f << ' ' << num(s.qd[j]);
        f << ' ' << num(fr.obj_pos.x()) << ' ' << num(fr.obj_pos.y()) << ' '
          << num(fr.obj_angle) << "\n";
    }
    if (!f) throw io_error("write failed: " + path);
}

inline motion_clip load_clip(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw io_error("cannot read " + path);
    auto fail = [&](const std::string& what) { throw io_error(path + ": " + what); };
    std::string line;
    auto header = [&](const std::string& key) {
        if (!std::getline(f, line) || line.rfind(key + " ", 0) != 0)
            fail("missing header field " + key);
        return line.substr(key.size() + 1);
    };
    if (!std::getline(f, line) || line != "scamp-clip v1") fail("bad magic");
    motion_clip clip;
    clip.fps = std::strtod(header("fps").c_str(), nullptr);
    clip.body_hash = std::strtoull(header("body_hash").c_str(), nullptr, 10);
    clip.tag = parse_clip_tag(header("task"));
    size_t n = std::strtoull(header("frames").c_str(), nullptr, 10);
    clip.frames.reserve(n);
    const int vals = 6 + 2 * body_def::kNumJoints + 3;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        if (line.rfind("f ", 0) != 0) fail("malformed frame line");
        const char* p = line.c_str() + 2;
        double v[6 + 2 * body_def::kNumJoints + 3];
        for (int i = 0; i < vals; ++i) {
            char* end = nullptr;
            v[i] = std::strtod(p, &end);
            if (end == p) fail("malformed frame");
            p = end;
        }
        motion_frame fr;
        fr.st.root_pos = Vector2d(v[0], v[1]);
        fr.st.root_angle = v[2];
        fr.st.root_vel = Vector2d(v[3], v[4]);
        fr.st.root_omega = v[5];
        for (int j = 0; j < body_def::kNumJoints; ++j) {
            fr.st.q[j] = v[6 + j];
            fr.st.qd[j] = v[6 + body_def::kNumJoints + j];
        }
        fr.obj_pos = Vector2d(v[6 + 2 * body_def::kNumJoints], v[7 + 2 * body_def::kNumJoints]);
        fr.obj_angle = v[8 + 2 * body_def::kNumJoints];
        clip.frames.push_back(fr);
    }
    if (clip.frames.size() != n) fail("frame count mismatch");
    clip.validate();
    return clip;
}

// --- dataset ------------------------------------------------------------

// Featurized observation pair consumed by the discriminator. The object
// block rides inside both observations: that is the scene conditioning.
struct transition {
    VectorXd obs, obs_next;
};

struct motion_dataset {
    std::vector<motion_clip> clips;
    double policy_fps = 30.0;
    std::uint64_t body_hash = 0;

    struct frame_ref {
        int clip = 0, frame = 0, stride = 1;
    };
    std::vector<frame_ref> transitions;  // uniform draw = clip weighted by transition count
    std::vector<frame_ref> inits;

    void build_index() {
        transitions.clear();
        inits.clear();
        check(!clips.empty(), "empty dataset");
        body_hash = clips.front().body_hash;
        for (size_t c = 0; c < clips.size(); ++c) {
            const motion_clip& clip = clips[c];
            clip.validate();
            check(clip.body_hash == body_hash, "dataset: body definition mismatch across clips");
            // pairs are formed at the policy rate even when the clip is
            // stored at a finer timestep
            int stride = std::max(1, int(std::lround(clip.fps / policy_fps)));
            for (int i = 0; i + stride < int(clip.frames.size()); ++i)
                transitions.push_back({int(c), i, stride});
            for (int i = 0; i < int(clip.frames.size()); ++i) inits.push_back({int(c), i, 1});
        }
        check(!transitions.empty(), "dataset has no transitions");
    }

    size_t num_transitions() const { return transitions.size(); }
};

inline motion_dataset load_clips(const std::string& dir, double policy_fps = 30.0) {
    namespace fs = std::filesystem;
    std::vector<fs::path> files;
    if (fs::exists(dir))
        for (const auto& e : fs::directory_iterator(dir))
            if (e.is_regular_file() && e.path().extension() == ".txt") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    motion_dataset ds;
    ds.policy_fps = policy_fps;
    for (const fs::path& p : files) ds.clips.push_back(load_clip(p.string()));
    check(!ds.clips.empty(), "empty dataset");
    ds.build_index();
    return ds;
}

inline transition featurize_transition(const body_def& def, const motion_frame& a,
                                       const motion_frame& b) {
    return {observe(def, a.st, a.obj_pos, a.obj_angle), observe(def, b.st, b.obj_pos, b.obj_angle)};
}

inline transition sample_transition(const motion_dataset& ds, const body_def& def, rng& r) {
    check(!ds.transitions.empty(), "sample_transition: empty dataset");
    check(def.hash() == ds.body_hash, "sample_transition: body definition mismatch");
    motion_dataset::frame_ref t = ds.transitions[size_t(r.uniform_int(int(ds.transitions.size())))];
    const motion_clip& clip = ds.clips[size_t(t.clip)];
    return featurize_transition(def, clip.frames[size_t(t.frame)],
                                clip.frames[size_t(t.frame + t.stride)]);
}

// Uniform frame draw for reference-state initialization, projected into
// simulator limits (wrapped root angle, joint angles clamped to their
// limits) so the result always loads cleanly.
inline motion_frame sample_init(const motion_dataset& ds, const body_def& def, rng& r) {
    check(!ds.inits.empty(), "sample_init: empty dataset");
    motion_dataset::frame_ref t = ds.inits[size_t(r.uniform_int(int(ds.inits.size())))];
    motion_frame f = ds.clips[size_t(t.clip)].frames[size_t(t.frame)];
    f.st.root_angle = wrap_angle(f.st.root_angle);
    auto limits = joint_limit_table(def);
    for (int j = 0; j < body_def::kNumJoints; ++j)
        f.st.q[j] = clamp(f.st.q[j], limits[size_t(j)].first, limits[size_t(j)].second);
    return f;
}

}  // namespace scamp
