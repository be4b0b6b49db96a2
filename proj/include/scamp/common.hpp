#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace scamp {

constexpr double kPi = 3.14159265358979323846;
constexpr double kGravity = 9.81;

// All errors thrown by the library derive from this.
struct error : std::runtime_error {
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

struct shape_error : error {
    explicit shape_error(const std::string& msg) : error("shape: " + msg) {}
};

struct config_error : error {
    explicit config_error(const std::string& msg) : error("config: " + msg) {}
};

struct io_error : error {
    explicit io_error(const std::string& msg) : error("io: " + msg) {}
};

// Simulator fault; carries a short world snapshot in the message.
struct sim_fault : error {
    explicit sim_fault(const std::string& msg) : error("sim: " + msg) {}
};

inline void check(bool cond, const std::string& msg) {
    if (!cond) throw error(msg);
}

// Wrap an angle into (-pi, pi].
inline double wrap_angle(double a) {
    a = std::fmod(a, 2.0 * kPi);
    if (a > kPi) a -= 2.0 * kPi;
    if (a <= -kPi) a += 2.0 * kPi;
    return a;
}

inline double clamp(double x, double lo, double hi) {
    return x < lo ? lo : (x > hi ? hi : x);
}

// FNV-1a, used for observation-layout and body-definition hashes.
inline std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace scamp
