#pragma once

#include <Eigen/Core>
#include <cstring>
#include <string>
#include <vector>

#include "scamp/common.hpp"
#include "scamp/geom.hpp"

namespace scamp {

inline double pd_torque(double q, double qdot, double q_target, double kp, double kd,
                        double tau_limit = 1e30) {
    return clamp(kp * (q_target - q) - kd * qdot, -tau_limit, tau_limit);
}

inline Eigen::Matrix2d inv2x2(const Eigen::Matrix2d& k) {
    double det = k(0, 0) * k(1, 1) - k(0, 1) * k(1, 0);
    Eigen::Matrix2d inv;
    if (std::abs(det) < 1e-30) {
        inv.setZero();
        return inv;
    }
    double d = 1.0 / det;
    inv(0, 0) = k(1, 1) * d;
    inv(0, 1) = -k(0, 1) * d;
    inv(1, 0) = -k(1, 0) * d;
    inv(1, 1) = k(0, 0) * d;
    return inv;
}

struct rigid_body {
    Vector2d pos{0.0, 0.0};  // center of mass
    double angle = 0.0;
    Vector2d vel{0.0, 0.0};
    double omega = 0.0;
    double mass = 0.0, inertia = 0.0;
    double inv_mass = 0.0, inv_inertia = 0.0;
    std::vector<shape> shapes;
    double friction = 0.8;
    int group = -1;  // bodies sharing a non-negative group never collide
    bool extremity = false;
    bool character_link = false;
    double bound_radius = 0.0;  // broadphase circle around COM

    void set_mass(double m, double i) {
        mass = m;
        inertia = i;
        inv_mass = m > 0.0 ? 1.0 / m : 0.0;
        inv_inertia = i > 0.0 ? 1.0 / i : 0.0;
    }

    void update_bound() {
        bound_radius = 0.0;
        for (const auto& s : shapes) {
            double ext = s.kind == shape_kind::capsule ? s.half_len + s.radius
                                                       : std::sqrt(s.hx * s.hx + s.hy * s.hy);
            bound_radius = std::max(bound_radius, s.local_pos.norm() + ext);
        }
    }

    Vector2d velocity_at(const Vector2d& world_point) const {
        return vel + omega * perp(world_point - pos);
    }
};

// Revolute joint between parent and child with angle limits and an optional
// PD servo (kp > 0 makes the joint actuated; actuation order follows joint
// creation order).
struct joint_config {
    double lo = -kPi, hi = kPi;
    double kp = 0.0, kd = 0.0, tau_max = 1e30;
};

struct joint {
    int parent = -1, child = -1;
    Vector2d local_a{0.0, 0.0}, local_b{0.0, 0.0};  // anchors in body frames
    double ref_angle = 0.0;                         // child angle - parent angle at q = 0
    joint_config cfg;
    int act_index = -1;
};

struct sim_params {
    double dt = 1.0 / 120.0;
    int velocity_iters = 10;
    int position_iters = 8;
    double contact_slop = 5e-4;
    double position_factor = 0.2;  // fraction of error removed per position iteration
    double max_correction = 0.2;   // m per iteration
    double gravity = kGravity;
};

class world {
  public:
    sim_params params;
    std::vector<rigid_body> bodies;
    std::vector<joint> joints;
    double time = 0.0;
    long step_count = 0;

    int add_body(rigid_body b) {
        b.update_bound();
        bodies.push_back(std::move(b));
        force_acc_.emplace_back(0.0, 0.0);
        torque_acc_.push_back(0.0);
        return int(bodies.size()) - 1;
    }

    int add_static_box(const Vector2d& center, double hx, double hy, double friction,
                       int group = -1) {
        rigid_body b;
        b.pos = center;
        b.friction = friction;
        b.group = group;
        b.shapes.push_back(shape::make_box({0.0, 0.0}, hx, hy));
        return add_body(std::move(b));
    }

    int add_joint(int parent, int child, const Vector2d& world_anchor, const joint_config& cfg) {
        check_body(parent);
        check_body(child);
        joint j;
        j.parent = parent;
        j.child = child;
        j.local_a = rot2(bodies[parent].angle).unapply(world_anchor - bodies[parent].pos);
        j.local_b = rot2(bodies[child].angle).unapply(world_anchor - bodies[child].pos);
        j.ref_angle = bodies[child].angle - bodies[parent].angle;
        j.cfg = cfg;
        if (cfg.kp > 0.0) j.act_index = num_actuated_++;
        joints.push_back(j);
        joint_warm_.emplace_back();
        return int(joints.size()) - 1;
    }

    int num_actuated() const { return num_actuated_; }

    double joint_angle(int ji) const {
        const joint& j = joints[size_t(ji)];
        return bodies[j.child].angle - bodies[j.parent].angle - j.ref_angle;
    }

    double joint_velocity(int ji) const {
        const joint& j = joints[size_t(ji)];
        return bodies[j.child].omega - bodies[j.parent].omega;
    }

    void apply_impulse(int body_id, const Vector2d& world_point, const Vector2d& impulse) {
        check_body(body_id);
        rigid_body& b = bodies[size_t(body_id)];
        b.vel += b.inv_mass * impulse;
        b.omega += b.inv_inertia * cross2(world_point - b.pos, impulse);
    }

    void apply_force(int body_id, const Vector2d& world_point, const Vector2d& force) {
        check_body(body_id);
        force_acc_[size_t(body_id)] += force;
        torque_acc_[size_t(body_id)] += cross2(world_point - bodies[size_t(body_id)].pos, force);
    }

    // One physics substep: PD servos toward the targets (one entry per
    // actuated joint), gravity, impulse contacts/joints, semi-implicit
    // integration. The servo torque kp*(target - q) - kd*qd is solved
    // implicitly inside the velocity iteration (backward Euler on the joint
    // coordinate), which stays stable at stiff gains where explicit torque
    // application would oscillate.
    void step(const Eigen::VectorXd& pd_targets, double dt) {
        check(dt > 0.0, "step: dt must be positive");
        if (pd_targets.size() != num_actuated_)
            throw shape_error("step: expected " + std::to_string(num_actuated_) +
                              " pd targets, got " + std::to_string(pd_targets.size()));

        for (size_t i = 0; i < bodies.size(); ++i) {
            rigid_body& b = bodies[i];
            if (b.inv_mass == 0.0 && b.inv_inertia == 0.0) continue;
            b.vel += dt * (Vector2d(0.0, -params.gravity) + b.inv_mass * force_acc_[i]);
            b.omega += dt * b.inv_inertia * torque_acc_[i];
        }

        generate_contacts();
        prepare_joints(pd_targets, dt);
        for (int it = 0; it < params.velocity_iters; ++it) {
            solve_joint_velocities();
            solve_contact_velocities();
        }

        for (auto& b : bodies) {
            if (b.inv_mass == 0.0 && b.inv_inertia == 0.0) continue;
            b.pos += dt * b.vel;
            b.angle += dt * b.omega;
        }

        for (int it = 0; it < params.position_iters; ++it) {
            solve_joint_positions();
            solve_contact_positions();
        }

        for (size_t i = 0; i < joints.size(); ++i) {
            joint_warm_[i].eq_j = joint_pre_[i].eq_acc;
            joint_warm_[i].servo_j = joint_pre_[i].servo_j;
            joint_warm_[i].lower_j = joint_pre_[i].lower_j;
            joint_warm_[i].upper_j = joint_pre_[i].upper_j;
        }
        prev_contacts_ = contacts_;

        for (size_t i = 0; i < bodies.size(); ++i) {
            force_acc_[i].setZero();
            torque_acc_[i] = 0.0;
            const rigid_body& b = bodies[i];
            if (!b.pos.allFinite() || !std::isfinite(b.angle) || !b.vel.allFinite() ||
                !std::isfinite(b.omega))
                throw sim_fault("non-finite state at body " + std::to_string(i) + " after step " +
                                std::to_string(step_count) + " (pos " + std::to_string(b.pos.x()) +
                                "," + std::to_string(b.pos.y()) + ")");
        }
        time += dt;
        ++step_count;
    }

    // Drops persisted solver impulses (used when teleporting bodies between
    // episodes so stale warm-start data cannot leak across resets).
    void clear_solver_cache() {
        prev_contacts_.clear();
        for (auto& wj : joint_warm_) wj = joint_warm{};
    }

    void step(double dt) { step(Eigen::VectorXd(), dt); }

    // FNV over the raw dynamic state; bit-identical trajectories hash equal.
    std::uint64_t state_hash() const {
        std::uint64_t h = 14695981039346656037ull;
        auto mix = [&h](const void* p, size_t n) {
            const unsigned char* c = static_cast<const unsigned char*>(p);
            for (size_t i = 0; i < n; ++i) {
                h ^= c[i];
                h *= 1099511628211ull;
            }
        };
        for (const auto& b : bodies) {
            double v[6] = {b.pos.x(), b.pos.y(), b.angle, b.vel.x(), b.vel.y(), b.omega};
            mix(v, sizeof(v));
        }
        return h;
    }

    struct contact {
        int a = -1, b = -1;
        int sa = 0, sb = 0, tag = 0;  // shape indices + manifold feature tag
        Vector2d ra, rb;          // COM offsets at prestep
        Vector2d local_a, local_b;  // contact point in body frames (position solve)
        Vector2d normal, tangent;
        double mass_n = 0.0, mass_t = 0.0;
        double penetration = 0.0;
        double jn = 0.0, jt = 0.0;
        double friction = 0.0;
    };

    // contacts from the most recent step, with their solved impulses
    const std::vector<contact>& last_contacts() const { return contacts_; }

  private:

    void check_body(int id) const {
        if (id < 0 || id >= int(bodies.size()))
            throw error("unknown body id " + std::to_string(id));
    }

    static double pair_friction(const rigid_body& a, const rigid_body& b) {
        return std::min(a.friction, b.friction);
    }

    void generate_contacts() {
        contacts_.clear();
        const size_t n = bodies.size();
        for (size_t i = 0; i < n; ++i) {
            for (size_t k = i + 1; k < n; ++k) {
                const rigid_body& A = bodies[i];
                const rigid_body& B = bodies[k];
                if (A.inv_mass == 0.0 && B.inv_mass == 0.0) continue;
                if (A.group >= 0 && A.group == B.group) continue;
                double reach = A.bound_radius + B.bound_radius;
                if ((A.pos - B.pos).squaredNorm() > reach * reach) continue;
                rot2 ra(A.angle), rb(B.angle);
                for (size_t si = 0; si < A.shapes.size(); ++si) {
                    placed_shape pa = place(A.shapes[si], A.pos, ra);
                    for (size_t sk = 0; sk < B.shapes.size(); ++sk) {
                        placed_shape pb = place(B.shapes[sk], B.pos, rb);
                        manifold m = collide(pa, pb);
                        for (int c = 0; c < m.count; ++c) {
                            contact ct;
                            ct.a = int(i);
                            ct.b = int(k);
                            ct.sa = int(si);
                            ct.sb = int(sk);
                            ct.tag = m.pts[c].tag;
                            ct.ra = m.pts[c].pos - A.pos;
                            ct.rb = m.pts[c].pos - B.pos;
                            ct.local_a = ra.unapply(ct.ra);
                            ct.local_b = rb.unapply(ct.rb);
                            ct.normal = m.pts[c].normal;
                            ct.tangent = perp(ct.normal);
                            ct.penetration = m.pts[c].penetration;
                            ct.friction = pair_friction(A, B);
                            double rn_a = cross2(ct.ra, ct.normal);
                            double rn_b = cross2(ct.rb, ct.normal);
                            double kn = A.inv_mass + B.inv_mass + A.inv_inertia * rn_a * rn_a +
                                        B.inv_inertia * rn_b * rn_b;
                            ct.mass_n = kn > 0.0 ? 1.0 / kn : 0.0;
                            double rt_a = cross2(ct.ra, ct.tangent);
                            double rt_b = cross2(ct.rb, ct.tangent);
                            double kt = A.inv_mass + B.inv_mass + A.inv_inertia * rt_a * rt_a +
                                        B.inv_inertia * rt_b * rt_b;
                            ct.mass_t = kt > 0.0 ? 1.0 / kt : 0.0;
                            contacts_.push_back(ct);
                        }
                    }
                }
            }
        }

        // warm start: reuse impulses from matching features of the last step
        for (contact& ct : contacts_) {
            for (const contact& old : prev_contacts_) {
                if (old.a != ct.a || old.b != ct.b || old.sa != ct.sa || old.sb != ct.sb ||
                    old.tag != ct.tag)
                    continue;
                ct.jn = old.jn;
                ct.jt = old.jt;
                rigid_body& A = bodies[size_t(ct.a)];
                rigid_body& B = bodies[size_t(ct.b)];
                Vector2d P = ct.jn * ct.normal + ct.jt * ct.tangent;
                A.vel -= A.inv_mass * P;
                A.omega -= A.inv_inertia * cross2(ct.ra, P);
                B.vel += B.inv_mass * P;
                B.omega += B.inv_inertia * cross2(ct.rb, P);
                break;
            }
        }
    }

    void solve_contact_velocities() {
        for (contact& c : contacts_) {
            rigid_body& A = bodies[size_t(c.a)];
            rigid_body& B = bodies[size_t(c.b)];
            Vector2d dv = B.vel + B.omega * perp(c.rb) - A.vel - A.omega * perp(c.ra);

            double vn = dv.dot(c.normal);
            double dj = -c.mass_n * vn;
            double jn0 = c.jn;
            c.jn = std::max(jn0 + dj, 0.0);
            dj = c.jn - jn0;
            Vector2d pn = dj * c.normal;
            A.vel -= A.inv_mass * pn;
            A.omega -= A.inv_inertia * cross2(c.ra, pn);
            B.vel += B.inv_mass * pn;
            B.omega += B.inv_inertia * cross2(c.rb, pn);

            dv = B.vel + B.omega * perp(c.rb) - A.vel - A.omega * perp(c.ra);
            double vt = dv.dot(c.tangent);
            double djt = -c.mass_t * vt;
            double max_t = c.friction * c.jn;
            double jt0 = c.jt;
            c.jt = clamp(jt0 + djt, -max_t, max_t);
            djt = c.jt - jt0;
            Vector2d pt = djt * c.tangent;
            A.vel -= A.inv_mass * pt;
            A.omega -= A.inv_inertia * cross2(c.ra, pt);
            B.vel += B.inv_mass * pt;
            B.omega += B.inv_inertia * cross2(c.rb, pt);
        }
    }

    // Penetration removal working on positions only (no velocity kick). The
    // separation is tracked through the stored body-local anchors.
    void solve_contact_positions() {
        for (const contact& c : contacts_) {
            rigid_body& A = bodies[size_t(c.a)];
            rigid_body& B = bodies[size_t(c.b)];
            Vector2d pa = A.pos + rot2(A.angle).apply(c.local_a);
            Vector2d pb = B.pos + rot2(B.angle).apply(c.local_b);
            // anchors coincided at prestep with penetration c.penetration
            double sep = (pb - pa).dot(c.normal) - c.penetration;
            double corr = clamp(params.position_factor * (-sep - params.contact_slop), 0.0,
                                params.max_correction);
            if (corr <= 0.0) continue;
            Vector2d P = (corr * c.mass_n) * c.normal;
            A.pos -= A.inv_mass * P;
            A.angle -= A.inv_inertia * cross2(c.ra, P);
            B.pos += B.inv_mass * P;
            B.angle += B.inv_inertia * cross2(c.rb, P);
        }
    }

    struct joint_prestep {
        Vector2d ra, rb;
        Eigen::Matrix2d k_inv;
        double ang_mass = 0.0;
        double lower_j = 0.0, upper_j = 0.0;
        bool lower_active = false, upper_active = false;
        // implicit PD servo row: j_tot == servo_bias - servo_coeff * qd_new
        bool servo = false;
        double servo_bias = 0.0, servo_coeff = 0.0, servo_gamma = 1.0;
        double servo_j = 0.0, servo_jmax = 0.0;
        Vector2d eq_acc{0.0, 0.0};  // accumulated anchor equality impulse
    };

    struct joint_warm {
        Vector2d eq_j{0.0, 0.0};
        double servo_j = 0.0, lower_j = 0.0, upper_j = 0.0;
    };

    void prepare_joints(const Eigen::VectorXd& pd_targets, double dt) {
        joint_pre_.resize(joints.size());
        for (size_t i = 0; i < joints.size(); ++i) {
            const joint& j = joints[i];
            const rigid_body& A = bodies[size_t(j.parent)];
            const rigid_body& B = bodies[size_t(j.child)];
            joint_prestep& p = joint_pre_[i];
            p.ra = rot2(A.angle).apply(j.local_a);
            p.rb = rot2(B.angle).apply(j.local_b);
            Eigen::Matrix2d K;
            K(0, 0) = A.inv_mass + B.inv_mass + A.inv_inertia * p.ra.y() * p.ra.y() +
                      B.inv_inertia * p.rb.y() * p.rb.y();
            K(0, 1) = -A.inv_inertia * p.ra.x() * p.ra.y() - B.inv_inertia * p.rb.x() * p.rb.y();
            K(1, 0) = K(0, 1);
            K(1, 1) = A.inv_mass + B.inv_mass + A.inv_inertia * p.ra.x() * p.ra.x() +
                      B.inv_inertia * p.rb.x() * p.rb.x();
            p.k_inv = inv2x2(K);
            double ka = A.inv_inertia + B.inv_inertia;
            p.ang_mass = ka > 0.0 ? 1.0 / ka : 0.0;
            double q = B.angle - A.angle - j.ref_angle;
            p.lower_active = q <= j.cfg.lo + 1e-3;
            p.upper_active = q >= j.cfg.hi - 1e-3;
            p.servo = j.act_index >= 0 && ka > 0.0;
            if (p.servo) {
                double target = clamp(pd_targets[j.act_index], j.cfg.lo, j.cfg.hi);
                p.servo_bias = dt * j.cfg.kp * (target - q);
                p.servo_coeff = dt * (j.cfg.kp * dt + j.cfg.kd);
                p.servo_gamma = 1.0 / (1.0 + p.servo_coeff * ka);
                p.servo_jmax = j.cfg.tau_max * dt;
            }

            // warm start from the previous step's accumulated impulses
            rigid_body& Am = bodies[size_t(j.parent)];
            rigid_body& Bm = bodies[size_t(j.child)];
            const joint_warm& wj = joint_warm_[i];
            p.eq_acc = wj.eq_j;
            Am.vel -= Am.inv_mass * p.eq_acc;
            Am.omega -= Am.inv_inertia * cross2(p.ra, p.eq_acc);
            Bm.vel += Bm.inv_mass * p.eq_acc;
            Bm.omega += Bm.inv_inertia * cross2(p.rb, p.eq_acc);
            double ang_j = 0.0;
            p.lower_j = p.lower_active ? std::max(wj.lower_j, 0.0) : 0.0;
            p.upper_j = p.upper_active ? std::min(wj.upper_j, 0.0) : 0.0;
            ang_j += p.lower_j + p.upper_j;
            p.servo_j = p.servo ? clamp(wj.servo_j, -p.servo_jmax, p.servo_jmax) : 0.0;
            ang_j += p.servo_j;
            if (ang_j != 0.0) {
                Am.omega -= Am.inv_inertia * ang_j;
                Bm.omega += Bm.inv_inertia * ang_j;
            }
        }
    }

    void solve_joint_velocities() {
        for (size_t i = 0; i < joints.size(); ++i) {
            const joint& j = joints[i];
            joint_prestep& p = joint_pre_[i];
            rigid_body& A = bodies[size_t(j.parent)];
            rigid_body& B = bodies[size_t(j.child)];

            if (p.lower_active) {  // keep relative angular velocity >= 0
                double w = B.omega - A.omega;
                double dj = -p.ang_mass * w;
                double j0 = p.lower_j;
                p.lower_j = std::max(j0 + dj, 0.0);
                dj = p.lower_j - j0;
                A.omega -= A.inv_inertia * dj;
                B.omega += B.inv_inertia * dj;
            }
            if (p.upper_active) {
                double w = B.omega - A.omega;
                double dj = -p.ang_mass * w;
                double j0 = p.upper_j;
                p.upper_j = std::min(j0 + dj, 0.0);
                dj = p.upper_j - j0;
                A.omega -= A.inv_inertia * dj;
                B.omega += B.inv_inertia * dj;
            }
            if (p.servo) {
                double qd = B.omega - A.omega;
                double dj = p.servo_gamma * (p.servo_bias - p.servo_coeff * qd - p.servo_j);
                double j0 = p.servo_j;
                p.servo_j = clamp(j0 + dj, -p.servo_jmax, p.servo_jmax);
                dj = p.servo_j - j0;
                A.omega -= A.inv_inertia * dj;
                B.omega += B.inv_inertia * dj;
            }

            Vector2d dv = B.vel + B.omega * perp(p.rb) - A.vel - A.omega * perp(p.ra);
            Vector2d P = -(p.k_inv * dv);
            p.eq_acc += P;
            A.vel -= A.inv_mass * P;
            A.omega -= A.inv_inertia * cross2(p.ra, P);
            B.vel += B.inv_mass * P;
            B.omega += B.inv_inertia * cross2(p.rb, P);
        }
    }

    void solve_joint_positions() {
        for (const joint& j : joints) {
            rigid_body& A = bodies[size_t(j.parent)];
            rigid_body& B = bodies[size_t(j.child)];

            double q = B.angle - A.angle - j.ref_angle;
            double over = q < j.cfg.lo ? q - j.cfg.lo : (q > j.cfg.hi ? q - j.cfg.hi : 0.0);
            if (over != 0.0) {
                double ka = A.inv_inertia + B.inv_inertia;
                if (ka > 0.0) {
                    double dq = -over / ka;
                    A.angle -= A.inv_inertia * dq;
                    B.angle += B.inv_inertia * dq;
                }
            }

            Vector2d ra = rot2(A.angle).apply(j.local_a);
            Vector2d rb = rot2(B.angle).apply(j.local_b);
            Vector2d C = (B.pos + rb) - (A.pos + ra);
            double clen = C.norm();
            if (clen > params.max_correction) C *= params.max_correction / clen;
            Eigen::Matrix2d K;
            K(0, 0) = A.inv_mass + B.inv_mass + A.inv_inertia * ra.y() * ra.y() +
                      B.inv_inertia * rb.y() * rb.y();
            K(0, 1) = -A.inv_inertia * ra.x() * ra.y() - B.inv_inertia * rb.x() * rb.y();
            K(1, 0) = K(0, 1);
            K(1, 1) = A.inv_mass + B.inv_mass + A.inv_inertia * ra.x() * ra.x() +
                      B.inv_inertia * rb.x() * rb.x();
            Vector2d P = -(inv2x2(K) * C);
            A.pos -= A.inv_mass * P;
            A.angle -= A.inv_inertia * cross2(ra, P);
            B.pos += B.inv_mass * P;
            B.angle += B.inv_inertia * cross2(rb, P);
        }
    }

    int num_actuated_ = 0;
    std::vector<Vector2d> force_acc_;
    std::vector<double> torque_acc_;
    std::vector<contact> contacts_;
    std::vector<contact> prev_contacts_;
    std::vector<joint_prestep> joint_pre_;
    std::vector<joint_warm> joint_warm_;
};

// Multi-shape body assembly in world coordinates at build pose (angle 0):
// computes combined mass, center of mass, and inertia, then converts shape
// placements to the COM frame.
class body_builder {
  public:
    void add_capsule(const Vector2d& p0, const Vector2d& p1, double r, double mass) {
        shape s = shape::make_capsule(p0, p1, r);
        double full = 2.0 * s.half_len + 2.0 * r;
        double thick = 2.0 * r;
        double inertia = mass * (full * full + thick * thick) / 12.0;
        parts_.push_back({s, mass, inertia});
    }

    void add_box(const Vector2d& center, double hx, double hy, double mass, double angle = 0.0) {
        shape s = shape::make_box(center, hx, hy, angle);
        double inertia = mass * (hx * hx + hy * hy) / 3.0;
        parts_.push_back({s, mass, inertia});
    }

    rigid_body finalize(double friction, int group = -1) const {
        check(!parts_.empty(), "body_builder: no shapes");
        double m = 0.0;
        Vector2d com(0.0, 0.0);
        for (const auto& p : parts_) {
            check(p.mass > 0.0, "body_builder: non-positive shape mass");
            m += p.mass;
            com += p.mass * p.s.local_pos;
        }
        com /= m;
        double inertia = 0.0;
        rigid_body b;
        for (const auto& p : parts_) {
            inertia += p.inertia + p.mass * (p.s.local_pos - com).squaredNorm();
            shape s = p.s;
            s.local_pos -= com;
            b.shapes.push_back(s);
        }
        b.pos = com;
        b.set_mass(m, inertia);
        b.friction = friction;
        b.group = group;
        return b;
    }

  private:
    struct part {
        shape s;
        double mass;
        double inertia;
    };
    std::vector<part> parts_;
};

}  // namespace scamp
