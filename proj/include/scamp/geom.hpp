#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <cmath>

#include "scamp/common.hpp"

namespace scamp {

using Eigen::Vector2d;

// 2D rotation as (cos, sin) to avoid repeated trig.
struct rot2 {
    double c = 1.0, s = 0.0;
    rot2() = default;
    explicit rot2(double angle) : c(std::cos(angle)), s(std::sin(angle)) {}
    Vector2d apply(const Vector2d& v) const { return {c * v.x() - s * v.y(), s * v.x() + c * v.y()}; }
    Vector2d unapply(const Vector2d& v) const {
        return {c * v.x() + s * v.y(), -s * v.x() + c * v.y()};
    }
};

inline double cross2(const Vector2d& a, const Vector2d& b) { return a.x() * b.y() - a.y() * b.x(); }
inline Vector2d perp(const Vector2d& v) { return {-v.y(), v.x()}; }

enum class shape_kind { capsule, box };

// Shape in body-local coordinates. Capsule: segment of half-length `half_len`
// along the shape's local x axis, inflated by `radius` (half_len 0 = circle).
// Box: half extents (hx, hy).
struct shape {
    shape_kind kind = shape_kind::capsule;
    double half_len = 0.0;
    double radius = 0.0;
    double hx = 0.0, hy = 0.0;
    Vector2d local_pos{0.0, 0.0};
    double local_angle = 0.0;

    static shape make_capsule(const Vector2d& p0, const Vector2d& p1, double r) {
        shape s;
        s.kind = shape_kind::capsule;
        Vector2d mid = 0.5 * (p0 + p1);
        Vector2d d = p1 - p0;
        s.half_len = 0.5 * d.norm();
        s.radius = r;
        s.local_pos = mid;
        s.local_angle = s.half_len > 1e-12 ? std::atan2(d.y(), d.x()) : 0.0;
        return s;
    }

    static shape make_box(const Vector2d& center, double half_w, double half_h, double angle = 0.0) {
        shape s;
        s.kind = shape_kind::box;
        s.hx = half_w;
        s.hy = half_h;
        s.local_pos = center;
        s.local_angle = angle;
        return s;
    }
};

// Up to two contact points; normal points from shape A toward shape B
// (positive impulses push B along the normal). `tag` identifies the
// generating feature so impulses can be matched across steps.
struct contact_feature {
    Vector2d pos{0.0, 0.0};
    Vector2d normal{0.0, 1.0};
    double penetration = 0.0;
    int tag = 0;
};

struct manifold {
    int count = 0;
    contact_feature pts[2];

    void add(const Vector2d& pos, const Vector2d& normal, double pen, int tag = 0) {
        if (count < 2) {
            pts[count++] = {pos, normal, pen, tag};
            return;
        }
        // keep the two deepest
        int shallow = pts[0].penetration < pts[1].penetration ? 0 : 1;
        if (pen > pts[shallow].penetration) pts[shallow] = {pos, normal, pen, tag};
    }
};

// World-frame placement of a shape.
struct placed_shape {
    const shape* s;
    Vector2d pos;  // shape frame origin in world
    rot2 rot;      // shape frame rotation in world
};

inline placed_shape place(const shape& s, const Vector2d& body_pos, const rot2& body_rot) {
    placed_shape p;
    p.s = &s;
    p.pos = body_pos + body_rot.apply(s.local_pos);
    double a = std::atan2(body_rot.s, body_rot.c) + s.local_angle;
    p.rot = rot2(a);
    return p;
}

inline void capsule_endpoints(const placed_shape& c, Vector2d& e0, Vector2d& e1) {
    Vector2d axis = c.rot.apply(Vector2d(c.s->half_len, 0.0));
    e0 = c.pos - axis;
    e1 = c.pos + axis;
}

// Closest points between segments [p1,q1] and [p2,q2] (Ericson, RTCD 5.1.9).
inline double segment_segment_closest(const Vector2d& p1, const Vector2d& q1, const Vector2d& p2,
                                      const Vector2d& q2, Vector2d& c1, Vector2d& c2) {
    Vector2d d1 = q1 - p1, d2 = q2 - p2, r = p1 - p2;
    double a = d1.dot(d1), e = d2.dot(d2), f = d2.dot(r);
    double s, t;
    if (a <= 1e-12 && e <= 1e-12) {
        s = t = 0.0;
    } else if (a <= 1e-12) {
        s = 0.0;
        t = clamp(f / e, 0.0, 1.0);
    } else {
        double c = d1.dot(r);
        if (e <= 1e-12) {
            t = 0.0;
            s = clamp(-c / a, 0.0, 1.0);
        } else {
            double b = d1.dot(d2);
            double denom = a * e - b * b;
            s = denom > 1e-12 ? clamp((b * f - c * e) / denom, 0.0, 1.0) : 0.0;
            t = (b * s + f) / e;
            if (t < 0.0) {
                t = 0.0;
                s = clamp(-c / a, 0.0, 1.0);
            } else if (t > 1.0) {
                t = 1.0;
                s = clamp((b - c) / a, 0.0, 1.0);
            }
        }
    }
    c1 = p1 + d1 * s;
    c2 = p2 + d2 * t;
    return (c1 - c2).norm();
}

inline manifold collide_capsule_capsule(const placed_shape& a, const placed_shape& b) {
    manifold m;
    Vector2d a0, a1, b0, b1, ca, cb;
    capsule_endpoints(a, a0, a1);
    capsule_endpoints(b, b0, b1);
    double d = segment_segment_closest(a0, a1, b0, b1, ca, cb);
    double rsum = a.s->radius + b.s->radius;
    if (d >= rsum) return m;
    Vector2d n = d > 1e-9 ? Vector2d((cb - ca) / d) : Vector2d(0.0, 1.0);
    m.add(0.5 * (ca + cb), n, rsum - d);
    return m;
}

// Closest point on an origin-centered AABB (hx, hy) to p; n is the outward
// direction at the closest feature; returns signed distance (< 0 inside).
inline double point_box_closest(const Vector2d& p, double hx, double hy, Vector2d& q, Vector2d& n) {
    Vector2d c(clamp(p.x(), -hx, hx), clamp(p.y(), -hy, hy));
    if ((p - c).squaredNorm() > 1e-24) {  // outside
        q = c;
        n = (p - c).normalized();
        return (p - c).norm();
    }
    // inside: push out through the nearest face
    double dx_pos = hx - p.x(), dx_neg = p.x() + hx;
    double dy_pos = hy - p.y(), dy_neg = p.y() + hy;
    double best = dx_pos;
    n = Vector2d(1.0, 0.0);
    q = Vector2d(hx, p.y());
    if (dx_neg < best) {
        best = dx_neg;
        n = Vector2d(-1.0, 0.0);
        q = Vector2d(-hx, p.y());
    }
    if (dy_pos < best) {
        best = dy_pos;
        n = Vector2d(0.0, 1.0);
        q = Vector2d(p.x(), hy);
    }
    if (dy_neg < best) {
        best = dy_neg;
        n = Vector2d(0.0, -1.0);
        q = Vector2d(p.x(), -hy);
    }
    return -best;
}

// Capsule A vs box B. Candidate points along the capsule axis are tested
// against the box so a capsule lying on a face yields two contacts.
inline manifold collide_capsule_box(const placed_shape& cap, const placed_shape& box) {
    manifold m;
    Vector2d e0w, e1w;
    capsule_endpoints(cap, e0w, e1w);
    // segment in box-local frame
    Vector2d e0 = box.rot.unapply(e0w - box.pos);
    Vector2d e1 = box.rot.unapply(e1w - box.pos);
    double hx = box.s->hx, hy = box.s->hy, r = cap.s->radius;

    // third candidate: segment point nearest the box boundary, so a capsule
    // draped over a corner/edge still collides when both endpoints are clear
    Vector2d corners[4] = {{-hx, -hy}, {hx, -hy}, {hx, hy}, {-hx, hy}};
    Vector2d cmid = e0;
    double best_d = 1e30;
    for (int i = 0; i < 4; ++i) {
        Vector2d c1, c2;
        double dist = segment_segment_closest(e0, e1, corners[i], corners[(i + 1) % 4], c1, c2);
        if (dist < best_d) {
            best_d = dist;
            cmid = c1;
        }
    }
    Vector2d cand[3] = {e0, e1, cmid};
    double best_pen[2] = {-1.0, -1.0};
    contact_feature feat[2];
    int nfeat = 0;

    for (int ci = 0; ci < 3; ++ci) {
        const Vector2d& p = cand[ci];
        Vector2d q, n;
        double dist = point_box_closest(p, hx, hy, q, n);
        double pen = r - dist;
        if (pen <= 0.0) continue;
        Vector2d pos_w = box.pos + box.rot.apply(q);
        Vector2d n_w = box.rot.apply(n);  // box -> capsule direction
        contact_feature f{pos_w, -n_w, pen, ci};
        // dedupe: replace a nearby shallower feature instead of stacking
        bool dup = false;
        for (int i = 0; i < nfeat; ++i) {
            if ((feat[i].pos - pos_w).norm() < 1e-3) {
                dup = true;
                if (pen > best_pen[i]) {
                    feat[i] = f;
                    best_pen[i] = pen;
                }
                break;
            }
        }
        if (dup) continue;
        if (nfeat < 2) {
            feat[nfeat] = f;
            best_pen[nfeat] = pen;
            ++nfeat;
        } else {
            int shallow = best_pen[0] < best_pen[1] ? 0 : 1;
            if (pen > best_pen[shallow]) {
                feat[shallow] = f;
                best_pen[shallow] = pen;
            }
        }
    }
    for (int i = 0; i < nfeat; ++i)
        m.add(feat[i].pos, feat[i].normal, feat[i].penetration, feat[i].tag);
    return m;
}

namespace detail {

struct box_poly {
    Vector2d v[4];  // CCW world vertices
    Vector2d n[4];  // outward world normals, n[i] for edge v[i]->v[i+1]
};

inline box_poly to_poly(const placed_shape& b) {
    box_poly p;
    double hx = b.s->hx, hy = b.s->hy;
    const Vector2d local_v[4] = {{-hx, -hy}, {hx, -hy}, {hx, hy}, {-hx, hy}};
    const Vector2d local_n[4] = {{0, -1}, {1, 0}, {0, 1}, {-1, 0}};
    for (int i = 0; i < 4; ++i) {
        p.v[i] = b.pos + b.rot.apply(local_v[i]);
        p.n[i] = b.rot.apply(local_n[i]);
    }
    return p;
}

// Greatest separation of B's vertices from A's faces; face index out.
inline double max_separation(const box_poly& a, const box_poly& b, int& face) {
    double best = -1e30;
    face = 0;
    for (int i = 0; i < 4; ++i) {
        double minb = 1e30;
        for (int j = 0; j < 4; ++j) minb = std::min(minb, a.n[i].dot(b.v[j] - a.v[i]));
        if (minb > best) {
            best = minb;
            face = i;
        }
    }
    return best;
}

inline int clip_segment(Vector2d out[2], const Vector2d in[2], const Vector2d& n, double offset) {
    int num = 0;
    double d0 = n.dot(in[0]) - offset;
    double d1 = n.dot(in[1]) - offset;
    if (d0 <= 0.0) out[num++] = in[0];
    if (d1 <= 0.0) out[num++] = in[1];
    if (d0 * d1 < 0.0) out[num++] = in[0] + (d0 / (d0 - d1)) * (in[1] - in[0]);
    return num;
}

}  // namespace detail

// OBB vs OBB, SAT with reference-face clipping (classic two-box manifold).
inline manifold collide_box_box(const placed_shape& a, const placed_shape& b) {
    manifold m;
    detail::box_poly pa = detail::to_poly(a), pb = detail::to_poly(b);
    int face_a, face_b;
    double sep_a = detail::max_separation(pa, pb, face_a);
    if (sep_a > 0.0) return m;
    double sep_b = detail::max_separation(pb, pa, face_b);
    if (sep_b > 0.0) return m;

    const detail::box_poly *ref, *inc;
    int ref_face;
    bool flip;  // reference on B -> normal must be negated to point A->B
    if (sep_b > sep_a + 1e-4) {
        ref = &pb;
        inc = &pa;
        ref_face = face_b;
        flip = true;
    } else {
        ref = &pa;
        inc = &pb;
        ref_face = face_a;
        flip = false;
    }

    Vector2d rn = ref->n[ref_face];
    // incident face: most anti-parallel face on the other box
    int inc_face = 0;
    double best = 1e30;
    for (int i = 0; i < 4; ++i) {
        double d = rn.dot(inc->n[i]);
        if (d < best) {
            best = d;
            inc_face = i;
        }
    }
    Vector2d incident[2] = {inc->v[inc_face], inc->v[(inc_face + 1) % 4]};

    // clip against the reference face's side planes
    Vector2d r0 = ref->v[ref_face], r1 = ref->v[(ref_face + 1) % 4];
    Vector2d tangent = (r1 - r0).normalized();
    Vector2d clipped1[2], clipped2[2];
    if (detail::clip_segment(clipped1, incident, -tangent, -tangent.dot(r0)) < 2) return m;
    if (detail::clip_segment(clipped2, clipped1, tangent, tangent.dot(r1)) < 2) return m;

    Vector2d n_out = flip ? Vector2d(-rn) : rn;
    for (int i = 0; i < 2; ++i) {
        double sep = rn.dot(clipped2[i] - r0);
        if (sep <= 0.0) m.add(clipped2[i], n_out, -sep, (flip ? 100 : 0) + inc_face * 2 + i);
    }
    return m;
}

// Dispatch; manifold normal always points from A's shape toward B's.
inline manifold collide(const placed_shape& a, const placed_shape& b) {
    if (a.s->kind == shape_kind::capsule && b.s->kind == shape_kind::capsule)
        return collide_capsule_capsule(a, b);
    if (a.s->kind == shape_kind::capsule && b.s->kind == shape_kind::box)
        return collide_capsule_box(a, b);
    if (a.s->kind == shape_kind::box && b.s->kind == shape_kind::capsule) {
        manifold m = collide_capsule_box(b, a);
        for (int i = 0; i < m.count; ++i) m.pts[i].normal = -m.pts[i].normal;
        return m;
    }
    return collide_box_box(a, b);
}

}  // namespace scamp
