#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "errors.hpp"
#include "quat_core.hpp"  // Complex alias

namespace qbild {

enum class RegionKind { Empty, Point, Segment, Polygon };

inline const char* to_string(RegionKind k) {
    switch (k) {
        case RegionKind::Empty: return "empty";
        case RegionKind::Point: return "point";
        case RegionKind::Segment: return "segment";
        case RegionKind::Polygon: return "polygon";
    }
    return "unknown";
}

// Planar convex region: empty, a point, a segment, or a convex polygon with
// counterclockwise vertices in convex position (exact cross-product sign,
// which may keep micro-corners a few ulp wide). Degenerate kinds are
// first-class citizens because ranges of Hermitian matrices are genuine
// segments, and a polygon flat to the hull tolerance collapses to one.
struct ConvexRegion {
    RegionKind kind = RegionKind::Empty;
    std::vector<Complex> v;

    static ConvexRegion empty() { return {}; }
    static ConvexRegion point(Complex p) { return {RegionKind::Point, {p}}; }
    static ConvexRegion segment(Complex a, Complex b) { return {RegionKind::Segment, {a, b}}; }
};

namespace detail {

inline double cross(const Complex& o, const Complex& a, const Complex& b) {
    return (a.real() - o.real()) * (b.imag() - o.imag()) -
           (a.imag() - o.imag()) * (b.real() - o.real());
}

inline double point_scale(const std::vector<Complex>& pts) {
    double m = 1.0;
    for (const auto& p : pts) m = std::max({m, std::abs(p.real()), std::abs(p.imag())});
    return m;
}

inline double dist_point_segment(Complex z, Complex a, Complex b) {
    const Complex ab = b - a;
    const double len2 = std::norm(ab);
    if (len2 == 0.0) return std::abs(z - a);
    double t = ((z.real() - a.real()) * ab.real() + (z.imag() - a.imag()) * ab.imag()) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(z - (a + t * ab));
}

// Turn a counterclockwise vertex ring into a region: merge coincident
// neighbours, then collapse by dimension. A ring whose vertices all sit
// within eps of one line becomes a segment — downstream consumers clip and
// re-clip these regions, and a polygon sliver thinner than the data noise
// makes every later line crossing ill-conditioned, so the collapse is eager.
// The flatness test is global (against the farthest-pair line), never a
// local pop: local near-collinearity tests cascade and can move the
// boundary arbitrarily far.
inline ConvexRegion ring_region(std::vector<Complex> ring, double eps) {
    std::vector<Complex> v;
    v.reserve(ring.size());
    for (const auto& p : ring)
        if (v.empty() || std::abs(p - v.back()) > eps) v.push_back(p);
    while (v.size() > 1 && std::abs(v.front() - v.back()) <= eps) v.pop_back();

    if (v.empty()) return ring.empty() ? ConvexRegion::empty() : ConvexRegion::point(ring[0]);
    if (v.size() == 1) return ConvexRegion::point(v[0]);
    if (v.size() == 2) return ConvexRegion::segment(v[0], v[1]);

    std::size_t a = 0;  // farthest-pair heuristic: two sweeps suffice here
    for (std::size_t i = 1; i < v.size(); ++i)
        if (std::abs(v[i] - v[0]) > std::abs(v[a] - v[0])) a = i;
    std::size_t b = a;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (std::abs(v[i] - v[a]) > std::abs(v[b] - v[a])) b = i;
    const Complex dir = (v[b] - v[a]) / std::abs(v[b] - v[a]);

    std::size_t ilo = a, ihi = a;
    double lo = 0.0, hi = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Complex w = v[i] - v[a];
        const double para = dir.real() * w.real() + dir.imag() * w.imag();
        const double perp = std::abs(dir.real() * w.imag() - dir.imag() * w.real());
        if (perp > eps) return {RegionKind::Polygon, std::move(v)};
        if (para < lo) { lo = para; ilo = i; }
        if (para > hi) { hi = para; ihi = i; }
    }
    return ConvexRegion::segment(v[ilo], v[ihi]);
}

}  // namespace detail

// Convex hull by monotone chain; coincident points within 1e-12 of each
// other (scaled by the data's magnitude) are merged, and a hull flat to the
// same tolerance collapses to a segment. Output is counterclockwise.
inline ConvexRegion hull(std::vector<Complex> pts) {
    if (pts.empty()) return ConvexRegion::empty();
    const double scale = detail::point_scale(pts);
    const double eps = 1e-12 * scale;  // coincidence / flatness tolerance

    std::sort(pts.begin(), pts.end(), [](const Complex& a, const Complex& b) {
        return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [&](const Complex& a, const Complex& b) {
                              return std::abs(a - b) <= eps;
                          }),
              pts.end());

    const std::size_t n = pts.size();
    if (n == 1) return ConvexRegion::point(pts[0]);

    // Chains pop on the exact sign of the cross product. A tolerant pop is
    // unsafe: when several hull points share an abscissa to within the
    // tolerance, the "middle" of a nearly collinear triple can be an extreme
    // point of it, and popping it tears the hull open by O(1). Exact pops
    // keep at worst a few micro-corners, which cost nothing downstream.
    std::vector<Complex> chain(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {  // lower chain
        while (k >= 2 && detail::cross(chain[k - 2], chain[k - 1], pts[i]) <= 0.0) --k;
        chain[k++] = pts[i];
    }
    for (std::size_t i = n - 1, lower = k + 1; i-- > 0;) {  // upper chain
        while (k >= lower && detail::cross(chain[k - 2], chain[k - 1], pts[i]) <= 0.0) --k;
        chain[k++] = pts[i];
    }
    chain.resize(k - 1);  // last point repeats the first

    return detail::ring_region(std::move(chain), eps);
}

// Signed distance to the region: negative inside a polygon, zero on the
// boundary, positive outside; +infinity for the empty region.
inline double sdist(const ConvexRegion& r, Complex z) {
    switch (r.kind) {
        case RegionKind::Empty:
            return std::numeric_limits<double>::infinity();
        case RegionKind::Point:
            return std::abs(z - r.v[0]);
        case RegionKind::Segment:
            return detail::dist_point_segment(z, r.v[0], r.v[1]);
        case RegionKind::Polygon: {
            bool inside = true;
            double dmin = std::numeric_limits<double>::infinity();
            const std::size_t n = r.v.size();
            for (std::size_t i = 0; i < n; ++i) {
                const Complex& a = r.v[i];
                const Complex& b = r.v[(i + 1) % n];
                if (detail::cross(a, b, z) < 0.0) inside = false;
                dmin = std::min(dmin, detail::dist_point_segment(z, a, b));
            }
            return inside ? -dmin : dmin;
        }
    }
    return std::numeric_limits<double>::infinity();
}

// Membership within signed distance tol (negative tol = strict interior).
inline bool contains(const ConvexRegion& r, Complex z, double tol) {
    return sdist(r, z) <= tol;
}

// Unsigned distance from a point to the region (0 inside).
inline double dist(const ConvexRegion& r, Complex z) { return std::max(0.0, sdist(r, z)); }

// Symmetric Hausdorff distance. For convex regions the directed distance is
// attained at a vertex (distance-to-a-convex-set is convex), so scanning
// vertices is exact for polygons.
inline double hausdorff(const ConvexRegion& a, const ConvexRegion& b) {
    if (a.kind == RegionKind::Empty || b.kind == RegionKind::Empty)
        throw EmptyRegion("hausdorff: undefined for empty regions");
    double h = 0.0;
    for (const auto& p : a.v) h = std::max(h, dist(b, p));
    for (const auto& p : b.v) h = std::max(h, dist(a, p));
    return h;
}

// Support function: max over the region of Re(e^{-i theta} z).
inline double support(const ConvexRegion& r, double theta) {
    if (r.kind == RegionKind::Empty)
        throw EmptyRegion("support: undefined for the empty region");
    const double c = std::cos(theta), s = std::sin(theta);
    double m = -std::numeric_limits<double>::infinity();
    for (const auto& p : r.v) m = std::max(m, c * p.real() + s * p.imag());
    return m;
}

// Intersection with the closed upper half-plane {Im >= 0}. Crossing vertices
// are interpolated onto the real axis with imaginary part exactly zero. The
// clip of a counterclockwise convex region is already counterclockwise and
// convex, so the output is only tidied, never re-hulled.
inline ConvexRegion clip_upper(const ConvexRegion& r) {
    auto crossing = [](const Complex& a, const Complex& b) {
        const double t = std::clamp(a.imag() / (a.imag() - b.imag()), 0.0, 1.0);
        return Complex(a.real() + t * (b.real() - a.real()), 0.0);
    };
    switch (r.kind) {
        case RegionKind::Empty:
            return ConvexRegion::empty();
        case RegionKind::Point:
            return r.v[0].imag() >= 0.0 ? r : ConvexRegion::empty();
        case RegionKind::Segment: {
            const Complex a = r.v[0], b = r.v[1];
            const bool ka = a.imag() >= 0.0, kb = b.imag() >= 0.0;
            if (ka && kb) return r;
            if (!ka && !kb) return ConvexRegion::empty();
            const Complex kept = ka ? a : b, c = crossing(a, b);
            return std::abs(kept - c) <= 1e-12 * detail::point_scale({kept, c})
                       ? ConvexRegion::point(c)
                       : ConvexRegion::segment(kept, c);
        }
        case RegionKind::Polygon: {
            std::vector<Complex> out;
            const std::size_t n = r.v.size();
            for (std::size_t i = 0; i < n; ++i) {
                const Complex& cur = r.v[i];
                const Complex& nxt = r.v[(i + 1) % n];
                const bool kc = cur.imag() >= 0.0, kn = nxt.imag() >= 0.0;
                if (kc) out.push_back(cur);
                if (kc != kn) out.push_back(crossing(cur, nxt));
            }
            const double eps = 1e-12 * detail::point_scale(out);
            return detail::ring_region(std::move(out), eps);
        }
    }
    return ConvexRegion::empty();
}

// Intersection with the halfplane {nx*x + ny*y <= d}.
inline ConvexRegion clip_halfplane(const ConvexRegion& r, double nx, double ny, double d) {
    auto value = [&](const Complex& p) { return nx * p.real() + ny * p.imag(); };
    auto crossing = [&](const Complex& a, const Complex& b) {
        const double va = value(a), vb = value(b);
        const double t = std::clamp((d - va) / (vb - va), 0.0, 1.0);
        return a + t * (b - a);
    };
    switch (r.kind) {
        case RegionKind::Empty:
            return ConvexRegion::empty();
        case RegionKind::Point:
            return value(r.v[0]) <= d ? r : ConvexRegion::empty();
        case RegionKind::Segment: {
            const Complex a = r.v[0], b = r.v[1];
            const bool ka = value(a) <= d, kb = value(b) <= d;
            if (ka && kb) return r;
            if (!ka && !kb) return ConvexRegion::empty();
            const Complex kept = ka ? a : b, c = crossing(a, b);
            return std::abs(kept - c) <= 1e-12 * detail::point_scale({kept, c})
                       ? ConvexRegion::point(c)
                       : ConvexRegion::segment(kept, c);
        }
        case RegionKind::Polygon: {
            std::vector<Complex> out;
            const std::size_t n = r.v.size();
            for (std::size_t i = 0; i < n; ++i) {
                const Complex& cur = r.v[i];
                const Complex& nxt = r.v[(i + 1) % n];
                const bool kc = value(cur) <= d, kn = value(nxt) <= d;
                if (kc) out.push_back(cur);
                if (kc != kn) out.push_back(crossing(cur, nxt));
            }
            const double eps = 1e-12 * detail::point_scale(out);
            return detail::ring_region(std::move(out), eps);
        }
    }
    return ConvexRegion::empty();
}

// Axis-aligned square centered at c with the given half-width, CCW.
inline ConvexRegion box_region(Complex c, double half) {
    return {RegionKind::Polygon,
            {c + Complex(-half, -half), c + Complex(half, -half), c + Complex(half, half),
             c + Complex(-half, half)}};
}

// Inner/outer bracket of a convex set: inner from attained points, outer
// from support halfplanes, so the truth lies between them.
struct RegionPair {
    ConvexRegion inner;
    ConvexRegion outer;

    double gap() const { return hausdorff(inner, outer); }
};

}  // namespace qbild
