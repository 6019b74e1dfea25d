#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "complex_linalg.hpp"
#include "complex_range.hpp"
#include "errors.hpp"
#include "geometry.hpp"
#include "quat_core.hpp"
#include "real_band.hpp"

namespace qbild {

// Which shortcut produced the result. Paths earlier in the dispatch order
// are cheaper and carry tighter guarantees than the general assembly.
enum class BildPath {
    General,
    Definite,
    ConjSymmetric,
    TwoByTwoIndefinite,
    TwoByTwoPosDef,
    TwoByTwoPosSemi,
    Hermitian,
    Scalar,
};

inline const char* to_string(BildPath p) {
    switch (p) {
        case BildPath::General: return "general";
        case BildPath::Definite: return "definite";
        case BildPath::ConjSymmetric: return "conj_symmetric";
        case BildPath::TwoByTwoIndefinite: return "two_by_two_indefinite";
        case BildPath::TwoByTwoPosDef: return "two_by_two_pos_def";
        case BildPath::TwoByTwoPosSemi: return "two_by_two_pos_semi";
        case BildPath::Hermitian: return "hermitian";
        case BildPath::Scalar: return "scalar";
    }
    return "unknown";
}

struct BildOptions {
    int m = 720;                         // sweep grid size
    BandOptions band;                    // optimizer settings (starts, seed, ...)
    double conj_tol = -1.0;              // conjugation-symmetry tolerance; <0 = auto
    std::int64_t oracle_samples = 100000;  // cross-check budget when unverified
};

// The upper bild with its provenance: inner polygon of certified members,
// outer enclosure, the real band, and which corollary produced it. The full
// bild is the upper region united with its mirror image (it may be
// nonconvex; only the upper half carries a convexity guarantee).
struct BildResult {
    RegionPair upper;
    BandResult v_band;
    Definiteness definiteness = Definiteness::Zero;
    BildPath path = BildPath::General;
    int m = 0;
    // Set when the optimizer failed to certify the band; the inner anchors
    // are then taken from the sampling oracle (attained values only).
    bool unverified = false;

    double enclosure_gap() const { return upper.gap(); }
};

namespace bild_detail {

// Reflect a region across the real axis: W_C(A*) is exactly the mirror of
// W_C(A), for both the attained polygon and the halfplane enclosure.
inline ConvexRegion mirror(const ConvexRegion& r) {
    if (r.kind == RegionKind::Empty) return r;
    std::vector<Complex> pts;
    pts.reserve(r.v.size());
    for (const Complex& z : r.v) pts.push_back(std::conj(z));
    return hull(pts);
}

inline void append_vertices(std::vector<Complex>& out, const ConvexRegion& r) {
    out.insert(out.end(), r.v.begin(), r.v.end());
}

// Real anchor points for the hull assembly. Solved bands contribute their
// endpoints (attained up to KKT tolerance); a failed optimizer contributes
// sampled attained values instead, so the inner polygon never overstates.
struct Anchors {
    std::vector<Complex> inner;
    std::vector<Complex> outer;  // inner anchors widened by a safety pad
};

inline Anchors band_anchors(const BandResult& band, bool use_oracle, double oracle_lo,
                            double oracle_hi) {
    Anchors a;
    auto push = [&a](double v) {
        a.inner.push_back(Complex(v, 0.0));
        const double pad = 1e-9 * (1.0 + std::abs(v));
        a.outer.push_back(Complex(v - pad, 0.0));
        a.outer.push_back(Complex(v + pad, 0.0));
    };
    if (band.status == BandStatus::Solved) {
        push(band.v_min);
        push(band.v_max);
    } else if (use_oracle) {
        push(oracle_lo);
        push(oracle_hi);
    }
    return a;
}

inline ConvexRegion hull_with(const std::vector<const ConvexRegion*>& regions,
                              const std::vector<Complex>& extra) {
    std::vector<Complex> pts = extra;
    for (const ConvexRegion* r : regions) append_vertices(pts, *r);
    return hull(pts);
}

}  // namespace bild_detail

// Closed-form real value of the positive-definite 2x2 case: the band
// collapses to a single point that mixes the diagonal of H with the
// eigenvalue weights swapped. Exact for any Hermitian H.
inline double two_by_two_pos_def_value(const CanonicalForm& cf) {
    const double l1 = cf.S[0], l2 = cf.S[1];
    return (cf.H.at(0, 0).real() * l2 + cf.H.at(1, 1).real() * l1) / (l1 + l2);
}

namespace bild_detail {

inline BandResult solved_point_band(int n, double v, const FeasiblePoint& wit) {
    BandResult b;
    b.status = BandStatus::Solved;
    b.v_min = b.v_max = v;
    b.wit_min = b.wit_max = wit;
    b.starts_used = 0;
    b.kkt_residual = 0.0;
    (void)n;
    return b;
}

// Shared assembly once the sweep, band, and path are decided. `gen_a` /
// `gen_astar` select which of W_C+(A), W_C+(A*) enter the hull.
inline BildResult assemble(const SweepResult& sw, BandResult band, Definiteness def,
                           BildPath path, int m, bool gen_a, bool gen_astar,
                           bool unverified, double oracle_lo, double oracle_hi) {
    const ConvexRegion inner_up = clip_upper(sw.regions.inner);
    const ConvexRegion outer_up = clip_upper(sw.regions.outer);
    const ConvexRegion inner_mir = clip_upper(mirror(sw.regions.inner));
    const ConvexRegion outer_mir = clip_upper(mirror(sw.regions.outer));

    const Anchors anchors =
        band_anchors(band, unverified, oracle_lo, oracle_hi);

    std::vector<const ConvexRegion*> in_parts, out_parts;
    if (gen_a) {
        in_parts.push_back(&inner_up);
        out_parts.push_back(&outer_up);
    }
    if (gen_astar) {
        in_parts.push_back(&inner_mir);
        out_parts.push_back(&outer_mir);
    }

    BildResult res;
    res.upper.inner = hull_with(in_parts, anchors.inner);
    res.upper.outer = hull_with(out_parts, anchors.outer);
    res.v_band = std::move(band);
    res.definiteness = def;
    res.path = path;
    res.m = m;
    res.unverified = unverified;
    return res;
}

inline BildResult dispatch_two_by_two(const CanonicalForm& cf, const SweepResult& sw,
                                      Definiteness def, const BildOptions& opts);

inline BildResult upper_bild_impl(const CMatrix& A, const BildOptions& opts) {
    const CanonicalForm cf = canonical_form(A);
    const Definiteness def = classify(cf.S, default_eps_def(cf.S));
    const int n = A.n;

    if (n == 1) {  // the range is one similarity class
        const Complex rep = class_rep(Quaternion::from_complex(A.at(0, 0)));
        BildResult res;
        res.upper.inner = ConvexRegion::point(rep);
        res.upper.outer = ConvexRegion::point(rep);
        res.v_band = band(cf, opts.band);
        res.definiteness = def;
        res.path = BildPath::Scalar;
        res.m = 0;
        return res;
    }

    if (def == Definiteness::Zero) {  // Hermitian: the bild is a real segment
        const EigResult eig = hermitian_eig(cf.H);
        const double lo = eig.values[static_cast<std::size_t>(n - 1)];
        const double hi = eig.values[0];
        BildResult res;
        res.upper.inner = hull({Complex(lo, 0.0), Complex(hi, 0.0)});
        const double pad = 1e-12 * (1.0 + std::max(std::abs(lo), std::abs(hi)));
        res.upper.outer = hull({Complex(lo - pad, 0.0), Complex(hi + pad, 0.0)});
        res.v_band = band(cf, opts.band);
        res.definiteness = def;
        res.path = BildPath::Hermitian;
        res.m = 0;
        return res;
    }

    const SweepResult sw = sweep(A, opts.m);
    const double conj_tol =
        opts.conj_tol >= 0.0 ? opts.conj_tol : 1e-8 * (1.0 + A.norm_inf());

    if (detail_range::symmetric_support(sw.support_values, conj_tol)) {
        // Conjugation-symmetric: the upper bild is just the clipped complex
        // range; the band still comes from the optimizer (its endpoints are
        // interior to the hull data but are reported and verified).
        BandResult b = band(cf, opts.band);
        bool unver = b.status == BandStatus::MaxIterations;
        double olo = 0.0, ohi = 0.0;
        if (unver) std::tie(olo, ohi) = band_oracle(cf, opts.oracle_samples, 1e-3,
                                                    opts.band.seed);
        return assemble(sw, std::move(b), def, BildPath::ConjSymmetric, opts.m,
                        /*gen_a=*/true, /*gen_astar=*/false, unver, olo, ohi);
    }

    if (n == 2) return dispatch_two_by_two(cf, sw, def, opts);

    if (def == Definiteness::PositiveDefinite || def == Definiteness::NegativeDefinite) {
        // One of W_C+(A), W_C+(A*) is empty: the range sits strictly on one
        // side of the real axis and only the surviving half generates.
        const bool positive = def == Definiteness::PositiveDefinite;
        BandResult b = band(cf, opts.band);
        bool unver = b.status == BandStatus::MaxIterations;
        double olo = 0.0, ohi = 0.0;
        if (unver) std::tie(olo, ohi) = band_oracle(cf, opts.oracle_samples, 1e-3,
                                                    opts.band.seed);
        return assemble(sw, std::move(b), def, BildPath::Definite, opts.m,
                        /*gen_a=*/positive, /*gen_astar=*/!positive, unver, olo, ohi);
    }

    BandResult b = band(cf, opts.band);
    bool unver = b.status == BandStatus::MaxIterations;
    double olo = 0.0, ohi = 0.0;
    if (unver) std::tie(olo, ohi) = band_oracle(cf, opts.oracle_samples, 1e-3,
                                                opts.band.seed);
    return assemble(sw, std::move(b), def, BildPath::General, opts.m,
                    /*gen_a=*/true, /*gen_astar=*/true, unver, olo, ohi);
}

inline BildResult dispatch_two_by_two(const CanonicalForm& cf, const SweepResult& sw,
                                      Definiteness def, const BildOptions& opts) {
    if (def == Definiteness::NegativeDefinite || def == Definiteness::NegativeSemiDefinite) {
        // The reflected matrix has positive class and the same upper bild:
        // class representatives are conjugation-invariant.
        const CMatrix Astar = cf.original.adjoint();
        const CanonicalForm cfs = canonical_form(Astar);
        const Definiteness defs = classify(cfs.S, default_eps_def(cfs.S));
        const SweepResult sws = sweep(Astar, opts.m);
        BildResult res = dispatch_two_by_two(cfs, sws, defs, opts);
        res.definiteness = def;  // report the original matrix's class
        return res;
    }

    if (def == Definiteness::PositiveDefinite) {
        const double v = two_by_two_pos_def_value(cf);
        const double l1 = cf.S[0], l2 = cf.S[1];
        FeasiblePoint wit;
        wit.x = {Complex(0.0, 0.0), Complex(std::sqrt(l1 / (l1 + l2)), 0.0)};
        wit.y = {Complex(std::sqrt(l2 / (l1 + l2)), 0.0), Complex(0.0, 0.0)};
        return assemble(sw, solved_point_band(2, v, wit), def,
                        BildPath::TwoByTwoPosDef, opts.m,
                        /*gen_a=*/true, /*gen_astar=*/false, false, 0.0, 0.0);
    }

    if (def == Definiteness::PositiveSemiDefinite) {
        // The null direction of S gives the single real value h22 directly.
        const double v = cf.H.at(1, 1).real();
        const double r = 1.0 / std::sqrt(2.0);
        FeasiblePoint wit;
        wit.x = {Complex(0.0, 0.0), Complex(r, 0.0)};
        wit.y = {Complex(0.0, 0.0), Complex(r, 0.0)};
        return assemble(sw, solved_point_band(2, v, wit), def,
                        BildPath::TwoByTwoPosSemi, opts.m,
                        /*gen_a=*/true, /*gen_astar=*/false, false, 0.0, 0.0);
    }

    // Indefinite: both halves generate and the real anchors are interior
    // (still computed, for the band report and its witnesses).
    BandResult b = band(cf, opts.band);
    bool unver = b.status == BandStatus::MaxIterations;
    double olo = 0.0, ohi = 0.0;
    if (unver) std::tie(olo, ohi) = band_oracle(cf, opts.oracle_samples, 1e-3,
                                                opts.band.seed);
    return assemble(sw, std::move(b), def, BildPath::TwoByTwoIndefinite, opts.m,
                    /*gen_a=*/true, /*gen_astar=*/true, unver, olo, ohi);
}

}  // namespace bild_detail

// Upper bild B+(A) = W_H(A) intersected with the closed upper half-plane,
// assembled as the convex hull of the clipped complex ranges of A and A*
// plus the two real band anchors, with corollary fast paths dispatched on
// the structure of the canonical form.
inline BildResult upper_bild(const CMatrix& A, const BildOptions& opts = {}) {
    return bild_detail::upper_bild_impl(A, opts);
}

// 2x2 fast path on a precomputed canonical form (S != 0): trichotomy on the
// definiteness of S with closed-form real values where available.
inline BildResult two_by_two(const CanonicalForm& cf, const BildOptions& opts = {}) {
    if (cf.H.n != 2) throw Error("two_by_two: matrix must be 2x2");
    const Definiteness def = classify(cf.S, default_eps_def(cf.S));
    if (def == Definiteness::Zero)
        throw Error("two_by_two: S = 0 is the Hermitian case, not the trichotomy");
    const SweepResult sw = sweep(cf.original, opts.m);
    return bild_detail::dispatch_two_by_two(cf, sw, def, opts);
}

// The full bild B(A) = B+(A) united with its mirror image; the union may be
// nonconvex, so it is reported as two (convex) polygons.
inline std::pair<ConvexRegion, ConvexRegion> full_bild(const BildResult& r) {
    return {r.upper.inner, bild_detail::mirror(r.upper.inner)};
}

// Membership of a quaternion in W_H(A), decided through its class
// representative against the outer enclosure: one-sided error only (no
// false negatives beyond tol from the polygonal approximation).
inline bool member(const BildResult& bild, const Quaternion& q, double tol = 1e-9) {
    return contains(bild.upper.outer, class_rep(q), tol);
}

inline bool member(const CMatrix& A, const Quaternion& q, double tol = 1e-9,
                   const BildOptions& opts = {}) {
    return member(upper_bild(A, opts), q, tol);
}

// Quaternionic numerical radius of a complex matrix: coincides with the
// complex radius, reported as the sweep's inner/outer enclosure.
inline std::pair<double, double> qradius(const CMatrix& A, int m = 720) {
    return cradius(A, m);
}

inline std::pair<double, double> qradius(const QMatrix& A, int m = 720) {
    return cradius(CMatrix::from_quaternion(A), m);  // NotComplex if it isn't
}

}  // namespace qbild
