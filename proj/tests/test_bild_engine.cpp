#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "qbild/bild_engine.hpp"
#include "qbild/rng.hpp"

using namespace qbild;

namespace {

CMatrix random_complex(CounterRng& rng, int n, double scale = 1.0) {
    CMatrix m(n);
    for (auto& z : m.a) z = Complex(scale * rng.normal(), scale * rng.normal());
    return m;
}

ConvexRegion circle_polygon(Complex center, double radius, int k = 2048) {
    std::vector<Complex> pts;
    pts.reserve(static_cast<std::size_t>(k));
    for (int t = 0; t < k; ++t)
        pts.push_back(center + radius * Complex(std::cos(kTwoPi * t / k),
                                                std::sin(kTwoPi * t / k)));
    return hull(std::move(pts));
}

ConvexRegion mirror_region(const ConvexRegion& r) {
    std::vector<Complex> v = r.v;
    for (auto& z : v) z = std::conj(z);
    return hull(std::move(v));
}

ConvexRegion join(const ConvexRegion& a, const ConvexRegion& b) {
    std::vector<Complex> v = a.v;
    v.insert(v.end(), b.v.begin(), b.v.end());
    return hull(std::move(v));
}

CMatrix square_matrix() {
    CMatrix A(4);
    A.at(0, 0) = Complex(-1, -1);
    A.at(1, 1) = Complex(-1, -1);
    A.at(2, 2) = Complex(1, 1);
    A.at(3, 3) = Complex(1, 1);
    return A;
}

CMatrix disk_band_matrix() {
    CMatrix A(3);
    A.at(0, 0) = Complex(0, 1);
    A.at(1, 1) = Complex(0, 1);
    A.at(2, 2) = Complex(0, 1);
    A.at(0, 2) = 1.0;
    return A;
}

// The assembly the dispatcher's shortcuts must agree with: the hull of the
// two clipped ranges and the real band anchors.
ConvexRegion assemble_by_theorem(const CMatrix& A, int m) {
    const SweepResult sw = sweep(A, m);
    ConvexRegion gen = join(clip_upper(sw.regions.inner),
                            clip_upper(mirror_region(sw.regions.inner)));
    const BandResult b = band(canonical_form(A));
    std::vector<Complex> v = gen.v;
    if (b.status == BandStatus::Solved) {
        v.push_back(Complex(b.v_min, 0));
        v.push_back(Complex(b.v_max, 0));
    }
    return hull(std::move(v));
}

}  // namespace

TEST_CASE("upper bild of the square-generator matrix") {
    const BildResult r = upper_bild(square_matrix());
    CHECK(r.path == BildPath::General);
    const ConvexRegion square =
        hull({Complex(-1, 1), Complex(1, 1), Complex(-1, 0), Complex(1, 0)});
    CHECK(hausdorff(r.upper.inner, square) <= 1e-9);
    CHECK(r.v_band.v_min == Catch::Approx(-1.0).margin(1e-6));
    CHECK(r.v_band.v_max == Catch::Approx(1.0).margin(1e-6));
    CHECK(r.enclosure_gap() <= 1e-6);
}

TEST_CASE("upper bild of the corner matrix") {
    CMatrix A(3);
    A.at(0, 0) = Complex(1, 1);
    A.at(1, 1) = Complex(1, 1);
    A.at(2, 2) = Complex(0, -1);
    const BildResult r = upper_bild(A);
    const ConvexRegion truth =
        hull({Complex(0, 1), Complex(0.5, 0), Complex(1, 0), Complex(1, 1)});
    CHECK(hausdorff(r.upper.inner, truth) <= 1e-9);
    CHECK(r.v_band.v_max == Catch::Approx(1.0).margin(1e-9));
    CHECK(r.v_band.v_min == Catch::Approx(0.5).margin(1e-9));
}

TEST_CASE("upper bild of the disk-band matrix") {
    const BildResult r = upper_bild(disk_band_matrix());
    REQUIRE(r.v_band.status == BandStatus::Solved);

    // Disk of radius 1/2 around i plus the real anchors +-1/sqrt(15).
    const double v = 1.0 / std::sqrt(15.0);
    ConvexRegion truth = circle_polygon(Complex(0, 1), 0.5);
    {
        std::vector<Complex> pts = truth.v;
        pts.push_back(Complex(-v, 0));
        pts.push_back(Complex(v, 0));
        truth = hull(std::move(pts));
    }
    CHECK(hausdorff(r.upper.inner, truth) <= 1e-4);

    // A quarter-anchored variant is measurably different, so the check
    // above genuinely discriminates between the two candidate regions.
    ConvexRegion quarter = circle_polygon(Complex(0, 1), 0.5);
    {
        std::vector<Complex> pts = quarter.v;
        pts.push_back(Complex(-0.25, 0));
        pts.push_back(Complex(0.25, 0));
        quarter = hull(std::move(pts));
    }
    CHECK(hausdorff(r.upper.inner, quarter) >= 5e-3);
}

TEST_CASE("upper bild of the half-ellipse matrix") {
    CMatrix A(3);
    A.at(0, 0) = Complex(0, 1);
    A.at(1, 1) = Complex(0, 1);
    A.at(2, 2) = Complex(0, -1);
    A.at(0, 2) = 1.0;
    BildOptions opts;
    opts.m = 1440;
    const BildResult r = upper_bild(A, opts);
    CHECK(r.path == BildPath::ConjSymmetric);

    std::vector<Complex> pts;
    const double b = std::sqrt(5.0) / 2.0;
    for (int k = 0; k <= 2048; ++k) {
        const double t = kTwoPi * k / 4096;  // upper half of the ellipse
        pts.push_back(Complex(0.5 * std::cos(t), b * std::sin(t)));
    }
    pts.push_back(Complex(0.5, 0));
    pts.push_back(Complex(-0.5, 0));
    CHECK(hausdorff(r.upper.inner, hull(std::move(pts))) <= 1e-4);
}

TEST_CASE("Hermitian and scalar fast paths") {
    CMatrix H(2);
    H.at(1, 1) = 1.0;
    const BildResult rh = upper_bild(H);
    CHECK(rh.path == BildPath::Hermitian);
    REQUIRE(rh.upper.inner.kind == RegionKind::Segment);
    CHECK(hausdorff(rh.upper.inner, ConvexRegion::segment(Complex(0, 0), Complex(1, 0))) <=
          1e-12);

    CMatrix s(1);
    s.at(0, 0) = Complex(2, 3);
    const BildResult rs = upper_bild(s);
    CHECK(rs.path == BildPath::Scalar);
    REQUIRE(rs.upper.inner.kind == RegionKind::Point);
    CHECK(std::abs(rs.upper.inner.v[0] - Complex(2, 3)) <= 1e-15);

    // n = 1 below the axis: the class representative is the mirror image.
    s.at(0, 0) = Complex(1, -2);
    const BildResult rm = upper_bild(s);
    CHECK(std::abs(rm.upper.inner.v[0] - Complex(1, 2)) <= 1e-15);
}

TEST_CASE("two-by-two closed forms") {
    // Positive definite: single real anchor at 4/3.
    CMatrix P(2);
    P.at(0, 0) = Complex(1, 1);
    P.at(1, 1) = Complex(2, 2);
    const BildResult rp = upper_bild(P);
    CHECK(rp.path == BildPath::TwoByTwoPosDef);
    CHECK(rp.v_band.v_min == Catch::Approx(4.0 / 3.0).margin(1e-9));
    CHECK(rp.v_band.v_max == Catch::Approx(4.0 / 3.0).margin(1e-9));
    CHECK(contains(rp.upper.outer, Complex(4.0 / 3.0, 0), 1e-8));

    // Positive semidefinite: the real anchor is the H entry on the kernel.
    CMatrix Q(2);
    Q.at(0, 0) = Complex(0.5, 1);
    Q.at(0, 1) = Complex(0.2, 0.1);
    Q.at(1, 0) = Complex(0.2, -0.1);
    Q.at(1, 1) = Complex(-0.3, 0);
    const BildResult rq = upper_bild(Q);
    CHECK(rq.path == BildPath::TwoByTwoPosSemi);
    CHECK(rq.v_band.v_min == Catch::Approx(-0.3).margin(1e-9));
    CHECK(rq.v_band.v_max == Catch::Approx(-0.3).margin(1e-9));

    // Indefinite diag(1+i, -i): S = diag(1,-1) and H = diag(1,0), so the
    // feasibility constraint pins |x_1|^2 + |y_1|^2 = 1/2 and the band is
    // the single real point 1/2.  Both clipped segments end there too, so
    // the bild is the triangle with vertices 1/2, 1+i, i.
    CMatrix D(2);
    D.at(0, 0) = Complex(1, 1);
    D.at(1, 1) = Complex(0, -1);
    REQUIRE_FALSE(conj_symmetric(D));
    const BildResult rd = upper_bild(D);
    CHECK(rd.path == BildPath::TwoByTwoIndefinite);
    CHECK(rd.v_band.v_min == Catch::Approx(0.5).margin(1e-9));
    CHECK(rd.v_band.v_max == Catch::Approx(0.5).margin(1e-9));
    CHECK(hausdorff(rd.upper.inner,
                    hull({Complex(0.5, 0), Complex(1, 1), Complex(0, 1)})) <= 1e-9);
}

TEST_CASE("two-by-two paths agree with the theorem assembly") {
    CounterRng rng(509, 1);
    BildOptions opts;
    opts.m = 1440;
    int checked = 0;
    for (int t = 0; t < 12; ++t) {
        const CMatrix A = random_complex(rng, 2);
        const BildResult r = upper_bild(A, opts);
        if (r.path == BildPath::Hermitian || r.path == BildPath::Scalar) continue;
        const ConvexRegion manual = assemble_by_theorem(A, 1440);
        REQUIRE(hausdorff(r.upper.inner, manual) <= 1e-4);
        ++checked;
    }
    CHECK(checked >= 8);
}

TEST_CASE("general assembly invariants on random matrices") {
    CounterRng rng(521, 1);
    for (int t = 0; t < 8; ++t) {
        const int n = 2 + static_cast<int>(rng.uniform() * 4);
        const CMatrix A = random_complex(rng, n);
        const BildResult r = upper_bild(A);

        // Upper half-plane and convexity come from the region type; the
        // assembled polygon must respect both, plus the band anchors.
        if (r.upper.inner.kind != RegionKind::Empty)
            for (const Complex& z : r.upper.inner.v) REQUIRE(z.imag() >= -1e-12);
        if (r.v_band.status == BandStatus::Solved) {
            REQUIRE(contains(r.upper.outer, Complex(r.v_band.v_min, 0), 1e-8));
            REQUIRE(contains(r.upper.outer, Complex(r.v_band.v_max, 0), 1e-8));
        }

        // Both clipped ranges are inside; the whole thing is inside the
        // clipped hull of the two outer enclosures.
        const SweepResult sw = sweep(A, r.m);
        const ConvexRegion wa = clip_upper(sw.regions.inner);
        const ConvexRegion was = clip_upper(mirror_region(sw.regions.inner));
        for (const ConvexRegion* gen : {&wa, &was})
            if (gen->kind != RegionKind::Empty)
                for (const Complex& z : gen->v) REQUIRE(contains(r.upper.outer, z, 1e-8));

        const ConvexRegion envelope =
            clip_upper(join(sw.regions.outer, mirror_region(sw.regions.outer)));
        if (r.upper.inner.kind != RegionKind::Empty)
            for (const Complex& z : r.upper.inner.v) REQUIRE(contains(envelope, z, 1e-8));
    }
}

TEST_CASE("conjugation-symmetric matrices reduce to the clipped range") {
    CounterRng rng(523, 1);
    for (int t = 0; t < 6; ++t) {
        const int n = 2 + static_cast<int>(rng.uniform() * 3);
        CMatrix A(n);
        for (auto& z : A.a) z = Complex(rng.normal(), 0);  // real matrix
        REQUIRE(conj_symmetric(A));
        const BildResult r = upper_bild(A);
        if (n > 2) CHECK(r.path == BildPath::ConjSymmetric);
        const SweepResult sw = sweep(A, r.m);
        const double slack = sw.regions.gap() + 1e-8;
        REQUIRE(hausdorff(r.upper.inner, clip_upper(sw.regions.inner)) <= slack);
    }
}

TEST_CASE("complexified sweep matches the two-range hull") {
    CounterRng rng(541, 1);
    for (int t = 0; t < 3; ++t) {
        // Small entries keep the boundary curvature gentle enough for the
        // fine grid to resolve the union of the two ranges to 1e-6.
        const CMatrix A = random_complex(rng, 3, 0.25);
        const SweepResult sa = sweep(A, 5760);
        const SweepResult ss = sweep(A.adjoint(), 5760);
        const ConvexRegion expected = join(sa.regions.inner, ss.regions.inner);
        const SweepResult schi = sweep(complexify(A.to_quaternion()), 5760);
        REQUIRE(hausdorff(schi.regions.inner, expected) <= 1e-6);
    }
}

TEST_CASE("membership through class representatives") {
    const BildResult r = upper_bild(square_matrix());
    CHECK(member(r, Quaternion(0, 0, 1, 0)));       // j, rep = i
    CHECK_FALSE(member(r, Quaternion(2, 0, 0, 0)));  // outside the radius
    CHECK(member(r, Quaternion(1, 0, 0, 0)));        // square vertex
    // The one-call overload recomputes the bild.
    CHECK(member(square_matrix(), Quaternion(0, 0, 1, 0)));
}

TEST_CASE("quaternionic radius of complex matrices") {
    CMatrix N(2);
    N.at(0, 0) = Complex(1, 1);
    N.at(1, 1) = Complex(-1, -1);
    auto [lo, hi] = qradius(N);
    CHECK(std::abs(lo - std::sqrt(2.0)) <= 1e-6);
    CHECK(std::abs(hi - std::sqrt(2.0)) <= 1e-4);

    std::tie(lo, hi) = qradius(disk_band_matrix());
    CHECK(lo <= 1.5 + 1e-12);
    CHECK(hi >= 1.5 - 1e-12);
    CHECK(hi - lo <= 1e-4);

    QMatrix J(2);
    J.at(0, 0) = Quaternion(1, 0, 0, 0);
    J.at(1, 1) = Quaternion(1, 0, 0, 0);
    J.at(0, 1) = Quaternion(0, 0, 1, 0);
    CHECK_THROWS_AS(qradius(J), NotComplex);
}

TEST_CASE("full bild is the upper region with its mirror") {
    const BildResult r = upper_bild(square_matrix());
    const auto [up, down] = full_bild(r);
    CHECK(hausdorff(up, r.upper.inner) <= 1e-15);
    CHECK(hausdorff(down, mirror_region(r.upper.inner)) <= 1e-12);
}
