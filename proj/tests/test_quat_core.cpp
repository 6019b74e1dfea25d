#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "qbild/quat_core.hpp"
#include "qbild/rng.hpp"

using namespace qbild;

namespace {

Quaternion random_quaternion(CounterRng& rng, double scale = 1.0) {
    return {scale * rng.normal(), scale * rng.normal(), scale * rng.normal(),
            scale * rng.normal()};
}

bool quat_close(const Quaternion& a, const Quaternion& b, double tol = 1e-12) {
    return (a - b).norm() <= tol;
}

}  // namespace

TEST_CASE("basis products satisfy the defining relations") {
    const Quaternion one(1, 0, 0, 0), qi(0, 1, 0, 0), qj(0, 0, 1, 0), qk(0, 0, 0, 1);
    const Quaternion minus_one(-1, 0, 0, 0);

    CHECK(quat_close(qmul(qi, qi), minus_one));
    CHECK(quat_close(qmul(qj, qj), minus_one));
    CHECK(quat_close(qmul(qk, qk), minus_one));
    CHECK(quat_close(qmul(qmul(qi, qj), qk), minus_one));

    // The full multiplication table pins the orientation (ij = k, not -k).
    CHECK(quat_close(qmul(qi, qj), qk));
    CHECK(quat_close(qmul(qj, qk), qi));
    CHECK(quat_close(qmul(qk, qi), qj));
    CHECK(quat_close(qmul(qj, qi), -qk));

    // q * 1 = q for a generic value.
    const Quaternion q(0.3, -1.2, 0.7, 2.5);
    CHECK(quat_close(qmul(q, one), q));
    CHECK(quat_close(qmul(one, q), q));
}

TEST_CASE("hand-expanded product (1+i)(1+j) = 1+i+j+k") {
    const Quaternion a(1, 1, 0, 0), b(1, 0, 1, 0);
    CHECK(quat_close(qmul(a, b), Quaternion(1, 1, 1, 1)));
    // The reversed product flips the sign of the k term (noncommutativity).
    CHECK(quat_close(qmul(b, a), Quaternion(1, 1, 1, -1)));
}

TEST_CASE("norm is multiplicative and |q|^2 = q q*") {
    CounterRng rng(7, 1);
    for (int t = 0; t < 1000; ++t) {
        const Quaternion a = random_quaternion(rng, 3.0);
        const Quaternion b = random_quaternion(rng, 0.5);
        CHECK(std::abs(qmul(a, b).norm() - a.norm() * b.norm()) <=
              1e-12 * (1.0 + a.norm() * b.norm()));
        const Quaternion aa = qmul(a, a.conj());
        CHECK(std::abs(aa.w - a.norm2()) <= 1e-12 * (1.0 + a.norm2()));
        CHECK(aa.im_norm() <= 1e-12 * (1.0 + a.norm2()));
    }
}

TEST_CASE("similarity compares real part and imaginary norm") {
    CHECK(similar(Quaternion(0, 0, 1, 0), Quaternion(0, 1, 0, 0)));    // j ~ i
    CHECK(similar(Quaternion(1, 1, 0, 0), Quaternion(1, -1, 0, 0)));   // 1+i ~ 1-i
    CHECK_FALSE(similar(Quaternion(1, 1, 0, 0), Quaternion(2, 1, 0, 0)));
    // The tolerance is configurable for downstream membership tests.
    CHECK(similar(Quaternion(1, 1, 0, 0), Quaternion(1.5, 1, 0, 0), 0.6));
}

TEST_CASE("class representative lands in the closed upper half-plane") {
    CHECK(std::abs(class_rep(Quaternion(1, 0, 1, 0)) - Complex(1, 1)) <= 1e-15);
    CHECK(std::abs(class_rep(Quaternion(3, 0, 0, 0)) - Complex(3, 0)) <= 1e-15);
    CHECK(std::abs(class_rep(Quaternion(1, 1, 1, 1)) - Complex(1, std::sqrt(3.0))) <= 1e-15);

    CounterRng rng(11, 1);
    for (int t = 0; t < 1000; ++t) {
        const Complex r = class_rep(random_quaternion(rng));
        CHECK(r.imag() >= 0.0);
    }
}

TEST_CASE("class representative is similarity invariant") {
    CounterRng rng(13, 1);
    for (int t = 0; t < 10000; ++t) {
        const Quaternion q = random_quaternion(rng, 2.0);
        Quaternion s = random_quaternion(rng);
        if (s.norm() < 1e-6) s = Quaternion(1, 0, 0, 0);
        s = s * (1.0 / s.norm());
        const Quaternion conj_q = qmul(s.conj(), qmul(q, s));
        REQUIRE(std::abs(class_rep(conj_q) - class_rep(q)) <= 1e-9);
    }
}

TEST_CASE("projections onto the real and complex subfields") {
    CHECK(project_complex(Quaternion(1, 1, 1, 0)) == Complex(1, 1));
    CHECK(project_real(Quaternion(0, 0, 0, 1)) == 0.0);
    CHECK(project_complex(Quaternion(2, 0, 0, -3)) == Complex(2, 0));
}

TEST_CASE("vector normalization and its zero-vector error") {
    QVector v{Quaternion(3, 0, 0, 0), Quaternion(0, 4, 0, 0)};
    const QVector u = unit(v);
    CHECK(std::abs(vnorm(u) - 1.0) <= 1e-12);
    CHECK(std::abs(u[0].w - 0.6) <= 1e-15);

    QVector zero{Quaternion(), Quaternion()};
    CHECK_THROWS_AS(unit(zero), Error);
}

TEST_CASE("conjugate transpose is an involution") {
    CounterRng rng(17, 1);
    QMatrix A(4);
    for (auto& q : A.e) q = random_quaternion(rng);
    const QMatrix B = A.adjoint().adjoint();
    for (std::size_t t = 0; t < A.e.size(); ++t) {
        CHECK(A.e[t].w == B.e[t].w);
        CHECK(A.e[t].x == B.e[t].x);
        CHECK(A.e[t].y == B.e[t].y);
        CHECK(A.e[t].z == B.e[t].z);
    }
}

TEST_CASE("quadratic form on fixed matrices") {
    const QMatrix I2 = QMatrix::identity(2);
    CounterRng rng(19, 1);
    for (int t = 0; t < 50; ++t) {
        QVector v{random_quaternion(rng), random_quaternion(rng)};
        if (vnorm(v) < 1e-6) continue;
        const Quaternion f = qform(I2, unit(v));
        CHECK(quat_close(f, Quaternion(1, 0, 0, 0), 1e-12));
    }

    QMatrix D(2);
    D.at(0, 0) = Quaternion(0, 1, 0, 0);
    D.at(1, 1) = Quaternion(0, -1, 0, 0);
    const Quaternion e1 = qform(D, QVector{Quaternion(1, 0, 0, 0), Quaternion()});
    CHECK(quat_close(e1, Quaternion(0, 1, 0, 0)));

    // Shear by a unit quaternion h: the form at (1,1)/sqrt(2) is 1 + h/2.
    for (const Quaternion& h : {Quaternion(0, 1, 0, 0), Quaternion(0, 0, 1, 0),
                                Quaternion(0, 0.6, 0, 0.8)}) {
        QMatrix S = QMatrix::identity(2);
        S.at(0, 1) = h;
        const double r = 1.0 / std::sqrt(2.0);
        const Quaternion f =
            qform(S, QVector{Quaternion(r, 0, 0, 0), Quaternion(r, 0, 0, 0)});
        CHECK(quat_close(f, Quaternion(1, 0, 0, 0) + h * 0.5, 1e-12));
    }
}

TEST_CASE("quadratic form rejects non-unit vectors") {
    const QMatrix I2 = QMatrix::identity(2);
    CHECK_THROWS_AS(qform(I2, QVector{Quaternion(1, 0, 0, 0), Quaternion(1, 0, 0, 0)}),
                    NotUnit);
}

TEST_CASE("Hermitian complex form stays real on complex vectors") {
    CounterRng rng(23, 1);
    for (int t = 0; t < 200; ++t) {
        // Random complex Hermitian matrix, embedded.
        QMatrix H(3);
        for (int r = 0; r < 3; ++r) {
            H.at(r, r) = Quaternion(rng.normal(), 0, 0, 0);
            for (int c = r + 1; c < 3; ++c) {
                H.at(r, c) = Quaternion(rng.normal(), rng.normal(), 0, 0);
                H.at(c, r) = H.at(r, c).conj();
            }
        }
        QVector v(3);
        for (auto& q : v) q = Quaternion(rng.normal(), rng.normal(), 0, 0);
        if (vnorm(v) < 1e-6) continue;
        const Quaternion f = qform(H, unit(v));
        CHECK(std::abs(f.x) <= 1e-10);
        CHECK(std::abs(f.y) <= 1e-10);
        CHECK(std::abs(f.z) <= 1e-10);
    }
}

TEST_CASE("symplectic decomposition of the form on complex matrices") {
    // For complex A and a quaternionic vector written as x + y j with complex
    // x, y, the j/k part of v*Av equals (x*(A - A*)y) j. With A = H + iS that
    // is 2i(x*Sy) j, i.e. the quaternion 2 * (x*Sy) * k.
    CounterRng rng(29, 1);
    const Quaternion qj(0, 0, 1, 0), qk(0, 0, 0, 1);
    for (int t = 0; t < 500; ++t) {
        const int n = 3;
        QMatrix A(n);
        for (auto& q : A.e) q = Quaternion(rng.normal(), rng.normal(), 0, 0);

        QVector v(n);
        std::vector<Complex> xs(n), ys(n);
        for (int r = 0; r < n; ++r)
            v[static_cast<std::size_t>(r)] =
                Quaternion(rng.normal(), rng.normal(), rng.normal(), rng.normal());
        v = unit(v);
        for (int r = 0; r < n; ++r) {
            xs[static_cast<std::size_t>(r)] = Complex(v[static_cast<std::size_t>(r)].w,
                                                      v[static_cast<std::size_t>(r)].x);
            ys[static_cast<std::size_t>(r)] = Complex(v[static_cast<std::size_t>(r)].y,
                                                      v[static_cast<std::size_t>(r)].z);
        }

        // x* S y where S = (A - A*) / (2i).
        Complex xsy = 0;
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) {
                const Complex arc(A.at(r, c).w, A.at(r, c).x);
                const Complex acr(A.at(c, r).w, A.at(c, r).x);
                const Complex s = (arc - std::conj(acr)) / Complex(0, 2);
                xsy += std::conj(xs[static_cast<std::size_t>(r)]) * s *
                       ys[static_cast<std::size_t>(c)];
            }

        const Quaternion f = qform(A, v);
        const Quaternion jk_part(0, 0, f.y, f.z);
        const Quaternion expect = qmul(Quaternion::from_complex(xsy), qk) * 2.0;
        REQUIRE((jk_part - expect).norm() <= 1e-10);
    }
    (void)qj;
}
