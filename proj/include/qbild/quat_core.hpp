#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "errors.hpp"

namespace qbild {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

using Complex = std::complex<double>;

// Quaternion w + x*i + y*j + z*k over doubles. The basis satisfies
// i^2 = j^2 = k^2 = ijk = -1, hence ij = k, jk = i, ki = j and the reversed
// products pick up a sign. All comparisons downstream are tolerance-based;
// the type itself carries no epsilon.
struct Quaternion {
    double w = 0.0;
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    Quaternion() = default;
    Quaternion(double w_, double x_, double y_, double z_) : w(w_), x(x_), y(y_), z(z_) {}

    static Quaternion from_real(double r) { return {r, 0.0, 0.0, 0.0}; }
    static Quaternion from_complex(Complex c) { return {c.real(), c.imag(), 0.0, 0.0}; }

    double re() const { return w; }
    // Norm of the imaginary part (x, y, z).
    double im_norm() const { return std::sqrt(x * x + y * y + z * z); }
    double norm2() const { return w * w + x * x + y * y + z * z; }
    double norm() const { return std::sqrt(norm2()); }
    Quaternion conj() const { return {w, -x, -y, -z}; }

    // True when the j and k parts vanish within tol, i.e. the value lies in
    // the complex subfield spanned by 1 and i.
    bool is_complex(double tol = 1e-12) const {
        return std::abs(y) <= tol && std::abs(z) <= tol;
    }

    Quaternion operator+(const Quaternion& o) const { return {w + o.w, x + o.x, y + o.y, z + o.z}; }
    Quaternion operator-(const Quaternion& o) const { return {w - o.w, x - o.x, y - o.y, z - o.z}; }
    Quaternion operator-() const { return {-w, -x, -y, -z}; }
    Quaternion operator*(double s) const { return {w * s, x * s, y * s, z * s}; }
};

// Hamilton product.
inline Quaternion qmul(const Quaternion& a, const Quaternion& b) {
    return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

inline Quaternion operator*(const Quaternion& a, const Quaternion& b) { return qmul(a, b); }
inline Quaternion operator*(double s, const Quaternion& q) { return q * s; }

// Two quaternions are similar (conjugate by some unit quaternion) exactly
// when their real parts and imaginary-part norms agree; tol is absolute.
inline bool similar(const Quaternion& a, const Quaternion& b, double tol = 1e-10) {
    return std::abs(a.re() - b.re()) <= tol && std::abs(a.im_norm() - b.im_norm()) <= tol;
}

// Canonical complex representative Re(q) + |Im(q)|*i of the similarity class
// of q; it lies in the closed upper half-plane.
inline Complex class_rep(const Quaternion& q) { return {q.re(), q.im_norm()}; }

// Similarity class of a quaternion, stored by its two invariants.
struct SimilarityClass {
    double re = 0.0;
    double imnorm = 0.0;  // always >= 0

    static SimilarityClass of(const Quaternion& q) { return {q.re(), q.im_norm()}; }
    Complex rep() const { return {re, imnorm}; }
};

// Projections onto the real and complex subfields (coefficient extraction).
inline double project_real(const Quaternion& q) { return q.w; }
inline Complex project_complex(const Quaternion& q) { return {q.w, q.x}; }

using QVector = std::vector<Quaternion>;

inline double vnorm2(const QVector& v) {
    double s = 0.0;
    for (const auto& q : v) s += q.norm2();
    return s;
}

inline double vnorm(const QVector& v) { return std::sqrt(vnorm2(v)); }

// v / |v|; the zero vector has no direction and is rejected.
inline QVector unit(const QVector& v) {
    const double n = vnorm(v);
    if (n == 0.0) throw Error("unit: zero vector has no unit direction");
    QVector out = v;
    for (auto& q : out) q = q * (1.0 / n);
    return out;
}

// Dense square matrix of quaternions, row-major.
struct QMatrix {
    int n = 0;
    std::vector<Quaternion> e;

    QMatrix() = default;
    explicit QMatrix(int n_) : n(n_), e(static_cast<std::size_t>(n_) * n_) {}

    Quaternion& at(int r, int c) { return e[static_cast<std::size_t>(r) * n + c]; }
    const Quaternion& at(int r, int c) const { return e[static_cast<std::size_t>(r) * n + c]; }

    static QMatrix identity(int n_) {
        QMatrix m(n_);
        for (int i = 0; i < n_; ++i) m.at(i, i) = Quaternion::from_real(1.0);
        return m;
    }

    // Conjugate transpose; an involution by construction.
    QMatrix adjoint() const {
        QMatrix m(n);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) m.at(r, c) = at(c, r).conj();
        return m;
    }

    // True when every entry lies in the complex subfield within tol.
    bool is_complex(double tol = 1e-12) const {
        for (const auto& q : e)
            if (!q.is_complex(tol)) return false;
        return true;
    }
};

// The quadratic form v*Av (v conjugate-transposed as a row); defined on unit
// vectors, where its value set over the sphere is the numerical range.
inline Quaternion qform(const QMatrix& A, const QVector& v, double unit_tol = 1e-10) {
    if (static_cast<int>(v.size()) != A.n)
        throw Error("qform: vector length does not match matrix size");
    if (std::abs(vnorm(v) - 1.0) > unit_tol)
        throw NotUnit("qform: vector is not unit length within tolerance");
    Quaternion acc;
    for (int r = 0; r < A.n; ++r) {
        const Quaternion vr = v[static_cast<std::size_t>(r)].conj();
        for (int c = 0; c < A.n; ++c)
            acc = acc + qmul(vr, qmul(A.at(r, c), v[static_cast<std::size_t>(c)]));
    }
    return acc;
}

}  // namespace qbild
