#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <vector>

#include "errors.hpp"
#include "quat_core.hpp"

namespace qbild {

// Dense square complex matrix, row-major.
struct CMatrix {
    int n = 0;
    std::vector<Complex> a;

    CMatrix() = default;
    explicit CMatrix(int n_) : n(n_), a(static_cast<std::size_t>(n_) * n_) {}

    Complex& at(int r, int c) { return a[static_cast<std::size_t>(r) * n + c]; }
    const Complex& at(int r, int c) const { return a[static_cast<std::size_t>(r) * n + c]; }

    static CMatrix identity(int n_) {
        CMatrix m(n_);
        for (int i = 0; i < n_; ++i) m.at(i, i) = 1.0;
        return m;
    }

    CMatrix adjoint() const {
        CMatrix m(n);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) m.at(r, c) = std::conj(at(c, r));
        return m;
    }

    CMatrix operator+(const CMatrix& o) const {
        CMatrix m(n);
        for (std::size_t i = 0; i < a.size(); ++i) m.a[i] = a[i] + o.a[i];
        return m;
    }

    CMatrix operator-(const CMatrix& o) const {
        CMatrix m(n);
        for (std::size_t i = 0; i < a.size(); ++i) m.a[i] = a[i] - o.a[i];
        return m;
    }

    CMatrix operator*(Complex s) const {
        CMatrix m(n);
        for (std::size_t i = 0; i < a.size(); ++i) m.a[i] = a[i] * s;
        return m;
    }

    CMatrix operator*(const CMatrix& o) const {
        CMatrix m(n);
        for (int r = 0; r < n; ++r)
            for (int k = 0; k < n; ++k) {
                const Complex arK = at(r, k);
                if (arK == 0.0) continue;
                for (int c = 0; c < n; ++c) m.at(r, c) += arK * o.at(k, c);
            }
        return m;
    }

    // Max-modulus entry norm.
    double norm_inf() const {
        double m = 0.0;
        for (const auto& v : a) m = std::max(m, std::abs(v));
        return m;
    }

    double norm_fro() const {
        double s = 0.0;
        for (const auto& v : a) s += std::norm(v);
        return std::sqrt(s);
    }

    bool is_hermitian(double rel_tol = 1e-12) const {
        double dev = 0.0;
        for (int r = 0; r < n; ++r)
            for (int c = r; c < n; ++c)
                dev = std::max(dev, std::abs(at(r, c) - std::conj(at(c, r))));
        return dev <= rel_tol * (1.0 + norm_inf());
    }

    // Matrix-vector product.
    std::vector<Complex> apply(const std::vector<Complex>& v) const {
        std::vector<Complex> out(static_cast<std::size_t>(n));
        for (int r = 0; r < n; ++r) {
            Complex s = 0.0;
            for (int c = 0; c < n; ++c) s += at(r, c) * v[static_cast<std::size_t>(c)];
            out[static_cast<std::size_t>(r)] = s;
        }
        return out;
    }

    static CMatrix from_quaternion(const QMatrix& q, double tol = 1e-12) {
        if (!q.is_complex(tol))
            throw NotComplex("matrix has quaternionic entries outside the complex subfield");
        CMatrix m(q.n);
        for (int r = 0; r < q.n; ++r)
            for (int c = 0; c < q.n; ++c) m.at(r, c) = project_complex(q.at(r, c));
        return m;
    }

    QMatrix to_quaternion() const {
        QMatrix m(n);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) m.at(r, c) = Quaternion::from_complex(at(r, c));
        return m;
    }
};

// x*y with x conjugated (the physics convention used throughout).
inline Complex cdot(const std::vector<Complex>& x, const std::vector<Complex>& y) {
    Complex s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += std::conj(x[i]) * y[i];
    return s;
}

// x*Mx for complex M; real only when M is Hermitian.
inline Complex form_value(const CMatrix& M, const std::vector<Complex>& x) {
    return cdot(x, M.apply(x));
}

struct EigResult {
    std::vector<double> values;  // descending
    CMatrix vectors;             // orthonormal columns, vectors.at(r, k) = k-th eigenvector
};

// Cyclic Jacobi eigensolver for Hermitian matrices.
//
// Each rotation annihilates one off-diagonal entry beta = M(p,q) = |beta| e^{i phi}
// with the unitary that acts on the (p,q) plane as
//   [ c        -s e^{i phi} ]
//   [ s e^{-i phi}   c      ],
// where t = s/c solves t^2 + 2*tau*t - 1 = 0, tau = (M(p,p) - M(q,q)) / (2|beta|),
// and the root of smaller magnitude is taken for stability. Sweeps repeat until
// the off-diagonal Frobenius mass falls below 1e-13 * ||M||_F (at most 40 sweeps,
// far more than the quadratically-convergent method needs at this scale).
//
// Entries that are exactly zero are never rotated, so block-diagonal inputs are
// diagonalized block by block with no cross-block contamination.
inline EigResult hermitian_eig(const CMatrix& input, double herm_tol = 1e-12) {
    if (!input.is_hermitian(herm_tol))
        throw NotHermitian("hermitian_eig: matrix is not Hermitian within tolerance");
    const int n = input.n;

    // Symmetrize once so rounding in the caller cannot bias the iteration.
    CMatrix M(n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            M.at(r, c) = 0.5 * (input.at(r, c) + std::conj(input.at(c, r)));
    CMatrix V = CMatrix::identity(n);

    const double frob = M.norm_fro();
    const double target = 1e-13 * frob;
    // Entries below this cannot lift the off-diagonal mass above target.
    const double skip = (n > 0) ? target / (2.0 * n) : 0.0;

    auto off_mass = [&]() {
        double s = 0.0;
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c)
                if (r != c) s += std::norm(M.at(r, c));
        return std::sqrt(s);
    };

    if (frob > 0.0) {
        bool converged = false;
        for (int sweep = 0; sweep < 40 && !converged; ++sweep) {
            if (off_mass() <= target) {
                converged = true;
                break;
            }
            for (int p = 0; p < n - 1; ++p) {
                for (int q = p + 1; q < n; ++q) {
                    const Complex beta = M.at(p, q);
                    const double ab = std::abs(beta);
                    if (ab <= skip) continue;
                    const Complex phase = beta / ab;  // e^{i phi}
                    const double alpha = M.at(p, p).real();
                    const double gamma = M.at(q, q).real();
                    const double tau = (alpha - gamma) / (2.0 * ab);
                    const double t =
                        (tau == 0.0) ? 1.0
                                     : ((tau > 0.0 ? 1.0 : -1.0) /
                                        (std::abs(tau) + std::sqrt(tau * tau + 1.0)));
                    const double c = 1.0 / std::sqrt(1.0 + t * t);
                    const double s = t * c;

                    // Column update (right-multiplication by the rotation).
                    for (int r = 0; r < n; ++r) {
                        const Complex mp = M.at(r, p);
                        const Complex mq = M.at(r, q);
                        M.at(r, p) = c * mp + s * std::conj(phase) * mq;
                        M.at(r, q) = -s * phase * mp + c * mq;
                    }
                    // Row update (left-multiplication by the adjoint).
                    for (int k = 0; k < n; ++k) {
                        const Complex mp = M.at(p, k);
                        const Complex mq = M.at(q, k);
                        M.at(p, k) = c * mp + s * phase * mq;
                        M.at(q, k) = -s * std::conj(phase) * mp + c * mq;
                    }
                    // The 2x2 block is known in closed form; write it exactly.
                    const double cross = 2.0 * c * s * ab;
                    M.at(p, p) = alpha * c * c + gamma * s * s + cross;
                    M.at(q, q) = alpha * s * s + gamma * c * c - cross;
                    M.at(p, q) = 0.0;
                    M.at(q, p) = 0.0;

                    // Accumulate eigenvectors (columns transform like M's).
                    for (int r = 0; r < n; ++r) {
                        const Complex vp = V.at(r, p);
                        const Complex vq = V.at(r, q);
                        V.at(r, p) = c * vp + s * std::conj(phase) * vq;
                        V.at(r, q) = -s * phase * vp + c * vq;
                    }
                }
            }
        }
        if (!converged && off_mass() > target)
            throw NonConvergence("hermitian_eig: Jacobi sweeps did not reach tolerance");
    }

    // Sort descending; ties keep the iteration's first-index order.
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
        return M.at(i, i).real() > M.at(j, j).real();
    });

    EigResult out;
    out.values.resize(static_cast<std::size_t>(n));
    out.vectors = CMatrix(n);
    for (int k = 0; k < n; ++k) {
        out.values[static_cast<std::size_t>(k)] = M.at(order[static_cast<std::size_t>(k)],
                                                       order[static_cast<std::size_t>(k)])
                                                      .real();
        for (int r = 0; r < n; ++r)
            out.vectors.at(r, k) = V.at(r, order[static_cast<std::size_t>(k)]);
    }
    return out;
}

// The decomposition A = H + S i in a rotated basis: U is complex unitary,
// U*AU = H + i diag(S) with H Hermitian and S real, sorted descending.
struct CanonicalForm {
    CMatrix H;              // Hermitian part, in the rotated basis
    std::vector<double> S;  // diagonal of the rotated skew part, descending
    CMatrix U;              // the change of basis: columns are eigenvectors of -i*(A-A*)/2
    CMatrix original;       // A itself, kept for oracles that sample the raw matrix
};

// Split A into Hermitian and skew-Hermitian parts, diagonalize the Hermitian
// matrix -i*(A-A*)/2 and rotate the Hermitian part into that eigenbasis.
inline CanonicalForm canonical_form(const CMatrix& A) {
    const int n = A.n;
    const CMatrix Astar = A.adjoint();
    CMatrix Hhat(n), Khat(n);  // Khat = -i * (A - A*) / 2, Hermitian
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            Hhat.at(r, c) = 0.5 * (A.at(r, c) + Astar.at(r, c));
            Khat.at(r, c) = Complex(0.0, -0.5) * (A.at(r, c) - Astar.at(r, c));
        }

    const EigResult eig = hermitian_eig(Khat);
    CanonicalForm cf;
    cf.U = eig.vectors;
    cf.S = eig.values;
    cf.original = A;

    // H = U* Hhat U, re-symmetrized to strip rounding drift.
    const CMatrix rotated = cf.U.adjoint() * Hhat * cf.U;
    cf.H = CMatrix(n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            cf.H.at(r, c) = 0.5 * (rotated.at(r, c) + std::conj(rotated.at(c, r)));
    return cf;
}

// 2n x 2n complex image of a quaternionic matrix A = A1 + A2 j:
//   [ A1        A2      ]
//   [ -conj(A2) conj(A1) ].
// For complex A this is blockdiag(A, conj(A)).
inline CMatrix complexify(const QMatrix& A) {
    const int n = A.n;
    CMatrix chi(2 * n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            const Quaternion& q = A.at(r, c);
            const Complex a1(q.w, q.x);
            const Complex a2(q.y, q.z);
            chi.at(r, c) = a1;
            chi.at(r, n + c) = a2;
            chi.at(n + r, c) = -std::conj(a2);
            chi.at(n + r, n + c) = std::conj(a1);
        }
    return chi;
}

enum class Definiteness {
    PositiveDefinite,
    PositiveSemiDefinite,
    NegativeDefinite,
    NegativeSemiDefinite,
    Indefinite,
    Zero,
};

inline const char* to_string(Definiteness d) {
    switch (d) {
        case Definiteness::PositiveDefinite: return "positive_definite";
        case Definiteness::PositiveSemiDefinite: return "positive_semidefinite";
        case Definiteness::NegativeDefinite: return "negative_definite";
        case Definiteness::NegativeSemiDefinite: return "negative_semidefinite";
        case Definiteness::Indefinite: return "indefinite";
        case Definiteness::Zero: return "zero";
    }
    return "unknown";
}

// Default dead-band for classifying near-zero diagonal entries.
inline double default_eps_def(const std::vector<double>& S) {
    double m = 0.0;
    for (double s : S) m = std::max(m, std::abs(s));
    return 1e-9 * (1.0 + m);
}

// Sign classification of a real diagonal under the dead-band eps_def:
// entries within the band count as zero.
inline Definiteness classify(const std::vector<double>& S, double eps_def) {
    bool all_zero = true, any_zero = false, any_pos = false, any_neg = false;
    for (double s : S) {
        if (s > eps_def) {
            any_pos = true;
            all_zero = false;
        } else if (s < -eps_def) {
            any_neg = true;
            all_zero = false;
        } else {
            any_zero = true;
        }
    }
    if (all_zero) return Definiteness::Zero;
    if (any_pos && any_neg) return Definiteness::Indefinite;
    if (any_pos) return any_zero ? Definiteness::PositiveSemiDefinite : Definiteness::PositiveDefinite;
    return any_zero ? Definiteness::NegativeSemiDefinite : Definiteness::NegativeDefinite;
}

inline Definiteness classify(const std::vector<double>& S) {
    return classify(S, default_eps_def(S));
}

}  // namespace qbild
