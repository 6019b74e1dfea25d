#pragma once

#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include "complex_linalg.hpp"
#include "errors.hpp"
#include "geometry.hpp"
#include "parallel.hpp"

namespace qbild {

// One angle of the boundary sweep: the top eigenvalue of the rotated
// Hermitian part H_theta = (e^{-i theta} A + e^{i theta} A*) / 2 is the
// support value of the range in direction theta, and the top eigenvector x
// realizes the boundary point x*Ax.
struct SupportSample {
    double theta = 0.0;
    double lambda_max = 0.0;
    Complex boundary;
};

struct SweepResult {
    RegionPair regions;  // inner: hull of attained boundary points; outer: halfplane cut
    int m = 0;
    std::vector<SupportSample> support_values;
};

// Two-sided polygonal approximation of the complex numerical range on the
// uniform angle grid theta_k = 2*pi*k/m. The inner polygon is a hull of
// attained values x*Ax (so every vertex certifies membership); the outer
// encloses the intersection of the m support halfplanes {Re(e^{-i theta} z)
// <= lambda_max(theta)}, each inflated by 1e-12*(1+|A|) so that degenerate
// ranges (segments, points) keep a nonempty interior in floating point.
inline SweepResult sweep(const CMatrix& A, int m) {
    if (m < 8) throw ConfigError("sweep: grid must have m >= 8 angles");
    const int n = A.n;
    const CMatrix Astar = A.adjoint();
    const double slack = 1e-12 * (1.0 + A.norm_inf());

    SweepResult out;
    out.m = m;
    out.support_values.resize(static_cast<std::size_t>(m));

    parallel_for(m, [&](std::int64_t k) {
        const double theta = kTwoPi * static_cast<double>(k) / m;
        const Complex ph(std::cos(theta), -std::sin(theta));  // e^{-i theta}
        CMatrix Ht(n);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c)
                Ht.at(r, c) = 0.5 * (ph * A.at(r, c) + std::conj(ph) * Astar.at(r, c));
        const EigResult eig = hermitian_eig(Ht);
        std::vector<Complex> x(static_cast<std::size_t>(n));
        for (int r = 0; r < n; ++r) x[static_cast<std::size_t>(r)] = eig.vectors.at(r, 0);
        out.support_values[static_cast<std::size_t>(k)] = {theta, eig.values[0],
                                                           form_value(A, x)};
    });

    std::vector<Complex> attained;
    attained.reserve(static_cast<std::size_t>(m));
    for (const auto& s : out.support_values) attained.push_back(s.boundary);
    out.regions.inner = hull(std::move(attained));

    // Any point of the range satisfies Re(e^{-i theta} z) <= lambda_max, so
    // the intersection of the m support halfplanes contains the truth. The
    // hull of the crossing points of consecutive support lines contains that
    // intersection in turn (a redundant line's crossings only bulge outward)
    // and stays within O(1/m^2) of it. Building the outer this way keeps
    // every linear solve at the fixed angle 2*pi/m — iteratively clipping a
    // polygon would instead meet nearly parallel line pairs as soon as the
    // range degenerates toward a segment, and their crossings land
    // unpredictably along the sliver.
    std::vector<Complex> crossings(static_cast<std::size_t>(m));
    const double det = std::sin(kTwoPi / m);
    for (std::size_t k = 0; k < crossings.size(); ++k) {
        const auto& a = out.support_values[k];
        const auto& b = out.support_values[(k + 1) % crossings.size()];
        const double ca = std::cos(a.theta), sa = std::sin(a.theta);
        const double cb = std::cos(b.theta), sb = std::sin(b.theta);
        const double da = a.lambda_max + slack, db = b.lambda_max + slack;
        crossings[k] = Complex((da * sb - db * sa) / det, (ca * db - cb * da) / det);
    }
    out.regions.outer = hull(std::move(crossings));
    return out;
}

// Lower/upper enclosure of the complex numerical radius: max modulus over
// the inner polygon's vertices cannot exceed the truth, max over the outer
// polygon's vertices cannot fall below it.
inline std::pair<double, double> cradius(const CMatrix& A, int m = 720) {
    const SweepResult sw = sweep(A, m);
    auto max_mod = [](const ConvexRegion& r) {
        double v = 0.0;
        for (const auto& p : r.v) v = std::max(v, std::abs(p));
        return v;
    };
    return {max_mod(sw.regions.inner), max_mod(sw.regions.outer)};
}

namespace detail_range {

// Evenness of the support function in theta, from one sweep's samples.
inline bool symmetric_support(const std::vector<SupportSample>& samples, double tol) {
    const std::size_t m = samples.size();
    double dev = 0.0;
    for (std::size_t k = 0; k < m; ++k)
        dev = std::max(dev, std::abs(samples[k].lambda_max - samples[(m - k) % m].lambda_max));
    return dev <= tol;
}

}  // namespace detail_range

// Tests whether the ranges of A and A* coincide, by comparing support values
// across the angle grid: the support of A* at theta equals the support of A
// at -theta, so a range symmetric under conjugation has a support function
// even in theta. Default tolerance scales with the matrix magnitude.
inline bool conj_symmetric(const CMatrix& A, int m = 720, double tol = -1.0) {
    if (tol < 0.0) tol = 1e-8 * (1.0 + A.norm_inf());
    const SweepResult sw = sweep(A, m);
    return detail_range::symmetric_support(sw.support_values, tol);
}

}  // namespace qbild
