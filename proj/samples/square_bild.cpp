// Walk-through example: the diagonal matrix diag(-1-i, -1-i, 1+i, 1+i).
//
// Its complex numerical range is the segment joining -1-i and 1+i, but the
// quaternionic range is two-dimensional: every similarity class q^{-1}(a+bi)q
// sweeps a sphere, and mixing the two eigenvalue classes fills the square
// with corners +-1+-i. The upper bild computed here is the top half of that
// square, and the sampling oracle confirms the picture from scratch.

#include <cstdio>

#include "qbild/io.hpp"

using namespace qbild;

int main() {
    CMatrix A(4);
    A.at(0, 0) = Complex(-1, -1);
    A.at(1, 1) = Complex(-1, -1);
    A.at(2, 2) = Complex(1, 1);
    A.at(3, 3) = Complex(1, 1);

    const BildResult b = upper_bild(A);
    std::printf("dispatch path: %s\n", to_string(b.path));
    std::printf("real band:     [%.12g, %.12g]\n", b.v_band.v_min, b.v_band.v_max);
    std::printf("enclosure gap: %.3g\n", b.enclosure_gap());

    std::printf("upper-bild vertices (counterclockwise):\n");
    for (const Complex& z : b.upper.inner.v)
        std::printf("  (%+.6f, %+.6f)\n", z.real(), z.imag());

    // Membership queries resolve against the inner/outer pair: j lies on the
    // unit sphere of the pure units, so its class representative is i.
    std::printf("contains j:  %s\n", member(b, Quaternion(0, 0, 1, 0)) ? "yes" : "no");
    std::printf("contains 2:  %s\n", member(b, Quaternion(2, 0, 0, 0)) ? "yes" : "no");

    // Independent check: brute-force sampling of q*Aq must stay inside the
    // outer enclosure, and its hull must come close to the inner polygon.
    const ValidationReport rep = validate(A, b, 100000);
    std::printf("oracle: %lld/%lld outside, coverage %.4f -> %s\n",
                static_cast<long long>(rep.violations), static_cast<long long>(rep.samples),
                rep.coverage, rep.pass ? "pass" : "FAIL");

    atomic_write("square_bild.svg", bild_svg(b));
    std::printf("wrote square_bild.svg\n");
    return rep.pass ? 0 : 1;
}
