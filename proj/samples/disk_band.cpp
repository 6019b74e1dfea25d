// Walk-through example: a non-normal matrix whose upper bild is strictly
// larger than the upper complex numerical range.
//
// A = i*I + E13 has W_C(A) equal to the disk of radius 1/2 centered at i.
// That disk never touches the real axis, yet the quaternionic range does:
// the similarity orbit of non-real values reaches real points, and the bild
// picks up a real band [-v, v]. The bild is then the hull of the disk with
// the band endpoints - a "disk on a stick" that no complex numerical range
// of the same matrix could produce.

#include <cmath>
#include <cstdio>

#include "qbild/io.hpp"

using namespace qbild;

int main() {
    CMatrix A(3);
    A.at(0, 0) = Complex(0, 1);
    A.at(1, 1) = Complex(0, 1);
    A.at(2, 2) = Complex(0, 1);
    A.at(0, 2) = Complex(1, 0);

    const BildResult b = upper_bild(A);
    std::printf("dispatch path: %s\n", to_string(b.path));
    std::printf("real band:     [%.12g, %.12g]\n", b.v_band.v_min, b.v_band.v_max);
    std::printf("band witness residual: %.3g\n", b.v_band.kkt_residual);

    // The band endpoints are the only real points: the certified witness
    // vectors pin them down far more precisely than sampling could.
    const double v = b.v_band.v_max;
    std::printf("band endpoint vs 1/sqrt(15): %.3g\n", std::abs(v - 1.0 / std::sqrt(15.0)));

    // The quaternionic numerical radius comes from the sweep enclosure:
    // the disk's top point i*(3/2) dominates, so the radius is exactly 3/2.
    const auto [rlo, rhi] = qradius(A);
    std::printf("radius bracket: [%.9f, %.9f]\n", rlo, rhi);

    // Sampling oracle cross-check of the assembled region.
    const ValidationReport rep = validate(A, b, 100000);
    std::printf("oracle: %lld violations, coverage %.4f -> %s\n",
                static_cast<long long>(rep.violations), rep.coverage,
                rep.pass ? "pass" : "FAIL");

    atomic_write("disk_band.svg", bild_svg(b));
    std::printf("wrote disk_band.svg\n");
    return rep.pass ? 0 : 1;
}
