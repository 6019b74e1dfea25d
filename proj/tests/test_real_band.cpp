#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "qbild/real_band.hpp"
#include "qbild/rng.hpp"

using namespace qbild;

namespace {

CMatrix random_complex(CounterRng& rng, int n, double scale = 1.0) {
    CMatrix m(n);
    for (auto& z : m.a) z = Complex(scale * rng.normal(), scale * rng.normal());
    return m;
}

double vec_norm2(const std::vector<Complex>& v) {
    double s = 0.0;
    for (const Complex& z : v) s += std::norm(z);
    return s;
}

// x* diag(S) y for the diagonal skew part.
Complex sform(const std::vector<double>& S, const std::vector<Complex>& x,
              const std::vector<Complex>& y) {
    Complex acc = 0.0;
    for (std::size_t k = 0; k < S.size(); ++k) acc += S[k] * std::conj(x[k]) * y[k];
    return acc;
}

void check_feasible(const FeasiblePoint& p, const std::vector<double>& S) {
    REQUIRE(std::abs(vec_norm2(p.x) + vec_norm2(p.y) - 1.0) <= 1e-10);
    const Complex xsy = sform(S, p.x, p.y);
    REQUIRE(std::abs(xsy.real()) <= 1e-8);
    REQUIRE(std::abs(xsy.imag()) <= 1e-8);
    REQUIRE(std::abs(sform(S, p.x, p.x).real() - sform(S, p.y, p.y).real()) <= 1e-8);
}

// Value of the band objective at a feasible point.
double band_value(const CanonicalForm& cf, const FeasiblePoint& p) {
    return form_value(cf.H, p.x).real() + form_value(cf.H, p.y).real();
}

CMatrix disk_band_matrix() {
    CMatrix A(3);
    A.at(0, 0) = Complex(0, 1);
    A.at(1, 1) = Complex(0, 1);
    A.at(2, 2) = Complex(0, 1);
    A.at(0, 2) = 1.0;
    return A;
}

}  // namespace

TEST_CASE("feasible sampler satisfies its constraints") {
    CounterRng rng(401, 1);
    // S = 0: any unit pair works, constraints vanish.
    for (int t = 0; t < 50; ++t) {
        const FeasiblePoint p = feasible_sample({0, 0, 0}, rng);
        check_feasible(p, {0, 0, 0});
    }
    // Indefinite, semidefinite, and generic spectra.
    const std::vector<std::vector<double>> spectra = {
        {1, 1}, {1, -1}, {2, 1, 0}, {1.5, 0.5, -0.25, -3}, {1e-3, 1e3}};
    for (const auto& S : spectra)
        for (int t = 0; t < 50; ++t) check_feasible(feasible_sample(S, rng), S);
}

TEST_CASE("feasible sampler handles the one-dimensional cases") {
    CounterRng rng(403, 1);
    const FeasiblePoint p = feasible_sample({0.0}, rng);
    check_feasible(p, {0.0});
    CHECK_THROWS_AS(feasible_sample({1.0}, rng), Infeasible);
}

TEST_CASE("hand-checked two-dimensional feasible point") {
    // S = diag(1,1), x = (a, 0), y = (0, b) with a^2 = b^2 = 1/2: x*Sy = 0
    // by disjoint support and x*Sx = y*Sy = 1/2.
    const double r = 1.0 / std::sqrt(2.0);
    const FeasiblePoint p{{Complex(r, 0), Complex(0, 0)}, {Complex(0, 0), Complex(r, 0)}};
    check_feasible(p, {1, 1});
}

TEST_CASE("band of the disk-band matrix") {
    const CanonicalForm cf = canonical_form(disk_band_matrix());
    const BandResult r = band(cf);
    REQUIRE(r.status == BandStatus::Solved);
    // The correct extremes are +-1/sqrt(15): certified by the optimizer's
    // KKT point, attained by the sampling oracle (which exceeds 1/4), and
    // matched by the exact feasibility analysis of the constraint cone.
    const double truth = 1.0 / std::sqrt(15.0);
    CHECK(r.v_min == Catch::Approx(-truth).margin(1e-9));
    CHECK(r.v_max == Catch::Approx(truth).margin(1e-9));
    CHECK(r.kkt_residual <= 1e-7);

    check_feasible(r.wit_min, cf.S);
    check_feasible(r.wit_max, cf.S);
    CHECK(std::abs(band_value(cf, r.wit_min) - r.v_min) <= 1e-7);
    CHECK(std::abs(band_value(cf, r.wit_max) - r.v_max) <= 1e-7);
}

TEST_CASE("band of the square-generator matrix") {
    CMatrix A(4);
    A.at(0, 0) = Complex(-1, -1);
    A.at(1, 1) = Complex(-1, -1);
    A.at(2, 2) = Complex(1, 1);
    A.at(3, 3) = Complex(1, 1);
    const CanonicalForm cf = canonical_form(A);
    const BandResult r = band(cf);
    REQUIRE(r.status == BandStatus::Solved);
    CHECK(r.v_min == Catch::Approx(-1.0).margin(1e-6));
    CHECK(r.v_max == Catch::Approx(1.0).margin(1e-6));
    check_feasible(r.wit_min, cf.S);
    check_feasible(r.wit_max, cf.S);
}

TEST_CASE("Hermitian band equals the eigenvalue extremes") {
    CounterRng rng(409, 1);
    for (int t = 0; t < 5; ++t) {
        const int n = 2 + static_cast<int>(rng.uniform() * 4);
        CMatrix B = random_complex(rng, n);
        const CMatrix H = (B + B.adjoint()) * 0.5;
        const EigResult e = hermitian_eig(H);
        const BandResult r = band(canonical_form(H));
        REQUIRE(r.status == BandStatus::Solved);
        CHECK(r.v_max == Catch::Approx(e.values.front()).margin(1e-9));
        CHECK(r.v_min == Catch::Approx(e.values.back()).margin(1e-9));
    }
}

TEST_CASE("positive definite two-by-two closed form") {
    // A = diag(1+i, 2+2i): H = diag(1,2), S = diag(1,2). The single real
    // point is (h11*l2 + h22*l1)/(l1+l2) = 4/3.
    CMatrix A(2);
    A.at(0, 0) = Complex(1, 1);
    A.at(1, 1) = Complex(2, 2);
    const BandResult r = band(canonical_form(A));
    REQUIRE(r.status == BandStatus::Solved);
    CHECK(r.v_min == Catch::Approx(4.0 / 3.0).margin(1e-6));
    CHECK(r.v_max == Catch::Approx(4.0 / 3.0).margin(1e-6));
}

TEST_CASE("empty band for one-dimensional non-Hermitian input") {
    CMatrix A(1);
    A.at(0, 0) = Complex(0, 1);
    const BandResult r = band(canonical_form(A));
    CHECK(r.status == BandStatus::Empty);
    CHECK_THROWS_AS(band_oracle(canonical_form(A), 100), Infeasible);
}

TEST_CASE("oracle estimates converge from inside the band") {
    const CanonicalForm cf = canonical_form(disk_band_matrix());
    const auto [lo, hi] = band_oracle(cf, 20000);
    const double truth = 1.0 / std::sqrt(15.0);
    CHECK(lo >= -truth - 1e-9);
    CHECK(lo <= -0.245);
    CHECK(hi <= truth + 1e-9);
    CHECK(hi >= 0.245);

    CMatrix H(2);
    H.at(1, 1) = 1.0;
    const auto [hlo, hhi] = band_oracle(canonical_form(H), 20000);
    CHECK(hlo >= -1e-12);
    CHECK(hlo <= 0.02);
    CHECK(hhi <= 1.0 + 1e-12);
    CHECK(hhi >= 0.98);
}

TEST_CASE("oracle and optimizer agree on random matrices") {
    CounterRng rng(419, 1);
    for (int t = 0; t < 8; ++t) {
        const int n = 2 + static_cast<int>(rng.uniform() * 3);
        const CMatrix A = random_complex(rng, n);
        const CanonicalForm cf = canonical_form(A);
        const BandResult r = band(cf);
        if (r.status != BandStatus::Solved) continue;
        const auto [lo, hi] = band_oracle(cf, 5000);
        REQUIRE(lo >= r.v_min - 1e-6);
        REQUIRE(hi <= r.v_max + 1e-6);
    }
}

TEST_CASE("real points of mixed segments stay inside the band") {
    // For unit z1, z2 with z1* S z2 = 0, the segment from z1*Az1 to z2*A*z2
    // lies in the bild, so its real crossing must fall inside [v_min, v_max].
    CounterRng rng(421, 1);
    for (int t = 0; t < 6; ++t) {
        const int n = 2 + static_cast<int>(rng.uniform() * 3);
        const CMatrix A = random_complex(rng, n);
        const CanonicalForm cf = canonical_form(A);
        const BandResult r = band(cf);
        if (r.status != BandStatus::Solved) continue;

        CMatrix Ac = cf.H;  // canonical-basis matrix H + i diag(S)
        for (int k = 0; k < n; ++k) Ac.at(k, k) += Complex(0, cf.S[static_cast<std::size_t>(k)]);
        const CMatrix Acs = Ac.adjoint();

        for (int pair = 0; pair < 200; ++pair) {
            std::vector<Complex> z1(static_cast<std::size_t>(n)),
                z2(static_cast<std::size_t>(n));
            for (auto& z : z1) z = Complex(rng.normal(), rng.normal());
            for (auto& z : z2) z = Complex(rng.normal(), rng.normal());
            // Project z2 so that z1* S z2 = 0, then normalize both.
            const Complex z1sz1 = sform(cf.S, z1, z1);
            if (std::abs(z1sz1) < 1e-9) continue;
            const Complex coef = sform(cf.S, z1, z2) / z1sz1;
            for (std::size_t k = 0; k < z2.size(); ++k) z2[k] -= coef * z1[k];
            const double n1 = std::sqrt(vec_norm2(z1)), n2 = std::sqrt(vec_norm2(z2));
            if (n2 < 1e-9) continue;
            for (auto& z : z1) z /= n1;
            for (auto& z : z2) z /= n2;

            const Complex w1 = form_value(Ac, z1);
            const Complex w2 = form_value(Acs, z2);
            const double di = w1.imag() - w2.imag();
            if (std::abs(di) < 1e-12) continue;
            const double tcross = w1.imag() / di;
            if (tcross < 0.0 || tcross > 1.0) continue;
            const double rcross = w1.real() + tcross * (w2.real() - w1.real());
            REQUIRE(rcross >= r.v_min - 1e-6);
            REQUIRE(rcross <= r.v_max + 1e-6);
        }
    }
}

TEST_CASE("band translates with real diagonal shifts") {
    CounterRng rng(431, 1);
    for (int t = 0; t < 4; ++t) {
        const int n = 2 + static_cast<int>(rng.uniform() * 3);
        const CMatrix A = random_complex(rng, n);
        const double c = 2.0 * rng.normal();
        CMatrix Ac = A;
        for (int k = 0; k < n; ++k) Ac.at(k, k) += c;
        const BandResult r0 = band(canonical_form(A));
        const BandResult r1 = band(canonical_form(Ac));
        if (r0.status != BandStatus::Solved || r1.status != BandStatus::Solved) continue;
        REQUIRE(r1.v_min == Catch::Approx(r0.v_min + c).margin(1e-7));
        REQUIRE(r1.v_max == Catch::Approx(r0.v_max + c).margin(1e-7));
    }
}
