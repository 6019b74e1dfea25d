#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "complex_linalg.hpp"
#include "errors.hpp"
#include "parallel.hpp"
#include "quat_core.hpp"
#include "rng.hpp"

namespace qbild {

// A pair (x, y) of complex n-vectors encoding the quaternionic vector
// q = x + y j. The pair is feasible for the real slice of the range when
//   |x|^2 + |y|^2 = 1,   x*Sy = 0  (both parts),   x*Sx = y*Sy,
// at which point q*Aq is the real number x*Hx + y*Hy.
struct FeasiblePoint {
    std::vector<Complex> x;
    std::vector<Complex> y;
};

enum class BandStatus { Solved, Empty, MaxIterations };

inline const char* to_string(BandStatus s) {
    switch (s) {
        case BandStatus::Solved: return "solved";
        case BandStatus::Empty: return "empty";
        case BandStatus::MaxIterations: return "max_iterations";
    }
    return "unknown";
}

// Extremes of the real slice, with the optimizer's certificates.
struct BandResult {
    double v_min = std::numeric_limits<double>::quiet_NaN();
    double v_max = std::numeric_limits<double>::quiet_NaN();
    BandStatus status = BandStatus::Empty;
    FeasiblePoint wit_min;
    FeasiblePoint wit_max;
    int starts_used = 0;
    double kkt_residual = std::numeric_limits<double>::infinity();
};

struct BandOptions {
    int starts = 64;
    std::uint64_t seed = 42;
    int outer_iters = 8;     // augmented-Lagrangian multiplier updates
    int inner_iters = 400;   // gradient steps per outer iteration
    double mu0 = 10.0;       // initial penalty weight, x10 per outer iteration
    double grad_tol = 1e-9;
    double kkt_tol = 1e-7;
    int sample_retries = 64;
};

namespace band_detail {

// The optimizer works on u = (Re x, Im x, Re y, Im y) in R^{4n} with every
// quantity written as a quotient by |u|^2, which makes all functions
// homogeneous of degree zero: the unit sphere never needs to be a constraint
// and every gradient is automatically tangent (grad . u = 0).
struct Workspace {
    int n = 0;
    const CMatrix* H = nullptr;
    const std::vector<double>* S = nullptr;

    std::vector<Complex> x, y, Hx, Hy, Sx, Sy;

    explicit Workspace(const CMatrix& H_, const std::vector<double>& S_)
        : n(H_.n), H(&H_), S(&S_), x(n), y(n), Hx(n), Hy(n), Sx(n), Sy(n) {}

    void load(const std::vector<double>& u) {
        for (int i = 0; i < n; ++i) {
            x[i] = Complex(u[i], u[n + i]);
            y[i] = Complex(u[2 * n + i], u[3 * n + i]);
        }
        Hx = H->apply(x);
        Hy = H->apply(y);
        for (int i = 0; i < n; ++i) {
            Sx[i] = (*S)[i] * x[i];
            Sy[i] = (*S)[i] * y[i];
        }
    }

    // Raw (unnormalized) quadratic forms.
    double r2(const std::vector<double>& u) const {
        double s = 0.0;
        for (double t : u) s += t * t;
        return s;
    }
    double f_raw() const { return (cdot(x, Hx) + cdot(y, Hy)).real(); }
    Complex xsy_raw() const { return cdot(x, Sy); }
    double g3_raw() const { return (cdot(x, Sx) - cdot(y, Sy)).real(); }
};

struct Eval {
    double f = 0.0;
    double g1 = 0.0, g2 = 0.0, g3 = 0.0;
};

inline Eval evaluate(Workspace& w, const std::vector<double>& u) {
    w.load(u);
    const double r2 = w.r2(u);
    const Complex xsy = w.xsy_raw();
    return {w.f_raw() / r2, xsy.real() / r2, xsy.imag() / r2, w.g3_raw() / r2};
}

// Gradients of the four quotient functions. For a quadratic form F(u)/r2 the
// gradient is (grad F)/r2 - 2*(F/r2)*u/r2; the four raw gradients are
//   f : (2 Re Hx, 2 Im Hx, 2 Re Hy, 2 Im Hy)
//   g1: (Re Sy, Im Sy, Re Sx, Im Sx)            [Re of x*Sy]
//   g2: (Im Sy, -Re Sy, -Im Sx, Re Sx)          [Im of x*Sy]
//   g3: (2 Re Sx, 2 Im Sx, -2 Re Sy, -2 Im Sy).
struct Grads {
    Eval val;
    std::vector<double> f, g1, g2, g3;
};

inline Grads gradients(Workspace& w, const std::vector<double>& u) {
    const int n = w.n;
    const std::size_t dim = u.size();
    Grads g;
    g.val = evaluate(w, u);  // leaves the workspace loaded with u
    const double r2 = w.r2(u);
    g.f.resize(dim);
    g.g1.resize(dim);
    g.g2.resize(dim);
    g.g3.resize(dim);
    for (int i = 0; i < n; ++i) {
        g.f[i] = 2.0 * w.Hx[i].real();
        g.f[n + i] = 2.0 * w.Hx[i].imag();
        g.f[2 * n + i] = 2.0 * w.Hy[i].real();
        g.f[3 * n + i] = 2.0 * w.Hy[i].imag();

        g.g1[i] = w.Sy[i].real();
        g.g1[n + i] = w.Sy[i].imag();
        g.g1[2 * n + i] = w.Sx[i].real();
        g.g1[3 * n + i] = w.Sx[i].imag();

        g.g2[i] = w.Sy[i].imag();
        g.g2[n + i] = -w.Sy[i].real();
        g.g2[2 * n + i] = -w.Sx[i].imag();
        g.g2[3 * n + i] = w.Sx[i].real();

        g.g3[i] = 2.0 * w.Sx[i].real();
        g.g3[n + i] = 2.0 * w.Sx[i].imag();
        g.g3[2 * n + i] = -2.0 * w.Sy[i].real();
        g.g3[3 * n + i] = -2.0 * w.Sy[i].imag();
    }
    const double vals[4] = {g.val.f, g.val.g1, g.val.g2, g.val.g3};
    std::vector<double>* vecs[4] = {&g.f, &g.g1, &g.g2, &g.g3};
    for (int j = 0; j < 4; ++j)
        for (std::size_t i = 0; i < dim; ++i)
            (*vecs[j])[i] = (*vecs[j])[i] / r2 - 2.0 * vals[j] * u[i] / r2;
    return g;
}

inline void normalize(std::vector<double>& u) {
    double s = 0.0;
    for (double t : u) s += t * t;
    s = std::sqrt(s);
    for (double& t : u) t /= s;
}

inline std::vector<double> pack(const FeasiblePoint& p) {
    const int n = static_cast<int>(p.x.size());
    std::vector<double> u(static_cast<std::size_t>(4 * n));
    for (int i = 0; i < n; ++i) {
        u[i] = p.x[i].real();
        u[n + i] = p.x[i].imag();
        u[2 * n + i] = p.y[i].real();
        u[3 * n + i] = p.y[i].imag();
    }
    return u;
}

inline FeasiblePoint unpack(const std::vector<double>& u, int n) {
    FeasiblePoint p;
    p.x.resize(n);
    p.y.resize(n);
    for (int i = 0; i < n; ++i) {
        p.x[i] = Complex(u[i], u[n + i]);
        p.y[i] = Complex(u[2 * n + i], u[3 * n + i]);
    }
    return p;
}

struct StartOutcome {
    bool converged = false;
    double value = std::numeric_limits<double>::quiet_NaN();
    double kkt = std::numeric_limits<double>::infinity();
    std::vector<double> u;
};

// Minimize sigma*f over the constraint set from one start, by the augmented
// Lagrangian L = sigma*f + lambda.g + (mu/2)|g|^2 with projected
// Barzilai-Borwein descent and an Armijo backtracking line search inside.
inline StartOutcome optimize_start(Workspace& w, std::vector<double> u, double sigma,
                                   const BandOptions& opt) {
    const std::size_t dim = u.size();
    double lambda[3] = {0.0, 0.0, 0.0};
    double mu = opt.mu0;
    normalize(u);

    auto lag_value = [&](const std::vector<double>& v) {
        const Eval e = evaluate(w, v);
        const double g[3] = {e.g1, e.g2, e.g3};
        double L = sigma * e.f;
        for (int i = 0; i < 3; ++i) L += lambda[i] * g[i] + 0.5 * mu * g[i] * g[i];
        return L;
    };
    auto lag_grad = [&](const std::vector<double>& v, std::vector<double>& out) {
        const Grads g = gradients(w, v);
        const double gv[3] = {g.val.g1, g.val.g2, g.val.g3};
        const std::vector<double>* gg[3] = {&g.g1, &g.g2, &g.g3};
        for (std::size_t i = 0; i < dim; ++i) {
            double t = sigma * g.f[i];
            for (int j = 0; j < 3; ++j) t += (lambda[j] + mu * gv[j]) * (*gg[j])[i];
            out[i] = t;
        }
    };

    std::vector<double> grad(dim), prev_u, prev_grad, trial(dim);
    for (int outer = 0; outer < opt.outer_iters; ++outer) {
        prev_u.clear();
        prev_grad.clear();
        double fu = lag_value(u);
        for (int it = 0; it < opt.inner_iters; ++it) {
            lag_grad(u, grad);
            double gn2 = 0.0;
            for (double t : grad) gn2 += t * t;
            if (std::sqrt(gn2) <= opt.grad_tol) break;

            // Barzilai-Borwein step length from the last displacement pair.
            double alpha = 1e-2;
            if (!prev_u.empty()) {
                double ss = 0.0, sy = 0.0;
                for (std::size_t i = 0; i < dim; ++i) {
                    const double si = u[i] - prev_u[i];
                    ss += si * si;
                    sy += si * (grad[i] - prev_grad[i]);
                }
                if (sy > 0.0) alpha = std::clamp(ss / sy, 1e-12, 1e6);
            }

            // Armijo backtracking on the normalized trial point.
            double step = alpha;
            double ftrial = 0.0;
            bool accepted = false;
            for (int bt = 0; bt < 60; ++bt) {
                for (std::size_t i = 0; i < dim; ++i) trial[i] = u[i] - step * grad[i];
                normalize(trial);
                ftrial = lag_value(trial);
                if (ftrial <= fu - 1e-4 * step * gn2) {
                    accepted = true;
                    break;
                }
                step *= 0.5;
                if (step < 1e-18) break;
            }
            if (!accepted) break;  // no descent achievable at double precision
            prev_u = u;
            prev_grad = grad;
            u.swap(trial);
            trial.resize(dim);
            fu = ftrial;
        }
        const Eval e = evaluate(w, u);
        lambda[0] += mu * e.g1;
        lambda[1] += mu * e.g2;
        lambda[2] += mu * e.g3;
        mu *= 10.0;
    }

    // First-order certificate: how far sigma*grad f sits from the span of
    // the constraint gradients, measured with least-squares multipliers at
    // the final point (the accumulated penalty multipliers lag behind the
    // iterate and would spoil an otherwise converged start). The quotient
    // gradients are tangent to the sphere, so the Euclidean norm is the
    // right one.
    const Grads g = gradients(w, u);
    const std::vector<double>* jac[3] = {&g.g1, &g.g2, &g.g3};
    double jtj[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
    double jtf[3] = {0, 0, 0};
    for (int a = 0; a < 3; ++a) {
        for (int b = a; b < 3; ++b) {
            double s = 0.0;
            for (std::size_t i = 0; i < dim; ++i) s += (*jac[a])[i] * (*jac[b])[i];
            jtj[a][b] = jtj[b][a] = s;
        }
        for (std::size_t i = 0; i < dim; ++i) jtf[a] += (*jac[a])[i] * sigma * g.f[i];
    }
    auto det3 = [](const double m[3][3]) {
        return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
               m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
               m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    };
    const double det = det3(jtj);
    const double diag_scale =
        std::max({jtj[0][0], jtj[1][1], jtj[2][2], 1e-300});
    if (std::abs(det) > 1e-12 * diag_scale * diag_scale * diag_scale) {
        // Cramer solve of jtj * mult = -jtf; overwrite the stale multipliers.
        for (int c = 0; c < 3; ++c) {
            double mc[3][3];
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b) mc[a][b] = jtj[a][b];
            for (int a = 0; a < 3; ++a) mc[a][c] = -jtf[a];
            lambda[c] = det3(mc) / det;
        }
    }
    double stat2 = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
        const double t = sigma * g.f[i] + lambda[0] * g.g1[i] + lambda[1] * g.g2[i] +
                         lambda[2] * g.g3[i];
        stat2 += t * t;
    }
    const double feas = std::max({std::abs(g.val.g1), std::abs(g.val.g2), std::abs(g.val.g3)});
    StartOutcome out;
    out.kkt = std::max(std::sqrt(stat2), feas);
    out.converged = out.kkt <= opt.kkt_tol;
    out.value = g.val.f;
    out.u = std::move(u);
    return out;
}

}  // namespace band_detail

// Draws one feasible pair for the diagonal S: random complex Gaussians, with
// y projected against S x (killing x*Sy exactly) and the x/y masses rescaled
// to equalize x*Sx = y*Sy. When the two forms land with opposite signs no
// positive rescaling exists and the draw is rejected; for an indefinite S
// roughly half of all draws succeed, for (semi)definite S every draw does.
inline FeasiblePoint feasible_sample(const std::vector<double>& S, CounterRng& rng,
                                     int max_retries = 64) {
    const int n = static_cast<int>(S.size());
    double smax = 0.0;
    for (double s : S) smax = std::max(smax, std::abs(s));

    if (n == 1) {
        // x*Sy = 0 forces x = 0 or y = 0, and then x*Sx = y*Sy forces the
        // other to vanish too unless S itself is zero.
        if (smax > 1e-12 * (1.0 + smax))
            throw Infeasible("feasible_sample: n = 1 with nonzero S has no feasible pair");
        const double r = 1.0 / std::sqrt(2.0);
        return {{Complex(r, 0.0)}, {Complex(r, 0.0)}};
    }

    const double negligible = 1e-10 * (1.0 + smax);
    for (int attempt = 0; attempt < max_retries; ++attempt) {
        std::vector<Complex> x(n), y(n);
        for (int i = 0; i < n; ++i) x[i] = Complex(rng.normal(), rng.normal());
        for (int i = 0; i < n; ++i) y[i] = Complex(rng.normal(), rng.normal());

        std::vector<Complex> u(n);
        double uu = 0.0;
        for (int i = 0; i < n; ++i) {
            u[i] = S[i] * x[i];
            uu += std::norm(u[i]);
        }
        if (uu > 0.0) {
            const Complex coeff = cdot(u, y) / uu;
            for (int i = 0; i < n; ++i) y[i] -= coeff * u[i];
        }

        double a = 0.0, b = 0.0, p = 0.0, q = 0.0;
        for (int i = 0; i < n; ++i) {
            a += S[i] * std::norm(x[i]);
            b += S[i] * std::norm(y[i]);
            p += std::norm(x[i]);
            q += std::norm(y[i]);
        }

        FeasiblePoint out;
        if (std::abs(a) <= negligible * p && std::abs(b) <= negligible * q) {
            const double scale = 1.0 / std::sqrt(p + q);
            for (auto& c : x) c *= scale;
            for (auto& c : y) c *= scale;
            out.x = std::move(x);
            out.y = std::move(y);
            return out;
        }
        if (std::abs(a) <= negligible * p || std::abs(b) <= negligible * q) {
            // One form is already zero: drop the other vector entirely.
            const bool keep_x = std::abs(a) <= negligible * p;
            std::vector<Complex>& kept = keep_x ? x : y;
            const double scale = 1.0 / std::sqrt(keep_x ? p : q);
            for (auto& c : kept) c *= scale;
            std::vector<Complex> zero(static_cast<std::size_t>(n), Complex(0.0, 0.0));
            out.x = keep_x ? std::move(x) : std::move(zero);
            out.y = keep_x ? std::move(zero) : std::move(y);
            return out;
        }
        if (a * b > 0.0) {
            const double denom = b * p + a * q;  // same sign as a and b
            const double alpha = std::sqrt(b / denom);
            const double beta = std::sqrt(a / denom);
            for (auto& c : x) c *= alpha;
            for (auto& c : y) c *= beta;
            out.x = std::move(x);
            out.y = std::move(y);
            return out;
        }
        // Opposite signs: no rescaling can match them; draw again.
    }

    // The rejection loop starves when S is indefinite but every draw lands
    // with opposite form signs (always for n = 2, and for shapes like
    // diag(+,-,0,...): projecting y against Sx then forces y*Sy to oppose
    // x*Sx). The feasible set still exists on the null cone of S, and a cone
    // point is easy to build directly: support x on one positive and one
    // negative index with masses that cancel, and take y proportional to x.
    int pos = -1, neg = -1;
    const double sign_floor = 1e-12 * (1.0 + smax);
    for (int i = 0; i < n; ++i) {
        if (S[i] > sign_floor && pos < 0) pos = i;
        if (S[i] < -sign_floor && neg < 0) neg = i;
    }
    if (pos >= 0 && neg >= 0) {
        const double wp = std::sqrt(-S[neg]);  // weights zeroing the S-form
        const double wn = std::sqrt(S[pos]);
        const Complex gp = std::polar(wp, kTwoPi * rng.uniform());
        const Complex gn = std::polar(wn, kTwoPi * rng.uniform());
        const Complex rot = std::polar(1.0, kTwoPi * rng.uniform());
        const double split = 0.1 + 0.8 * rng.uniform();  // x/y mass split
        const double mass = wp * wp + wn * wn;
        const double ax = std::sqrt(split / mass);
        const double ay = std::sqrt((1.0 - split) / mass);
        FeasiblePoint out;
        out.x.assign(static_cast<std::size_t>(n), Complex(0.0, 0.0));
        out.y.assign(static_cast<std::size_t>(n), Complex(0.0, 0.0));
        out.x[static_cast<std::size_t>(pos)] = ax * gp;
        out.x[static_cast<std::size_t>(neg)] = ax * gn;
        out.y[static_cast<std::size_t>(pos)] = ay * rot * gp;
        out.y[static_cast<std::size_t>(neg)] = ay * rot * gn;
        return out;
    }
    throw RetriesExhausted("feasible_sample: rejection sampling exhausted its retries");
}

// Extremes of the real slice { x*Hx + y*Hy : x*Sy = 0, x*Sx = y*Sy,
// |x|^2+|y|^2 = 1 } by multi-start augmented-Lagrangian descent. Starts are
// independent (each gets its own counter-based substream) and the reduction
// over starts is ordered, so results do not depend on scheduling.
inline BandResult band(const CanonicalForm& cf, const BandOptions& opt = {}) {
    const int n = cf.H.n;
    BandResult res;

    double smax = 0.0;
    for (double s : cf.S) smax = std::max(smax, std::abs(s));
    if (n == 1) {
        if (smax > 1e-9 * (1.0 + smax)) {
            res.status = BandStatus::Empty;  // no feasible pair exists
            return res;
        }
        const double h = cf.H.at(0, 0).real();
        res.v_min = res.v_max = h;
        res.status = BandStatus::Solved;
        res.kkt_residual = 0.0;
        const double r = 1.0 / std::sqrt(2.0);
        res.wit_min = res.wit_max = FeasiblePoint{{Complex(r, 0.0)}, {Complex(r, 0.0)}};
        return res;
    }

    // Solve a unit-scaled copy so the gradient and KKT thresholds mean the
    // same thing at every data magnitude: dividing S leaves the constraint
    // set untouched, and the objective is linear in H, so the band scales
    // right back. Witness vectors need no rescaling at all.
    double hmax = 0.0;
    for (const Complex& z : cf.H.a) hmax = std::max(hmax, std::abs(z));
    const double hscale = hmax > 0.0 ? hmax : 1.0;
    const double sscale = smax > 0.0 ? smax : 1.0;
    const CMatrix Hs = cf.H * Complex(1.0 / hscale, 0.0);
    std::vector<double> Ss = cf.S;
    for (double& s : Ss) s /= sscale;

    const int starts = std::max(1, opt.starts);
    std::vector<band_detail::StartOutcome> outcomes(static_cast<std::size_t>(2 * starts));

    parallel_for(2 * starts, [&](std::int64_t idx) {
        const double sigma = (idx < starts) ? 1.0 : -1.0;  // minimize f, then -f
        band_detail::Workspace w(Hs, Ss);
        CounterRng rng(opt.seed, static_cast<std::uint64_t>(idx));
        FeasiblePoint p = feasible_sample(Ss, rng, opt.sample_retries);
        outcomes[static_cast<std::size_t>(idx)] =
            band_detail::optimize_start(w, band_detail::pack(p), sigma, opt);
    });

    res.starts_used = 2 * starts;
    double best_min = std::numeric_limits<double>::infinity();
    double best_max = -std::numeric_limits<double>::infinity();
    double kkt_min = std::numeric_limits<double>::infinity();
    double kkt_max = std::numeric_limits<double>::infinity();
    const band_detail::StartOutcome *pick_min = nullptr, *pick_max = nullptr;
    for (int i = 0; i < starts; ++i) {
        const auto& o = outcomes[static_cast<std::size_t>(i)];
        if (o.converged && o.value < best_min) {
            best_min = o.value;
            kkt_min = o.kkt;
            pick_min = &o;
        }
    }
    for (int i = starts; i < 2 * starts; ++i) {
        const auto& o = outcomes[static_cast<std::size_t>(i)];
        if (o.converged && o.value > best_max) {
            best_max = o.value;
            kkt_max = o.kkt;
            pick_max = &o;
        }
    }

    if (pick_min == nullptr || pick_max == nullptr) {
        // Keep the best unconverged values so callers can inspect them.
        for (const auto& o : outcomes) {
            if (std::isnan(o.value)) continue;
            best_min = std::min(best_min, o.value);
            best_max = std::max(best_max, o.value);
        }
        res.status = BandStatus::MaxIterations;
        res.v_min = best_min * hscale;
        res.v_max = best_max * hscale;
        return res;
    }

    res.status = BandStatus::Solved;
    res.v_min = best_min * hscale;
    res.v_max = best_max * hscale;
    res.kkt_residual = std::max(kkt_min, kkt_max);
    res.wit_min = band_detail::unpack(pick_min->u, n);
    res.wit_max = band_detail::unpack(pick_max->u, n);
    // The real slice is an interval (values between two attained reals are
    // attained), so a crossed pair can only be numerical noise.
    if (res.v_min > res.v_max) std::swap(res.v_min, res.v_max);
    return res;
}

// Independent Monte-Carlo estimate of the band: min/max of the objective
// over N feasible samples, widened by real values found by raw quaternionic
// sampling of the original matrix (class representatives within eps_real of
// the real axis). Converges to the truth from inside as N grows.
inline std::pair<double, double> band_oracle(const CanonicalForm& cf, std::int64_t N,
                                             double eps_real = 1e-3,
                                             std::uint64_t seed = 42) {
    if (N < 1) throw ConfigError("band_oracle: need at least one sample");
    const int n = cf.H.n;

    {  // Fail fast when the constraint set is provably empty.
        CounterRng probe(seed, 0);
        feasible_sample(cf.S, probe);
    }

    const std::int64_t chunk = 16384;
    const std::int64_t chunks = (N + chunk - 1) / chunk;
    std::vector<double> lo(static_cast<std::size_t>(chunks),
                           std::numeric_limits<double>::infinity());
    std::vector<double> hi(static_cast<std::size_t>(chunks),
                           -std::numeric_limits<double>::infinity());

    const QMatrix raw = cf.original.to_quaternion();
    parallel_for(chunks, [&](std::int64_t c) {
        band_detail::Workspace w(cf.H, cf.S);
        double mn = std::numeric_limits<double>::infinity();
        double mx = -mn;
        const std::int64_t base = c * chunk;
        const std::int64_t end = std::min(N, base + chunk);
        for (std::int64_t s = base; s < end; ++s) {
            CounterRng rng(seed, static_cast<std::uint64_t>(s) + 1);
            const FeasiblePoint p = feasible_sample(cf.S, rng);
            std::vector<double> u = band_detail::pack(p);
            const double f = band_detail::evaluate(w, u).f;
            mn = std::min(mn, f);
            mx = std::max(mx, f);

            // Raw arm: a quaternionic sample whose class representative is
            // nearly real contributes its real part.
            QVector q(static_cast<std::size_t>(n));
            for (auto& e : q) e = Quaternion(rng.normal(), rng.normal(), rng.normal(),
                                             rng.normal());
            const Quaternion val = qform(raw, unit(q));
            if (val.im_norm() <= eps_real) {
                mn = std::min(mn, val.re());
                mx = std::max(mx, val.re());
            }
        }
        lo[static_cast<std::size_t>(c)] = mn;
        hi[static_cast<std::size_t>(c)] = mx;
    });

    double mn = std::numeric_limits<double>::infinity();
    double mx = -mn;
    for (std::int64_t c = 0; c < chunks; ++c) {
        mn = std::min(mn, lo[static_cast<std::size_t>(c)]);
        mx = std::max(mx, hi[static_cast<std::size_t>(c)]);
    }
    return {mn, mx};
}

}  // namespace qbild
