// Command-line front end: parse a matrix file, run the requested pipeline
// stage, and emit CSV/JSON/SVG artifacts plus a short report on stdout.
//
// Exit codes: 0 success, 2 validation failure, 3 parse/config error,
// 4 numerical non-convergence.

#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qbild/io.hpp"

namespace {

using namespace qbild;

// Shared run configuration; every subcommand exposes the same flag names so
// scripts can pass one flag set regardless of stage.
struct RunConfig {
    int m = 720;                    // --grid
    int starts = 64;                // --starts
    std::int64_t samples = 100000;  // --samples
    std::uint64_t seed = 42;        // --seed
    double tol = 1e-6;              // --tol
    std::string out_dir = ".";      // --out-dir
};

void check_config(const RunConfig& cfg) {
    if (cfg.m < 8) throw ConfigError("sweep grid must be at least 8 (got " + std::to_string(cfg.m) + ")");
    if (cfg.starts < 1) throw ConfigError("need at least one optimizer start");
    if (cfg.samples < 1) throw ConfigError("need at least one oracle sample");
    if (!(cfg.tol > 0)) throw ConfigError("tolerance must be positive");
}

BildOptions make_options(const RunConfig& cfg) {
    BildOptions opts;
    opts.m = cfg.m;
    opts.band.starts = cfg.starts;
    opts.band.seed = cfg.seed;
    opts.oracle_samples = cfg.samples;
    return opts;
}

// All artifacts of one run land in --out-dir (created on demand); writes are
// atomic so a crash never leaves a half-written file behind.
std::string out_path(const RunConfig& cfg, const std::string& name) {
    std::filesystem::create_directories(cfg.out_dir);
    return (std::filesystem::path(cfg.out_dir) / name).string();
}

void write_region_csvs(const RunConfig& cfg, const RegionPair& pair) {
    atomic_write(out_path(cfg, "inner.csv"), region_csv(pair.inner));
    atomic_write(out_path(cfg, "outer.csv"), region_csv(pair.outer));
}

ConvexRegion mirror_region(const ConvexRegion& r) {
    std::vector<Complex> v(r.v.rbegin(), r.v.rend());
    for (auto& z : v) z = std::conj(z);
    return hull(std::move(v));
}

int cmd_bild(const std::string& file, const RunConfig& cfg, bool want_svg) {
    const MatrixFile mf = load_matrix(file);
    const CMatrix A = mf.as_complex();
    const BildResult b = upper_bild(A, make_options(cfg));

    atomic_write(out_path(cfg, "bild.json"), bild_to_json(b).dump(2) + "\n");
    write_region_csvs(cfg, b.upper);
    if (want_svg) {
        // The dashed generators are the two complex numerical ranges whose
        // hull (with the band anchors) forms the upper bild.
        const SweepResult sw = sweep(A, cfg.m);
        const ConvexRegion gen_astar = mirror_region(sw.regions.inner);
        atomic_write(out_path(cfg, "bild.svg"), bild_svg(b, &sw.regions.inner, &gen_astar));
    }

    std::printf("path=%s definiteness=%s m=%d unverified=%d\n", to_string(b.path),
                to_string(b.definiteness), b.m, b.unverified ? 1 : 0);
    if (b.v_band.status != BandStatus::Empty)
        std::printf("band=[%.12g,%.12g]\n", b.v_band.v_min, b.v_band.v_max);
    else
        std::printf("band=empty\n");
    std::printf("enclosure_gap=%.6g\n", b.enclosure_gap());
    return 0;
}

int cmd_crange(const std::string& file, const RunConfig& cfg) {
    const MatrixFile mf = load_matrix(file);
    const CMatrix A = mf.as_complex();
    const SweepResult sw = sweep(A, cfg.m);
    atomic_write(out_path(cfg, "sweep.csv"), sweep_csv(sw));
    write_region_csvs(cfg, sw.regions);
    const auto [lo, hi] = cradius(A, cfg.m);
    std::printf("%.17g,%.17g\n", lo, hi);
    return 0;
}

int cmd_band(const std::string& file, const RunConfig& cfg) {
    const MatrixFile mf = load_matrix(file);
    const CMatrix A = mf.as_complex();
    const CanonicalForm cf = canonical_form(A);
    BandOptions bopt;
    bopt.starts = cfg.starts;
    bopt.seed = cfg.seed;
    const BandResult r = band(cf, bopt);

    Json j;
    j["schema"] = 1;
    j["status"] = to_string(r.status);
    if (r.status != BandStatus::Empty) {
        j["v_min"] = r.v_min;
        j["v_max"] = r.v_max;
    }
    j["starts_used"] = r.starts_used;
    if (std::isfinite(r.kkt_residual)) j["kkt_residual"] = r.kkt_residual;
    atomic_write(out_path(cfg, "band.json"), j.dump(2) + "\n");

    if (r.status == BandStatus::Empty)
        std::printf("band=empty\n");
    else
        std::printf("band=[%.17g,%.17g] status=%s\n", r.v_min, r.v_max, to_string(r.status));
    return 0;
}

int cmd_sample(const std::string& file, const RunConfig& cfg) {
    // Sampling works directly on quaternionic entries, so this is the one
    // subcommand that accepts 4-tuple matrix files.
    const MatrixFile mf = load_matrix(file);
    const SampleCloud cloud = sample_range(mf.entries, cfg.samples, cfg.seed);
    // Cap the CSV at ~20k rows; the radius estimate still uses every sample.
    const std::size_t stride =
        std::max<std::size_t>(1, cloud.reps.size() / 20000);
    atomic_write(out_path(cfg, "cloud.csv"), cloud_csv(cloud, stride));
    const double r = sampled_radius(mf.entries, cfg.samples, cfg.seed);
    std::printf("sampled_radius=%.17g\n", r);
    return 0;
}

int cmd_validate(const std::string& file, const RunConfig& cfg, const std::string& bild_file) {
    const MatrixFile mf = load_matrix(file);
    const CMatrix A = mf.as_complex();
    // --bild validates a stored result instead of recomputing, so a
    // deliberately corrupted file must be caught (checker falsifiability).
    BildResult b;
    if (bild_file.empty()) {
        b = upper_bild(A, make_options(cfg));
    } else {
        try {
            b = bild_from_json(Json::parse(read_file(bild_file)));
        } catch (const Json::exception& e) {
            throw ParseError(std::string("bild file: ") + e.what());
        }
    }
    const ValidationReport rep = validate(A, b, cfg.samples, cfg.seed, cfg.tol);
    const Json j = validation_to_json(rep);
    atomic_write(out_path(cfg, "validation.json"), j.dump(2) + "\n");
    std::printf("%s\n", j.dump(2).c_str());
    return rep.pass ? 0 : 2;
}

int cmd_demos(const RunConfig& cfg, bool samples_given) {
    // Conjectured-triangle refutation: the nonnegative-entry diagonal matrix
    // whose quaternionic range fills a square, not any rotated triangle.
    const std::int64_t n_conj = samples_given ? cfg.samples : 400000;
    const ConjectureReport c = conjecture_demo(n_conj, cfg.seed);

    std::string rpt;
    char line[256];
    std::snprintf(line, sizeof line,
                  "diag(-1-i, -1-i, 1+i, 1+i): sampled %" PRId64 " representatives\n", c.N);
    rpt += line;
    std::snprintf(line, sizeof line,
                  "  representatives far outside every candidate triangle: %" PRId64 "\n",
                  c.far_outside);
    rpt += line;
    std::snprintf(line, sizeof line, "  representatives outside the square: %" PRId64 "\n",
                  c.square_violations);
    rpt += line;
    std::snprintf(line, sizeof line, "  unitary-equivalence witness distance: %.6g\n",
                  c.witness_dist);
    rpt += line;
    std::snprintf(line, sizeof line, "  hull vs. equivalent diagonal hull (Hausdorff): %.6g\n",
                  c.equivalent_hausdorff);
    rpt += line;
    const bool square_wins = c.no_triangle_contains && c.square_violations == 0;
    rpt += square_wins ? "  verdict: range is the square; no triangle contains it\n"
                       : "  verdict: INCONCLUSIVE\n";
    atomic_write(out_path(cfg, "conjecture.txt"), rpt);
    std::fputs(rpt.c_str(), stdout);

    // Radius/norm degeneracy: [[1, h],[0, 1]] has quaternionic radius 3/2
    // for every unit h, but scaling by i only preserves it for complex h.
    const RadiusNormReport rj = radius_norm_demo(Quaternion(0, 0, 1, 0), cfg.samples, cfg.seed);
    const RadiusNormReport ri = radius_norm_demo(Quaternion(0, 1, 0, 0), cfg.samples, cfg.seed);
    std::string rpt2;
    std::snprintf(line, sizeof line, "[[1, h],[0, 1]] radius demo (N=%" PRId64 ")\n",
                  cfg.samples);
    rpt2 += line;
    std::snprintf(line, sizeof line,
                  "  h=j: omega(A)=%.9g sampled=%.9g omega(iA)=%.9g gap=%.9g\n", rj.omega_A,
                  rj.omega_A_sampled, rj.omega_iA, rj.gap);
    rpt2 += line;
    std::snprintf(line, sizeof line,
                  "  h=i: omega(A)=%.9g sampled=%.9g omega(iA)=%.9g gap=%.9g\n", ri.omega_A,
                  ri.omega_A_sampled, ri.omega_iA, ri.gap);
    rpt2 += line;
    const bool radius_ok = rj.gap > 0.01 && std::abs(ri.gap) <= 1e-3;
    rpt2 += radius_ok ? "  verdict: |i*A| drops below omega only for non-complex h\n"
                      : "  verdict: INCONCLUSIVE\n";
    atomic_write(out_path(cfg, "radius_norm.txt"), rpt2);
    std::fputs(rpt2.c_str(), stdout);

    // Pictures: the square's upper bild, and the sampled hulls of A vs i*A
    // for h=j (their different extents are the radius/norm gap made visible).
    CMatrix sq(4);
    sq.at(0, 0) = Complex(-1, -1);
    sq.at(1, 1) = Complex(-1, -1);
    sq.at(2, 2) = Complex(1, 1);
    sq.at(3, 3) = Complex(1, 1);
    BildOptions opts = make_options(cfg);
    const BildResult sq_bild = upper_bild(sq, opts);
    const SweepResult sq_sweep = sweep(sq, cfg.m);
    const ConvexRegion sq_gen_astar = mirror_region(sq_sweep.regions.inner);
    atomic_write(out_path(cfg, "conjecture.svg"),
                 bild_svg(sq_bild, &sq_sweep.regions.inner, &sq_gen_astar));

    QMatrix Aj(2), iAj(2);
    const Quaternion qi(0, 1, 0, 0), qj(0, 0, 1, 0);
    Aj.at(0, 0) = Quaternion(1, 0, 0, 0);
    Aj.at(1, 1) = Quaternion(1, 0, 0, 0);
    Aj.at(0, 1) = qj;
    for (int r = 0; r < 2; ++r)
        for (int col = 0; col < 2; ++col) iAj.at(r, col) = qi * Aj.at(r, col);
    const ConvexRegion hull_a = hull(sample_range(Aj, cfg.samples, cfg.seed).reps);
    const ConvexRegion hull_ia = hull(sample_range(iAj, cfg.samples, cfg.seed).reps);
    SvgPlot plot(hull(std::vector<Complex>{Complex(-rj.omega_A, 0), Complex(rj.omega_A, 0),
                                           Complex(0, rj.omega_A)}));
    plot.add_axes();
    plot.add_region(hull_a, "#1f4e79", "rgba(126,166,212,0.35)");
    plot.add_region(hull_ia, "#c0392b", "none", /*dashed=*/true);
    atomic_write(out_path(cfg, "radius_norm.svg"), plot.str());

    return (square_wins && radius_ok) ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quaternionic numerical range of complex matrices"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string matrix_file;
    std::string bild_file;
    bool want_svg = false;

    auto add_common = [&](CLI::App* sub, bool needs_matrix) {
        if (needs_matrix)
            sub->add_option("matrix", matrix_file, "matrix file (JSON or plain text)")
                ->required();
        sub->add_option("--grid", cfg.m, "support sweep grid size");
        sub->add_option("--starts", cfg.starts, "optimizer multi-starts");
        sub->add_option("--samples", cfg.samples, "oracle sample count");
        sub->add_option("--seed", cfg.seed, "random seed");
        sub->add_option("--tol", cfg.tol, "containment tolerance");
        sub->add_option("--out-dir", cfg.out_dir, "directory for output files");
        return sub;
    };

    CLI::App* c_bild = add_common(app.add_subcommand("bild", "compute the upper bild"), true);
    c_bild->add_flag("--svg", want_svg, "also write an SVG plot");
    CLI::App* c_crange = add_common(
        app.add_subcommand("crange", "complex numerical range sweep and radius"), true);
    CLI::App* c_validate = add_common(
        app.add_subcommand("validate", "check a bild against the sampling oracle"), true);
    c_validate->add_option("--bild", bild_file, "validate this stored bild.json instead");
    CLI::App* c_demos =
        add_common(app.add_subcommand("demos", "run the counterexample demos"), false);
    CLI::App* c_band = add_common(
        app.add_subcommand("band", "real interval of the quaternionic range"), true);
    CLI::App* c_sample = add_common(
        app.add_subcommand("sample", "brute-force sample the quaternionic range"), true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 3;
    }

    try {
        check_config(cfg);
        if (c_bild->parsed()) return cmd_bild(matrix_file, cfg, want_svg);
        if (c_crange->parsed()) return cmd_crange(matrix_file, cfg);
        if (c_validate->parsed())
            return cmd_validate(matrix_file, cfg, bild_file);
        if (c_demos->parsed()) return cmd_demos(cfg, c_demos->count("--samples") > 0);
        if (c_band->parsed()) return cmd_band(matrix_file, cfg);
        if (c_sample->parsed()) return cmd_sample(matrix_file, cfg);
    } catch (const NonConvergence& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 4;
    } catch (const RetriesExhausted& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 4;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return 0;
}
