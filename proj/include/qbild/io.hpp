#pragma once

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "bild_engine.hpp"
#include "complex_range.hpp"
#include "errors.hpp"
#include "oracle.hpp"

namespace qbild {

using Json = nlohmann::json;

// Parsed matrix input. Complex entries embed as quaternions with y = z = 0;
// the arity of the file (2 or 4 numbers per entry) is recorded so callers
// that require complex input can reject quaternion files explicitly.
struct MatrixFile {
    int n = 0;
    bool quaternionic = false;
    QMatrix entries;
    std::string name;

    CMatrix as_complex(double tol = 1e-12) const {
        return CMatrix::from_quaternion(entries, tol);
    }
};

namespace io_detail {

// 1-based line/column of a byte offset, for parse diagnostics.
inline std::pair<int, int> line_col(const std::string& text, std::size_t byte) {
    int line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

// One entry of the plain-text form: one or two signed terms, a trailing
// 'i' marking the imaginary one ("1.5-2i", "-i", "3", "2e-3+i").
inline Complex parse_complex_token(const std::string& tok, int line, int col) {
    double re = 0.0, im = 0.0;
    bool seen_re = false, seen_im = false;
    std::size_t p = 0;
    while (p < tok.size()) {
        const std::size_t start = p;
        if (tok[p] == '+' || tok[p] == '-') ++p;
        while (p < tok.size()) {
            const char c = tok[p];
            if ((c == '+' || c == '-') && tok[p - 1] != 'e' && tok[p - 1] != 'E') break;
            ++p;
        }
        std::string term = tok.substr(start, p - start);
        const bool imag = !term.empty() && (term.back() == 'i' || term.back() == 'I');
        if (imag) term.pop_back();
        double mag = 1.0;
        if (term == "-") {
            mag = -1.0;
        } else if (!term.empty() && term != "+") {
            char* end = nullptr;
            mag = std::strtod(term.c_str(), &end);
            if (end == nullptr || *end != '\0')
                throw ParseError("matrix text: bad entry '" + tok + "'", line, col);
        }
        if (!imag && (term.empty() || term == "+" || term == "-"))
            throw ParseError("matrix text: bad entry '" + tok + "'", line, col);
        if ((imag && seen_im) || (!imag && seen_re))
            throw ParseError("matrix text: bad entry '" + tok + "'", line, col);
        if (imag) {
            im = mag;
            seen_im = true;
        } else {
            re = mag;
            seen_re = true;
        }
    }
    if (!seen_re && !seen_im)
        throw ParseError("matrix text: bad entry '" + tok + "'", line, col);
    return {re, im};
}

inline MatrixFile parse_matrix_json(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        const auto [line, col] = line_col(text, e.byte > 0 ? e.byte - 1 : 0);
        throw ParseError("matrix file: malformed JSON", line, col);
    }
    if (!j.is_object()) throw ParseError("matrix file: top level must be an object");
    if (!j.contains("n") || !j["n"].is_number_integer())
        throw ParseError("matrix file: missing integer field 'n'");
    const int n = j["n"].get<int>();
    if (n < 1) throw ParseError("matrix file: n must be >= 1");
    if (!j.contains("entries") || !j["entries"].is_array() ||
        j["entries"].size() != static_cast<std::size_t>(n))
        throw ParseError("matrix file: 'entries' must be an n x n array");

    MatrixFile mf;
    mf.n = n;
    mf.entries = QMatrix(n);
    std::size_t arity = 0;  // fixed by the first entry; must stay uniform
    for (int r = 0; r < n; ++r) {
        const Json& row = j["entries"][static_cast<std::size_t>(r)];
        if (!row.is_array() || row.size() != static_cast<std::size_t>(n))
            throw ParseError("matrix file: row " + std::to_string(r) + " is not length n");
        for (int c = 0; c < n; ++c) {
            const Json& cell = row[static_cast<std::size_t>(c)];
            if (!cell.is_array() || (cell.size() != 2 && cell.size() != 4))
                throw ParseError("matrix file: entry (" + std::to_string(r) + "," +
                                 std::to_string(c) + ") must be [re,im] or [w,x,y,z]");
            for (const Json& v : cell)
                if (!v.is_number())
                    throw ParseError("matrix file: entry (" + std::to_string(r) + "," +
                                     std::to_string(c) + ") has a non-numeric component");
            if (arity == 0) arity = cell.size();
            if (cell.size() != arity)
                throw ParseError("matrix file: entry arity must be uniform (all 2 or all 4)");
            mf.entries.at(r, c) =
                arity == 2
                    ? Quaternion(cell[0].get<double>(), cell[1].get<double>(), 0.0, 0.0)
                    : Quaternion(cell[0].get<double>(), cell[1].get<double>(),
                                 cell[2].get<double>(), cell[3].get<double>());
        }
    }
    mf.quaternionic = arity == 4;
    if (j.contains("name")) {
        if (!j["name"].is_string()) throw ParseError("matrix file: 'name' must be a string");
        mf.name = j["name"].get<std::string>();
    }
    return mf;
}

inline MatrixFile parse_matrix_plain(const std::string& text) {
    std::vector<std::vector<Complex>> rows;
    std::istringstream in(text);
    std::string linebuf;
    int lineno = 0;
    while (std::getline(in, linebuf)) {
        ++lineno;
        std::vector<Complex> row;
        std::size_t p = 0;
        while (p < linebuf.size()) {
            while (p < linebuf.size() && std::isspace(static_cast<unsigned char>(linebuf[p])))
                ++p;
            const std::size_t start = p;
            while (p < linebuf.size() && !std::isspace(static_cast<unsigned char>(linebuf[p])))
                ++p;
            if (p > start)
                row.push_back(parse_complex_token(linebuf.substr(start, p - start), lineno,
                                                  static_cast<int>(start) + 1));
        }
        if (!row.empty()) rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError("matrix text: no entries", 1, 1);
    const int n = static_cast<int>(rows.size());
    MatrixFile mf;
    mf.n = n;
    mf.entries = QMatrix(n);
    for (int r = 0; r < n; ++r) {
        if (rows[static_cast<std::size_t>(r)].size() != static_cast<std::size_t>(n))
            throw ParseError("matrix text: row has " +
                                 std::to_string(rows[static_cast<std::size_t>(r)].size()) +
                                 " entries, expected " + std::to_string(n),
                             r + 1, 1);
        for (int c = 0; c < n; ++c) {
            const Complex z = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
            mf.entries.at(r, c) = Quaternion(z.real(), z.imag(), 0.0, 0.0);
        }
    }
    return mf;
}

}  // namespace io_detail

// Parse matrix input, dispatching on the first non-whitespace byte: '{'
// selects the JSON form, anything else the whitespace-separated "a+bi" grid.
inline MatrixFile parse_matrix_source(const std::string& text) {
    const std::size_t first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) throw ParseError("matrix file: empty input", 1, 1);
    if (text[first] == '{') return io_detail::parse_matrix_json(text);
    return io_detail::parse_matrix_plain(text);
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("io: cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline MatrixFile load_matrix(const std::string& path) {
    return parse_matrix_source(read_file(path));
}

// Write-then-rename so readers never observe a half-written artifact.
inline void atomic_write(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("io: cannot open '" + tmp + "' for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) {
            std::remove(tmp.c_str());
            throw Error("io: short write to '" + tmp + "'");
        }
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw Error("io: cannot move '" + tmp + "' into place at '" + path + "'");
    }
}

// ---------- JSON serialization (schema 1, no timestamps: byte-identical ----
// ---------- reruns are part of the reproducibility contract) ---------------

inline Json region_to_json(const ConvexRegion& r) {
    Json verts = Json::array();
    for (const Complex& z : r.v) verts.push_back(Json::array({z.real(), z.imag()}));
    return Json{{"kind", to_string(r.kind)}, {"vertices", std::move(verts)}};
}

inline ConvexRegion region_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("kind") || !j.contains("vertices"))
        throw ParseError("region: expected object with 'kind' and 'vertices'");
    const std::string kind = j["kind"].get<std::string>();
    ConvexRegion r;
    if (kind == "empty")
        r.kind = RegionKind::Empty;
    else if (kind == "point")
        r.kind = RegionKind::Point;
    else if (kind == "segment")
        r.kind = RegionKind::Segment;
    else if (kind == "polygon")
        r.kind = RegionKind::Polygon;
    else
        throw ParseError("region: unknown kind '" + kind + "'");
    for (const Json& v : j["vertices"]) {
        if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
            throw ParseError("region: vertices must be [re, im] pairs");
        r.v.push_back(Complex(v[0].get<double>(), v[1].get<double>()));
    }
    const std::size_t want = r.kind == RegionKind::Empty    ? 0
                             : r.kind == RegionKind::Point  ? 1
                             : r.kind == RegionKind::Segment ? 2
                                                             : 3;
    if (r.kind == RegionKind::Polygon ? r.v.size() < want : r.v.size() != want)
        throw ParseError("region: vertex count does not match kind '" + kind + "'");
    return r;
}

inline Json bild_to_json(const BildResult& b) {
    Json band{{"status", to_string(b.v_band.status)},
              {"starts_used", b.v_band.starts_used}};
    if (b.v_band.status != BandStatus::Empty) {
        band["v_min"] = b.v_band.v_min;
        band["v_max"] = b.v_band.v_max;
    }
    if (std::isfinite(b.v_band.kkt_residual)) band["kkt_residual"] = b.v_band.kkt_residual;
    return Json{{"schema", 1},
                {"path", to_string(b.path)},
                {"definiteness", to_string(b.definiteness)},
                {"m", b.m},
                {"unverified", b.unverified},
                {"band", std::move(band)},
                {"inner", region_to_json(b.upper.inner)},
                {"outer", region_to_json(b.upper.outer)},
                {"diagnostics", Json{{"enclosure_gap", b.enclosure_gap()}}}};
}

inline BildResult bild_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("schema") || j["schema"].get<int>() != 1)
        throw ParseError("bild: expected schema 1");
    BildResult b;
    const std::string path = j.at("path").get<std::string>();
    bool found = false;
    for (BildPath p : {BildPath::General, BildPath::Definite, BildPath::ConjSymmetric,
                       BildPath::TwoByTwoIndefinite, BildPath::TwoByTwoPosDef,
                       BildPath::TwoByTwoPosSemi, BildPath::Hermitian, BildPath::Scalar})
        if (path == to_string(p)) {
            b.path = p;
            found = true;
        }
    if (!found) throw ParseError("bild: unknown path '" + path + "'");
    const std::string def = j.at("definiteness").get<std::string>();
    found = false;
    for (Definiteness d :
         {Definiteness::PositiveDefinite, Definiteness::PositiveSemiDefinite,
          Definiteness::NegativeDefinite, Definiteness::NegativeSemiDefinite,
          Definiteness::Indefinite, Definiteness::Zero})
        if (def == to_string(d)) {
            b.definiteness = d;
            found = true;
        }
    if (!found) throw ParseError("bild: unknown definiteness '" + def + "'");
    b.m = j.at("m").get<int>();
    b.unverified = j.at("unverified").get<bool>();
    const Json& band = j.at("band");
    const std::string status = band.at("status").get<std::string>();
    found = false;
    for (BandStatus s : {BandStatus::Solved, BandStatus::Empty, BandStatus::MaxIterations})
        if (status == to_string(s)) {
            b.v_band.status = s;
            found = true;
        }
    if (!found) throw ParseError("bild: unknown band status '" + status + "'");
    b.v_band.starts_used = band.at("starts_used").get<int>();
    if (band.contains("v_min")) b.v_band.v_min = band["v_min"].get<double>();
    if (band.contains("v_max")) b.v_band.v_max = band["v_max"].get<double>();
    if (band.contains("kkt_residual")) b.v_band.kkt_residual = band["kkt_residual"].get<double>();
    b.upper.inner = region_from_json(j.at("inner"));
    b.upper.outer = region_from_json(j.at("outer"));
    return b;
}

inline Json validation_to_json(const ValidationReport& r) {
    return Json{{"schema", 1},          {"samples", r.samples},
                {"seed", r.seed},       {"tol", r.tol},
                {"violations", r.violations}, {"max_outside", r.max_outside},
                {"coverage", r.coverage},     {"pass", r.pass}};
}

// ---------- CSV ----------

inline std::string region_csv(const ConvexRegion& r) {
    std::string out = "re,im\n";
    char buf[80];
    for (const Complex& z : r.v) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", z.real(), z.imag());
        out += buf;
    }
    return out;
}

inline std::string sweep_csv(const SweepResult& sw) {
    std::string out = "theta,lambda_max,re,im\n";
    char buf[160];
    for (const SupportSample& s : sw.support_values) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", s.theta, s.lambda_max,
                      s.boundary.real(), s.boundary.imag());
        out += buf;
    }
    return out;
}

inline std::string cloud_csv(const SampleCloud& cl, std::size_t stride = 1) {
    std::string out = "re,im\n";
    char buf[80];
    if (stride == 0) stride = 1;
    for (std::size_t i = 0; i < cl.reps.size(); i += stride) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", cl.reps[i].real(), cl.reps[i].imag());
        out += buf;
    }
    return out;
}

// ---------- SVG ----------

// Fixed 800x800 viewport scaled to a framing region plus a 10% margin; the
// plot is assembled from primitive layers so the caller chooses what to show.
class SvgPlot {
  public:
    explicit SvgPlot(const ConvexRegion& frame) {
        double lo_x = -1.0, hi_x = 1.0, lo_y = -1.0, hi_y = 1.0;
        if (!frame.v.empty()) {
            lo_x = hi_x = frame.v[0].real();
            lo_y = hi_y = frame.v[0].imag();
            for (const Complex& z : frame.v) {
                lo_x = std::min(lo_x, z.real());
                hi_x = std::max(hi_x, z.real());
                lo_y = std::min(lo_y, z.imag());
                hi_y = std::max(hi_y, z.imag());
            }
        }
        cx_ = 0.5 * (lo_x + hi_x);
        cy_ = 0.5 * (lo_y + hi_y);
        double half = 0.5 * std::max(hi_x - lo_x, hi_y - lo_y);
        half = std::max(half, 1e-3 * (1.0 + std::abs(cx_) + std::abs(cy_)));
        scale_ = (kSize / 2.0) / (half * 1.1);
    }

    void add_axes() {
        char buf[256];
        std::snprintf(buf, sizeof buf,
                      "<line x1=\"0\" y1=\"%.2f\" x2=\"%d\" y2=\"%.2f\" stroke=\"#b8b8b8\" "
                      "stroke-width=\"1\"/>\n",
                      py(Complex(0, 0)), kSize, py(Complex(0, 0)));
        body_ += buf;
        std::snprintf(buf, sizeof buf,
                      "<line x1=\"%.2f\" y1=\"0\" x2=\"%.2f\" y2=\"%d\" stroke=\"#b8b8b8\" "
                      "stroke-width=\"1\"/>\n",
                      px(Complex(0, 0)), px(Complex(0, 0)), kSize);
        body_ += buf;
    }

    void add_region(const ConvexRegion& r, const char* stroke, const char* fill,
                    bool dashed = false) {
        const char* dash = dashed ? " stroke-dasharray=\"6 4\"" : "";
        char buf[160];
        switch (r.kind) {
            case RegionKind::Empty:
                return;
            case RegionKind::Point:
                std::snprintf(buf, sizeof buf,
                              "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"4\" fill=\"%s\"/>\n",
                              px(r.v[0]), py(r.v[0]), stroke);
                body_ += buf;
                return;
            case RegionKind::Segment:
                std::snprintf(buf, sizeof buf,
                              "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" "
                              "stroke=\"%s\" stroke-width=\"2.5\"%s/>\n",
                              px(r.v[0]), py(r.v[0]), px(r.v[1]), py(r.v[1]), stroke, dash);
                body_ += buf;
                return;
            case RegionKind::Polygon: {
                body_ += "<polygon points=\"";
                for (const Complex& z : r.v) {
                    std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px(z), py(z));
                    body_ += buf;
                }
                std::snprintf(buf, sizeof buf,
                              "\" fill=\"%s\" stroke=\"%s\" stroke-width=\"2\"%s/>\n", fill,
                              stroke, dash);
                body_ += buf;
                return;
            }
        }
    }

    void add_tick(double x, const char* stroke) {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"%s\" "
                      "stroke-width=\"3\"/>\n",
                      px(Complex(x, 0)), py(Complex(x, 0)) - 8.0, px(Complex(x, 0)),
                      py(Complex(x, 0)) + 8.0, stroke);
        body_ += buf;
    }

    std::string str() const {
        std::string out;
        char buf[200];
        std::snprintf(buf, sizeof buf,
                      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" height=\"%d\" "
                      "viewBox=\"0 0 %d %d\">\n",
                      kSize, kSize, kSize, kSize);
        out += buf;
        std::snprintf(buf, sizeof buf,
                      "<rect width=\"%d\" height=\"%d\" fill=\"#ffffff\"/>\n", kSize, kSize);
        out += buf;
        out += body_;
        out += "</svg>\n";
        return out;
    }

  private:
    static constexpr int kSize = 800;
    double cx_ = 0.0, cy_ = 0.0, scale_ = 1.0;
    std::string body_;

    double px(Complex z) const { return kSize / 2.0 + (z.real() - cx_) * scale_; }
    double py(Complex z) const { return kSize / 2.0 - (z.imag() - cy_) * scale_; }
};

// Standard upper-bild plot: outer outline, inner filled, optional dashed
// complex-range generators, band ticks on the real axis.
inline std::string bild_svg(const BildResult& b, const ConvexRegion* gen_a = nullptr,
                            const ConvexRegion* gen_astar = nullptr) {
    SvgPlot plot(b.upper.outer);
    plot.add_axes();
    plot.add_region(b.upper.outer, "#1f4e79", "none");
    plot.add_region(b.upper.inner, "#2b6cb0", "rgba(126,166,212,0.45)");
    if (gen_a != nullptr) plot.add_region(*gen_a, "#808080", "none", true);
    if (gen_astar != nullptr) plot.add_region(*gen_astar, "#a0a0a0", "none", true);
    if (b.v_band.status == BandStatus::Solved) {
        plot.add_tick(b.v_band.v_min, "#c0392b");
        plot.add_tick(b.v_band.v_max, "#c0392b");
    }
    return plot.str();
}

}  // namespace qbild
