#include "ntrack/normal_coords.hpp"

#include <fstream>
#include <sstream>

#include "ntrack/errors.hpp"

namespace ntrack {

ArcTypeCounts decompose_triangle(const BigInt& x0, const BigInt& x1, const BigInt& x2) {
    const std::array<const BigInt*, 3> x{&x0, &x1, &x2};
    ArcTypeCounts r;
    for (int i = 0; i < 3; ++i) {
        const BigInt& xj = *x[(i + 1) % 3];
        const BigInt& xk = *x[(i + 2) % 3];
        if (*x[i] > xj + xk) {
            r.tag = static_cast<ArcCase>(i);
            r.corner[i] = *x[i] - xj - xk;
            // arcs (i, i+1) cut corner i+2; arcs (i, i+2) cut corner i+1
            r.cut[(i + 2) % 3] = xj;
            r.cut[(i + 1) % 3] = xk;
            return r;
        }
    }
    BigInt sum = x0 + x1 + x2;
    if (mpz_odd_p(sum.get_mpz_t()))
        throw InvalidTriangle(-1, "odd side sum " + to_string(sum) + " under the triangle inequality");
    r.tag = ArcCase::SideToSide;
    for (int k = 0; k < 3; ++k) r.cut[k] = (*x[(k + 1) % 3] + *x[(k + 2) % 3] - *x[k]) / 2;
    return r;
}

NormalCoordinates clamped(const NormalCoordinates& c) {
    NormalCoordinates out(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) out[i] = c[i] > 0 ? c[i] : BigInt(0);
    return out;
}

std::array<BigInt, 3> triangle_sides(const Triangulation& t, const NormalCoordinates& c, int tri) {
    std::array<BigInt, 3> s;
    for (int k = 0; k < 3; ++k) {
        const BigInt& v = c.at(t.triangle(tri).side[k]);
        s[k] = v > 0 ? v : BigInt(0);
    }
    return s;
}

CoordCheck check_coords(const Triangulation& t, const NormalCoordinates& c) {
    CoordCheck r;
    if (static_cast<int>(c.size()) != t.num_edges()) {
        r.ok = false;
        r.reason = "coordinate vector has length " + std::to_string(c.size()) + ", expected " +
                   std::to_string(t.num_edges());
        return r;
    }
    for (int e = 0; e < t.num_edges(); ++e) {
        if (t.edge(e).on_boundary && c[e] > 0) {
            r.ok = false;
            r.edge = e;
            r.reason = "boundary edge " + std::to_string(e + 1) + " has positive coordinate";
            return r;
        }
    }
    for (int i = 0; i < t.num_triangles(); ++i) {
        auto s = triangle_sides(t, c, i);
        try {
            decompose_triangle(s[0], s[1], s[2]);
        } catch (const InvalidTriangle& ex) {
            r.ok = false;
            r.triangle = i;
            r.reason = "triangle " + std::to_string(i + 1) + ": " + ex.what();
            return r;
        }
    }
    return r;
}

void validate_coords(const Triangulation& t, const NormalCoordinates& c) {
    CoordCheck r = check_coords(t, c);
    if (r.ok) return;
    if (static_cast<int>(c.size()) != t.num_edges()) throw ParseError(r.reason);
    throw InvalidTriangle(r.triangle, r.reason);
}

double curve_complexity(const NormalCoordinates& c) {
    double s = 0.0;
    for (const auto& x : c) s += log2p1(x);
    return s;
}

NormalCoordinates edge_curve(const Triangulation& t, int edge) {
    if (edge < 0 || edge >= t.num_edges()) throw Error("edge index out of range");
    NormalCoordinates c(t.num_edges(), BigInt(0));
    c[edge] = -1;
    return c;
}

BigInt intersection_bound(const Triangulation& t, const NormalCoordinates& c1, const NormalCoordinates& c2) {
    auto mu = mu_table(t);
    BigInt total = 0;
    for (int i = 0; i < t.num_edges(); ++i) {
        if (sgn(c1[i]) == 0) continue;
        BigInt row = 0;
        for (int j = 0; j < t.num_edges(); ++j)
            if (mu[i][j] != 0) row += mu[i][j] * big_abs(c2[j]);
        total += big_abs(c1[i]) * row;
    }
    return total;
}

NormalCoordinates parse_curve(const std::string& text) {
    NormalCoordinates c;
    std::istringstream in(text);
    std::string line;
    bool seen = false;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::vector<std::string> tok;
        for (std::string s; ls >> s;) tok.push_back(s);
        if (tok.empty()) continue;
        if (seen) throw ParseError("curve file must contain a single line of coordinates");
        seen = true;
        for (const auto& s : tok) c.push_back(parse_bigint(s));
    }
    if (!seen) throw ParseError("curve file has no coordinates");
    return c;
}

NormalCoordinates load_curve_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open curve file '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_curve(ss.str());
}

std::string format_curve(const NormalCoordinates& c) {
    std::string s;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) s += ' ';
        s += to_string(c[i]);
    }
    return s;
}

}  // namespace ntrack
