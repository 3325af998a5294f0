#include "ntrack/surface.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

#include "ntrack/errors.hpp"

namespace ntrack {

Triangulation::Triangulation(std::vector<Puncture> punctures, std::vector<Edge> edges,
                             std::vector<Triangle> triangles, int euler_characteristic)
    : punctures_(std::move(punctures)),
      edges_(std::move(edges)),
      triangles_(std::move(triangles)),
      chi_(euler_characteristic) {
    index();
}

void Triangulation::index() {
    uses_.assign(edges_.size(), {});
    for (const auto& t : triangles_) {
        for (int k = 0; k < 3; ++k) {
            int e = t.side[k];
            if (e >= 0 && e < num_edges()) uses_[e].push_back({t.id, k});
        }
    }
    // Orientability: 2-colour triangles so that glued sides run in opposite directions.
    orientable_ = true;
    std::vector<int> flip(triangles_.size(), -1);
    for (std::size_t start = 0; start < triangles_.size(); ++start) {
        if (flip[start] >= 0) continue;
        flip[start] = 0;
        std::queue<int> q;
        q.push(static_cast<int>(start));
        while (!q.empty()) {
            int t = q.front();
            q.pop();
            for (int k = 0; k < 3; ++k) {
                SideRef o = across(t, k);
                if (!o.valid()) continue;
                bool r1 = triangles_[t].reversed[k] != (flip[t] == 1);
                int want = (r1 == triangles_[o.tri].reversed[o.side]) ? 1 : 0;
                if (flip[o.tri] < 0) {
                    flip[o.tri] = want;
                    q.push(o.tri);
                } else if (flip[o.tri] != want) {
                    orientable_ = false;
                }
            }
        }
    }
}

int Triangulation::num_boundary_punctures() const {
    return static_cast<int>(std::count_if(punctures_.begin(), punctures_.end(), [](const Puncture& p) {
        return p.kind == PunctureKind::Boundary;
    }));
}

int Triangulation::num_boundary_components() const {
    std::set<int> comps;
    for (const auto& p : punctures_)
        if (p.kind == PunctureKind::Boundary) comps.insert(p.boundary_component);
    return static_cast<int>(comps.size());
}

SideRef Triangulation::across(int tri, int side) const {
    const auto& u = uses_.at(triangles_.at(tri).side[side]);
    if (u.size() != 2) return {};
    if (u[0].tri == tri && u[0].side == side) return u[1];
    return u[0];
}

int Triangulation::side_start(int tri, int side) const {
    return triangles_.at(tri).corner[(side + 1) % 3];
}

int Triangulation::side_end(int tri, int side) const {
    return triangles_.at(tri).corner[(side + 2) % 3];
}

std::optional<CornerRef> Triangulation::cw_next(CornerRef c) const {
    SideRef o = across(c.tri, (c.corner + 2) % 3);
    if (!o.valid()) return std::nullopt;
    return CornerRef{o.tri, (o.side + 2) % 3};
}

std::optional<CornerRef> Triangulation::ccw_next(CornerRef c) const {
    SideRef o = across(c.tri, (c.corner + 1) % 3);
    if (!o.valid()) return std::nullopt;
    return CornerRef{o.tri, (o.side + 1) % 3};
}

std::vector<CornerRef> Triangulation::corners_cw(int puncture) const {
    std::vector<CornerRef> all;
    for (const auto& t : triangles_)
        for (int c = 0; c < 3; ++c)
            if (t.corner[c] == puncture) all.push_back({t.id, c});
    if (all.empty()) return all;
    CornerRef start = all.front();
    if (punctures_.at(puncture).kind == PunctureKind::Boundary) {
        for (const auto& c : all)
            if (!ccw_next(c)) {
                start = c;
                break;
            }
    }
    std::vector<CornerRef> out{start};
    std::optional<CornerRef> cur = cw_next(start);
    while (cur && !(*cur == start) && out.size() <= all.size()) {
        out.push_back(*cur);
        cur = cw_next(*cur);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Standard fixtures

namespace {

struct Builder {
    std::vector<Puncture> punctures;
    std::vector<Edge> edges;
    std::vector<Triangle> triangles;
    std::vector<int> use_count;

    int add_edge(int from, int to) {
        edges.push_back({static_cast<int>(edges.size()), from, to, false});
        use_count.push_back(0);
        return static_cast<int>(edges.size()) - 1;
    }

    // Sides are given by edge id; the direction tag is derived from the
    // corner punctures, except for loops where the first use is taken as
    // agreeing with the edge and the second as opposing it.
    void add_triangle(std::array<int, 3> corner, std::array<int, 3> side) {
        Triangle t;
        t.id = static_cast<int>(triangles.size());
        t.corner = corner;
        t.side = side;
        for (int k = 0; k < 3; ++k) {
            const Edge& e = edges.at(side[k]);
            int s = corner[(k + 1) % 3], f = corner[(k + 2) % 3];
            if (e.from == e.to) {
                t.reversed[k] = use_count[side[k]] > 0;
            } else if (e.from == s && e.to == f) {
                t.reversed[k] = false;
            } else if (e.from == f && e.to == s) {
                t.reversed[k] = true;
            } else {
                throw Error("fixture construction: side does not match its edge");
            }
            ++use_count[side[k]];
        }
        triangles.push_back(t);
    }

    Triangulation finish(int chi) {
        for (std::size_t e = 0; e < edges.size(); ++e) edges[e].on_boundary = use_count[e] == 1;
        return Triangulation(punctures, edges, triangles, chi);
    }
};

}  // namespace

void check_nonsporadic(int chi, int boundary_components, bool orientable, int n) {
    auto reject = [&](const char* name, int need) {
        if (n < need)
            throw SporadicSurface(std::string(name) + " with " + std::to_string(n) +
                                  " punctures is sporadic (need at least " + std::to_string(need) + ")");
    };
    const int b = boundary_components;
    if (chi == 2 && b == 0) reject("sphere", 4);
    if (chi == 1 && b == 1 && orientable) reject("disk", 3);
    if (chi == 1 && b == 0 && !orientable) reject("projective plane", 3);
    if (chi == 0 && b == 2 && orientable) reject("annulus", 3);
    if (chi == 0 && b == 1 && !orientable) reject("Moebius band", 3);
    if (chi == 0 && b == 0) reject(orientable ? "torus" : "Klein bottle", 2);
}

Triangulation build_sphere(int n) {
    check_nonsporadic(2, 0, true, n);
    Builder b;
    for (int i = 0; i < n; ++i) b.punctures.push_back({i, PunctureKind::Internal, -1});
    // Double polygon on 0..n-1: top fan from 0, bottom fan from 1.
    std::vector<std::array<int, 3>> tris;
    for (int i = 1; i + 1 < n; ++i) tris.push_back({0, i, i + 1});
    std::vector<int> bottom{0};
    for (int i = n - 1; i >= 2; --i) bottom.push_back(i);
    for (std::size_t j = 0; j + 1 < bottom.size(); ++j) tris.push_back({1, bottom[j], bottom[j + 1]});
    std::set<std::pair<int, int>> pairs;
    for (auto& t : tris)
        for (int k = 0; k < 3; ++k) {
            int u = t[(k + 1) % 3], v = t[(k + 2) % 3];
            pairs.insert({std::min(u, v), std::max(u, v)});
        }
    std::map<std::pair<int, int>, int> id;
    for (auto& p : pairs) id[p] = b.add_edge(p.first, p.second);
    for (auto& t : tris) {
        std::array<int, 3> side{};
        for (int k = 0; k < 3; ++k) {
            int u = t[(k + 1) % 3], v = t[(k + 2) % 3];
            side[k] = id.at({std::min(u, v), std::max(u, v)});
        }
        b.add_triangle(t, side);
    }
    return b.finish(2);
}

Triangulation build_disk(int m, int k) {
    if (m < 1) throw Error("a disk needs at least one boundary puncture");
    if (k < 0) throw Error("negative puncture count");
    check_nonsporadic(1, 1, true, m + k);
    Builder b;
    for (int i = 0; i < m; ++i) b.punctures.push_back({i, PunctureKind::Boundary, 0});
    for (int j = 0; j < k; ++j) b.punctures.push_back({m + j, PunctureKind::Internal, -1});
    auto B = [&](int i) { return i - 1; };      // boundary puncture B_i, 1-based i
    auto Q = [&](int j) { return m + j - 1; };  // internal puncture Q_j, 1-based j

    if (k == 0) {
        // Polygon with m >= 3 boundary corners, fan from B_1.
        std::vector<int> bd(m + 1), diag(m + 1, -1);
        for (int i = 1; i <= m; ++i) bd[i] = b.add_edge(B(i), B(i % m + 1));
        for (int i = 3; i < m; ++i) diag[i] = b.add_edge(B(1), B(i));
        for (int i = 2; i < m; ++i) {
            int lower = (i == 2) ? bd[1] : diag[i];
            int upper = (i + 1 == m) ? bd[m] : diag[i + 1];
            b.add_triangle({B(1), B(i), B(i + 1)}, {bd[i], upper, lower});
        }
        return b.finish(1);
    }

    std::vector<int> bd(m + 1), a(k + 1), s(k + 1, -1), t(k + 1, -1);
    for (int i = 1; i <= m; ++i) bd[i] = b.add_edge(B(i), B(i % m + 1));
    for (int j = 1; j <= k; ++j) a[j] = b.add_edge(B(1), Q(j));
    for (int j = 1; j < k; ++j) s[j] = b.add_edge(Q(j), Q(j + 1));
    for (int i = 3; i <= k; ++i) t[i] = b.add_edge(Q(1), Q(i));

    // Outer polygon corners in counterclockwise order, fanned from Q_1.
    std::vector<int> v;
    std::vector<int> poly_edge;  // poly_edge[j] joins v[j] -> v[j+1]
    if (k == 1) {
        v = {B(1), Q(1), B(1)};
        poly_edge = {a[1], a[1]};
    } else {
        int u = (k == 2) ? s[1] : t[k];
        v = {B(1), Q(1), Q(k), B(1)};
        poly_edge = {a[1], u, a[k]};
    }
    for (int i = 2; i <= m; ++i) v.push_back(B(i));
    for (int i = 1; i <= m; ++i) poly_edge.push_back(bd[i]);
    const int first = 2;  // v[1] = Q_1 is adjacent to v[0] and v[2]
    const int last = static_cast<int>(v.size());  // v[last] wraps to v[0]
    std::vector<int> od(v.size() + 1, -1);
    for (int j = first + 1; j < last; ++j) od[j] = b.add_edge(Q(1), v[j]);

    for (int j = 1; j < k; ++j) b.add_triangle({B(1), Q(j + 1), Q(j)}, {s[j], a[j], a[j + 1]});
    for (int i = 2; i + 1 <= k; ++i)
        b.add_triangle({Q(1), Q(i), Q(i + 1)}, {s[i], t[i + 1], i == 2 ? s[1] : t[i]});
    for (int j = first; j < last; ++j) {
        int nxt = (j + 1 == last) ? 0 : j + 1;
        int side0 = poly_edge[j];
        int side1 = (nxt == 0) ? a[1] : od[nxt];
        int side2 = (j == first) ? poly_edge[1] : od[j];
        b.add_triangle({Q(1), v[j], v[nxt]}, {side0, side1, side2});
    }
    return b.finish(1);
}

Triangulation build_torus(int n) {
    check_nonsporadic(0, 0, true, n);
    Builder b;
    for (int i = 0; i < n; ++i) b.punctures.push_back({i, PunctureKind::Internal, -1});
    std::vector<int> h(n), vert(n), d(n);
    for (int i = 0; i < n; ++i) h[i] = b.add_edge(i, (i + 1) % n);
    for (int i = 0; i < n; ++i) vert[i] = b.add_edge(i, i);
    for (int i = 0; i < n; ++i) d[i] = b.add_edge(i, (i + 1) % n);
    // Loop edges take their direction tag from use order, so the two uses
    // of each vertical loop are emitted upward first, downward second.
    std::vector<Triangle> lower(n), upper(n);
    for (int i = 0; i < n; ++i) {
        int j = (i + 1) % n;
        Triangle lo;
        lo.corner = {i, j, j};
        lo.side = {vert[j], d[i], h[i]};
        lo.reversed = {false, true, false};
        Triangle up;
        up.corner = {i, j, i};
        up.side = {h[i], vert[i], d[i]};
        up.reversed = {true, true, false};
        lower[i] = lo;
        upper[i] = up;
    }
    for (int i = 0; i < n; ++i) {
        for (const Triangle* t : {&lower[i], &upper[i]}) {
            Triangle c = *t;
            c.id = static_cast<int>(b.triangles.size());
            for (int k = 0; k < 3; ++k) ++b.use_count[c.side[k]];
            b.triangles.push_back(c);
        }
    }
    return b.finish(0);
}

Triangulation build_standard(SurfaceFamily family, int a, int bparam) {
    switch (family) {
        case SurfaceFamily::Sphere: return build_sphere(a);
        case SurfaceFamily::Disk: return build_disk(a, bparam);
        case SurfaceFamily::Torus: return build_torus(a);
    }
    throw Error("unknown surface family");
}

// ---------------------------------------------------------------------------
// Validation

std::vector<std::string> validate_triangulation(const Triangulation& t) {
    std::vector<std::string> v;
    const int n = t.num_punctures(), N = t.num_edges(), F = t.num_triangles();
    const int m = t.num_boundary_punctures(), chi = t.euler_characteristic();
    auto str = [](int x) { return std::to_string(x + 1); };

    for (int i = 0; i < n; ++i) {
        const auto& p = t.puncture(i);
        if (p.id != i) v.push_back("puncture " + str(i) + " has mismatched id");
        if (p.kind == PunctureKind::Boundary && p.boundary_component < 0)
            v.push_back("boundary puncture " + str(i) + " has no boundary component");
    }
    bool edges_ok = true;
    for (int e = 0; e < N; ++e) {
        const auto& ed = t.edge(e);
        if (ed.id != e) v.push_back("edge " + str(e) + " has mismatched id");
        if (ed.from < 0 || ed.from >= n || ed.to < 0 || ed.to >= n) {
            v.push_back("edge " + str(e) + " has an endpoint that is not a puncture");
            edges_ok = false;
        }
    }
    bool tris_ok = true;
    for (int i = 0; i < F; ++i) {
        const auto& tr = t.triangle(i);
        if (tr.id != i) v.push_back("triangle " + str(i) + " has mismatched id");
        for (int k = 0; k < 3; ++k) {
            if (tr.side[k] < 0 || tr.side[k] >= N || tr.corner[k] < 0 || tr.corner[k] >= n) {
                v.push_back("triangle " + str(i) + " references an unknown edge or puncture");
                tris_ok = false;
                break;
            }
        }
    }
    if (!edges_ok || !tris_ok) return v;

    for (int i = 0; i < F; ++i) {
        const auto& tr = t.triangle(i);
        for (int k = 0; k < 3; ++k) {
            const auto& ed = t.edge(tr.side[k]);
            int s = tr.corner[(k + 1) % 3], f = tr.corner[(k + 2) % 3];
            int es = tr.reversed[k] ? ed.to : ed.from;
            int ef = tr.reversed[k] ? ed.from : ed.to;
            if (es != s || ef != f)
                v.push_back("triangle " + str(i) + " side " + std::to_string(k + 1) +
                            ": corners opposite the sides do not match the endpoints of edge " +
                            str(tr.side[k]));
        }
    }
    for (int e = 0; e < N; ++e) {
        const auto uses = t.uses(e).size();
        const bool bd = t.edge(e).on_boundary;
        if (uses == 1 && !bd) v.push_back("edge " + str(e) + " used once but not boundary");
        else if (uses == 2 && bd) v.push_back("boundary edge " + str(e) + " used twice");
        else if (uses != 1 && uses != 2)
            v.push_back("edge " + str(e) + " used " + std::to_string(uses) + " times");
    }
    // Boundary edges must form cycles through boundary punctures, one cycle set
    // per boundary component, and internal punctures must avoid them.
    std::vector<int> bdeg(n, 0);
    for (int e = 0; e < N; ++e) {
        const auto& ed = t.edge(e);
        if (!ed.on_boundary) continue;
        ++bdeg[ed.from];
        ++bdeg[ed.to];
        for (int p : {ed.from, ed.to})
            if (t.puncture(p).kind != PunctureKind::Boundary)
                v.push_back("boundary edge " + str(e) + " ends at internal puncture " + str(p));
        if (t.puncture(ed.from).kind == PunctureKind::Boundary &&
            t.puncture(ed.to).kind == PunctureKind::Boundary &&
            t.puncture(ed.from).boundary_component != t.puncture(ed.to).boundary_component)
            v.push_back("boundary edge " + str(e) + " joins different boundary components");
    }
    for (int p = 0; p < n; ++p) {
        if (t.puncture(p).kind == PunctureKind::Boundary && bdeg[p] != 2)
            v.push_back("boundary puncture " + str(p) + " is not covered by exactly two boundary edge ends");
    }

    bool coherent = true;
    for (int e = 0; e < N; ++e) {
        const auto& u = t.uses(e);
        if (u.size() == 2 &&
            t.triangle(u[0].tri).reversed[u[0].side] == t.triangle(u[1].tri).reversed[u[1].side])
            coherent = false;
    }
    if (!coherent) {
        v.push_back(t.is_orientable() ? "triangle orientations are not coherent"
                                      : "non-orientable surfaces are not supported");
    }

    // The link of every puncture must be a single cycle (internal) or path (boundary).
    if (coherent) {
        for (int p = 0; p < n; ++p) {
            int total = 0;
            for (int i = 0; i < F; ++i)
                for (int c = 0; c < 3; ++c) total += t.triangle(i).corner[c] == p;
            if (total == 0) {
                v.push_back("puncture " + str(p) + " is not a vertex of any triangle");
                continue;
            }
            if (static_cast<int>(t.corners_cw(p).size()) != total)
                v.push_back("the corners at puncture " + str(p) + " do not form a single disk link");
        }
    }

    if (N != -3 * chi + 3 * n - m)
        v.push_back("edge count N=" + std::to_string(N) + " violates N=-3chi+3n-m=" +
                    std::to_string(-3 * chi + 3 * n - m));
    if (F != -2 * chi + 2 * n - m)
        v.push_back("triangle count F=" + std::to_string(F) + " violates F=-2chi+2n-m=" +
                    std::to_string(-2 * chi + 2 * n - m));
    if (n - N + F != chi)
        v.push_back("stored chi=" + std::to_string(chi) + " differs from V-E+F=" +
                    std::to_string(n - N + F));
    int bcount = 0;
    for (int e = 0; e < N; ++e) bcount += t.edge(e).on_boundary;
    if (3 * F != 2 * (N - bcount) + bcount)
        v.push_back("side count 3F does not equal 2*(internal edges)+(boundary edges)");
    try {
        check_nonsporadic(chi, t.num_boundary_components(), t.is_orientable(), n);
    } catch (const SporadicSurface& e) {
        v.push_back(e.what());
    }
    return v;
}

std::vector<std::vector<int>> mu_table(const Triangulation& t) {
    const int N = t.num_edges();
    std::vector<std::vector<int>> mu(N, std::vector<int>(N, 0));
    for (const auto& tr : t.triangles()) {
        std::set<int> es(tr.side.begin(), tr.side.end());
        for (int i : es)
            for (int j : es)
                if (i != j) ++mu[i][j];
    }
    for (int i = 0; i < N; ++i) mu[i][i] = 1;
    return mu;
}

// ---------------------------------------------------------------------------
// Text format

std::string save_surface(const Triangulation& t) {
    std::ostringstream os;
    os << "surface " << t.num_edges() << ' ' << t.num_triangles() << ' ' << t.num_punctures() << ' '
       << t.num_boundary_punctures() << ' ' << t.euler_characteristic() << '\n';
    for (const auto& p : t.punctures()) {
        os << "puncture " << p.id + 1 << ' '
           << (p.kind == PunctureKind::Boundary ? "boundary " : "internal ")
           << (p.kind == PunctureKind::Boundary ? p.boundary_component + 1 : 0) << '\n';
    }
    for (const auto& e : t.edges())
        os << "edge " << e.id + 1 << ' ' << e.from + 1 << ' ' << e.to + 1 << ' ' << (e.on_boundary ? 1 : 0)
           << '\n';
    for (const auto& tr : t.triangles()) {
        os << "triangle " << tr.id + 1;
        for (int k = 0; k < 3; ++k) os << ' ' << tr.side[k] + 1 << ' ' << (tr.reversed[k] ? -1 : 1);
        for (int k = 0; k < 3; ++k) os << ' ' << tr.corner[k] + 1;
        os << '\n';
    }
    return os.str();
}

namespace {

int parse_int(const std::string& tok, int line) {
    try {
        std::size_t pos = 0;
        int v = std::stoi(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(line) + ": expected an integer, got '" + tok + "'");
    }
}

}  // namespace

Triangulation load_surface(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    bool have_header = false;
    int N = 0, F = 0, n = 0, m = 0, chi = 0;
    std::vector<Puncture> ps;
    std::vector<Edge> es;
    std::vector<Triangle> ts;
    while (std::getline(in, raw)) {
        ++lineno;
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        std::istringstream ls(raw);
        std::vector<std::string> tok;
        for (std::string s; ls >> s;) tok.push_back(s);
        if (tok.empty()) continue;
        auto need = [&](std::size_t k) {
            if (tok.size() != k)
                throw ParseError("line " + std::to_string(lineno) + ": '" + tok[0] + "' record needs " +
                                 std::to_string(k - 1) + " fields");
        };
        if (tok[0] == "surface") {
            need(6);
            if (have_header) throw ParseError("line " + std::to_string(lineno) + ": duplicate header");
            have_header = true;
            N = parse_int(tok[1], lineno);
            F = parse_int(tok[2], lineno);
            n = parse_int(tok[3], lineno);
            m = parse_int(tok[4], lineno);
            chi = parse_int(tok[5], lineno);
        } else if (!have_header) {
            throw ParseError("line " + std::to_string(lineno) + ": missing 'surface' header");
        } else if (tok[0] == "puncture") {
            need(4);
            Puncture p;
            p.id = parse_int(tok[1], lineno) - 1;
            if (tok[2] == "internal") p.kind = PunctureKind::Internal;
            else if (tok[2] == "boundary") p.kind = PunctureKind::Boundary;
            else throw ParseError("line " + std::to_string(lineno) + ": unknown puncture kind '" + tok[2] + "'");
            int comp = parse_int(tok[3], lineno);
            p.boundary_component = p.kind == PunctureKind::Boundary ? comp - 1 : -1;
            if (p.id != static_cast<int>(ps.size()))
                throw ParseError("line " + std::to_string(lineno) + ": puncture ids must be consecutive from 1");
            ps.push_back(p);
        } else if (tok[0] == "edge") {
            need(5);
            Edge e;
            e.id = parse_int(tok[1], lineno) - 1;
            e.from = parse_int(tok[2], lineno) - 1;
            e.to = parse_int(tok[3], lineno) - 1;
            int b = parse_int(tok[4], lineno);
            if (b != 0 && b != 1) throw ParseError("line " + std::to_string(lineno) + ": boundary flag must be 0 or 1");
            e.on_boundary = b == 1;
            if (e.id != static_cast<int>(es.size()))
                throw ParseError("line " + std::to_string(lineno) + ": edge ids must be consecutive from 1");
            es.push_back(e);
        } else if (tok[0] == "triangle") {
            need(11);
            Triangle t;
            t.id = parse_int(tok[1], lineno) - 1;
            for (int k = 0; k < 3; ++k) {
                t.side[k] = parse_int(tok[2 + 2 * k], lineno) - 1;
                int o = parse_int(tok[3 + 2 * k], lineno);
                if (o != 1 && o != -1)
                    throw ParseError("line " + std::to_string(lineno) + ": side tag must be 1 or -1");
                t.reversed[k] = o == -1;
                t.corner[k] = parse_int(tok[8 + k], lineno) - 1;
            }
            if (t.id != static_cast<int>(ts.size()))
                throw ParseError("line " + std::to_string(lineno) + ": triangle ids must be consecutive from 1");
            ts.push_back(t);
        } else {
            throw ParseError("line " + std::to_string(lineno) + ": unknown record '" + tok[0] + "'");
        }
    }
    if (!have_header) throw ParseError("empty surface file");
    if (static_cast<int>(es.size()) != N || static_cast<int>(ts.size()) != F ||
        static_cast<int>(ps.size()) != n)
        throw ParseError("record counts do not match the header");
    for (const auto& e : es)
        if (e.from < 0 || e.from >= n || e.to < 0 || e.to >= n)
            throw ParseError("edge " + std::to_string(e.id + 1) + " references an unknown puncture");
    for (const auto& t : ts)
        for (int k = 0; k < 3; ++k)
            if (t.side[k] < 0 || t.side[k] >= N || t.corner[k] < 0 || t.corner[k] >= n)
                throw ParseError("triangle " + std::to_string(t.id + 1) + " references an unknown edge or puncture");
    Triangulation tri(ps, es, ts, chi);
    if (tri.num_boundary_punctures() != m) throw ParseError("boundary puncture count does not match the header");
    return tri;
}

Triangulation load_surface_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open surface file '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return load_surface(ss.str());
}

}  // namespace ntrack
