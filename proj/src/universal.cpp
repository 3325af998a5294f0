#include "ntrack/universal.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "ntrack/errors.hpp"

namespace ntrack {

namespace {

void add(Contribution& acc, const Contribution& c, int times = 1) {
    for (const auto& [b, v] : c) acc[b] += v * times;
}

class Builder {
public:
    Builder(const Triangulation& t, UniversalTrack& u) : t_(t), u_(u) {}

    void build() {
        const int F = t_.num_triangles(), N = t_.num_edges(), n = t_.num_punctures();
        auto& tr = u_.track;
        for (int p = 0; p < n; ++p) tr.add_puncture(t_.puncture(p).kind == PunctureKind::Boundary);
        u_.switch_at.assign(F, {});
        u_.inner.assign(F, {});
        for (int f = 0; f < F; ++f)
            for (int k = 0; k < 3; ++k) u_.switch_at[f][k] = tr.add_switch();
        for (int f = 0; f < F; ++f) {
            for (int c = 0; c < 3; ++c) {
                int b = tr.add_branch();
                tr.attach_switch({b, 0}, u_.switch_at[f][(c + 2) % 3], Left);
                tr.attach_switch({b, 1}, u_.switch_at[f][(c + 1) % 3], Right);
                u_.inner[f][c] = b;
            }
        }
        place_extra_switches();

        u_.alpha.assign(n, -1);
        u_.edge_pieces.assign(N, {});
        u_.edge_nodes.assign(N, {});
        for (int e = 0; e < N; ++e) {
            const auto& uses = t_.uses(e);
            if (uses.size() == 1) {
                const SideRef s = uses[0];
                const int head = t_.triangle(s.tri).corner[(s.side + 2) % 3];
                int b = tr.add_branch();
                tr.attach_switch({b, 0}, u_.switch_at[s.tri][s.side], Large);
                tr.attach_puncture({b, 1}, head);
                u_.alpha[head] = b;
                u_.edge_pieces[e] = {b};
                u_.edge_nodes[e] = {u_.switch_at[s.tri][s.side]};
                continue;
            }
            auto& nodes = u_.edge_nodes[e];
            auto& pieces = u_.edge_pieces[e];
            int cur_sw = u_.switch_at[uses[0].tri][uses[0].side], cur_slot = Large;
            nodes.push_back(cur_sw);
            auto piece = [&](int sw, int slot) {
                int b = tr.add_branch();
                tr.attach_switch({b, 0}, cur_sw, cur_slot);
                tr.attach_switch({b, 1}, sw, slot);
                pieces.push_back(b);
                nodes.push_back(sw);
            };
            int x0 = extra_on(uses[0]), x1 = extra_on(uses[1]);
            if (x0 >= 0) {
                piece(x0, Right);
                cur_sw = x0;
                cur_slot = Large;
            }
            if (x1 >= 0) {
                piece(x1, Large);
                cur_sw = x1;
                cur_slot = Right;
            }
            piece(u_.switch_at[uses[1].tri][uses[1].side], Large);
        }
        for (int p = 0; p < n; ++p) {
            if (t_.puncture(p).kind != PunctureKind::Internal) continue;
            int b = tr.add_branch();
            tr.attach_switch({b, 0}, u_.extra_switch[p], Left);
            tr.attach_puncture({b, 1}, p);
            u_.alpha[p] = b;
        }
        for (int p = 0; p < n; ++p)
            if (u_.alpha[p] < 0) throw Error("puncture " + std::to_string(p) + " has no attached branch");

        cw_.resize(n);
        for (int p = 0; p < n; ++p) {
            cw_[p] = t_.corners_cw(p);
            if (internal(p)) {
                auto it = std::find(cw_[p].begin(), cw_[p].end(), u_.anchor[p]);
                std::rotate(cw_[p].begin(), it, cw_[p].end());
            }
        }
        build_table();
    }

private:
    // Each internal puncture gets an extra switch on the half of an edge
    // branch next to one of its corners; no half may host two of them.
    void place_extra_switches() {
        const int n = t_.num_punctures();
        u_.extra_switch.assign(n, -1);
        u_.anchor.assign(n, {});
        std::map<std::pair<int, int>, int> owner;  // (tri, side) -> puncture
        std::vector<std::vector<CornerRef>> options(n);
        for (int p = 0; p < n; ++p) {
            if (t_.puncture(p).kind != PunctureKind::Internal) continue;
            for (const CornerRef& c : t_.corners_cw(p)) {
                int side = (c.corner + 2) % 3;
                if (!t_.edge(t_.triangle(c.tri).side[side]).on_boundary) options[p].push_back(c);
            }
        }
        std::vector<CornerRef> chosen(n);
        std::function<bool(int, std::set<std::pair<int, int>>&)> augment = [&](int p, auto& seen) {
            for (const CornerRef& c : options[p]) {
                std::pair<int, int> key{c.tri, (c.corner + 2) % 3};
                if (seen.count(key)) continue;
                seen.insert(key);
                auto it = owner.find(key);
                if (it == owner.end() || augment(it->second, seen)) {
                    owner[key] = p;
                    chosen[p] = c;
                    return true;
                }
            }
            return false;
        };
        for (int p = 0; p < n; ++p) {
            if (t_.puncture(p).kind != PunctureKind::Internal) continue;
            std::set<std::pair<int, int>> seen;
            if (!augment(p, seen)) throw Error("cannot place the extra switch of puncture " + std::to_string(p));
        }
        for (int p = 0; p < n; ++p) {
            if (t_.puncture(p).kind != PunctureKind::Internal) continue;
            u_.anchor[p] = chosen[p];
            u_.extra_switch[p] = u_.track.add_switch();
            half_owner_[{chosen[p].tri, (chosen[p].corner + 2) % 3}] = p;
        }
    }

    int extra_on(SideRef s) const {
        auto it = half_owner_.find({s.tri, s.side});
        return it == half_owner_.end() ? -1 : u_.extra_switch[it->second];
    }

    int edge_of(int tri, int side) const { return t_.triangle(tri).side[side]; }

    int node_index(int e, int sw) const {
        const auto& nodes = u_.edge_nodes[e];
        for (int i = 0; i < static_cast<int>(nodes.size()); ++i)
            if (nodes[i] == sw) return i;
        throw Error("switch not on edge");
    }

    void pieces_between(Contribution& acc, int e, int i, int j, int w) const {
        if (i > j) std::swap(i, j);
        for (int k = i; k < j; ++k) acc[u_.edge_pieces[e][k]] += w;
    }

    void whole_edge(Contribution& acc, int e, int w) const {
        for (int b : u_.edge_pieces[e]) acc[b] += w;
    }

    // Node at the far end of edge e as seen from the switch of (tri, side).
    int far_node(int e, int tri, int side) const {
        const auto& uses = t_.uses(e);
        return (uses[0].tri == tri && uses[0].side == side) ? static_cast<int>(u_.edge_nodes[e].size()) - 1 : 0;
    }

    int index_of(int p, CornerRef c) const {
        for (int i = 0; i < static_cast<int>(cw_[p].size()); ++i)
            if (cw_[p][i] == c) return i;
        throw Error("corner not at puncture");
    }

    bool internal(int p) const { return t_.puncture(p).kind == PunctureKind::Internal; }

    struct Lead {
        Contribution c;
        int edge = -1;
        int source = -1;  // node index on edge
        int far = -1;     // node index of the far end
    };

    // From puncture p, clockwise around it, up to the moment of leaving the
    // corner cw_[p][t] through its side c+2.
    Lead lead(int p, int t) const {
        Lead l;
        const CornerRef k = cw_[p][t];
        if (internal(p) && t == 0) {
            l.c[u_.alpha[p]] += 2;
            const int side = (k.corner + 2) % 3;
            l.edge = edge_of(k.tri, side);
            l.source = node_index(l.edge, u_.extra_switch[p]);
            l.far = far_node(l.edge, k.tri, side);
            return l;
        }
        l.c = fwd(p, t - 1);
        l.c[u_.inner[k.tri][k.corner]] += 2;
        const int side = (k.corner + 2) % 3;
        l.edge = edge_of(k.tri, side);
        l.source = node_index(l.edge, u_.switch_at[k.tri][side]);
        l.far = far_node(l.edge, k.tri, side);
        return l;
    }

    // Full path through corner cw_[p][t] and across into the next triangle.
    // For t = -1 (boundary punctures only) this is just the attached branch.
    Contribution fwd(int p, int t) const {
        if (t < 0) {
            Contribution c;
            c[u_.alpha[p]] += 2;
            return c;
        }
        Lead l = lead(p, t);
        pieces_between(l.c, l.edge, l.source, l.far, 2);
        return l.c;
    }

    // Path from the puncture into corner cw_[p][j], arriving through side c+1.
    Contribution walk_to(int p, int j) const {
        if (j == 0) return internal(p) ? fwd(p, static_cast<int>(cw_[p].size()) - 1) : fwd(p, -1);
        return fwd(p, j - 1);
    }

    Contribution corner_arc(int tri, int c) const {
        const int p = t_.triangle(tri).corner[c];
        Contribution acc = walk_to(p, index_of(p, {tri, c}));
        acc[u_.inner[tri][(c + 2) % 3]] += 2;
        whole_edge(acc, edge_of(tri, c), 1);
        return acc;
    }

    Contribution cutting_arc(int tri, int c) const {
        Contribution acc;
        whole_edge(acc, edge_of(tri, (c + 1) % 3), 1);
        acc[u_.inner[tri][c]] += 2;
        whole_edge(acc, edge_of(tri, (c + 2) % 3), 1);
        return acc;
    }

    // Entering corner cw_[q][j] through its side c+2 and returning to q
    // counterclockwise.  Returns the contribution and the node where the
    // path meets the crossed edge.
    std::pair<Contribution, int> trail(int q, int j, int e) const {
        const CornerRef k = cw_[q][j];
        if (internal(q) && j == 0) {
            Contribution c;
            c[u_.alpha[q]] += 2;
            return {c, node_index(e, u_.extra_switch[q])};
        }
        Contribution c = fwd(q, j - 1);
        c[u_.inner[k.tri][k.corner]] += 2;
        return {c, node_index(e, u_.switch_at[k.tri][(k.corner + 2) % 3])};
    }

    Contribution copy_via(SideRef u) const {
        const auto& tri = t_.triangle(u.tri);
        const int e = tri.side[u.side];
        const int p = tri.corner[(u.side + 1) % 3];
        Lead l = lead(p, index_of(p, {u.tri, (u.side + 1) % 3}));
        if (l.edge != e) throw Error("walk left through the wrong edge");
        const SideRef o = t_.across(u.tri, u.side);
        const int cq = (o.side + 1) % 3;
        const int q = t_.triangle(o.tri).corner[cq];
        auto [tc, target] = trail(q, index_of(q, {o.tri, cq}), e);
        pieces_between(l.c, e, l.source, target, 2);
        add(l.c, tc);
        return l.c;
    }

    Contribution edge_copy(int e) const {
        const auto& uses = t_.uses(e);
        if (uses.size() == 1) {
            const SideRef s = uses[0];
            const int p = t_.triangle(s.tri).corner[(s.side + 1) % 3];
            Contribution acc;
            acc[u_.edge_pieces[e][0]] += 2;
            const int j = index_of(p, {s.tri, (s.side + 1) % 3});
            add(acc, fwd(p, j - 1));
            acc[u_.inner[s.tri][(s.side + 1) % 3]] += 2;
            return acc;
        }
        Contribution a = copy_via(uses[0]), b = copy_via(uses[1]);
        auto total = [](const Contribution& c) {
            long s = 0;
            for (const auto& [k, v] : c) s += v;
            return s;
        };
        return total(b) < total(a) ? b : a;
    }

    void build_table() {
        const int F = t_.num_triangles(), N = t_.num_edges();
        u_.triangle_arcs.assign(F, {});
        for (int f = 0; f < F; ++f)
            for (int c = 0; c < 3; ++c) {
                u_.triangle_arcs[f][c] = corner_arc(f, c);
                u_.triangle_arcs[f][3 + c] = cutting_arc(f, c);
            }
        u_.edge_copies.assign(N, {});
        for (int e = 0; e < N; ++e) u_.edge_copies[e] = edge_copy(e);
    }

    const Triangulation& t_;
    UniversalTrack& u_;
    std::map<std::pair<int, int>, int> half_owner_;
    std::vector<std::vector<CornerRef>> cw_;
};

}  // namespace

UniversalTrack universal_track(const Triangulation& t) {
    UniversalTrack u;
    Builder(t, u).build();
    return u;
}

MeasuredTrainTrack encode_min(const UniversalTrack& u, const Triangulation& t, const NormalCoordinates& c) {
    validate_coords(t, c);
    MeasuredTrainTrack m;
    m.track = u.track;
    BigVec twice(u.track.num_branch_slots(), 0);
    for (int f = 0; f < t.num_triangles(); ++f) {
        auto s = triangle_sides(t, c, f);
        ArcTypeCounts arcs = decompose_triangle(s[0], s[1], s[2]);
        for (int k = 0; k < 6; ++k) {
            const BigInt& n = k < 3 ? arcs.corner[k] : arcs.cut[k - 3];
            if (n == 0) continue;
            for (const auto& [b, v] : u.triangle_arcs[f][k]) twice[b] += n * v;
        }
    }
    for (int e = 0; e < t.num_edges(); ++e) {
        if (c[e] >= 0) continue;
        BigInt n = -c[e];
        for (const auto& [b, v] : u.edge_copies[e]) twice[b] += n * v;
    }
    m.width.resize(twice.size());
    for (std::size_t b = 0; b < twice.size(); ++b) {
        if (mpz_odd_p(twice[b].get_mpz_t())) throw Error("odd half-width on branch " + std::to_string(b));
        m.width[b] = twice[b] / 2;
    }
    return m;
}

MeasuredTrainTrack encode_min(const Triangulation& t, const NormalCoordinates& c) {
    return encode_min(universal_track(t), t, c);
}

std::string dump_contributions(const UniversalTrack& u) {
    std::ostringstream out;
    auto line = [&](const Contribution& c) {
        for (const auto& [b, v] : c)
            if (v) out << " " << b << ":" << v;
        out << "\n";
    };
    out << "contributions triangles " << u.triangle_arcs.size() << " edges " << u.edge_copies.size() << "\n";
    for (std::size_t f = 0; f < u.triangle_arcs.size(); ++f) {
        for (int k = 0; k < 6; ++k) {
            out << "triangle " << f << (k < 3 ? " corner " : " cut ") << (k % 3) << " :";
            line(u.triangle_arcs[f][k]);
        }
    }
    for (std::size_t e = 0; e < u.edge_copies.size(); ++e) {
        out << "edge " << e << " :";
        line(u.edge_copies[e]);
    }
    return out.str();
}

}  // namespace ntrack
