#include "ntrack/oracle.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <random>

#include "ntrack/errors.hpp"

namespace ntrack {

namespace {

long to_long(const BigInt& x) { return x.get_si(); }

}  // namespace

ExplicitDiagram::ExplicitDiagram(const Triangulation& t, const NormalCoordinates& c1, const NormalCoordinates& c2)
    : t_(t), x_{c1, c2} {
    const int N = t.num_edges(), F = t.num_triangles();
    order_.assign(N, {});
    where_.assign(N, {});
    for (int e = 0; e < N; ++e) {
        for (int c = 0; c < 2; ++c) {
            long L = std::max(0L, to_long(x_[c][e]));
            for (long i = 0; i < L; ++i) {
                where_[e][c].push_back(static_cast<int>(order_[e].size()));
                order_[e].push_back(static_cast<std::uint8_t>(c));
            }
        }
    }
    chords_.assign(F, {});
    side_chord_.assign(F, {});
    for (int tri = 0; tri < F; ++tri) {
        for (int c = 0; c < 2; ++c) {
            auto s = triangle_sides(t, x_[c], tri);
            ArcTypeCounts arcs = decompose_triangle(s[0], s[1], s[2]);
            std::array<long, 3> len{};
            for (int k = 0; k < 3; ++k) {
                len[k] = to_long(s[k]);
                side_chord_[tri][c][k].assign(len[k], -1);
            }
            auto add = [&](ChordEnd a, ChordEnd b) {
                int id = static_cast<int>(chords_[tri].size());
                chords_[tri].push_back({c, false, a, b});
                for (const ChordEnd* e : {&a, &b})
                    if (!e->at_corner) side_chord_[tri][c][e->index][e->j] = id;
            };
            for (int corner = 0; corner < 3; ++corner) {
                const int sa = (corner + 2) % 3, sb = (corner + 1) % 3;
                long cnt = to_long(arcs.cut[corner]);
                for (long r = 0; r < cnt; ++r)
                    add({false, sa, static_cast<int>(r)}, {false, sb, static_cast<int>(len[sb] - 1 - r)});
                long off = to_long(arcs.cut[(corner + 1) % 3]);
                long cc = to_long(arcs.corner[corner]);
                for (long r = 0; r < cc; ++r)
                    add({true, corner, 0}, {false, corner, static_cast<int>(off + r)});
            }
        }
    }
    // Parallel copies of edges sit inside the first triangle using the edge.
    for (int e = 0; e < N; ++e) {
        const SideRef u = t.uses(e).front();
        for (int c = 0; c < 2; ++c) {
            long k = x_[c][e] < 0 ? to_long(-x_[c][e]) : 0;
            for (long r = 0; r < k; ++r)
                chords_[u.tri].push_back(
                    {c, true, {true, (u.side + 1) % 3, u.side}, {true, (u.side + 2) % 3, u.side}});
        }
    }
}

bool ExplicitDiagram::mixed_pair(int e, int p) const {
    return p >= 0 && p + 1 < static_cast<int>(order_[e].size()) && order_[e][p] != order_[e][p + 1];
}

int ExplicitDiagram::ccw_position(int tri, int side, int edge_pos) const {
    int e = t_.triangle(tri).side[side];
    return t_.triangle(tri).reversed[side] ? static_cast<int>(order_[e].size()) - 1 - edge_pos : edge_pos;
}

int ExplicitDiagram::chord_at(int tri, int side, int curve, int j) const {
    return side_chord_[tri][curve][side].at(j);
}

// Position of a chord end on the boundary cycle of the triangle, ordered as
// corner 0, side 2, corner 1, side 0, corner 2, side 1.
std::pair<int, int> ExplicitDiagram::end_key(int tri, const ChordEnd& end, int chord) const {
    const Chord& ch = chords_[tri][chord];
    if (ch.edge_copy) {
        const int side = ch.a.j;  // the copied side
        const int seg = (2 * side + 3) % 6;
        int e = t_.triangle(tri).side[side];
        int L = static_cast<int>(order_[e].size());
        int K = 0, r = 0;
        for (int i = 0; i < static_cast<int>(chords_[tri].size()); ++i) {
            const Chord& o = chords_[tri][i];
            if (!o.edge_copy || o.a.j != side) continue;
            if (i == chord) r = K;
            ++K;
        }
        bool is_a = &end == &ch.a;
        return {seg, is_a ? -K + r : L + K - 1 - r};
    }
    if (end.at_corner) return {2 * end.index, 0};
    const int curve = ch.curve;
    int e = t_.triangle(tri).side[end.index];
    int Lc = static_cast<int>(where_[e][curve].size());
    int i = t_.triangle(tri).reversed[end.index] ? Lc - 1 - end.j : end.j;
    return {(2 * end.index + 3) % 6, ccw_position(tri, end.index, where_[e][curve][i])};
}

bool ExplicitDiagram::crossing(int tri, int c0, int c1) const {
    const Chord& A = chords_[tri][c0];
    const Chord& B = chords_[tri][c1];
    auto p1 = end_key(tri, A.a, c0), q1 = end_key(tri, A.b, c0);
    auto p2 = end_key(tri, B.a, c1), q2 = end_key(tri, B.b, c1);
    if (p1 == p2 || p1 == q2 || q1 == p2 || q1 == q2) return false;
    if (q1 < p1) std::swap(p1, q1);
    bool in2 = p1 < p2 && p2 < q1;
    bool in3 = p1 < q2 && q2 < q1;
    return in2 != in3;
}

ChordEnd ExplicitDiagram::other_end(const Chord& ch, int side, int j) const {
    if (!ch.a.at_corner && ch.a.index == side && ch.a.j == j) return ch.b;
    return ch.a;
}

ExplicitDiagram::Probe ExplicitDiagram::probe(int tri, int side, int e, int pos) const {
    Probe r;
    r.tri = tri;
    int ch[2] = {-1, -1};
    ChordEnd far[2];
    for (int q = 0; q < 2; ++q) {
        int p = pos + q;
        int c = order_[e][p];
        int i = static_cast<int>(std::find(where_[e][c].begin(), where_[e][c].end(), p) - where_[e][c].begin());
        int Lc = static_cast<int>(where_[e][c].size());
        int j = t_.triangle(tri).reversed[side] ? Lc - 1 - i : i;
        ch[c] = chord_at(tri, side, c, j);
        far[c] = other_end(chords_[tri][ch[c]], side, j);
    }
    r.chord0 = ch[0];
    r.chord1 = ch[1];
    if (crossing(tri, ch[0], ch[1])) {
        r.kind = Probe::Crossing;
        return r;
    }
    if (far[0].at_corner && far[1].at_corner) {
        r.kind = far[0].index == far[1].index ? Probe::CommonCorner : Probe::Fail;
        return r;
    }
    if (far[0].at_corner || far[1].at_corner || far[0].index != far[1].index) return r;
    const int k2 = far[0].index;
    const int e2 = t_.triangle(tri).side[k2];
    int pp[2];
    for (int c = 0; c < 2; ++c) {
        int Lc = static_cast<int>(where_[e2][c].size());
        int i = t_.triangle(tri).reversed[k2] ? Lc - 1 - far[c].j : far[c].j;
        pp[c] = where_[e2][c][i];
    }
    if (std::abs(pp[0] - pp[1]) != 1) return r;
    r.kind = Probe::Continue;
    r.side = k2;
    r.next_edge = e2;
    r.next_pos = std::min(pp[0], pp[1]);
    return r;
}

int ExplicitDiagram::reduce_at(int e, int p, std::vector<std::pair<int, int>>* touched) {
    if (!mixed_pair(e, p)) return 0;
    const auto& uses = t_.uses(e);
    if (uses.size() != 2) return 0;
    std::vector<std::pair<int, int>> strip{{e, p}};
    Probe ends[2];
    int total_points = 0;
    for (const auto& o : order_) total_points += static_cast<int>(o.size());
    for (int d = 0; d < 2; ++d) {
        int tri = uses[d].tri, side = uses[d].side, ce = e, cp = p;
        int steps = 0;
        for (;;) {
            Probe r = probe(tri, side, ce, cp);
            if (r.kind != Probe::Continue) {
                ends[d] = r;
                break;
            }
            if (++steps > total_points) {
                ends[d] = Probe{};
                break;
            }
            SideRef nxt = t_.across(tri, r.side);
            if (!nxt.valid()) {
                ends[d] = Probe{};
                break;
            }
            ce = r.next_edge;
            cp = r.next_pos;
            if (ce == e && cp == p) {
                ends[d] = Probe{};
                break;
            }
            strip.push_back({ce, cp});
            tri = nxt.tri;
            side = nxt.side;
        }
        if (ends[d].kind == Probe::Fail) return 0;
    }
    int crossings = (ends[0].kind == Probe::Crossing) + (ends[1].kind == Probe::Crossing);
    if (crossings == 0) return 0;
    if (crossings == 2 && ends[0].tri == ends[1].tri && ends[0].chord0 == ends[1].chord0 &&
        ends[0].chord1 == ends[1].chord1)
        return 0;
    std::sort(strip.begin(), strip.end());
    strip.erase(std::unique(strip.begin(), strip.end()), strip.end());
    for (auto [se, sp] : strip) {
        int a = order_[se][sp], b = order_[se][sp + 1];
        auto& wa = where_[se][a];
        auto& wb = where_[se][b];
        auto ia = std::find(wa.begin(), wa.end(), sp);
        auto ib = std::find(wb.begin(), wb.end(), sp + 1);
        *ia = sp + 1;
        *ib = sp;
        std::swap(order_[se][sp], order_[se][sp + 1]);
        if (touched) touched->push_back({se, sp});
    }
    return crossings;
}

long ExplicitDiagram::count_crossings() const {
    long total = 0;
    for (int tri = 0; tri < t_.num_triangles(); ++tri) {
        const auto& ch = chords_[tri];
        for (int i = 0; i < static_cast<int>(ch.size()); ++i) {
            if (ch[i].curve != 0) continue;
            for (int j = 0; j < static_cast<int>(ch.size()); ++j)
                if (ch[j].curve == 1 && crossing(tri, i, j)) ++total;
        }
    }
    return total;
}

long ExplicitDiagram::count_parallel_arc_pairs() const {
    const int N = t_.num_edges();
    std::array<std::map<std::vector<long>, long>, 2> classes;
    for (int c = 0; c < 2; ++c) {
        for (int e = 0; e < N; ++e) {
            if (x_[c][e] < 0) {
                std::vector<long> v(N, 0);
                v[e] = -1;
                classes[c][v] += to_long(-x_[c][e]);
            }
        }
        std::vector<std::vector<bool>> done(t_.num_triangles());
        for (int tri = 0; tri < t_.num_triangles(); ++tri) done[tri].assign(chords_[tri].size(), false);
        for (int tri = 0; tri < t_.num_triangles(); ++tri) {
            for (int id = 0; id < static_cast<int>(chords_[tri].size()); ++id) {
                const Chord& ch0 = chords_[tri][id];
                if (ch0.curve != c || ch0.edge_copy || done[tri][id] || !ch0.a.at_corner) continue;
                std::vector<long> v(N, 0);
                int ct = tri, cid = id;
                ChordEnd cur = ch0.b;
                done[ct][cid] = true;
                for (;;) {
                    int e = t_.triangle(ct).side[cur.index];
                    ++v[e];
                    SideRef o = t_.across(ct, cur.index);
                    int Lc = static_cast<int>(where_[e][c].size());
                    int i = t_.triangle(ct).reversed[cur.index] ? Lc - 1 - cur.j : cur.j;
                    int j2 = t_.triangle(o.tri).reversed[o.side] ? Lc - 1 - i : i;
                    ct = o.tri;
                    cid = chord_at(ct, o.side, c, j2);
                    done[ct][cid] = true;
                    ChordEnd nx = other_end(chords_[ct][cid], o.side, j2);
                    if (nx.at_corner) break;
                    cur = nx;
                }
                classes[c][v] += 1;
            }
        }
    }
    long pairs = 0;
    for (const auto& [v, n0] : classes[0]) {
        auto it = classes[1].find(v);
        if (it != classes[1].end()) pairs += n0 * it->second;
    }
    return pairs;
}

OracleReport oracle_report(const Triangulation& t, const NormalCoordinates& c1, const NormalCoordinates& c2,
                           const OracleOptions& opt) {
    for (const auto* c : {&c1, &c2}) {
        validate_coords(t, *c);
        for (const auto& x : *c)
            if (big_abs(x) > opt.unary_bound)
                throw UnaryBoundExceeded("coordinate " + to_string(x) + " exceeds the unary bound " +
                                         std::to_string(opt.unary_bound));
    }
    ExplicitDiagram d(t, c1, c2);
    OracleReport rep;
    rep.initial_crossings = d.count_crossings();

    std::deque<std::pair<int, int>> work;
    for (int e = 0; e < t.num_edges(); ++e)
        for (int p = 0; p + 1 < d.points_on(e); ++p)
            if (d.mixed_pair(e, p)) work.push_back({e, p});
    std::mt19937_64 rng(opt.shuffle_seed);
    bool progress = true;
    while (progress) {
        if (opt.shuffle_seed) std::shuffle(work.begin(), work.end(), rng);
        while (!work.empty()) {
            auto [e, p] = work.front();
            work.pop_front();
            std::vector<std::pair<int, int>> touched;
            int r = d.reduce_at(e, p, &touched);
            if (r == 2) ++rep.bigons_removed;
            if (r == 1) ++rep.half_bigons_removed;
            for (auto [te, tp] : touched)
                for (int q = tp - 1; q <= tp + 1; ++q)
                    if (d.mixed_pair(te, q)) work.push_back({te, q});
        }
        // Full sweep: stop only when no pair anywhere bounds a reducible region.
        progress = false;
        for (int e = 0; e < t.num_edges(); ++e)
            for (int p = 0; p + 1 < d.points_on(e); ++p)
                if (d.mixed_pair(e, p)) work.push_back({e, p});
        if (opt.shuffle_seed) std::shuffle(work.begin(), work.end(), rng);
        std::deque<std::pair<int, int>> again;
        while (!work.empty()) {
            auto [e, p] = work.front();
            work.pop_front();
            std::vector<std::pair<int, int>> touched;
            int r = d.reduce_at(e, p, &touched);
            if (r) {
                progress = true;
                if (r == 2) ++rep.bigons_removed;
                else ++rep.half_bigons_removed;
                for (auto [te, tp] : touched)
                    for (int q = tp - 1; q <= tp + 1; ++q)
                        if (d.mixed_pair(te, q)) again.push_back({te, q});
            }
        }
        work = std::move(again);
    }
    rep.final_crossings = d.count_crossings();
    rep.parallel_arc_pairs = d.count_parallel_arc_pairs();
    rep.value = BigInt(rep.final_crossings) - BigInt(rep.parallel_arc_pairs);
    return rep;
}

BigInt oracle_intersection(const Triangulation& t, const NormalCoordinates& c1, const NormalCoordinates& c2,
                           const OracleOptions& opt) {
    return oracle_report(t, c1, c2, opt).value;
}

}  // namespace ntrack
