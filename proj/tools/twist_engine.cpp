#include "twist_engine.hpp"

#include <stdexcept>

namespace ntrack::fixtures {

namespace {

bool same(SideRef a, SideRef b) { return a.tri == b.tri && a.side == b.side; }

int puncture_at(const Triangulation& t, CornerRef c) { return t.triangle(c.tri).corner[c.corner]; }

// Moves a corner across one of its two adjacent sides.
std::optional<CornerRef> rotate(const Triangulation& t, CornerRef c, int side) {
    if (side == (c.corner + 2) % 3) return t.cw_next(c);
    if (side == (c.corner + 1) % 3) return t.ccw_next(c);
    return std::nullopt;
}

}  // namespace

ArcWalk edge_walk(const Triangulation& t, int edge) {
    SideRef u = t.uses(edge)[0];
    const bool rev = t.triangle(u.tri).reversed[u.side];
    CornerRef s{u.tri, (u.side + 1) % 3}, e{u.tri, (u.side + 2) % 3};
    if (rev) std::swap(s, e);
    return {s, {}, e};
}

ArcWalk reversed(const Triangulation& t, const ArcWalk& w) {
    ArcWalk r{w.end, {}, w.start};
    for (auto it = w.crossings.rbegin(); it != w.crossings.rend(); ++it) r.crossings.push_back(t.across(it->tri, it->side));
    return r;
}

void reduce(const Triangulation& t, ArcWalk& w) {
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<SideRef> stack;
        for (SideRef c : w.crossings) {
            if (!stack.empty() && same(c, t.across(stack.back().tri, stack.back().side))) {
                stack.pop_back();
                changed = true;
            } else {
                stack.push_back(c);
            }
        }
        w.crossings = std::move(stack);
        if (!w.crossings.empty()) {
            SideRef first = w.crossings.front();
            if (auto moved = rotate(t, w.start, first.side)) {
                w.start = *moved;
                w.crossings.erase(w.crossings.begin());
                changed = true;
            }
        }
        if (!w.crossings.empty()) {
            SideRef arrive = t.across(w.crossings.back().tri, w.crossings.back().side);
            if (auto moved = rotate(t, w.end, arrive.side)) {
                w.end = *moved;
                w.crossings.pop_back();
                changed = true;
            }
        }
    }
}

NormalCoordinates walk_coordinates(const Triangulation& t, ArcWalk w) {
    reduce(t, w);
    NormalCoordinates c(t.num_edges(), BigInt(0));
    if (w.crossings.empty()) {
        if (w.start.tri != w.end.tri || w.start.corner == w.end.corner) throw std::runtime_error("walk reduces to a trivial arc");
        c[t.triangle(w.start.tri).side[3 - w.start.corner - w.end.corner]] = -1;
        return c;
    }
    for (SideRef s : w.crossings) c[t.triangle(s.tri).side[s.side]] += 1;
    return c;
}

HalfTwist::HalfTwist(const Triangulation& t, int edge) : t_(t), a_(edge) {
    const Edge& e = t.edge(edge);
    p_ = e.from;
    q_ = e.to;
    if (p_ == q_ || t.uses(edge).size() != 2) throw std::invalid_argument("half-twist edge must join two punctures in the interior");
    if (t.puncture(p_).kind != PunctureKind::Internal || t.puncture(q_).kind != PunctureKind::Internal)
        throw std::invalid_argument("half-twist edge must join internal punctures");
    for (SideRef u : t.uses(edge)) {
        CornerRef s{u.tri, (u.side + 1) % 3}, f{u.tri, (u.side + 2) % 3};
        if (puncture_at(t, s) == p_) {
            top_p_ = s;
            top_q_ = f;
        } else {
            bottom_q_ = s;
            bottom_p_ = f;
        }
    }
    if (top_p_.tri < 0 || bottom_p_.tri < 0 || top_p_.tri == bottom_p_.tri)
        throw std::invalid_argument("half-twist edge must lie in two distinct triangles");
}

void HalfTwist::walk_around(ArcWalk& w, CornerRef from, CornerRef to) const {
    const int limit = 3 * t_.num_triangles() + 3;
    for (int dir = 0; dir < 2; ++dir) {
        std::vector<SideRef> path;
        CornerRef cur = from;
        bool ok = true;
        for (int steps = 0; !(cur == to); ++steps) {
            const int side = dir == 0 ? (cur.corner + 2) % 3 : (cur.corner + 1) % 3;
            auto next = dir == 0 ? t_.cw_next(cur) : t_.ccw_next(cur);
            if (t_.triangle(cur.tri).side[side] == a_ || !next || steps > limit) {
                ok = false;
                break;
            }
            path.push_back({cur.tri, side});
            cur = *next;
        }
        if (ok) {
            w.crossings.insert(w.crossings.end(), path.begin(), path.end());
            w.end = to;
            return;
        }
    }
    throw std::logic_error("no route around the puncture avoiding the twist edge");
}

void HalfTwist::slide_end_to(ArcWalk& w, CornerRef target) const { walk_around(w, w.end, target); }

ArcWalk HalfTwist::image_end(ArcWalk w) const {
    const int p = puncture_at(t_, w.end);
    if (p == p_) {
        slide_end_to(w, bottom_p_);
        w.end = bottom_q_;
        walk_around(w, bottom_q_, top_q_);
    } else if (p == q_) {
        slide_end_to(w, top_q_);
        w.end = top_p_;
        walk_around(w, top_p_, bottom_p_);
    }
    return w;
}

ArcWalk HalfTwist::image(const ArcWalk& w) const {
    if (w.crossings.empty() && w.start.tri == w.end.tri &&
        t_.triangle(w.start.tri).side[3 - w.start.corner - w.end.corner] == a_)
        return w;
    ArcWalk out{w.start, {}, w.start};
    // Replay the walk, replacing each passage through the twist edge.
    for (SideRef c : w.crossings) {
        if (t_.triangle(c.tri).side[c.side] != a_) {
            out.crossings.push_back(c);
            continue;
        }
        if (c.tri == bottom_p_.tri) {
            walk_around(out, bottom_q_, top_q_);
            out.crossings.push_back(t_.across(c.tri, c.side));
            walk_around(out, bottom_p_, top_p_);
        } else {
            walk_around(out, top_p_, bottom_p_);
            out.crossings.push_back(t_.across(c.tri, c.side));
            walk_around(out, top_q_, bottom_q_);
        }
    }
    out.end = w.end;
    out = image_end(out);
    out = reversed(t_, image_end(reversed(t_, out)));
    reduce(t_, out);
    return out;
}

std::vector<NormalCoordinates> HalfTwist::edge_images() const {
    std::vector<NormalCoordinates> cols;
    for (int j = 0; j < t_.num_edges(); ++j) cols.push_back(walk_coordinates(t_, image(edge_walk(t_, j))));
    return cols;
}

}  // namespace ntrack::fixtures
