// Stage 3 of matrix validation: the columns, weighted 1..N and simplified,
// must lay out the triangulation itself.

#include <algorithm>

#include "ntrack/mcg.hpp"
#include "ntrack/universal.hpp"

namespace ntrack::detail {

namespace {

using Rotation = std::vector<int>;

// Edge ends around a puncture, clockwise.
Rotation edge_rotation(const Triangulation& t, int p) {
    auto corners = t.corners_cw(p);
    Rotation r;
    if (corners.empty()) return r;
    if (t.puncture(p).kind == PunctureKind::Boundary) {
        const auto& c = corners.front();
        r.push_back(t.triangle(c.tri).side[(c.corner + 1) % 3]);
    }
    for (const auto& c : corners) r.push_back(t.triangle(c.tri).side[(c.corner + 2) % 3]);
    return r;
}

bool same_cycle(const Rotation& a, const Rotation& b) {
    if (a.size() != b.size()) return false;
    if (a.empty()) return true;
    for (std::size_t s = 0; s < a.size(); ++s) {
        bool ok = true;
        for (std::size_t i = 0; i < a.size() && ok; ++i) ok = a[(s + i) % a.size()] == b[i];
        if (ok) return true;
    }
    return false;
}

struct Matcher {
    const Triangulation& t;
    std::vector<Rotation> track_rot, surface_rot;
    std::vector<int> image;
    std::vector<bool> used;

    bool assign(int q) {
        if (q == static_cast<int>(track_rot.size())) return true;
        for (int p = 0; p < t.num_punctures(); ++p) {
            if (used[p] || t.puncture(p).kind != t.puncture(q).kind) continue;
            if (!same_cycle(track_rot[q], surface_rot[p])) continue;
            used[p] = true;
            image[q] = p;
            if (assign(q + 1)) return true;
            used[p] = false;
        }
        return false;
    }
};

}  // namespace

bool configuration_matches(const Triangulation& t, const MappingClassMatrix& m, std::string& why) {
    const int n = m.size();
    NormalCoordinates sum(n, 0);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) sum[i] += (j + 1) * m(i, j);
    auto check = check_coords(t, sum);
    if (!check.ok) {
        why = "weighted column sum is not a curve: " + check.reason;
        return false;
    }
    auto [track, trace] = simplify(encode_min(t, sum));
    const auto& tt = track.track;

    std::vector<int> label(tt.num_branch_slots(), -1);
    std::vector<bool> seen(n, false);
    for (int b : tt.live_branches()) {
        const Branch& br = tt.branch(b);
        if (br.end[0].kind != EndKind::Puncture || br.end[1].kind != EndKind::Puncture) {
            why = "weighted column sum does not simplify to arcs only";
            return false;
        }
        const BigInt& w = track.w(b);
        if (w < 1 || w > n || seen[w.get_si() - 1]) {
            why = "simplified arcs have multiplicity " + to_string(w) + ", expected each of 1.." + std::to_string(n) + " once";
            return false;
        }
        seen[w.get_si() - 1] = true;
        label[b] = static_cast<int>(w.get_si()) - 1;
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
        why = "simplified configuration has fewer arcs than edges";
        return false;
    }

    for (bool mirrored : {false, true}) {
        Matcher mt{t, {}, {}, std::vector<int>(t.num_punctures(), -1), std::vector<bool>(t.num_punctures(), false)};
        for (int q = 0; q < tt.num_punctures(); ++q) {
            Rotation r;
            for (const auto& h : tt.puncture(q).ends) r.push_back(label[h.branch]);
            if (mirrored) std::reverse(r.begin(), r.end());
            mt.track_rot.push_back(r);
        }
        for (int p = 0; p < t.num_punctures(); ++p) mt.surface_rot.push_back(edge_rotation(t, p));
        if (mt.assign(0)) return true;
    }
    why = "arcs are not arranged like the edges of the triangulation";
    return false;
}

}  // namespace ntrack::detail
