#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "ntrack/intersection.hpp"

namespace ntrack::detail {

// ---------------------------------------------------------------------------
// Symbolic widths.  An Affine width is c + s*t, where t counts repetitions of
// a period.  Every comparison is decided at t = 0 and narrows the active
// Horizon to the largest t for which the decision stays the same.

struct Affine {
    BigInt c, s;
};

struct Horizon {
    bool bounded = false;
    BigInt limit;
    void cap(const BigInt& m) {
        if (!bounded || m < limit) {
            limit = m;
            bounded = true;
        }
    }
};

Horizon*& active_horizon();
int affine_sign(const Affine& d);

inline Affine operator+(const Affine& a, const Affine& b) { return {a.c + b.c, a.s + b.s}; }
inline Affine operator-(const Affine& a, const Affine& b) { return {a.c - b.c, a.s - b.s}; }
inline bool operator>(const Affine& a, int) { return affine_sign(a) > 0; }
inline bool operator==(const Affine& a, int) { return affine_sign(a) == 0; }
inline bool operator<(const Affine& a, const Affine& b) { return affine_sign(a - b) < 0; }
inline bool operator>(const Affine& a, const Affine& b) { return affine_sign(a - b) > 0; }

inline const BigInt& base(const BigInt& x) { return x; }
inline const BigInt& base(const Affine& x) { return x.c; }

template <class W>
W wmin(const W& a, const W& b) {
    return b < a ? b : a;
}

template <class W>
W excess(const W& a, const W& b) {
    return a > b ? W(a - b) : W{};
}

// ---------------------------------------------------------------------------
// One engine state and the moves on it, for either width type.

template <class W>
struct SplitCross {
    bool present = false;
    int branch1 = -1, branch2 = -1;
    W x, y;  // widths of the two crossing diagonals
};

template <class W>
struct EngineState {
    BasicJointTrack<W> j;
    std::vector<int> recent;  // pieces created by the last split
};

// Routes both tracks through a split of a common wide branch between two
// switches, or splits at a puncture.
template <class W>
SplitCross<W> split_joint(BasicJointTrack<W>& j, int alpha) {
    auto& t = j.track;
    const Branch& br = t.branch(alpha);
    SplitCross<W> cross;
    if (br.end[0].kind == EndKind::Puncture || br.end[1].kind == EndKind::Puncture) {
        puncture_split_topology(t, alpha);
        return cross;
    }
    SplitFrame f = split_frame(t, alpha);
    std::array<std::array<W, 4>, 2> piece;  // per track: SB, ST, D1, D2
    for (int i = 0; i < 2; ++i) {
        const auto& w = j.width[i];
        const W& a = w[f.outer[0].branch];
        const W& b2 = w[f.outer[1].branch];
        const W& b = w[f.outer[2].branch];
        const W& a2 = w[f.outer[3].branch];
        piece[i][0] = wmin(a, a2);
        piece[i][1] = wmin(b, b2);
        piece[i][2] = excess(a, a2);
        piece[i][3] = excess(a2, a);
    }
    std::array<std::array<bool, 4>, 2> pos;
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 4; ++k) pos[i][k] = piece[i][k] > 0;
    // Piece ids are assigned in the order SB, ST, D1, D2 among those created.
    int next = t.num_branch_slots();
    std::array<int, 4> id{-1, -1, -1, -1};
    std::array<bool, 4> make{};
    for (int k = 0; k < 4; ++k) {
        make[k] = pos[0][k] || pos[1][k];
        if (make[k]) id[k] = next++;
    }
    for (int i = 0; i < 2; ++i) {
        if (pos[i][2] && pos[1 - i][3]) {
            const int d1 = i == 0 ? 2 : 3;
            cross.present = true;
            cross.branch1 = id[d1];
            cross.branch2 = id[5 - d1];
            cross.x = piece[0][d1];
            cross.y = piece[1][5 - d1];
        }
    }
    split_topology(t, alpha, make[0], make[1], make[2], make[3]);
    j.grow();
    for (int k = 0; k < 4; ++k) {
        if (id[k] < 0) continue;
        for (int i = 0; i < 2; ++i) j.width[i][id[k]] = piece[i][k];
    }
    return cross;
}

template <class W>
void cut_into_stubs(BasicJointTrack<W>& j, int b) {
    auto& t = j.track;
    int c = t.add_branch();
    j.grow();
    j.width[0][c] = j.width[0][b];
    j.width[1][c] = j.width[1][b];
    t.transplant({b, 1}, {c, 1});
}

// Erases (0,0) branches, detaches single-track branches from the common
// part and merges the switches left 2-valent, until nothing changes.
template <class W>
void normalize(BasicJointTrack<W>& j) {
    auto& t = j.track;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int b : t.live_branches()) {
            const bool z1 = j.width[0][b] == 0, z2 = j.width[1][b] == 0;
            if (z1 && z2) {
                t.kill_branch(b);
                changed = true;
                continue;
            }
            if (z1 == z2) continue;
            const Branch& br = t.branch(b);
            for (int e = 0; e < 2; ++e)
                if (br.end[e].kind == EndKind::Puncture) {
                    t.detach({b, e});
                    changed = true;
                }
            const bool s0 = br.end[0].kind == EndKind::Switch, s1 = br.end[1].kind == EndKind::Switch;
            if (!s0 && !s1) {
                t.kill_branch(b);
                changed = true;
            } else if (s0 && s1) {
                cut_into_stubs(j, b);
                changed = true;
            }
        }
        for (int s : t.live_switches()) {
            const int occ = t.occupied_slots(s);
            if (occ == 2) {
                t.merge_switch(s);
                changed = true;
                continue;
            }
            if (occ < 2) {
                t.kill_switch(s);
                changed = true;
                continue;
            }
            bool all_single = true;
            for (int k = 0; k < 3; ++k) all_single = all_single && !j.common(t.slot_branch(s, k));
            if (all_single) {
                std::array<int, 3> bs{t.slot_branch(s, 0), t.slot_branch(s, 1), t.slot_branch(s, 2)};
                t.kill_switch(s);
                for (int b : bs)
                    if (t.branch(b).alive) t.kill_branch(b);
                changed = true;
            }
        }
    }
}

// Widest common wide branch, preferring the pieces of the last split; ties
// go to the lowest id.  Widths are compared by their current values only.
template <class W>
int choose_target(const EngineState<W>& st) {
    const auto& j = st.j;
    const auto& t = j.track;
    auto better = [&](int b, int best) {
        if (best < 0) return true;
        BigInt wb = base(j.width[0][b]) + base(j.width[1][b]);
        BigInt wbest = base(j.width[0][best]) + base(j.width[1][best]);
        if (wb != wbest) return wb > wbest;
        return b < best;
    };
    int best = -1;
    for (int b : st.recent)
        if (t.branch(b).alive && j.common(b) && t.is_wide(b) && better(b, best)) best = b;
    if (best >= 0) return best;
    for (int b : t.live_branches())
        if (j.common(b) && t.is_wide(b) && better(b, best)) best = b;
    return best;
}

template <class W>
SplitCross<W> advance(EngineState<W>& st, int b, bool& at_puncture) {
    auto& t = st.j.track;
    const Branch& br = t.branch(b);
    const int first_new = t.num_branch_slots();
    at_puncture = br.end[0].kind == EndKind::Puncture || br.end[1].kind == EndKind::Puncture;
    st.recent.clear();
    if (at_puncture) {
        const int s = br.end[br.end[0].kind == EndKind::Puncture ? 1 : 0].id;
        st.recent = {t.slot_branch(s, Left), t.slot_branch(s, Right)};
    }
    SplitCross<W> c = split_joint(st.j, b);
    for (int x = first_new; x < t.num_branch_slots(); ++x) st.recent.push_back(x);
    return c;
}

// Zero pattern of a branch (bit 0: first track present, bit 1: second).
template <class W>
int presence(const BasicJointTrack<W>& j, int b) {
    return (sgn(base(j.width[0][b])) > 0 ? 1 : 0) | (sgn(base(j.width[1][b])) > 0 ? 2 : 0);
}

// Canonical description of a state up to relabelling of branches and
// switches, with the branch ids listed in canonical order.
struct Canon {
    std::vector<long> code;
    std::vector<int> order;
};

Canon canonical(const TrainTrack& t, const std::vector<int>& label);

template <class W>
Canon canonical_state(const EngineState<W>& st) {
    std::vector<int> label(st.j.track.num_branch_slots(), 0);
    for (int b = 0; b < st.j.track.num_branch_slots(); ++b)
        if (st.j.track.branch(b).alive) label[b] = presence(st.j, b);
    for (int b : st.recent)
        if (b < static_cast<int>(label.size()) && st.j.track.branch(b).alive) label[b] |= 4;
    return canonical(st.j.track, label);
}

template <class W>
int divergence_points(const BasicJointTrack<W>& j) {
    int n = 0;
    for (int s : j.track.live_switches()) {
        int common = 0, only1 = 0, only2 = 0;
        for (int k = 0; k < 3; ++k) {
            int b = j.track.slot_branch(s, k);
            if (b < 0) continue;
            const int p = presence(j, b);
            common += p == 3;
            only1 += p == 1;
            only2 += p == 2;
        }
        n += common == 1 && only1 == 1 && only2 == 1;
    }
    return n;
}

// ---------------------------------------------------------------------------

class JointEngine {
public:
    JointEngine(JointTrack j, const IntersectionOptions& opt);
    IntersectionResult run();

private:
    struct Seen {
        long clock;
        std::vector<BigInt> widths;
    };

    void step(int b);
    void record(int b1, int b2, const BigInt& points, const BigInt& value);
    bool try_accelerate();
    void maybe_compact();
    void finish();
    void note(const std::string& line);

    EngineState<BigInt> st_;
    IntersectionOptions opt_;
    IntersectionResult res_;
    BigInt sum_ = 0;
    long clock_ = 0;  // splits since the last jump
    std::map<std::vector<long>, Seen> seen_;
};

}  // namespace ntrack::detail
