#include "ntrack/traintrack.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ntrack/errors.hpp"

namespace ntrack {

int TrainTrack::add_switch() {
    switches_.push_back({});
    return static_cast<int>(switches_.size()) - 1;
}

int TrainTrack::add_branch() {
    branches_.push_back({});
    return static_cast<int>(branches_.size()) - 1;
}

int TrainTrack::add_puncture(bool boundary) {
    punctures_.push_back({boundary, {}});
    return static_cast<int>(punctures_.size()) - 1;
}

void TrainTrack::attach_switch(HalfRef h, int s, int slot) {
    auto& rec = switches_.at(s);
    if (rec.slot[slot].valid()) throw IllegalMove("switch slot already occupied");
    rec.slot[slot] = h;
    branches_.at(h.branch).end[h.end] = {EndKind::Switch, s, slot};
}

void TrainTrack::attach_puncture(HalfRef h, int p, int pos) {
    auto& ends = punctures_.at(p).ends;
    if (pos < 0 || pos > static_cast<int>(ends.size())) pos = static_cast<int>(ends.size());
    ends.insert(ends.begin() + pos, h);
    branches_.at(h.branch).end[h.end] = {EndKind::Puncture, p, -1};
}

Attachment TrainTrack::detach(HalfRef h) {
    Attachment a = branches_.at(h.branch).end[h.end];
    if (a.kind == EndKind::Switch) {
        switches_.at(a.id).slot[a.slot] = {};
    } else if (a.kind == EndKind::Puncture) {
        auto& ends = punctures_.at(a.id).ends;
        ends.erase(std::find(ends.begin(), ends.end(), h));
    }
    branches_.at(h.branch).end[h.end] = {};
    return a;
}

void TrainTrack::transplant(HalfRef from, HalfRef h) {
    Attachment a = at(from);
    if (a.kind == EndKind::Switch) {
        detach(from);
        attach_switch(h, a.id, a.slot);
    } else if (a.kind == EndKind::Puncture) {
        int pos = puncture_position(from);
        detach(from);
        attach_puncture(h, a.id, pos);
    } else {
        detach(from);
    }
}

void TrainTrack::kill_branch(int b) {
    detach({b, 0});
    detach({b, 1});
    branches_.at(b).alive = false;
}

void TrainTrack::kill_switch(int s) {
    for (int k = 0; k < 3; ++k)
        if (switches_.at(s).slot[k].valid()) detach(switches_[s].slot[k]);
    switches_.at(s).alive = false;
}

int TrainTrack::occupied_slots(int s) const {
    int n = 0;
    for (const auto& h : switches_.at(s).slot) n += h.valid();
    return n;
}

int TrainTrack::puncture_position(HalfRef h) const {
    const Attachment& a = at(h);
    if (a.kind != EndKind::Puncture) return -1;
    const auto& ends = punctures_.at(a.id).ends;
    return static_cast<int>(std::find(ends.begin(), ends.end(), h) - ends.begin());
}

int TrainTrack::merge_switch(int s) {
    std::vector<HalfRef> hs;
    for (const auto& h : switches_.at(s).slot)
        if (h.valid()) hs.push_back(h);
    if (hs.size() != 2) throw IllegalMove("merge needs a switch with exactly two branches");
    detach(hs[0]);
    detach(hs[1]);
    switches_[s].alive = false;
    if (hs[0].branch == hs[1].branch) return hs[0].branch;  // closes up into a free circle
    HalfRef keep = hs[0].branch < hs[1].branch ? hs[0] : hs[1];
    HalfRef gone = hs[0].branch < hs[1].branch ? hs[1] : hs[0];
    transplant(other_end(gone), keep);
    branches_[gone.branch].alive = false;
    return keep.branch;
}

int TrainTrack::count_switches() const {
    return static_cast<int>(std::count_if(switches_.begin(), switches_.end(), [](const auto& s) { return s.alive; }));
}

int TrainTrack::count_branches() const {
    return static_cast<int>(std::count_if(branches_.begin(), branches_.end(), [](const auto& b) { return b.alive; }));
}

std::vector<int> TrainTrack::live_branches() const {
    std::vector<int> out;
    for (int b = 0; b < num_branch_slots(); ++b)
        if (branches_[b].alive) out.push_back(b);
    return out;
}

std::vector<int> TrainTrack::live_switches() const {
    std::vector<int> out;
    for (int s = 0; s < num_switch_slots(); ++s)
        if (switches_[s].alive) out.push_back(s);
    return out;
}

std::vector<int> TrainTrack::compact() {
    std::vector<int> bmap(branches_.size(), -1), smap(switches_.size(), -1);
    std::vector<Branch> nb;
    std::vector<SwitchRec> ns;
    for (std::size_t b = 0; b < branches_.size(); ++b)
        if (branches_[b].alive) {
            bmap[b] = static_cast<int>(nb.size());
            nb.push_back(branches_[b]);
        }
    for (std::size_t s = 0; s < switches_.size(); ++s)
        if (switches_[s].alive) {
            smap[s] = static_cast<int>(ns.size());
            ns.push_back(switches_[s]);
        }
    auto remap = [&](HalfRef& h) {
        if (h.valid()) h.branch = bmap[h.branch];
    };
    for (auto& br : nb)
        for (auto& a : br.end)
            if (a.kind == EndKind::Switch) a.id = smap[a.id];
    for (auto& sw : ns)
        for (auto& h : sw.slot) remap(h);
    for (auto& p : punctures_)
        for (auto& h : p.ends) remap(h);
    branches_ = std::move(nb);
    switches_ = std::move(ns);
    return bmap;
}

bool TrainTrack::is_wide(int b) const {
    const auto& br = branches_.at(b);
    if (!br.alive) return false;
    auto large = [](const Attachment& a) { return a.kind == EndKind::Switch && a.slot == Large; };
    auto punct = [](const Attachment& a) { return a.kind == EndKind::Puncture; };
    if (large(br.end[0]) && large(br.end[1])) return true;
    return (large(br.end[0]) && punct(br.end[1])) || (punct(br.end[0]) && large(br.end[1]));
}

std::string check_switch_conditions(const MeasuredTrainTrack& m) {
    const auto& t = m.track;
    for (int s : t.live_switches()) {
        std::array<int, 3> b{};
        for (int k = 0; k < 3; ++k) {
            b[k] = t.slot_branch(s, k);
            if (b[k] < 0) return "switch " + std::to_string(s) + " has an empty slot";
        }
        if (m.w(b[0]) != m.w(b[1]) + m.w(b[2]))
            return "switch " + std::to_string(s) + ": large width " + to_string(m.w(b[0])) + " != " +
                   to_string(m.w(b[1])) + " + " + to_string(m.w(b[2]));
    }
    for (int b : t.live_branches())
        if (m.w(b) < 0) return "branch " + std::to_string(b) + " has negative width";
    return {};
}

TrackComplexity track_complexity(const MeasuredTrainTrack& m) {
    TrackComplexity c;
    for (int b : m.track.live_branches()) {
        double l = log2p1(m.w(b));
        c.full += 1.0 + l;
        if (!m.track.branch(b).is_free()) c.reduced += 1.0 + l;
    }
    return c;
}

namespace {

std::string attachment_text(const Attachment& a) {
    switch (a.kind) {
        case EndKind::None:
            return "-";
        case EndKind::Puncture:
            return "p" + std::to_string(a.id);
        case EndKind::Switch:
            return "s" + std::to_string(a.id) + "." + "Llr"[a.slot];
    }
    return "?";
}

}  // namespace

std::string dump_track(const MeasuredTrainTrack& m) {
    const auto& t = m.track;
    std::ostringstream out;
    out << "track switches " << t.count_switches() << " branches " << t.count_branches() << " punctures "
        << t.num_punctures() << "\n";
    for (int p = 0; p < t.num_punctures(); ++p) {
        out << "puncture " << p << (t.puncture(p).boundary ? " boundary" : " internal") << " :";
        for (const auto& h : t.puncture(p).ends) out << " " << h.branch << "." << h.end;
        out << "\n";
    }
    for (int s : t.live_switches()) {
        out << "switch " << s;
        for (int k = 0; k < 3; ++k) {
            HalfRef h = t.slot_ref(s, k);
            out << " " << "Llr"[k] << " " << h.branch << "." << h.end;
        }
        out << "\n";
    }
    for (int b : t.live_branches()) {
        const auto& br = t.branch(b);
        out << "branch " << b << " " << attachment_text(br.end[0]) << " " << attachment_text(br.end[1]) << " width "
            << to_string(m.w(b));
        if (br.is_free_circle()) out << " circle";
        else if (br.is_free()) out << " free";
        out << "\n";
    }
    return out.str();
}

// ---------------------------------------------------------------------------

const char* move_name(MoveKind k) {
    switch (k) {
        case MoveKind::RemoveTrivial:
            return "remove_trivial";
        case MoveKind::OrdinarySplit:
            return "ordinary_split";
        case MoveKind::MultipleSplit:
            return "multiple_split";
        case MoveKind::Slide:
            return "slide";
    }
    return "?";
}

SplitFrame split_frame(const TrainTrack& t, int alpha) {
    const Branch& br = t.branch(alpha);
    SplitFrame f;
    f.a_switch = br.end[0].id;
    f.b_switch = br.end[1].id;
    f.outer = {t.slot_ref(f.a_switch, Left), t.slot_ref(f.a_switch, Right), t.slot_ref(f.b_switch, Left),
               t.slot_ref(f.b_switch, Right)};
    return f;
}

SplitPieces split_topology(TrainTrack& t, int alpha, bool sb, bool st, bool d1, bool d2) {
    SplitFrame f = split_frame(t, alpha);
    t.kill_branch(alpha);
    for (const auto& h : f.outer) t.detach(h);
    t.kill_switch(f.a_switch);
    t.kill_switch(f.b_switch);

    // New switches at the four corners, large tail on the outer branch.
    const int s_a = t.add_switch(), s_b2 = t.add_switch(), s_b = t.add_switch(), s_a2 = t.add_switch();
    t.attach_switch(f.outer[0], s_a, Large);
    t.attach_switch(f.outer[1], s_b2, Large);
    t.attach_switch(f.outer[2], s_b, Large);
    t.attach_switch(f.outer[3], s_a2, Large);

    SplitPieces p;
    auto piece = [&](bool want, int s0, int k0, int s1, int k1) {
        if (!want) return -1;
        int b = t.add_branch();
        t.attach_switch({b, 0}, s0, k0);
        t.attach_switch({b, 1}, s1, k1);
        return b;
    };
    p.sb = piece(sb, s_a, Right, s_a2, Left);
    p.st = piece(st, s_b2, Left, s_b, Right);
    p.d1 = piece(d1, s_a, Left, s_b, Left);
    p.d2 = piece(d2, s_b2, Right, s_a2, Right);

    for (int s : {s_a, s_b2, s_b, s_a2}) {
        int occ = t.occupied_slots(s);
        if (occ == 2) t.merge_switch(s);
        else if (occ < 2) throw IllegalMove("split would leave a dangling switch");
    }
    for (int* b : {&p.sb, &p.st, &p.d1, &p.d2})
        if (*b >= 0 && !t.branch(*b).alive) *b = -1;
    return p;
}

void puncture_split_topology(TrainTrack& t, int alpha) {
    const Branch& br = t.branch(alpha);
    const int pe = br.end[0].kind == EndKind::Puncture ? 0 : 1;
    const int p = br.end[pe].id;
    const int s = br.end[1 - pe].id;
    HalfRef left = t.slot_ref(s, Left), right = t.slot_ref(s, Right);
    int pos = t.puncture_position({alpha, pe});
    t.kill_branch(alpha);
    t.detach(left);
    t.detach(right);
    t.kill_switch(s);
    t.attach_puncture(right, p, pos);
    t.attach_puncture(left, p, pos + 1);
}

int twist_circle_partner(const TrainTrack& t, int gamma) {
    const Branch& g = t.branch(gamma);
    if (!g.alive || g.end[0].kind != EndKind::Switch || g.end[1].kind != EndKind::Switch) return -1;
    if (g.end[0].slot != Large || g.end[1].slot != Large) return -1;
    const int S = g.end[0].id, T = g.end[1].id;
    if (S == T) return -1;
    for (int ks : {Left, Right}) {
        HalfRef h = t.slot_ref(S, ks);
        const Attachment& far = t.at(other_end(h));
        if (far.kind != EndKind::Switch || far.id != T || far.slot == Large) continue;
        const int e_s = 3 - ks, e_t = 3 - far.slot;
        if ((e_s == Left) == (e_t == Left)) return h.branch;
    }
    return -1;
}

long max_multiple_split(const MeasuredTrainTrack& m, int gamma) {
    int beta = twist_circle_partner(m.track, gamma);
    if (beta < 0) return 0;
    const BigInt& b = m.w(beta);
    const BigInt& c = m.w(gamma);
    if (!(b < c && c <= 2 * b)) return 0;
    BigInt k = b / (c - b);
    return k.fits_slong_p() ? k.get_si() : 0;
}

namespace {

int remove_trivial(MeasuredTrainTrack& m) {
    auto& t = m.track;
    int cost = 0;
    for (int b : t.live_branches()) {
        if (m.w(b) != 0) continue;
        if (!t.branch(b).is_free()) ++cost;
        t.kill_branch(b);
    }
    bool again = true;
    while (again) {
        again = false;
        for (int s : t.live_switches()) {
            int occ = t.occupied_slots(s);
            if (occ == 3) continue;
            if (occ == 2) t.merge_switch(s);
            else t.kill_switch(s);
            again = true;
        }
    }
    return cost;
}

void ordinary_split(MeasuredTrainTrack& m, int alpha) {
    auto& t = m.track;
    const Branch& br = t.branch(alpha);
    if (!t.is_wide(alpha)) throw IllegalMove("branch " + std::to_string(alpha) + " is not wide");
    if (br.end[0].kind == EndKind::Puncture || br.end[1].kind == EndKind::Puncture) {
        puncture_split_topology(t, alpha);
        return;
    }
    SplitFrame f = split_frame(t, alpha);
    if (f.a_switch == f.b_switch) throw IllegalMove("wide branch is a loop at one switch");
    BigInt a = m.w(f.outer[0].branch), b2 = m.w(f.outer[1].branch);
    BigInt b = m.w(f.outer[2].branch), a2 = m.w(f.outer[3].branch);
    if (a == 0 || b2 == 0 || b == 0 || a2 == 0)
        throw IllegalMove("split next to a zero-width branch; remove trivial branches first");
    BigInt sb = big_min(a, a2), st = big_min(b, b2);
    BigInt d1 = a > a2 ? BigInt(a - a2) : BigInt(0);
    BigInt d2 = a2 > a ? BigInt(a2 - a) : BigInt(0);
    SplitPieces p = split_topology(t, alpha, sb > 0, st > 0, d1 > 0, d2 > 0);
    m.grow();
    if (p.sb >= 0) m.width[p.sb] = sb;
    if (p.st >= 0) m.width[p.st] = st;
    if (p.d1 >= 0) m.width[p.d1] = d1;
    if (p.d2 >= 0) m.width[p.d2] = d2;
}

void slide(MeasuredTrainTrack& m, int alpha) {
    auto& t = m.track;
    const Branch& br = t.branch(alpha);
    if (!br.alive || br.end[0].kind != EndKind::Switch || br.end[1].kind != EndKind::Switch)
        throw IllegalMove("slide needs a branch between two switches");
    int e1 = -1;
    for (int e = 0; e < 2; ++e)
        if (br.end[e].slot == Large && br.end[1 - e].slot != Large) e1 = e;
    if (e1 < 0) throw IllegalMove("slide needs one ingoing and one outgoing tail");
    const int S1 = br.end[e1].id, S2 = br.end[1 - e1].id, s = br.end[1 - e1].slot;
    if (S1 == S2) throw IllegalMove("slide along a loop");
    HalfRef a2{alpha, 1 - e1};
    HalfRef x = t.slot_ref(S1, Left), y = t.slot_ref(S1, Right), beta2 = t.slot_ref(S2, 3 - s);
    for (HalfRef h : {x, y, beta2, a2}) t.detach(h);
    if (s == Right) {
        t.attach_switch(beta2, S1, Left);
        t.attach_switch(x, S1, Right);
        t.attach_switch(a2, S2, Left);
        t.attach_switch(y, S2, Right);
        m.width[alpha] = m.w(beta2.branch) + m.w(x.branch);
    } else {
        t.attach_switch(y, S1, Left);
        t.attach_switch(beta2, S1, Right);
        t.attach_switch(x, S2, Left);
        t.attach_switch(a2, S2, Right);
        m.width[alpha] = m.w(y.branch) + m.w(beta2.branch);
    }
}

double multiple_split(MeasuredTrainTrack& m, int gamma, long k) {
    int beta = twist_circle_partner(m.track, gamma);
    if (beta < 0) throw IllegalMove("branch " + std::to_string(gamma) + " does not lie on a twistable circle");
    long kmax = max_multiple_split(m, gamma);
    if (k == 0) k = kmax;
    if (k < 1 || k > kmax) throw IllegalMove("multiple split multiplicity out of range");
    BigInt a = m.w(gamma) - m.w(beta);
    m.width[beta] -= a * k;
    m.width[gamma] -= a * k;
    return std::log2(static_cast<double>(k) + 1.0);
}

}  // namespace

MoveOutcome apply_move(MeasuredTrainTrack& m, const Move& move) {
    const double before = track_complexity(m).reduced;
    double cost = 0;
    switch (move.kind) {
        case MoveKind::RemoveTrivial:
            cost = remove_trivial(m);
            break;
        case MoveKind::OrdinarySplit:
            ordinary_split(m, move.target);
            cost = 1;
            break;
        case MoveKind::MultipleSplit:
            cost = multiple_split(m, move.target, move.k);
            break;
        case MoveKind::Slide:
            slide(m, move.target);
            cost = 1;
            break;
    }
    return {before - track_complexity(m).reduced, cost};
}

std::pair<MeasuredTrainTrack, MoveOutcome> apply_move_copy(const MeasuredTrainTrack& m, const Move& move) {
    MeasuredTrainTrack out = m;
    MoveOutcome o = apply_move(out, move);
    return {std::move(out), o};
}

}  // namespace ntrack
