#include "joint_engine.hpp"

#include <chrono>
#include <deque>
#include <sstream>

#include "ntrack/errors.hpp"

namespace ntrack::detail {

Horizon*& active_horizon() {
    thread_local Horizon* h = nullptr;
    return h;
}

int affine_sign(const Affine& d) {
    const int sc = sgn(d.c);
    if (Horizon* h = active_horizon()) {
        if (sc == 0) {
            if (d.s != 0) h->cap(0);
        } else if (sc > 0 && d.s < 0) {
            h->cap(BigInt((d.c - 1) / (-d.s)));
        } else if (sc < 0 && d.s > 0) {
            h->cap(BigInt((-d.c - 1) / d.s));
        }
    }
    return sc;
}

namespace {

// Breadth-first numbering from a set of seed ends.  Switches get indices in
// order of discovery; each branch is written as its label and its two ends,
// starting from the end it was reached through.
class Numbering {
public:
    Numbering(const TrainTrack& t, const std::vector<int>& label, std::vector<int>& branch_seen,
              std::vector<int>& switch_index, int& switches)
        : t_(t), label_(label), seen_(branch_seen), sw_(switch_index), switches_(switches) {}

    void seed(HalfRef h) { queue_.push_back(h); }

    void run(std::vector<long>& code, std::vector<int>& order) {
        while (!queue_.empty()) {
            HalfRef h = queue_.front();
            queue_.pop_front();
            if (seen_[h.branch]) continue;
            seen_[h.branch] = 1;
            order.push_back(h.branch);
            code.push_back(label_[h.branch]);
            describe(h, code);
            describe(other_end(h), code);
        }
    }

private:
    void describe(HalfRef h, std::vector<long>& code) {
        const Attachment& a = t_.at(h);
        switch (a.kind) {
            case EndKind::None:
                code.push_back(0);
                break;
            case EndKind::Puncture:
                code.push_back(1);
                code.push_back(a.id);
                code.push_back(t_.puncture_position(h));
                break;
            case EndKind::Switch:
                if (sw_[a.id] < 0) {
                    sw_[a.id] = switches_++;
                    for (int k = 0; k < 3; ++k) {
                        HalfRef s = t_.slot_ref(a.id, k);
                        if (s.valid()) queue_.push_back(s);
                    }
                }
                code.push_back(2);
                code.push_back(sw_[a.id]);
                code.push_back(a.slot);
                break;
        }
    }

    const TrainTrack& t_;
    const std::vector<int>& label_;
    std::vector<int>& seen_;
    std::vector<int>& sw_;
    int& switches_;
    std::deque<HalfRef> queue_;
};

}  // namespace

Canon canonical(const TrainTrack& t, const std::vector<int>& label) {
    Canon out;
    std::vector<int> seen(t.num_branch_slots(), 0), sw(t.num_switch_slots(), -1);
    int switches = 0;
    {
        Numbering n(t, label, seen, sw, switches);
        for (int p = 0; p < t.num_punctures(); ++p)
            for (HalfRef h : t.puncture(p).ends) n.seed(h);
        n.run(out.code, out.order);
    }
    // Components away from the punctures: start from whichever end gives the
    // smallest description.
    for (;;) {
        std::vector<int> rest;
        for (int b : t.live_branches())
            if (!seen[b]) rest.push_back(b);
        if (rest.empty()) break;
        out.code.push_back(-1);
        std::vector<long> best_code;
        std::vector<int> best_order, best_seen, best_sw;
        int best_switches = 0;
        for (int b : rest)
            for (int e = 0; e < 2; ++e) {
                std::vector<int> s2 = seen, w2 = sw;
                int n2 = switches;
                std::vector<long> c;
                std::vector<int> o;
                Numbering n(t, label, s2, w2, n2);
                n.seed({b, e});
                n.run(c, o);
                if (best_order.empty() || c < best_code) {
                    best_code = std::move(c);
                    best_order = std::move(o);
                    best_seen = std::move(s2);
                    best_sw = std::move(w2);
                    best_switches = n2;
                }
            }
        out.code.insert(out.code.end(), best_code.begin(), best_code.end());
        out.order.insert(out.order.end(), best_order.begin(), best_order.end());
        seen = std::move(best_seen);
        sw = std::move(best_sw);
        switches = best_switches;
    }
    return out;
}

namespace {

std::string pair_text(const JointTrack& j, int b) {
    return "(" + to_string(j.width[0][b]) + "," + to_string(j.width[1][b]) + ")";
}

int full_switches(const JointTrack& j, int i) {
    int q = 0;
    for (int s : j.track.live_switches()) {
        bool all = true;
        for (int k = 0; k < 3; ++k) {
            int b = j.track.slot_branch(s, k);
            all = all && b >= 0 && j.width[i][b] > 0;
        }
        q += all;
    }
    return q;
}

std::vector<BigInt> canonical_widths(const JointTrack& j, const std::vector<int>& order) {
    std::vector<BigInt> w;
    w.reserve(2 * order.size());
    for (int b : order) {
        w.push_back(j.width[0][b]);
        w.push_back(j.width[1][b]);
    }
    return w;
}

// Sum over t = 0..m of (x.c + x.s t)(y.c + y.s t).
BigInt product_sum(const Affine& x, const Affine& y, const BigInt& m) {
    const BigInt n = m + 1;
    const BigInt s1 = m * n / 2;
    const BigInt s2 = m * n * (2 * m + 1) / 6;
    return n * x.c * y.c + (x.c * y.s + x.s * y.c) * s1 + x.s * y.s * s2;
}

}  // namespace

JointEngine::JointEngine(JointTrack j, const IntersectionOptions& opt) : opt_(opt) {
    st_.j = std::move(j);
    st_.j.grow();
    const int q = full_switches(st_.j, 0) + full_switches(st_.j, 1);
    res_.stats.divergence_cap = st_.j.track.num_punctures() + 4 + 3 * q;
}

void JointEngine::note(const std::string& line) {
    if (opt_.trace) res_.trace.push_back(line);
}

void JointEngine::record(int b1, int b2, const BigInt& points, const BigInt& value) {
    CrossTerm c;
    c.branch1 = b1;
    c.branch2 = b2;
    c.points = points;
    c.value = value;
    sum_ += value;
    res_.crossings.push_back(c);
}

void JointEngine::step(int b) {
    const auto& t = st_.j.track;
    const int first_new = t.num_branch_slots();
    std::string before = opt_.trace ? pair_text(st_.j, b) : "";
    bool at_puncture = false;
    SplitCross<BigInt> c = advance(st_, b, at_puncture);
    ++(at_puncture ? res_.stats.puncture_splits : res_.stats.splits);
    ++res_.stats.steps;
    ++clock_;
    if (c.present) record(c.branch1, c.branch2, 1, c.x * c.y);
    if (opt_.trace) {
        std::ostringstream line;
        line << (at_puncture ? "puncture_split " : "split ") << b << ' ' << before;
        for (int x = first_new; x < t.num_branch_slots(); ++x)
            if (t.branch(x).alive) line << ' ' << x << pair_text(st_.j, x);
        if (c.present) line << " cross " << c.branch1 << 'x' << c.branch2 << " +" << to_string(c.x * c.y);
        note(line.str());
    }
}

// Looks for a repeated state and, when the intervening period acts on the
// widths by a constant shift, replays it once with symbolic widths to find
// how many further periods keep every decision, then jumps over them.
bool JointEngine::try_accelerate() {
    Canon now = canonical_state(st_);
    std::vector<BigInt> w2 = canonical_widths(st_.j, now.order);
    auto it = seen_.find(now.code);
    if (it == seen_.end()) {
        seen_.emplace(now.code, Seen{clock_, std::move(w2)});
        return false;
    }
    const long period = clock_ - it->second.clock;
    std::vector<BigInt> delta(w2.size());
    bool moving = false;
    for (std::size_t k = 0; k < w2.size(); ++k) {
        delta[k] = w2[k] - it->second.widths[k];
        moving = moving || delta[k] != 0;
    }
    it->second = Seen{clock_, w2};
    if (!moving || period <= 0) return false;

    EngineState<Affine> rep;
    rep.j.track = st_.j.track;
    rep.j.grow();
    for (std::size_t k = 0; k < now.order.size(); ++k) {
        const int b = now.order[k];
        for (int i = 0; i < 2; ++i) rep.j.width[i][b] = Affine{w2[2 * k + i], delta[2 * k + i]};
    }
    rep.recent = st_.recent;

    Horizon horizon;
    active_horizon() = &horizon;
    struct Pending {
        Affine x, y;
        int b1, b2;
    };
    std::vector<Pending> crosses;
    long splits = 0, puncture_splits = 0;
    bool ok = true;
    try {
        for (std::size_t k = 0; k < now.order.size(); ++k)
            for (int i = 0; i < 2; ++i) affine_sign(rep.j.width[i][now.order[k]]);
        for (long s = 0; s < period && ok; ++s) {
            normalize(rep.j);
            const int b = choose_target(rep);
            if (b < 0) {
                ok = false;
                break;
            }
            bool at_puncture = false;
            SplitCross<Affine> c = advance(rep, b, at_puncture);
            ++(at_puncture ? puncture_splits : splits);
            if (c.present) crosses.push_back({c.x, c.y, c.branch1, c.branch2});
        }
        if (ok) {
            normalize(rep.j);
            for (int b : rep.j.track.live_branches())
                for (int i = 0; i < 2; ++i) affine_sign(rep.j.width[i][b]);
        }
    } catch (...) {
        active_horizon() = nullptr;
        throw;
    }
    active_horizon() = nullptr;
    if (!ok || !horizon.bounded) return false;

    Canon end = canonical_state(rep);
    if (end.code != now.code) return false;
    for (std::size_t k = 0; k < end.order.size(); ++k) {
        for (int i = 0; i < 2; ++i) {
            const Affine& w = rep.j.width[i][end.order[k]];
            if (w.c != w2[2 * k + i] + delta[2 * k + i] || w.s != delta[2 * k + i]) return false;
        }
    }

    const BigInt m = horizon.limit;
    JointTrack next;
    next.track = std::move(rep.j.track);
    next.grow();
    for (int b : next.track.live_branches())
        for (int i = 0; i < 2; ++i) next.width[i][b] = rep.j.width[i][b].c + rep.j.width[i][b].s * m;
    st_.j = std::move(next);
    st_.recent = std::move(rep.recent);

    const BigInt reps = m + 1;
    for (const auto& c : crosses) record(c.b1, c.b2, reps, product_sum(c.x, c.y, m));
    res_.stats.splits += splits;
    res_.stats.puncture_splits += puncture_splits;
    res_.stats.steps += period;
    ++res_.stats.accelerations;
    res_.stats.jumped_steps += m * period;
    note("jump period " + std::to_string(period) + " repeated " + to_string(reps) + " times");
    seen_.clear();
    clock_ = 0;
    return true;
}

void JointEngine::maybe_compact() {
    auto& t = st_.j.track;
    if (t.num_branch_slots() < 256 || t.num_branch_slots() < 4 * t.count_branches()) return;
    if (opt_.trace) return;  // keep ids stable in traces
    const std::vector<int> map = t.compact();
    for (auto& w : st_.j.width) {
        std::vector<BigInt> moved(t.num_branch_slots());
        for (std::size_t b = 0; b < map.size() && b < w.size(); ++b)
            if (map[b] >= 0) moved[map[b]] = std::move(w[b]);
        w = std::move(moved);
    }
    std::vector<int> recent;
    for (int b : st_.recent)
        if (b < static_cast<int>(map.size()) && map[b] >= 0) recent.push_back(map[b]);
    st_.recent = std::move(recent);
}

void JointEngine::finish() {
    const auto& t = st_.j.track;
    for (int b : t.live_branches()) {
        if (!st_.j.common(b)) continue;
        const Branch& br = t.branch(b);
        if (!br.is_free()) throw Error("joint simplification stalled at branch " + std::to_string(b));
        if (br.end[0].kind == EndKind::Puncture && br.end[1].kind == EndKind::Puncture) {
            BigInt v = st_.j.width[0][b] * st_.j.width[1][b];
            sum_ -= v;
            res_.parallel_arcs.push_back({b, v});
            note("parallel_arc " + std::to_string(b) + ' ' + pair_text(st_.j, b) + " -" + to_string(v));
        }
    }
    res_.value = sum_;
}

IntersectionResult JointEngine::run() {
    using clock = std::chrono::steady_clock;
    const auto t0 = clock::now();
    for (;;) {
        normalize(st_.j);
        res_.stats.max_divergence = std::max(res_.stats.max_divergence, divergence_points(st_.j));
        if (opt_.accelerate && try_accelerate()) continue;
        const int b = choose_target(st_);
        if (b < 0) break;
        if (opt_.max_steps && res_.stats.steps >= opt_.max_steps) throw Error("joint simplification step limit reached");
        step(b);
        maybe_compact();
    }
    const auto t1 = clock::now();
    finish();
    res_.stats.simplify_seconds = std::chrono::duration<double>(t1 - t0).count();
    res_.stats.sum_seconds = std::chrono::duration<double>(clock::now() - t1).count();
    return std::move(res_);
}

}  // namespace ntrack::detail
