#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>

#include "ntrack/errors.hpp"
#include "ntrack/traintrack.hpp"

namespace ntrack {

namespace {

constexpr int kMaxDepth = 3;
constexpr int kRadius = 2;
constexpr double kSlack = 1e-9;

struct Plan {
    std::vector<Move> moves;
    double gain = 0;
    double cost = 0;
    bool removed = false;  // some trivial branch was removed along the way
};

bool progress(double g, double p) { return g >= 1 - kSlack && g >= p / 3 - kSlack; }

bool has_zero(const MeasuredTrainTrack& m) {
    for (int b : m.track.live_branches())
        if (m.w(b) == 0) return true;
    return false;
}

bool has_trivial(const MeasuredTrainTrack& m) {
    for (int b : m.track.live_branches())
        if (m.w(b) == 0 && !m.track.branch(b).is_free()) return true;
    return false;
}

bool slideable(const TrainTrack& t, int b) {
    const Branch& br = t.branch(b);
    if (!br.alive || br.end[0].kind != EndKind::Switch || br.end[1].kind != EndKind::Switch) return false;
    if (br.end[0].id == br.end[1].id) return false;
    return (br.end[0].slot == Large) != (br.end[1].slot == Large);
}

// Branches touching a switch within kRadius hops of the focus branches.
std::vector<int> neighbourhood(const TrainTrack& t, const std::vector<int>& focus) {
    std::vector<int> dist(t.num_switch_slots(), -1), queue;
    for (int b : focus) {
        if (b < 0 || b >= t.num_branch_slots() || !t.branch(b).alive) continue;
        for (const auto& a : t.branch(b).end)
            if (a.kind == EndKind::Switch && dist[a.id] < 0) {
                dist[a.id] = 0;
                queue.push_back(a.id);
            }
    }
    std::set<int> out(focus.begin(), focus.end());
    for (std::size_t i = 0; i < queue.size(); ++i) {
        const int s = queue[i];
        for (int k = 0; k < 3; ++k) {
            HalfRef h = t.slot_ref(s, k);
            if (!h.valid()) continue;
            out.insert(h.branch);
            const Attachment& far = t.at(other_end(h));
            if (far.kind == EndKind::Switch && dist[far.id] < 0 && dist[s] < kRadius) {
                dist[far.id] = dist[s] + 1;
                queue.push_back(far.id);
            }
        }
    }
    std::vector<int> v;
    for (int b : out)
        if (b >= 0 && b < t.num_branch_slots() && t.branch(b).alive) v.push_back(b);
    return v;
}

// Candidate moves near the focus, first choice first: splits (the focus
// branch ahead of the rest), slides, then multiple splits.
std::vector<Move> candidates(const MeasuredTrainTrack& m, const std::vector<int>& focus) {
    const auto& t = m.track;
    std::vector<int> near = neighbourhood(t, focus);
    std::vector<Move> out;
    std::vector<int> order;
    for (int b : focus)
        if (std::find(near.begin(), near.end(), b) != near.end()) order.push_back(b);
    for (int b : near)
        if (std::find(order.begin(), order.end(), b) == order.end()) order.push_back(b);
    for (int b : order)
        if (t.is_wide(b)) out.push_back({MoveKind::OrdinarySplit, b, 0});
    for (int b : order)
        if (slideable(t, b)) out.push_back({MoveKind::Slide, b, 0});
    for (int b : order) {
        long k = max_multiple_split(m, b);
        if (k >= 1) out.push_back({MoveKind::MultipleSplit, b, k});
    }
    return out;
}

struct Applied {
    MoveOutcome move, cleanup;
};

Applied apply_with_cleanup(MeasuredTrainTrack& m, const Move& mv) {
    Applied a;
    a.move = apply_move(m, mv);
    if (has_zero(m)) a.cleanup = apply_move(m, {MoveKind::RemoveTrivial, -1, 0});
    return a;
}

// The case letter of a recipe, from the shape of its move sequence.
std::string label_of(const Plan& p, int alpha) {
    std::string shape;
    for (const auto& mv : p.moves) {
        if (mv.kind == MoveKind::MultipleSplit) return "K";
        shape += mv.kind == MoveKind::Slide ? 'l' : 's';
    }
    if (shape == "s") return p.moves[0].target == alpha ? "A" : "E";
    if (shape == "ls") return "B";
    if (shape == "ss") return p.removed ? "J" : (p.gain > 2 ? "L" : "C");
    if (shape == "sl") return p.gain > 2 ? "H" : "D";
    if (shape == "sll") return "G";
    if (shape == "ssl" || shape == "sss" || shape == "sls") return p.removed ? "J" : "F";
    return "F";
}

int label_rank(const std::string& l) {
    static const std::string order = "AEKBCLDHGJF";
    auto pos = order.find(l[0]);
    return pos == std::string::npos ? 99 : static_cast<int>(pos);
}

void search(const MeasuredTrainTrack& m, const std::vector<int>& focus, int depth, Plan& path,
            std::vector<Plan>& found) {
    for (const Move& mv : candidates(m, focus)) {
        MeasuredTrainTrack next = m;
        const int first_new = next.track.num_branch_slots();
        Applied a;
        try {
            a = apply_with_cleanup(next, mv);
        } catch (const IllegalMove&) {
            continue;
        }
        path.moves.push_back(mv);
        const Plan saved = path;
        path.gain += a.move.gain + a.cleanup.gain;
        path.cost += a.move.cost + a.cleanup.cost;
        path.removed = path.removed || a.cleanup.cost > 0;
        if (depth == 1) {
            if (progress(path.gain, path.cost)) found.push_back(path);
        } else if (next.track.count_switches() > 0) {
            std::vector<int> f;
            if (mv.target < next.track.num_branch_slots() && next.track.branch(mv.target).alive) f.push_back(mv.target);
            for (int b = first_new; b < next.track.num_branch_slots(); ++b)
                if (next.track.branch(b).alive) f.push_back(b);
            if (f.empty()) f = focus;
            search(next, f, depth - 1, path, found);
        }
        path = saved;
        path.moves.pop_back();
    }
}

// Shortest recipe around alpha meeting the gain threshold; among recipes of
// that length the earliest case letter wins, then enumeration order.
bool find_recipe(const MeasuredTrainTrack& m, int alpha, Plan& best, std::string& label) {
    for (int depth = 1; depth <= kMaxDepth; ++depth) {
        std::vector<Plan> found;
        Plan path;
        search(m, {alpha}, depth, path, found);
        int best_rank = 1000;
        for (const Plan& p : found) {
            std::string l = label_of(p, alpha);
            if (label_rank(l) < best_rank) {
                best_rank = label_rank(l);
                best = p;
                label = l;
            }
        }
        if (!found.empty()) return true;
    }
    return false;
}

int widest_wide(const MeasuredTrainTrack& m, bool puncture_only) {
    const auto& t = m.track;
    int best = -1;
    for (int b : t.live_branches()) {
        if (!t.is_wide(b)) continue;
        const Branch& br = t.branch(b);
        const bool punct = br.end[0].kind == EndKind::Puncture || br.end[1].kind == EndKind::Puncture;
        if (puncture_only && !punct) continue;
        if (best < 0 || m.w(b) > m.w(best)) best = b;
    }
    return best;
}

class Driver {
public:
    explicit Driver(MeasuredTrainTrack m) : m_(std::move(m)) {}

    std::pair<MeasuredTrainTrack, SimplificationTrace> run() {
        const double start = track_complexity(m_).reduced;
        for (;;) {
            if (has_zero(m_)) {
                const bool counted = has_trivial(m_);
                begin(counted ? "trivial" : "", -1);
                play({MoveKind::RemoveTrivial, -1, 0});
                end(counted);
                continue;
            }
            if (m_.track.count_switches() == 0) break;
            int alpha = widest_wide(m_, true);
            if (alpha >= 0) {
                begin("puncture", alpha);
                play_with_cleanup({MoveKind::OrdinarySplit, alpha, 0});
                end(true);
                continue;
            }
            alpha = widest_wide(m_, false);
            if (alpha < 0) throw IllegalMove("track with switches but no wide branch");
            Plan plan;
            std::string label;
            const bool ok = find_recipe(m_, alpha, plan, label);
            if (!ok) plan.moves = {{MoveKind::OrdinarySplit, alpha, 0}};
            begin(ok ? label : "A", alpha);
            step_.fallback = !ok;
            for (const Move& mv : plan.moves) play_with_cleanup(mv);
            end(true);
        }
        trace_.total_gain = start - track_complexity(m_).reduced;
        return {std::move(m_), std::move(trace_)};
    }

private:
    void begin(const std::string& label, int alpha) {
        step_ = {};
        step_.label = label;
        step_.alpha = alpha;
        step_.first_move = static_cast<int>(trace_.moves.size());
    }

    void end(bool counted) {
        step_.num_moves = static_cast<int>(trace_.moves.size()) - step_.first_move;
        if (counted) trace_.steps.push_back(step_);
    }

    void play(const Move& mv) {
        MoveOutcome o = apply_move(m_, mv);
        std::string why = check_switch_conditions(m_);
        if (!why.empty()) throw IllegalMove(std::string(move_name(mv.kind)) + " broke the switch condition: " + why);
        trace_.moves.push_back({mv.kind, mv.target, mv.k, o.gain, o.cost});
        trace_.total_cost += o.cost;
        step_.gain += o.gain;
        step_.cost += o.cost;
    }

    void play_with_cleanup(const Move& mv) {
        play(mv);
        if (has_zero(m_)) play({MoveKind::RemoveTrivial, -1, 0});
    }

    MeasuredTrainTrack m_;
    SimplificationTrace trace_;
    SimplifyStep step_;
};

}  // namespace

std::pair<MeasuredTrainTrack, SimplificationTrace> simplify(MeasuredTrainTrack m) {
    m.grow();
    return Driver(std::move(m)).run();
}

std::string format_trace(const SimplificationTrace& trace) {
    std::ostringstream out;
    char buf[160];
    for (const auto& s : trace.steps) {
        std::snprintf(buf, sizeof buf, "step %s alpha %d gain %.6f cost %.6f%s\n", s.label.c_str(), s.alpha, s.gain,
                      s.cost, s.fallback ? " fallback" : "");
        out << buf;
        for (int i = s.first_move; i < s.first_move + s.num_moves; ++i) {
            const auto& mv = trace.moves[i];
            std::snprintf(buf, sizeof buf, "  %s %d k %ld gain %.6f cost %.6f\n", move_name(mv.kind), mv.target, mv.k,
                          mv.gain, mv.cost);
            out << buf;
        }
    }
    std::snprintf(buf, sizeof buf, "total gain %.6f cost %.6f\n", trace.total_gain, trace.total_cost);
    out << buf;
    return out.str();
}

}  // namespace ntrack
