#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "ntrack/bigint.hpp"

namespace ntrack {

// Switch slots.  Looking from the switch towards its two small tails, Left is
// on the left hand; counterclockwise around the switch the order is
// Left, Large, Right.
enum Slot : int { Large = 0, Left = 1, Right = 2 };

enum class EndKind : std::uint8_t { None, Switch, Puncture };

// Where one end of a branch is attached.
struct Attachment {
    EndKind kind = EndKind::None;
    int id = -1;    // switch or puncture id
    int slot = -1;  // switch slot; unused for punctures
    bool operator==(const Attachment&) const = default;
};

// A particular end (0 or 1) of a branch.
struct HalfRef {
    int branch = -1;
    int end = 0;
    bool valid() const { return branch >= 0; }
    bool operator==(const HalfRef&) const = default;
};

struct Branch {
    std::array<Attachment, 2> end;
    // Orientation agreement across the branch.  Only orientable surfaces are
    // supported, so this is always true; it is kept for the dump format.
    bool agrees = true;
    bool alive = true;

    bool is_free_circle() const { return end[0].kind == EndKind::None && end[1].kind == EndKind::None; }
    bool is_free() const {
        return end[0].kind != EndKind::Switch && end[1].kind != EndKind::Switch;
    }
};

struct SwitchRec {
    std::array<HalfRef, 3> slot;
    bool alive = true;
};

struct PunctureRec {
    bool boundary = false;
    // Attached branch ends in counterclockwise order.  For a boundary
    // puncture the list runs from one boundary side to the other.
    std::vector<HalfRef> ends;
};

// A train track stored by its local data only: switch slots, the cyclic
// order of attachments at punctures and the branch end records.
class TrainTrack {
public:
    TrainTrack() = default;
    explicit TrainTrack(std::vector<PunctureRec> punctures) : punctures_(std::move(punctures)) {}

    int add_switch();
    int add_branch();
    int add_puncture(bool boundary);

    // Attaches a branch end to a switch slot (which must be empty).
    void attach_switch(HalfRef h, int sw, int slot);
    // Attaches a branch end to a puncture at position pos of its list (-1 appends).
    void attach_puncture(HalfRef h, int p, int pos = -1);
    // Detaches an end, leaving the switch slot empty or removing the
    // puncture list entry; returns the former attachment.
    Attachment detach(HalfRef h);
    // Re-attaches end h where end from was attached (from becomes detached).
    void transplant(HalfRef from, HalfRef h);

    void kill_branch(int b);
    void kill_switch(int s);

    // A switch with exactly two occupied slots is removed and the two branches
    // are joined, keeping the lower id.  Returns the surviving branch.
    int merge_switch(int s);

    int num_branch_slots() const { return static_cast<int>(branches_.size()); }
    int num_switch_slots() const { return static_cast<int>(switches_.size()); }
    int num_punctures() const { return static_cast<int>(punctures_.size()); }
    int count_switches() const;
    int count_branches() const;

    const Branch& branch(int b) const { return branches_.at(b); }
    const SwitchRec& sw(int s) const { return switches_.at(s); }
    const PunctureRec& puncture(int p) const { return punctures_.at(p); }
    Branch& branch_mut(int b) { return branches_.at(b); }

    const Attachment& at(HalfRef h) const { return branches_.at(h.branch).end[h.end]; }
    HalfRef slot_ref(int sw, int slot) const { return switches_.at(sw).slot[slot]; }
    int slot_branch(int sw, int slot) const { return switches_.at(sw).slot[slot].branch; }
    int occupied_slots(int sw) const;
    // Position of an end in its puncture list, or -1.
    int puncture_position(HalfRef h) const;

    std::vector<int> live_branches() const;
    std::vector<int> live_switches() const;

    // True when both ends are large tails of switches, or one is a large
    // tail and the other approaches a puncture.
    bool is_wide(int b) const;

    // Renumbers live branches and switches densely, preserving their order.
    // Returns the new id of every old branch id (-1 for dead ones).
    std::vector<int> compact();

private:
    std::vector<Branch> branches_;
    std::vector<SwitchRec> switches_;
    std::vector<PunctureRec> punctures_;
};

inline HalfRef other_end(HalfRef h) { return {h.branch, 1 - h.end}; }

// A train track with a non-negative width on every branch (indexed by branch id).
struct MeasuredTrainTrack {
    TrainTrack track;
    BigVec width;

    const BigInt& w(int b) const { return width.at(b); }
    void grow() { width.resize(track.num_branch_slots()); }
};

// Switch condition at every live switch.  Returns an empty string when it
// holds, otherwise a description of the first violation.
std::string check_switch_conditions(const MeasuredTrainTrack& m);

struct TrackComplexity {
    double full = 0;     // sum over branches of 1 + log2(w+1)
    double reduced = 0;  // |non-free branches| + sum over them of log2(w+1)
};
TrackComplexity track_complexity(const MeasuredTrainTrack& m);

// Textual dump in id order; see docs/formats.md.
std::string dump_track(const MeasuredTrainTrack& m);

// ---------------------------------------------------------------------------
// Simplification moves

enum class MoveKind { RemoveTrivial, OrdinarySplit, MultipleSplit, Slide };

struct Move {
    MoveKind kind = MoveKind::RemoveTrivial;
    int target = -1;  // branch id; for MultipleSplit the wide branch of the circle
    long k = 0;       // multiplicity for MultipleSplit
};

struct MoveOutcome {
    double gain = 0;
    double cost = 0;
};

const char* move_name(MoveKind k);

// Applies a move in place.  Throws IllegalMove when its precondition fails.
MoveOutcome apply_move(MeasuredTrainTrack& m, const Move& move);
// Value-returning form.
std::pair<MeasuredTrainTrack, MoveOutcome> apply_move_copy(const MeasuredTrainTrack& m, const Move& move);

// The circle through a wide branch gamma, if gamma and a second branch beta
// form a two-sided circle through two switches with the outside tails on
// opposite sides.  Returns beta, or -1.
int twist_circle_partner(const TrainTrack& t, int gamma);
// Largest admissible multiplicity of a multiple splitting on the circle through
// gamma, or 0 when none is allowed.
long max_multiple_split(const MeasuredTrainTrack& m, int gamma);

// Splitting geometry around a wide branch between two switches A (end 0)
// and B (end 1): the four outer ends in the order BL, TL, TR, BR.
struct SplitFrame {
    int a_switch = -1, b_switch = -1;
    std::array<HalfRef, 4> outer;  // BL = A.Left, TL = A.Right, TR = B.Left, BR = B.Right
};
SplitFrame split_frame(const TrainTrack& t, int alpha);

// Pieces created by a split: SB joins BL-BR, ST joins TL-TR, D1 runs BL-TR,
// D2 runs TL-BR.  Absent pieces are -1.
struct SplitPieces {
    int sb = -1, st = -1, d1 = -1, d2 = -1;
};
// Performs the topological part of a split on a wide switch-switch branch,
// creating only the requested pieces and merging the switches left 2-valent.
// Pieces absorbed by a merge come back as -1; the caller sets the widths of
// the survivors.
SplitPieces split_topology(TrainTrack& t, int alpha, bool sb, bool st, bool d1, bool d2);
// Splits a wide branch with one end at a puncture.  The two
// small branches of the switch at the other end take its place in the
// puncture's cyclic order.
void puncture_split_topology(TrainTrack& t, int alpha);

// ---------------------------------------------------------------------------
// Single-track simplification

struct TraceMove {
    MoveKind kind = MoveKind::RemoveTrivial;
    int target = -1;
    long k = 0;
    double gain = 0;
    double cost = 0;
};

// One round of the driver: a run of moves with a case label.  Labels are
// "trivial", "puncture" and the case letters A to L.
struct SimplifyStep {
    std::string label;
    int alpha = -1;       // widest branch the round was built around
    int first_move = 0;   // index into SimplificationTrace::moves
    int num_moves = 0;
    double gain = 0;
    double cost = 0;
    bool fallback = false;  // no recipe reached the gain threshold
};

struct SimplificationTrace {
    std::vector<TraceMove> moves;
    std::vector<SimplifyStep> steps;
    double total_gain = 0;
    double total_cost = 0;
};

// Reduces a measured track to one without switches.
std::pair<MeasuredTrainTrack, SimplificationTrace> simplify(MeasuredTrainTrack m);

std::string format_trace(const SimplificationTrace& trace);

}  // namespace ntrack
