#pragma once

#include <array>
#include <string>
#include <vector>

#include "ntrack/normal_coords.hpp"
#include "ntrack/traintrack.hpp"
#include "ntrack/universal.hpp"

namespace ntrack {

// Two measured train tracks on the same underlying track: every branch carries
// a width pair (u1, u2).  Branches with u2 = 0 belong to the first track only,
// with u1 = 0 to the second only.  The width type is a parameter so that the
// engine can replay a run with symbolic widths; the public API uses BigInt.
template <class W>
struct BasicJointTrack {
    TrainTrack track;
    std::array<std::vector<W>, 2> width;

    bool common(int b) const { return width[0][b] > 0 && width[1][b] > 0; }
    void grow() {
        width[0].resize(track.num_branch_slots());
        width[1].resize(track.num_branch_slots());
    }
};

using JointTrack = BasicJointTrack<BigInt>;

JointTrack make_joint(const MeasuredTrainTrack& m1, const MeasuredTrainTrack& m2);

// Recorded transverse crossings between a branch of the first track and a
// branch of the second: `points` crossing sites, each contributing the product
// of the two widths; `value` is the accumulated contribution.
struct CrossTerm {
    int branch1 = -1;
    int branch2 = -1;
    BigInt points;
    BigInt value;
};

struct JointStats {
    long splits = 0;
    long puncture_splits = 0;
    long steps = 0;           // simulated steps, excluding accelerated periods
    long accelerations = 0;   // number of period jumps
    BigInt jumped_steps = 0;  // steps skipped by period jumps
    int max_divergence = 0;   // most divergence switches seen at once
    int divergence_cap = 0;   // n + 4 + 3q for this run
    bool swapped = false;
    // Wall time per phase, in seconds.
    double encode_seconds = 0;
    double simplify_seconds = 0;
    double sum_seconds = 0;
};

struct IntersectionResult {
    BigInt value;
    std::vector<CrossTerm> crossings;
    // Common free proper arcs: (branch, u1*u2), subtracted from the crossing sum.
    std::vector<std::pair<int, BigInt>> parallel_arcs;
    JointStats stats;
    std::vector<std::string> trace;
};

struct IntersectionOptions {
    bool accelerate = true;
    bool trace = false;
    // Safety valve on simulated steps; 0 means unlimited.
    long max_steps = 0;
};

IntersectionResult count_intersections(const Triangulation& t, const NormalCoordinates& c1,
                                       const NormalCoordinates& c2, const IntersectionOptions& opt = {});
IntersectionResult count_intersections(const UniversalTrack& u, const Triangulation& t, const NormalCoordinates& c1,
                                       const NormalCoordinates& c2, const IntersectionOptions& opt = {});

// Runs the simultaneous simplification on an explicit joint track.
IntersectionResult simplify_joint(JointTrack j, const IntersectionOptions& opt = {});

// Splits a common wide branch of a joint track, routing each track's strands
// by the ordered-strand rule.  Returns the crossing term it creates, if any
// (points = 0 otherwise).  Throws IllegalMove unless the branch is wide and
// carries both tracks.
CrossTerm joint_split(JointTrack& j, int branch);

// Divergence switches: one common branch and one branch of each track alone.
int count_divergence(const JointTrack& j);

}  // namespace ntrack
