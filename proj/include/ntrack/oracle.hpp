#pragma once

#include <cstdint>
#include <vector>

#include "ntrack/normal_coords.hpp"

namespace ntrack {

struct OracleOptions {
    int unary_bound = 64;
    // When set, the bigon worklist is shuffled with this seed; the result must not change.
    std::uint64_t shuffle_seed = 0;
};

struct OracleReport {
    BigInt value;
    long initial_crossings = 0;
    long final_crossings = 0;
    long bigons_removed = 0;
    long half_bigons_removed = 0;
    long parallel_arc_pairs = 0;
};

// One endpoint of a chord: either a corner of the triangle, or the j-th point
// (counterclockwise, counting only this curve's points) on a side.
struct ChordEnd {
    bool at_corner = false;
    int index = 0;  // corner or side number
    int j = 0;
};

struct Chord {
    int curve = 0;
    bool edge_copy = false;  // a proper arc parallel to the side `a.index`
    ChordEnd a, b;
};

// Both curves drawn explicitly: for every edge the interleaving of the two
// curves' crossing points along the edge direction, and for every triangle the
// chords of both curves.
class ExplicitDiagram {
public:
    ExplicitDiagram(const Triangulation& t, const NormalCoordinates& c1, const NormalCoordinates& c2);

    long count_crossings() const;
    long count_parallel_arc_pairs() const;
    // Removes one reducible bigon or half-bigon reachable from the points at
    // positions p, p+1 of edge e.  Returns 0 (none), 1 (half-bigon) or 2 (bigon).
    int reduce_at(int e, int p, std::vector<std::pair<int, int>>* touched = nullptr);
    int points_on(int e) const { return static_cast<int>(order_[e].size()); }
    bool mixed_pair(int e, int p) const;

    const std::vector<Chord>& chords(int tri) const { return chords_[tri]; }

private:
    struct Probe {
        enum Kind { Fail, Crossing, CommonCorner, Continue } kind = Fail;
        int tri = -1, side = -1;
        int chord0 = -1, chord1 = -1;
        int next_edge = -1, next_pos = -1;
    };

    int ccw_position(int tri, int side, int edge_pos) const;
    std::pair<int, int> end_key(int tri, const ChordEnd& end, int chord) const;
    bool crossing(int tri, int c0, int c1) const;
    int chord_at(int tri, int side, int curve, int curve_index) const;
    Probe probe(int tri, int side, int edge, int pos) const;
    ChordEnd other_end(const Chord& ch, int side, int j) const;

    const Triangulation& t_;
    std::array<NormalCoordinates, 2> x_;
    std::vector<std::vector<std::uint8_t>> order_;         // per edge: curve label at each position
    std::vector<std::array<std::vector<int>, 2>> where_;   // per edge and curve: position of the i-th point
    std::vector<std::vector<Chord>> chords_;               // per triangle
    std::vector<std::array<std::array<std::vector<int>, 3>, 2>> side_chord_;  // [tri][curve][side][j]
};

OracleReport oracle_report(const Triangulation& t, const NormalCoordinates& c1, const NormalCoordinates& c2,
                           const OracleOptions& opt = {});

BigInt oracle_intersection(const Triangulation& t, const NormalCoordinates& c1, const NormalCoordinates& c2,
                           const OracleOptions& opt = {});

}  // namespace ntrack
