#pragma once

#include <map>
#include <vector>

#include "ntrack/normal_coords.hpp"
#include "ntrack/surface.hpp"
#include "ntrack/traintrack.hpp"

namespace ntrack {

// Sparse contribution of one normal arc to the branch widths, in half units
// (a full traversal of a branch counts 2).
using Contribution = std::map<int, int>;

// The universal train track of a triangulation together with the bookkeeping
// that ties it back to triangles and edges.
struct UniversalTrack {
    TrainTrack track;
    // switch_at[tri][k]: the switch whose large tail points through side k.
    std::vector<std::array<int, 3>> switch_at;
    // inner[tri][c]: the branch cutting off corner c (joining sides c+1, c+2).
    std::vector<std::array<int, 3>> inner;
    // Per edge, the branches it is made of, ordered from uses(e)[0] to uses(e)[1].
    std::vector<std::vector<int>> edge_pieces;
    // Per edge, the switches along it in the same order (end switches included).
    std::vector<std::vector<int>> edge_nodes;
    // Branch attached to each puncture.
    std::vector<int> alpha;
    // For internal punctures: the extra switch and the corner it serves.
    std::vector<int> extra_switch;
    std::vector<CornerRef> anchor;

    // Contribution table: per triangle, arcs around corners 0..2 then
    // side-to-side arcs cutting corners 0..2; per edge, one parallel copy.
    std::vector<std::array<Contribution, 6>> triangle_arcs;
    std::vector<Contribution> edge_copies;
};

UniversalTrack universal_track(const Triangulation& t);

// Minimal carrying widths on the universal track.
MeasuredTrainTrack encode_min(const Triangulation& t, const NormalCoordinates& c);
MeasuredTrainTrack encode_min(const UniversalTrack& u, const Triangulation& t, const NormalCoordinates& c);

// Text form of the contribution table (see docs/formats.md).
std::string dump_contributions(const UniversalTrack& u);

}  // namespace ntrack
