#pragma once

#include <vector>

#include "ntrack/normal_coords.hpp"
#include "ntrack/surface.hpp"

namespace ntrack::fixtures {

// A proper arc as a walk in the dual graph: it leaves `start`, crosses the
// listed sides in order (each side belongs to the triangle the walk is in
// at that moment) and arrives at `end`.
struct ArcWalk {
    CornerRef start;
    std::vector<SideRef> crossings;
    CornerRef end;
};

ArcWalk edge_walk(const Triangulation& t, int edge);
ArcWalk reversed(const Triangulation& t, const ArcWalk& w);

// Removes backtracks and slides the ends around their punctures until the
// walk is the normal representative, then reads off its coordinates.
void reduce(const Triangulation& t, ArcWalk& w);
NormalCoordinates walk_coordinates(const Triangulation& t, ArcWalk w);

// Half-twist exchanging the two ends of an interior edge joining distinct
// internal punctures.  Edge images are computed exactly from their walks.
class HalfTwist {
public:
    HalfTwist(const Triangulation& t, int edge);
    ArcWalk image(const ArcWalk& w) const;
    // Column j is the image of edge j.
    std::vector<NormalCoordinates> edge_images() const;

private:
    ArcWalk image_end(ArcWalk w) const;
    void slide_end_to(ArcWalk& w, CornerRef target) const;
    void walk_around(ArcWalk& w, CornerRef from, CornerRef to) const;

    const Triangulation& t_;
    int a_;
    int p_, q_;
    CornerRef top_p_, top_q_, bottom_p_, bottom_q_;
};

}  // namespace ntrack::fixtures
