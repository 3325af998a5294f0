#pragma once

#include <array>
#include <string>

#include "ntrack/bigint.hpp"
#include "ntrack/surface.hpp"

namespace ntrack {

// x_i = <gamma, e_i>.  Negative entries count proper arcs parallel to e_i.
using NormalCoordinates = BigVec;

enum class ArcCase { Corner0, Corner1, Corner2, SideToSide };

// Normal arcs inside one triangle.  corner[i] counts arcs from corner i to the
// opposite side i; cut[i] counts side-to-side arcs joining sides i+1 and i+2,
// which cut off corner i.
struct ArcTypeCounts {
    ArcCase tag = ArcCase::SideToSide;
    std::array<BigInt, 3> corner;
    std::array<BigInt, 3> cut;

    // Arcs between sides i and j (i != j).
    const BigInt& between(int i, int j) const { return cut[3 - i - j]; }
};

// Inputs must already be clamped to be non-negative.  Throws InvalidTriangle
// (with triangle index -1) when no system of normal arcs has these counts.
ArcTypeCounts decompose_triangle(const BigInt& x0, const BigInt& x1, const BigInt& x2);

NormalCoordinates clamped(const NormalCoordinates& c);

// Side counts of triangle tri, clamped, in side order.
std::array<BigInt, 3> triangle_sides(const Triangulation& t, const NormalCoordinates& c, int tri);

struct CoordCheck {
    bool ok = true;
    int triangle = -1;  // first failing triangle, or -1
    int edge = -1;      // offending boundary edge, or -1
    std::string reason;
};

CoordCheck check_coords(const Triangulation& t, const NormalCoordinates& c);
// Throws InvalidTriangle (or ParseError on a length mismatch).
void validate_coords(const Triangulation& t, const NormalCoordinates& c);

double curve_complexity(const NormalCoordinates& c);

NormalCoordinates edge_curve(const Triangulation& t, int edge);

BigInt intersection_bound(const Triangulation& t, const NormalCoordinates& c1, const NormalCoordinates& c2);

NormalCoordinates parse_curve(const std::string& text);
NormalCoordinates load_curve_file(const std::string& path);
std::string format_curve(const NormalCoordinates& c);

}  // namespace ntrack
