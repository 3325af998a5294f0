#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace ntrack {

// All indices are 0-based in the C++ API; the text formats are 1-based.

enum class PunctureKind { Internal, Boundary };

struct Puncture {
    int id = 0;
    PunctureKind kind = PunctureKind::Internal;
    int boundary_component = -1;  // -1 for internal punctures
};

struct Edge {
    int id = 0;
    int from = 0;  // puncture ids; a loop edge has from == to
    int to = 0;
    bool on_boundary = false;
};

// Sides are listed counterclockwise.  Side k runs from corner (k+1)%3 to
// corner (k+2)%3, so corner k is the puncture opposite side k.  reversed[k]
// is true when that counterclockwise direction is the edge's to->from.
struct Triangle {
    int id = 0;
    std::array<int, 3> side{};
    std::array<bool, 3> reversed{};
    std::array<int, 3> corner{};
};

struct SideRef {
    int tri = -1;
    int side = -1;
    bool valid() const { return tri >= 0; }
};

struct CornerRef {
    int tri = -1;
    int corner = -1;
    bool operator==(const CornerRef&) const = default;
};

enum class SurfaceFamily { Sphere, Disk, Torus };

class Triangulation {
public:
    Triangulation() = default;
    Triangulation(std::vector<Puncture> punctures, std::vector<Edge> edges,
                  std::vector<Triangle> triangles, int euler_characteristic);

    int num_edges() const { return static_cast<int>(edges_.size()); }
    int num_triangles() const { return static_cast<int>(triangles_.size()); }
    int num_punctures() const { return static_cast<int>(punctures_.size()); }
    int num_boundary_punctures() const;
    int euler_characteristic() const { return chi_; }

    const std::vector<Puncture>& punctures() const { return punctures_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<Triangle>& triangles() const { return triangles_; }
    const Puncture& puncture(int i) const { return punctures_.at(i); }
    const Edge& edge(int i) const { return edges_.at(i); }
    const Triangle& triangle(int i) const { return triangles_.at(i); }

    // Triangle sides glued to edge e (two for interior edges, one on the boundary).
    const std::vector<SideRef>& uses(int e) const { return uses_.at(e); }
    // The side glued to (tri, side) across its edge, or an invalid ref on the boundary.
    SideRef across(int tri, int side) const;

    // Puncture at the counterclockwise start / end of a side.
    int side_start(int tri, int side) const;
    int side_end(int tri, int side) const;

    // Rotating clockwise around the puncture at corner c leaves the corner
    // through side (c+2)%3; this returns the corner entered in the
    // neighbouring triangle, or nullopt when that side is on the boundary.
    std::optional<CornerRef> cw_next(CornerRef c) const;
    std::optional<CornerRef> ccw_next(CornerRef c) const;

    // Corners at a puncture in clockwise order.  For an internal puncture
    // the order is cyclic and starts at the lowest (triangle, corner); for a
    // boundary puncture it runs from one boundary side to the other.
    std::vector<CornerRef> corners_cw(int puncture) const;

    bool is_orientable() const { return orientable_; }
    int num_boundary_components() const;

private:
    void index();

    std::vector<Puncture> punctures_;
    std::vector<Edge> edges_;
    std::vector<Triangle> triangles_;
    int chi_ = 0;
    std::vector<std::vector<SideRef>> uses_;
    bool orientable_ = true;
};

// Standard fixture surfaces.  Sphere: n >= 4 punctures (tetrahedron for
// n = 4, edge order e12 e13 e14 e23 e24 e34).  Disk: boundary punctures
// m >= 1 on one boundary circle plus k internal punctures.  Torus: n >= 2
// punctures as a 1 x n strip of squares.  Throws SporadicSurface.
Triangulation build_sphere(int n);
Triangulation build_disk(int boundary_punctures, int internal_punctures);
Triangulation build_torus(int n);
Triangulation build_standard(SurfaceFamily family, int a, int b = 0);

std::vector<std::string> validate_triangulation(const Triangulation& t);

// mu(i, j): triangles adjacent to both e_i and e_j, and 1 on the diagonal.
std::vector<std::vector<int>> mu_table(const Triangulation& t);

// Throws SporadicSurface for (surface, n) pairs excluded by the nonsporadic rule.
void check_nonsporadic(int chi, int boundary_components, bool orientable, int punctures);

std::string save_surface(const Triangulation& t);
Triangulation load_surface(const std::string& text);
Triangulation load_surface_file(const std::string& path);

}  // namespace ntrack
