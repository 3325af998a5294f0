#pragma once

#include <random>
#include <vector>

#include "ntrack/normal_coords.hpp"
#include "ntrack/surface.hpp"

namespace ntrack::testing {

inline NormalCoordinates random_valid(const Triangulation& t, std::mt19937& rng, int lo, int hi) {
    std::uniform_int_distribution<int> d(lo, hi);
    for (;;) {
        NormalCoordinates c(t.num_edges());
        for (int e = 0; e < t.num_edges(); ++e) {
            int v = d(rng);
            c[e] = t.edge(e).on_boundary ? std::min(v, 0) : v;
        }
        if (check_coords(t, c).ok) return c;
    }
}

inline std::vector<Triangulation> small_surfaces() {
    return {build_sphere(4), build_sphere(5), build_disk(1, 3), build_disk(2, 2), build_torus(2)};
}

}  // namespace ntrack::testing
