#include <doctest.h>

#include <random>

#include "ntrack/errors.hpp"
#include "ntrack/oracle.hpp"

using namespace ntrack;

namespace {

NormalCoordinates vec(std::initializer_list<long> xs) {
    NormalCoordinates v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

}  // namespace

TEST_CASE("separating curves on the four-punctured sphere meet twice") {
    auto t = build_sphere(4);
    auto a = vec({0, 1, 1, 1, 1, 0});
    auto b = vec({1, 0, 1, 1, 0, 1});
    CHECK(oracle_intersection(t, a, b) == 2);
    CHECK(oracle_intersection(t, b, a) == 2);
    CHECK(oracle_intersection(t, a, a) == 0);
}

TEST_CASE("edges as arcs") {
    auto t = build_sphere(4);
    for (int e = 0; e < t.num_edges(); ++e) {
        CHECK(oracle_intersection(t, edge_curve(t, e), edge_curve(t, e)) == -1);
        for (int f = 0; f < t.num_edges(); ++f)
            if (f != e) CHECK(oracle_intersection(t, edge_curve(t, e), edge_curve(t, f)) == 0);
    }
}

TEST_CASE("zero curve") {
    auto t = build_torus(2);
    NormalCoordinates z(t.num_edges(), 0);
    auto a = edge_curve(t, 0);
    CHECK(oracle_intersection(t, z, a) == 0);
    CHECK(oracle_intersection(t, z, z) == 0);
}

TEST_CASE("unary bound") {
    auto t = build_sphere(4);
    auto a = vec({0, 100, 100, 100, 100, 0});
    OracleOptions opt;
    opt.unary_bound = 64;
    CHECK_THROWS_AS(oracle_intersection(t, a, a, opt), UnaryBoundExceeded);
}

TEST_CASE("result does not depend on reduction order") {
    auto t = build_sphere(5);
    std::mt19937 rng(7);
    int checked = 0;
    for (int trial = 0; trial < 400 && checked < 40; ++trial) {
        NormalCoordinates a(t.num_edges()), b(t.num_edges());
        std::uniform_int_distribution<int> d(0, 6);
        for (auto& x : a) x = d(rng);
        for (auto& x : b) x = d(rng);
        if (!check_coords(t, a).ok || !check_coords(t, b).ok) continue;
        ++checked;
        BigInt ref = oracle_intersection(t, a, b);
        CHECK(ref >= 0);
        for (std::uint64_t seed = 1; seed <= 3; ++seed) {
            OracleOptions opt;
            opt.shuffle_seed = seed;
            CHECK(oracle_intersection(t, a, b, opt) == ref);
        }
        CHECK(oracle_intersection(t, b, a) == ref);
    }
    CHECK(checked > 10);
}

TEST_CASE("closed multicurves have zero self-intersection") {
    for (const auto& t : {build_sphere(5), build_torus(2), build_disk(2, 3)}) {
        std::mt19937 rng(11);
        int checked = 0;
        for (int trial = 0; trial < 40000 && checked < 25; ++trial) {
            NormalCoordinates a(t.num_edges());
            std::uniform_int_distribution<int> d(0, 4);
            for (int e = 0; e < t.num_edges(); ++e) a[e] = t.edge(e).on_boundary ? 0 : d(rng);
            if (!check_coords(t, a).ok) continue;
            bool closed = true;
            for (int tri = 0; tri < t.num_triangles(); ++tri) {
                auto s = triangle_sides(t, a, tri);
                auto arcs = decompose_triangle(s[0], s[1], s[2]);
                for (int k = 0; k < 3; ++k) closed = closed && arcs.corner[k] == 0;
            }
            if (!closed) continue;
            ++checked;
            CHECK(oracle_intersection(t, a, a) == 0);
        }
        CHECK(checked > 3);
    }
}
