#include <doctest.h>

#include <random>

#include "ntrack/errors.hpp"
#include "ntrack/intersection.hpp"
#include "ntrack/mcg.hpp"
#include "ntrack/oracle.hpp"
#include "support.hpp"

using namespace ntrack;

namespace {

NormalCoordinates vec(std::initializer_list<long> xs) {
    NormalCoordinates v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

using ntrack::testing::random_valid;

// Wide branch between two switches, four outer branches to four punctures;
// per track the widths BL, TL, TR, BR.
JointTrack make_cross(std::array<int, 4> w1, std::array<int, 4> w2) {
    JointTrack j;
    auto& t = j.track;
    for (int p = 0; p < 4; ++p) t.add_puncture(false);
    const int A = t.add_switch(), B = t.add_switch();
    const int alpha = t.add_branch();
    t.attach_switch({alpha, 0}, A, Large);
    t.attach_switch({alpha, 1}, B, Large);
    const std::array<std::pair<int, int>, 4> spots{{{A, Left}, {A, Right}, {B, Left}, {B, Right}}};
    for (int k = 0; k < 4; ++k) {
        int b = t.add_branch();
        t.attach_switch({b, 0}, spots[k].first, spots[k].second);
        t.attach_puncture({b, 1}, k);
    }
    j.grow();
    j.width[0][alpha] = w1[0] + w1[1];
    j.width[1][alpha] = w2[0] + w2[1];
    for (int k = 0; k < 4; ++k) {
        j.width[0][k + 1] = w1[k];
        j.width[1][k + 1] = w2[k];
    }
    return j;
}

// Strands enter the branch bottom to top (BL's, then TL's) and leave in the
// same order (BR's, then TR's).  A strand climbing from BL to TR meets every
// strand of the other track descending from TL to BR.
long strand_crossings(std::array<int, 4> w1, std::array<int, 4> w2) {
    auto count = [](std::array<int, 4> w, bool up) {
        long n = 0;
        for (int k = 0; k < w[0] + w[1]; ++k) {
            const bool from_bottom = k < w[0], to_bottom = k < w[3];
            n += up ? (from_bottom && !to_bottom) : (!from_bottom && to_bottom);
        }
        return n;
    };
    return count(w1, true) * count(w2, false) + count(w1, false) * count(w2, true);
}

}  // namespace

TEST_CASE("separating pair on the four-punctured sphere") {
    auto t = build_sphere(4);
    auto a = vec({0, 1, 1, 1, 1, 0});
    auto b = vec({1, 0, 1, 1, 0, 1});
    CHECK(count_intersections(t, a, b).value == 2);
    CHECK(count_intersections(t, b, a).value == 2);
}

TEST_CASE("edge curves pair to minus the identity") {
    for (const auto& t : {build_sphere(4), build_disk(1, 3), build_torus(2)}) {
        for (int i = 0; i < t.num_edges(); ++i)
            for (int j = 0; j < t.num_edges(); ++j)
                CHECK(count_intersections(t, edge_curve(t, i), edge_curve(t, j)).value == (i == j ? -1 : 0));
    }
}

TEST_CASE("agreement with the oracle on small samples") {
    std::mt19937 rng(5);
    for (const auto& t : {build_sphere(4), build_disk(1, 3), build_sphere(5), build_torus(2), build_disk(2, 2)}) {
        auto u = universal_track(t);
        int bad = 0;
        for (int i = 0; i < 150; ++i) {
            auto a = random_valid(t, rng, -3, 8), b = random_valid(t, rng, -3, 8);
            BigInt want = oracle_intersection(t, a, b);
            BigInt got = count_intersections(u, t, a, b).value;
            if (got != want && bad++ < 3) {
                std::string sa, sb;
                for (auto& x : a) sa += to_string(x) + " ";
                for (auto& x : b) sb += to_string(x) + " ";
                MESSAGE("a = " << sa << " b = " << sb << " oracle " << to_string(want) << " got " << to_string(got));
            }
            CHECK(got == want);
        }
    }
}

TEST_CASE("a joint split records the crossing of opposite diagonals") {
    const std::array<int, 4> w1{5, 1, 3, 3}, w2{1, 4, 1, 4};
    auto j = make_cross(w1, w2);
    CrossTerm c = joint_split(j, 0);
    CHECK(strand_crossings(w1, w2) == 6);
    CHECK(c.points == 1);
    CHECK(c.value == 6);
    CHECK(j.width[0][c.branch1] == 2);
    CHECK(j.width[1][c.branch2] == 3);

    for (auto [a, b] : {std::pair{std::array{2, 2, 3, 1}, std::array{1, 1, 1, 1}},
                        {std::array{4, 1, 2, 3}, std::array{1, 3, 1, 3}},
                        {std::array{3, 2, 2, 3}, std::array{2, 2, 1, 3}}}) {
        auto k = make_cross(a, b);
        CHECK(joint_split(k, 0).value == strand_crossings(a, b));
    }
}

TEST_CASE("joint split refuses branches that are not common and wide") {
    auto j = make_cross({2, 1, 1, 2}, {0, 0, 0, 0});
    CHECK_THROWS_AS(joint_split(j, 0), IllegalMove);
    auto k = make_cross({2, 1, 1, 2}, {1, 1, 1, 1});
    CHECK_THROWS_AS(joint_split(k, 1), IllegalMove);
}

TEST_CASE("symmetry, bound and divergence cap") {
    std::mt19937 rng(31);
    for (const auto& t : ntrack::testing::small_surfaces()) {
        auto u = universal_track(t);
        for (int i = 0; i < 60; ++i) {
            auto a = random_valid(t, rng, -5, 30), b = random_valid(t, rng, -5, 30);
            auto ab = count_intersections(u, t, a, b), ba = count_intersections(u, t, b, a);
            CHECK(ab.value == ba.value);
            CHECK(abs(ab.value) <= intersection_bound(t, a, b));
            CHECK(ab.stats.max_divergence <= ab.stats.divergence_cap);
            CHECK(ba.stats.max_divergence <= ba.stats.divergence_cap);
        }
    }
}

TEST_CASE("acceleration does not change results") {
    auto b = load_generator_bundle(std::string(NTRACK_FIXTURE_DIR) + "/sphere4");
    const auto& t = b.surface;
    const auto& tw = b.generators.at("t");
    IntersectionOptions plain;
    plain.accelerate = false;
    for (long k : {1L, 5L, 40L, 300L}) {
        auto tk = power(t, tw, BigInt(k));
        for (int i = 0; i < t.num_edges(); ++i)
            for (int j = 0; j < t.num_edges(); ++j) {
                auto fast = count_intersections(t, tk.col(i), tw.col(j));
                auto slow = count_intersections(t, tk.col(i), tw.col(j), plain);
                CHECK(fast.value == slow.value);
                CHECK(fast.stats.max_divergence <= fast.stats.divergence_cap);
            }
    }
    auto big = power(t, tw, BigInt(1) << 40);
    auto r = count_intersections(t, big.col(1), big.col(2));
    CHECK(r.stats.accelerations > 0);
    CHECK(r.stats.steps < 200);
}

TEST_CASE("twist spirals agree with the oracle") {
    auto b = load_generator_bundle(std::string(NTRACK_FIXTURE_DIR) + "/disk13");
    const auto& t = b.surface;
    const auto& tw = b.generators.at("t");
    for (long k : {1L, 2L, 3L}) {
        auto tk = power(t, tw, BigInt(k));
        for (int i = 0; i < t.num_edges(); ++i)
            for (int j = 0; j < t.num_edges(); ++j)
                CHECK(count_intersections(t, tk.col(i), edge_curve(t, j)).value ==
                      oracle_intersection(t, tk.col(i), edge_curve(t, j)));
    }
}

TEST_CASE("trace and step limit") {
    auto t = build_sphere(4);
    IntersectionOptions opt;
    opt.trace = true;
    auto r = count_intersections(t, vec({0, 1, 1, 1, 1, 0}), vec({1, 0, 1, 1, 0, 1}), opt);
    CHECK_FALSE(r.trace.empty());
    BigInt sum = 0;
    for (const auto& c : r.crossings) sum += c.value;
    for (const auto& [br, v] : r.parallel_arcs) sum -= v;
    CHECK(sum == r.value);
}
