#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "ntrack/errors.hpp"
#include "ntrack/intersection.hpp"
#include "ntrack/mcg.hpp"
#include "ntrack/universal.hpp"
#include "support.hpp"

using namespace ntrack;
using ntrack::testing::random_valid;

namespace {

// A wide branch between two switches with its four outer branches running
// to four separate punctures.  Widths are given as BL, TL, TR, BR.
struct Cross {
    MeasuredTrainTrack m;
    int alpha = -1;
};

Cross make_cross(int bl, int tl, int tr, int br) {
    Cross x;
    auto& t = x.m.track;
    for (int p = 0; p < 4; ++p) t.add_puncture(false);
    const int A = t.add_switch(), B = t.add_switch();
    x.alpha = t.add_branch();
    t.attach_switch({x.alpha, 0}, A, Large);
    t.attach_switch({x.alpha, 1}, B, Large);
    const std::array<std::pair<int, int>, 4> spots{{{A, Left}, {A, Right}, {B, Left}, {B, Right}}};
    const std::array<int, 4> w{bl, tl, tr, br};
    x.m.width.assign(1, bl + tl);
    for (int k = 0; k < 4; ++k) {
        int b = t.add_branch();
        t.attach_switch({b, 0}, spots[k].first, spots[k].second);
        t.attach_puncture({b, 1}, k);
        x.m.width.push_back(w[k]);
    }
    return x;
}

// Two switches joined by a wide branch gamma and a second branch beta, the
// outside tails (width a each) on the same side at both switches and running
// to two punctures.
struct Circle {
    MeasuredTrainTrack m;
    int gamma = -1, beta = -1;
};

Circle make_circle(int a, int c) {
    Circle x;
    auto& t = x.m.track;
    t.add_puncture(false);
    t.add_puncture(false);
    const int S = t.add_switch(), T = t.add_switch();
    x.gamma = t.add_branch();
    x.beta = t.add_branch();
    t.attach_switch({x.gamma, 0}, S, Large);
    t.attach_switch({x.gamma, 1}, T, Large);
    t.attach_switch({x.beta, 0}, S, Left);
    t.attach_switch({x.beta, 1}, T, Left);
    for (int k = 0; k < 2; ++k) {
        int b = t.add_branch();
        t.attach_switch({b, 0}, k == 0 ? S : T, Right);
        t.attach_puncture({b, 1}, k);
    }
    x.m.width = {BigInt(2 * a + c), BigInt(a + c), BigInt(a), BigInt(a)};
    return x;
}

std::vector<BigInt> sorted_widths(const MeasuredTrainTrack& m) {
    std::vector<BigInt> v;
    for (int b : m.track.live_branches()) v.push_back(m.w(b));
    std::sort(v.begin(), v.end());
    return v;
}

std::vector<BigInt> puncture_loads(const MeasuredTrainTrack& m) {
    std::vector<BigInt> load(m.track.num_punctures(), 0);
    for (int p = 0; p < m.track.num_punctures(); ++p)
        for (const auto& h : m.track.puncture(p).ends) load[p] += m.w(h.branch);
    return load;
}

}  // namespace

TEST_CASE("track complexity") {
    MeasuredTrainTrack circle;
    int b = circle.track.add_branch();
    circle.width = {BigInt(3)};
    CHECK(circle.track.branch(b).is_free_circle());
    auto c = track_complexity(circle);
    CHECK(c.full == doctest::Approx(3.0));
    CHECK(c.reduced == 0.0);

    auto x = make_cross(3, 2, 2, 3);
    auto cx = track_complexity(x.m);
    // All five branches touch a switch: widths 5, 3, 2, 2, 3.
    CHECK(cx.reduced == doctest::Approx(5 + std::log2(6.0) + 2 * std::log2(4.0) + 2 * std::log2(3.0)));
    CHECK(cx.reduced <= cx.full);
}

TEST_CASE("ordinary split with equal sides erases the centre") {
    auto x = make_cross(3, 2, 2, 3);
    REQUIRE(check_switch_conditions(x.m) == "");
    auto o = apply_move(x.m, {MoveKind::OrdinarySplit, x.alpha, 0});
    CHECK(o.cost == 1.0);
    CHECK(x.m.track.count_switches() == 0);
    CHECK(sorted_widths(x.m) == std::vector<BigInt>{2, 3});
}

TEST_CASE("ordinary split with unequal sides keeps a centre of width |a - a'|") {
    auto x = make_cross(5, 1, 3, 3);
    REQUIRE(check_switch_conditions(x.m) == "");
    apply_move(x.m, {MoveKind::OrdinarySplit, x.alpha, 0});
    CHECK(check_switch_conditions(x.m) == "");
    CHECK(x.m.track.count_switches() == 2);
    CHECK(sorted_widths(x.m) == std::vector<BigInt>{1, 2, 3, 3, 5});
}

TEST_CASE("illegal moves are rejected") {
    auto x = make_cross(3, 2, 2, 3);
    CHECK_THROWS_AS(apply_move(x.m, {MoveKind::OrdinarySplit, 1, 0}), IllegalMove);
    CHECK_THROWS_AS(apply_move(x.m, {MoveKind::Slide, x.alpha, 0}), IllegalMove);
    CHECK_THROWS_AS(apply_move(x.m, {MoveKind::MultipleSplit, x.alpha, 1}), IllegalMove);
}

TEST_CASE("multiple split multiplicity and residual") {
    auto x = make_circle(2, 7);
    REQUIRE(check_switch_conditions(x.m) == "");
    CHECK(twist_circle_partner(x.m.track, x.gamma) == x.beta);
    CHECK(max_multiple_split(x.m, x.gamma) == 4);
    auto o = apply_move(x.m, {MoveKind::MultipleSplit, x.gamma, 4});
    CHECK(o.cost == doctest::Approx(std::log2(5.0)));
    CHECK(x.m.w(x.beta) == 1);
    CHECK(x.m.w(x.gamma) == 3);
    CHECK(check_switch_conditions(x.m) == "");
}

TEST_CASE("a single multiple split equals one ordinary split") {
    for (auto [a, c] : {std::pair{2, 3}, {3, 5}, {1, 1}, {4, 9}}) {
        auto x = make_circle(a, c);
        auto y = x;
        apply_move(x.m, {MoveKind::MultipleSplit, x.gamma, 1});
        apply_move(y.m, {MoveKind::OrdinarySplit, y.gamma, 0});
        CHECK(sorted_widths(x.m) == sorted_widths(y.m));
        CHECK(x.m.track.count_switches() == y.m.track.count_switches());
    }
}

TEST_CASE("slide leaves distant widths alone") {
    std::mt19937 rng(11);
    auto t = build_sphere(5);
    int slides = 0;
    for (int i = 0; i < 40; ++i) {
        auto m = encode_min(t, random_valid(t, rng, 1, 12));
        apply_move(m, {MoveKind::RemoveTrivial, -1, 0});
        for (int b : m.track.live_branches()) {
            const Branch& br = m.track.branch(b);
            if (br.end[0].kind != EndKind::Switch || br.end[1].kind != EndKind::Switch) continue;
            if ((br.end[0].slot == Large) == (br.end[1].slot == Large)) continue;
            auto before = m;
            apply_move(m, {MoveKind::Slide, b, 0});
            CHECK(check_switch_conditions(m) == "");
            for (int o : m.track.live_branches())
                if (o != b) CHECK(m.w(o) == before.w(o));
            ++slides;
            break;
        }
    }
    CHECK(slides > 10);
}

TEST_CASE("all-zero track simplifies in one trivial removal") {
    auto t = build_sphere(4);
    auto m = encode_min(t, NormalCoordinates(t.num_edges(), 0));
    auto [r, trace] = simplify(m);
    CHECK(r.track.count_switches() == 0);
    REQUIRE(trace.steps.size() == 1);
    CHECK(trace.steps[0].label == "trivial");
    CHECK(trace.moves.size() == 1);
    CHECK(trace.moves[0].kind == MoveKind::RemoveTrivial);
}

TEST_CASE("case K spiral") {
    auto x = make_circle(2, 7);
    auto [r, trace] = simplify(x.m);
    CHECK(r.track.count_switches() == 0);
    auto it = std::find_if(trace.moves.begin(), trace.moves.end(),
                           [](const TraceMove& mv) { return mv.kind == MoveKind::MultipleSplit; });
    REQUIRE(it != trace.moves.end());
    CHECK(it->k == 4);
    REQUIRE(!trace.steps.empty());
    CHECK(trace.steps[0].label == "K");
    CHECK(trace.steps[0].gain > std::log2(5.0));
}

TEST_CASE("simplify invariants on random curves") {
    std::mt19937 rng(5);
    for (const auto& t : ntrack::testing::small_surfaces()) {
        auto u = universal_track(t);
        for (int i = 0; i < 60; ++i) {
            auto c = random_valid(t, rng, -5, i < 30 ? 30 : 5000);
            auto m = encode_min(u, t, c);
            const auto before = track_complexity(m);
            auto [r, trace] = simplify(m);
            CHECK(r.track.count_switches() == 0);
            CHECK(check_switch_conditions(r) == "");
            CHECK(trace.total_cost <= 3 * before.full + 1e-9);
            CHECK(trace.total_gain == doctest::Approx(before.reduced - track_complexity(r).reduced));
            CHECK(trace.steps.size() <= static_cast<std::size_t>(std::floor(before.reduced)));
            double cost = 0;
            for (const auto& mv : trace.moves) cost += mv.cost;
            CHECK(cost == doctest::Approx(trace.total_cost));
            for (const auto& s : trace.steps) {
                CHECK_FALSE(s.fallback);
                CHECK(s.gain >= 1 - 1e-9);
                CHECK(s.gain >= s.cost / 3 - 1e-9);
            }
            CHECK(puncture_loads(r) == puncture_loads(m));
        }
    }
}

TEST_CASE("twist spirals simplify through multiple splits") {
    auto bundle = load_generator_bundle(std::string(NTRACK_FIXTURE_DIR) + "/sphere4");
    const auto& t = bundle.surface;
    const auto& tw = bundle.generators.at("t");
    for (long k : {7L, 100L, 4096L}) {
        auto tk = power(t, tw, BigInt(k));
        for (int j = 0; j < t.num_edges(); ++j) {
            auto m = encode_min(t, tk.col(j));
            const double full = track_complexity(m).full;
            auto [r, trace] = simplify(m);
            CHECK(r.track.count_switches() == 0);
            CHECK(trace.total_cost <= 3 * full + 1e-9);
        }
    }
    auto m = encode_min(t, power(t, tw, BigInt(4096)).col(1));
    auto [r, trace] = simplify(m);
    CHECK(std::any_of(trace.steps.begin(), trace.steps.end(), [](const SimplifyStep& s) { return s.label == "K"; }));
}

TEST_CASE("simplified curves still pair correctly with the edges") {
    std::mt19937 rng(9);
    auto t = build_disk(1, 3);
    for (int i = 0; i < 20; ++i) {
        auto c = random_valid(t, rng, -5, 30);
        for (int e = 0; e < t.num_edges(); ++e) CHECK(count_intersections(t, c, edge_curve(t, e)).value == c[e]);
    }
}
