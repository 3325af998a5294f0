#include <doctest.h>

#include <cmath>
#include <random>

#include "ntrack/errors.hpp"
#include "ntrack/mcg.hpp"
#include "ntrack/oracle.hpp"
#include "support.hpp"

using namespace ntrack;

namespace {

GeneratorBundle bundle(const char* name) { return load_generator_bundle(std::string(NTRACK_FIXTURE_DIR) + "/" + name); }

std::vector<std::string> half_twists(const GeneratorBundle& b) {
    std::vector<std::string> ids;
    for (const auto& [id, m] : b.generators)
        if (id != "t") ids.push_back(id);
    return ids;
}

MappingClassMatrix random_word(const GeneratorBundle& b, std::mt19937& rng, int letters) {
    const auto ids = half_twists(b);
    std::uniform_int_distribution<int> pick(0, static_cast<int>(ids.size()) - 1), expo(-3, 3);
    ZippedWord w;
    for (int i = 0; i < letters; ++i) w.letters.emplace_back(ids[pick(rng)], BigInt(expo(rng)));
    return evaluate_zipped_word(b.surface, w, b.generators).matrix;
}

}  // namespace

TEST_CASE("minus identity is neutral") {
    for (const char* name : {"sphere4", "sphere5", "disk13"}) {
        auto b = bundle(name);
        const auto& t = b.surface;
        auto id = identity_matrix(t.num_edges());
        for (const auto& [gid, m] : b.generators) {
            CHECK(compose(t, id, m) == m);
            CHECK(compose(t, m, id) == m);
        }
    }
}

TEST_CASE("inverse law") {
    for (const char* name : {"sphere4", "sphere5", "disk13"}) {
        auto b = bundle(name);
        const auto& t = b.surface;
        for (const auto& [gid, m] : b.generators) {
            CHECK(compose(t, m, inverse(m)) == identity_matrix(t.num_edges()));
            CHECK(compose(t, inverse(m), m) == identity_matrix(t.num_edges()));
        }
    }
}

TEST_CASE("braid and commutation relations") {
    for (const char* name : {"sphere4", "sphere5", "disk13"}) {
        auto b = bundle(name);
        const auto& t = b.surface;
        const auto ids = half_twists(b);
        for (std::size_t i = 0; i < ids.size(); ++i) {
            const auto& x = b.generators.at(ids[i]);
            if (i + 1 < ids.size()) {
                const auto& y = b.generators.at(ids[i + 1]);
                CHECK(compose(t, compose(t, x, y), x) == compose(t, compose(t, y, x), y));
            }
            for (std::size_t k = i + 2; k < ids.size(); ++k) {
                const auto& z = b.generators.at(ids[k]);
                CHECK(compose(t, x, z) == compose(t, z, x));
            }
        }
        CHECK(compose(t, b.generators.at("s1"), b.generators.at("s1")) == b.generators.at("t"));
    }
}

TEST_CASE("associativity on random triples") {
    std::mt19937 rng(17);
    auto b = bundle("sphere5");
    const auto& t = b.surface;
    for (int i = 0; i < 10; ++i) {
        auto x = random_word(b, rng, 3), y = random_word(b, rng, 3), z = random_word(b, rng, 3);
        CHECK(compose(t, compose(t, x, y), z) == compose(t, x, compose(t, y, z)));
    }
}

TEST_CASE("powers") {
    auto b = bundle("sphere4");
    const auto& t = b.surface;
    for (const auto& [gid, m] : b.generators) {
        auto chain = m;
        for (int i = 1; i < 5; ++i) chain = compose(t, chain, m);
        CHECK(power(t, m, BigInt(5)) == chain);
        CHECK(power(t, m, BigInt(-1)) == inverse(m));
        CHECK(power(t, m, BigInt(0)) == identity_matrix(t.num_edges()));
        CHECK(compose(t, power(t, m, BigInt(7)), power(t, m, BigInt(-7))) == identity_matrix(t.num_edges()));
    }
}

TEST_CASE("applying a matrix to curves agrees with the oracle") {
    std::mt19937 rng(4);
    auto b = bundle("disk13");
    const auto& t = b.surface;
    const auto& m = b.generators.at("s1");
    for (int i = 0; i < 20; ++i) {
        auto c = ntrack::testing::random_valid(t, rng, -2, 6);
        auto img = apply_to_curve(t, m, c);
        CHECK(check_coords(t, img).ok);
        // The image pairs with g(e_j) the way c pairs with e_j.
        for (int j = 0; j < t.num_edges(); ++j)
            CHECK(oracle_intersection(t, img, m.col(j)) == oracle_intersection(t, c, edge_curve(t, j)));
    }
}

TEST_CASE("determinants are powers of two") {
    std::mt19937 rng(8);
    for (const char* name : {"sphere4", "sphere5", "disk13"}) {
        auto b = bundle(name);
        for (const auto& [gid, m] : b.generators) CHECK(is_power_of_two(abs(determinant(m))));
        for (int i = 0; i < 5; ++i) CHECK(is_power_of_two(abs(determinant(random_word(b, rng, 4)))));
    }
    MappingClassMatrix m(2);
    m(0, 0) = 3;
    m(0, 1) = 1;
    m(1, 0) = 5;
    m(1, 1) = 2;
    CHECK(determinant(m) == 1);
    CHECK_FALSE(is_power_of_two(BigInt(12)));
    CHECK(is_power_of_two(BigInt(1)));
}

TEST_CASE("matrix complexity") {
    CHECK(matrix_complexity(identity_matrix(6)) == 0.0);
    auto m = identity_matrix(3);
    m(0, 1) = 3;
    m(2, 2) = 6;  // |6 + 1| + 1 = 8
    CHECK(matrix_complexity(m) == doctest::Approx(2.0 + 3.0));
    CHECK(euclidean_log_norm(identity_matrix(4)) == doctest::Approx(1.0));
}

TEST_CASE("euclidean norm is subadditive up to mu") {
    std::mt19937 rng(23);
    auto b = bundle("sphere4");
    const auto& t = b.surface;
    const double mu = mu_log_norm(t);
    for (int i = 0; i < 15; ++i) {
        auto x = random_word(b, rng, 3), y = random_word(b, rng, 3);
        CHECK(euclidean_log_norm(compose(t, x, y)) <= euclidean_log_norm(x) + euclidean_log_norm(y) + mu + 1e-6);
    }
}

TEST_CASE("zipped word evaluation") {
    auto b = bundle("sphere4");
    const auto& t = b.surface;
    ZippedWord w = parse_word("s1 3\ns2 -2 # comment\n\nt 1\n");
    REQUIRE(w.letters.size() == 3);
    auto ev = evaluate_zipped_word(t, w, b.generators);
    auto want = compose(t, compose(t, power(t, b.generators.at("s1"), BigInt(3)),
                                   power(t, b.generators.at("s2"), BigInt(-2))),
                        b.generators.at("t"));
    CHECK(ev.matrix == want);
    CHECK(ev.zwl == doctest::Approx(std::log2(4.0) + std::log2(3.0) + 1.0));
    CHECK(ev.complexity == doctest::Approx(matrix_complexity(want)));
    CHECK_THROWS_AS(evaluate_zipped_word(t, parse_word("nope 1"), b.generators), UnknownGenerator);
    CHECK_THROWS_AS(parse_word("s1"), ParseError);
}

TEST_CASE("matrix text round trip") {
    auto b = bundle("sphere5");
    for (const auto& [gid, m] : b.generators) CHECK(parse_matrix(format_matrix(m)) == m);
    CHECK_THROWS_AS(parse_matrix("1 2\n3\n"), ParseError);
    CHECK_THROWS_AS(parse_matrix(""), ParseError);
}

TEST_CASE("matrix validation") {
    for (const char* name : {"sphere4", "disk13"}) {
        auto b = bundle(name);
        const auto& t = b.surface;
        const int n = t.num_edges();
        CHECK(validate_matrix(t, identity_matrix(n)).valid);
        for (const auto& [gid, m] : b.generators) CHECK(validate_matrix(t, m).valid);
        CHECK(validate_matrix(t, power(t, b.generators.at("t"), BigInt(1000))).valid);

        auto zeros = validate_matrix(t, MappingClassMatrix(n));
        CHECK_FALSE(zeros.valid);
        CHECK(zeros.stage == 1);

        // Swapped columns are disjoint arcs but not laid out like the edges.
        auto swapped = identity_matrix(n);
        swapped(0, 0) = 0;
        swapped(1, 1) = 0;
        swapped(0, 1) = -1;
        swapped(1, 0) = -1;
        auto s = validate_matrix(t, swapped);
        CHECK_FALSE(s.valid);
        CHECK(s.stage == 3);
    }
}

TEST_CASE("matrix validation catches intersecting columns") {
    auto b = bundle("sphere4");
    const auto& t = b.surface;
    auto m = b.generators.at("s1");
    const auto& tw = b.generators.at("t");
    for (int i = 0; i < t.num_edges(); ++i) m(i, 1) = tw(i, 1);
    auto v = validate_matrix(t, m);
    CHECK_FALSE(v.valid);
    CHECK(v.stage == 2);
}

TEST_CASE("mismatched sizes are rejected") {
    auto b = bundle("sphere4");
    CHECK_THROWS(compose(b.surface, identity_matrix(5), identity_matrix(6)));
    CHECK_FALSE(validate_matrix(b.surface, identity_matrix(5)).valid);
}
