// Command-line front end.  Results go to standard output; traces and notes go
// to standard error.  Exit status: 0 success, 2 invalid input, 1 usage error.

#include <cstdio>
#include <functional>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "bench.hpp"
#include "ntrack/errors.hpp"
#include "ntrack/mcg.hpp"
#include "ntrack/oracle.hpp"

using namespace ntrack;

namespace {

struct Flags {
    bool trace = false;
    bool check_oracle = false;
    int unary_bound = 64;
    int threads = 0;
};

// Raised for a well-formed request whose input fails a check.
struct Rejected : Error {
    using Error::Error;
};

ComposeOptions compose_options(const Flags& f) {
    ComposeOptions o;
    o.threads = f.threads;
    return o;
}

// Oracle cross-check of one pairing; skipped when the curves are too large.
void oracle_check(const Flags& f, const Triangulation& t, const NormalCoordinates& a, const NormalCoordinates& b,
                  const BigInt& got, const std::string& what) {
    OracleOptions o;
    o.unary_bound = f.unary_bound;
    BigInt want;
    try {
        want = oracle_intersection(t, a, b, o);
    } catch (const UnaryBoundExceeded&) {
        std::cerr << "oracle: " << what << " skipped (beyond unary bound " << f.unary_bound << ")\n";
        return;
    }
    if (want != got)
        throw Rejected("oracle mismatch at " + what + ": engine " + to_string(got) + ", oracle " + to_string(want));
}

void print_matrix(const MappingClassMatrix& m) { std::cout << format_matrix(m); }

int cmd_surface(const std::string& path, const std::vector<std::string>& build) {
    Triangulation t;
    if (!build.empty()) {
        static const std::map<std::string, SurfaceFamily> families{
            {"sphere", SurfaceFamily::Sphere}, {"disk", SurfaceFamily::Disk}, {"torus", SurfaceFamily::Torus}};
        auto it = families.find(build[0]);
        if (it == families.end() || build.size() < 2) throw CLI::ValidationError("--build", "expected FAMILY A [B]");
        const int a = std::stoi(build[1]), b = build.size() > 2 ? std::stoi(build[2]) : 0;
        std::cout << save_surface(build_standard(it->second, a, b));
        return 0;
    }
    if (path.empty()) throw CLI::RequiredError("surface file or --build");
    t = load_surface_file(path);
    auto problems = validate_triangulation(t);
    std::cout << "punctures " << t.num_punctures() << " boundary " << t.num_boundary_punctures() << " edges "
              << t.num_edges() << " triangles " << t.num_triangles() << " chi " << t.euler_characteristic() << "\n";
    if (!problems.empty()) {
        for (const auto& p : problems) std::cerr << p << "\n";
        return 2;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Normal curves, intersection numbers and mapping class matrices"};
    app.require_subcommand(1);
    Flags f;
    app.add_flag("--trace", f.trace, "print the move log on standard error");
    app.add_flag("--check-oracle", f.check_oracle, "cross-check pairings with the unary oracle");
    app.add_option("--unary-bound", f.unary_bound, "largest coordinate the oracle will expand")->check(CLI::PositiveNumber);
    app.add_option("--threads", f.threads, "worker threads for matrix products (0: all cores)")
        ->check(CLI::NonNegativeNumber);
    app.fallthrough();

    std::string surf, a, b, c, k_text, build_dir;
    std::vector<std::string> build;
    std::function<int()> action;

    auto* s = app.add_subcommand("surface", "validate and summarise a surface, or print a standard one");
    s->add_option("surface", surf, "surface file");
    s->add_option("--build", build, "FAMILY A [B] with FAMILY one of sphere, disk, torus")->expected(2, 3);
    s->callback([&] { action = [&] { return cmd_surface(surf, build); }; });

    auto* vc = app.add_subcommand("validate-curve", "check a normal coordinate vector");
    vc->add_option("surface", surf)->required();
    vc->add_option("curve", a)->required();
    vc->callback([&] {
        action = [&] {
            auto t = load_surface_file(surf);
            auto check = check_coords(t, load_curve_file(a));
            if (!check.ok) throw Rejected(check.reason);
            std::cout << "valid\n";
            return 0;
        };
    });

    auto* in = app.add_subcommand("intersect", "geometric intersection index of two curves");
    in->add_option("surface", surf)->required();
    in->add_option("curve1", a)->required();
    in->add_option("curve2", b)->required();
    in->callback([&] {
        action = [&] {
            auto t = load_surface_file(surf);
            auto c1 = load_curve_file(a), c2 = load_curve_file(b);
            IntersectionOptions o;
            o.trace = f.trace;
            auto r = count_intersections(t, c1, c2, o);
            for (const auto& line : r.trace) std::cerr << line << "\n";
            if (f.check_oracle) oracle_check(f, t, c1, c2, r.value, "the pair");
            std::cout << to_string(r.value) << "\n";
            return 0;
        };
    });

    auto* en = app.add_subcommand("encode", "minimal measured track on the universal track");
    en->add_option("surface", surf)->required();
    en->add_option("curve", a)->required();
    en->callback([&] {
        action = [&] {
            auto t = load_surface_file(surf);
            auto c1 = load_curve_file(a);
            validate_coords(t, c1);
            std::cout << dump_track(encode_min(t, c1));
            return 0;
        };
    });

    auto* si = app.add_subcommand("simplify", "simplify the encoded curve to a switch-free track");
    si->add_option("surface", surf)->required();
    si->add_option("curve", a)->required();
    si->callback([&] {
        action = [&] {
            auto t = load_surface_file(surf);
            auto c1 = load_curve_file(a);
            validate_coords(t, c1);
            auto m = encode_min(t, c1);
            auto [r, trace] = simplify(m);
            if (f.trace) {
                std::cerr << format_trace(trace);
                std::fprintf(stderr, "cost bound %.6f\n", 3 * track_complexity(m).full);
            }
            std::cout << dump_track(r);
            return 0;
        };
    });

    auto* co = app.add_subcommand("compose", "matrix of the composition A o B");
    co->add_option("surface", surf)->required();
    co->add_option("A", a)->required();
    co->add_option("B", b)->required();
    co->callback([&] {
        action = [&] {
            auto t = load_surface_file(surf);
            auto ma = load_matrix_file(a), mb = load_matrix_file(b);
            auto m = compose(t, ma, mb, compose_options(f));
            if (f.check_oracle)
                for (int i = 0; i < m.size(); ++i)
                    for (int j = 0; j < m.size(); ++j)
                        oracle_check(f, t, ma.row(i), mb.col(j), m(i, j),
                                     "entry " + std::to_string(i + 1) + "," + std::to_string(j + 1));
            print_matrix(m);
            return 0;
        };
    });

    auto* po = app.add_subcommand("power", "matrix of M^k");
    po->add_option("surface", surf)->required();
    po->add_option("M", a)->required();
    po->add_option("k", k_text)->required();
    po->callback([&] {
        action = [&] {
            auto t = load_surface_file(surf);
            print_matrix(power(t, load_matrix_file(a), parse_bigint(k_text), compose_options(f)));
            return 0;
        };
    });

    auto* ap = app.add_subcommand("apply", "image of a curve under a mapping class");
    ap->add_option("surface", surf)->required();
    ap->add_option("M", a)->required();
    ap->add_option("curve", b)->required();
    ap->callback([&] {
        action = [&] {
            auto t = load_surface_file(surf);
            auto m = load_matrix_file(a);
            auto c1 = load_curve_file(b);
            auto img = apply_to_curve(t, m, c1, compose_options(f));
            if (f.check_oracle)
                for (int i = 0; i < m.size(); ++i)
                    oracle_check(f, t, c1, m.row(i), img[i], "entry " + std::to_string(i + 1));
            std::cout << format_curve(img) << "\n";
            return 0;
        };
    });

    auto* ew = app.add_subcommand("eval-word", "evaluate a zipped word over a generator bundle");
    ew->add_option("bundle", build_dir, "fixture directory with surface.txt and generators.txt")->required();
    ew->add_option("word", a)->required();
    ew->callback([&] {
        action = [&] {
            auto bundle = load_generator_bundle(build_dir);
            auto ev = evaluate_zipped_word(bundle.surface, load_word_file(a), bundle.generators, compose_options(f));
            print_matrix(ev.matrix);
            std::printf("# zwl %.6f\n# complexity %.6f\n", ev.zwl, ev.complexity);
            return 0;
        };
    });

    auto* vm = app.add_subcommand("validate-matrix", "check that a matrix comes from a mapping class");
    vm->add_option("surface", surf)->required();
    vm->add_option("M", a)->required();
    vm->callback([&] {
        action = [&] {
            auto t = load_surface_file(surf);
            auto check = validate_matrix(t, load_matrix_file(a), compose_options(f));
            if (!check.valid) throw Rejected("stage " + std::to_string(check.stage) + ": " + check.reason);
            std::cout << "valid\n";
            return 0;
        };
    });

    bench::Ladder ladder;
    auto* be = app.add_subcommand("bench", "time intersections along a twist-power ladder");
    be->add_option("bundle", build_dir, "fixture directory")->required();
    be->add_option("--twist", ladder.twist, "generator to iterate");
    be->add_option("--from", ladder.from, "first exponent j (pairs use t^(2^j))");
    be->add_option("--to", ladder.to, "last exponent j");
    be->add_option("--reps", ladder.reps, "repetitions per rung")->check(CLI::PositiveNumber);
    be->callback([&] {
        action = [&] {
            ladder.threads = f.threads;
            std::cout << bench::format(bench::run(load_generator_bundle(build_dir), ladder));
            return 0;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }
    try {
        return action();
    } catch (const CLI::Error& e) {
        std::cerr << "usage: " << e.what() << "\n";
        return 1;
    } catch (const IllegalMove& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
}
