// Acceptance run: one PASS/FAIL line per criterion, followed by details.
// The exit status is 0 once every criterion has been evaluated; with --strict
// it is the number of failing criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "../tools/bench.hpp"
#include "ntrack/mcg.hpp"
#include "ntrack/oracle.hpp"
#include "support.hpp"

using namespace ntrack;

namespace {

constexpr int kPairsPerSurface = 2000;
constexpr int kEntryLo = -5;
constexpr int kEntryHi = 30;
constexpr double kCostTolerance = 1e-9;
constexpr int kAssociativityTriples = 200;
constexpr int kDeterminantWords = 100;
constexpr int kSubadditivityPairs = 200;
constexpr double kSubadditivityTolerance = 1e-6;
constexpr int kTwistMaxJ = 20;
constexpr double kTwistDrift = 0.10;
constexpr int kBenchFrom = 6;
constexpr int kBenchTo = 14;
constexpr int kBenchReps = 5;
constexpr double kBenchSlope = 1.3;
constexpr double kBenchLargestSeconds = 10.0;
constexpr int kOracleUnaryBound = 4096;
constexpr std::uint32_t kSeed = 20240601;

struct Verdict {
    int id;
    bool pass;
    std::string summary;
    std::vector<std::string> details;
};

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

GeneratorBundle bundle(const std::string& name) {
    return load_generator_bundle(std::string(NTRACK_FIXTURE_DIR) + "/" + name);
}

const char* kBundles[] = {"sphere4", "sphere5", "disk13"};

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

// Shared sample for criteria 1, 2, 4, 9 and 10.
struct Sample {
    std::string name;
    Triangulation t;
    std::vector<std::pair<NormalCoordinates, NormalCoordinates>> pairs;
};

struct SampleRuns {
    long pairs = 0, oracle_mismatch = 0, asym = 0, over_bound = 0;
    long simplify_runs = 0, cost_violations = 0;
    double worst_cost_ratio = 0;
    long curves = 0, roundtrip_fail = 0;
    long joint_runs = 0, cap_violations = 0;
    int worst_divergence = 0, cap_at_worst = 0;
    long edge_pairs = 0, edge_fail = 0;
    double seconds = 0;
};

SampleRuns run_sample(const std::vector<Sample>& samples) {
    SampleRuns r;
    const auto t0 = std::chrono::steady_clock::now();
    OracleOptions oopt;
    oopt.unary_bound = kOracleUnaryBound;
    auto track_divergence = [&](const IntersectionResult& res) {
        ++r.joint_runs;
        if (res.stats.max_divergence > res.stats.divergence_cap) ++r.cap_violations;
        if (res.stats.max_divergence >= r.worst_divergence) {
            r.worst_divergence = res.stats.max_divergence;
            r.cap_at_worst = res.stats.divergence_cap;
        }
    };
    for (const auto& s : samples) {
        const auto& t = s.t;
        const auto u = universal_track(t);
        for (int i = 0; i < t.num_edges(); ++i)
            for (int j = 0; j < t.num_edges(); ++j) {
                ++r.edge_pairs;
                if (count_intersections(u, t, edge_curve(t, i), edge_curve(t, j)).value != (i == j ? -1 : 0))
                    ++r.edge_fail;
            }
        for (const auto& [a, b] : s.pairs) {
            ++r.pairs;
            auto ab = count_intersections(u, t, a, b);
            auto ba = count_intersections(u, t, b, a);
            track_divergence(ab);
            track_divergence(ba);
            if (ab.value != oracle_intersection(t, a, b, oopt)) ++r.oracle_mismatch;
            if (ab.value != ba.value) ++r.asym;
            if (abs(ab.value) > intersection_bound(t, a, b)) ++r.over_bound;
            for (const auto* c : {&a, &b}) {
                auto m = encode_min(u, t, *c);
                const double full = track_complexity(m).full;
                auto [simple, trace] = simplify(m);
                ++r.simplify_runs;
                if (trace.total_cost > 3 * full + kCostTolerance || simple.track.count_switches() != 0)
                    ++r.cost_violations;
                if (full > 0) r.worst_cost_ratio = std::max(r.worst_cost_ratio, trace.total_cost / full);
                ++r.curves;
                for (int e = 0; e < t.num_edges(); ++e) {
                    auto res = count_intersections(u, t, *c, edge_curve(t, e));
                    track_divergence(res);
                    if (res.value != (*c)[e]) {
                        ++r.roundtrip_fail;
                        break;
                    }
                }
            }
        }
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

Verdict group_structure(std::mt19937& rng) {
    Verdict v{3, true, "", {}};
    long checks = 0, bad = 0;
    for (const char* name : kBundles) {
        auto b = bundle(name);
        const auto& t = b.surface;
        const int n = t.num_edges();
        for (const auto& [id, m] : b.generators) {
            ++checks;
            if (!(compose(t, m, inverse(m)) == identity_matrix(n))) {
                ++bad;
                v.details.push_back(std::string(name) + "/" + id + ": M o M^T != -I");
            }
        }
        const auto ids = half_twists(b);
        for (std::size_t i = 0; i < ids.size(); ++i) {
            const auto& x = b.generators.at(ids[i]);
            if (i + 1 < ids.size()) {
                const auto& y = b.generators.at(ids[i + 1]);
                ++checks;
                if (!(compose(t, compose(t, x, y), x) == compose(t, compose(t, y, x), y))) {
                    ++bad;
                    v.details.push_back(std::string(name) + ": braid relation fails for " + ids[i]);
                }
            }
            for (std::size_t k = i + 2; k < ids.size(); ++k) {
                ++checks;
                if (!(compose(t, x, b.generators.at(ids[k])) == compose(t, b.generators.at(ids[k]), x))) {
                    ++bad;
                    v.details.push_back(std::string(name) + ": " + ids[i] + " and " + ids[k] + " do not commute");
                }
            }
        }
    }
    for (int i = 0; i < kAssociativityTriples; ++i) {
        auto b = bundle(kBundles[i % 3]);
        const auto& t = b.surface;
        auto x = random_word(b, rng, 3), y = random_word(b, rng, 3), z = random_word(b, rng, 3);
        ++checks;
        if (!(compose(t, compose(t, x, y), z) == compose(t, x, compose(t, y, z)))) {
            ++bad;
            v.details.push_back(std::string("associativity fails on triple ") + std::to_string(i));
        }
    }
    v.pass = bad == 0;
    v.summary = std::to_string(checks) + " matrix identities checked, " + std::to_string(bad) + " failures";
    return v;
}

Verdict determinants(std::mt19937& rng) {
    Verdict v{5, true, "", {}};
    long bad = 0;
    for (int i = 0; i < kDeterminantWords; ++i) {
        auto b = bundle(kBundles[i % 3]);
        auto m = random_word(b, rng, 5);
        BigInt d = determinant(m);
        if (!is_power_of_two(abs(d))) {
            ++bad;
            v.details.push_back("word " + std::to_string(i) + ": det " + to_string(d));
        }
    }
    v.pass = bad == 0;
    v.summary = std::to_string(kDeterminantWords) + " words, " + std::to_string(bad) + " determinants not +-2^k";
    return v;
}

Verdict subadditivity(std::mt19937& rng) {
    Verdict v{6, true, "", {}};
    long bad = 0;
    double slack = 1e300;
    for (int i = 0; i < kSubadditivityPairs; ++i) {
        auto b = bundle(kBundles[i % 3]);
        const auto& t = b.surface;
        auto x = random_word(b, rng, 4), y = random_word(b, rng, 4);
        const double lhs = euclidean_log_norm(compose(t, x, y));
        const double rhs = euclidean_log_norm(x) + euclidean_log_norm(y) + mu_log_norm(t);
        slack = std::min(slack, rhs - lhs);
        if (lhs > rhs + kSubadditivityTolerance) {
            ++bad;
            v.details.push_back(fmt("pair %.0f: E(g1 g2) = %.6f > %.6f", i, lhs, rhs));
        }
    }
    v.pass = bad == 0;
    v.summary = std::to_string(kSubadditivityPairs) + " pairs, " + std::to_string(bad) + " violations, least slack " +
                fmt("%.4f", slack);
    return v;
}

Verdict twist_growth() {
    Verdict v{7, true, "", {}};
    double worst = 0;
    for (const char* name : kBundles) {
        auto b = bundle(name);
        const auto& t = b.surface;
        const auto& tw = b.generators.at("t");
        std::vector<double> ratio;
        std::string line = std::string(name) + " c/(j+1):";
        for (int j = 0; j <= kTwistMaxJ; ++j) {
            const double c = matrix_complexity(power(t, tw, BigInt(1) << j));
            ratio.push_back(c / (j + 1));
            line += fmt(" %.2f", ratio.back());
        }
        const auto [lo, hi] = std::minmax_element(ratio.begin(), ratio.end());
        const double drift = (*hi - *lo) / *lo;
        worst = std::max(worst, drift);
        v.details.push_back(line);
        v.details.push_back(std::string(name) + fmt(" C = %.3f, drift %.1f%%", *hi, 100 * drift));
        if (drift > kTwistDrift) v.pass = false;
    }
    v.summary = fmt("worst drift of c/(j+1) over j = 0..20 is %.1f%% (limit %.0f%%)", 100 * worst, 100 * kTwistDrift);
    return v;
}

Verdict runtime_scaling(SampleRuns& runs) {
    Verdict v{8, true, "", {}};
    bench::Ladder ladder;
    ladder.from = kBenchFrom;
    ladder.to = kBenchTo;
    ladder.reps = kBenchReps;
    auto report = bench::run(bundle("sphere4"), ladder);
    double largest = 0;
    for (const auto& row : report.rows) largest = std::max(largest, row.seconds);
    v.pass = report.slope <= kBenchSlope && largest < kBenchLargestSeconds;
    v.summary = fmt("fitted slope %.3f (limit %.1f), largest pair %.4f s", report.slope, kBenchSlope, largest);
    std::string text = bench::format(report);
    for (std::size_t p = 0, q; (q = text.find('\n', p)) != std::string::npos; p = q + 1) v.details.push_back(text.substr(p, q - p));
    (void)runs;
    return v;
}

}  // namespace

int main(int argc, char** argv) {
    bool strict = false;
    std::string report_path;
    for (int i = 1; i < argc; ++i) {
        if (!std::strcmp(argv[i], "--strict")) strict = true;
        else if (!std::strcmp(argv[i], "--report") && i + 1 < argc) report_path = argv[++i];
    }
    std::mt19937 rng(kSeed);

    std::vector<Sample> samples;
    for (auto [name, t] : {std::pair{"S04", build_sphere(4)}, {"disk13", build_disk(1, 3)}}) {
        Sample s{name, t, {}};
        for (int i = 0; i < kPairsPerSurface; ++i)
            s.pairs.emplace_back(ntrack::testing::random_valid(t, rng, kEntryLo, kEntryHi),
                                 ntrack::testing::random_valid(t, rng, kEntryLo, kEntryHi));
        samples.push_back(std::move(s));
    }
    SampleRuns runs = run_sample(samples);

    std::vector<Verdict> verdicts;
    verdicts.push_back({1, runs.oracle_mismatch == 0,
                        std::to_string(runs.pairs) + " pairs on S04 and disk13, " + std::to_string(runs.oracle_mismatch) +
                            " oracle mismatches" + fmt(", %.1f s", runs.seconds),
                        {}});
    verdicts.push_back({2, runs.edge_fail == 0 && runs.asym == 0 && runs.over_bound == 0,
                        std::to_string(runs.edge_pairs) + " edge pairs (" + std::to_string(runs.edge_fail) +
                            " wrong), " + std::to_string(runs.asym) + " asymmetric, " +
                            std::to_string(runs.over_bound) + " over the bound",
                        {}});
    verdicts.push_back(group_structure(rng));
    verdicts.push_back({4, runs.cost_violations == 0,
                        std::to_string(runs.simplify_runs) + " simplify runs, " + std::to_string(runs.cost_violations) +
                            " over 3|(theta,w)|" + fmt(", worst cost/|(theta,w)| = %.3f", runs.worst_cost_ratio),
                        {}});
    verdicts.push_back(determinants(rng));
    verdicts.push_back(subadditivity(rng));
    verdicts.push_back(twist_growth());
    verdicts.push_back(runtime_scaling(runs));
    verdicts.push_back({9, runs.roundtrip_fail == 0,
                        std::to_string(runs.curves) + " curves decoded through edge intersections, " +
                            std::to_string(runs.roundtrip_fail) + " mismatches",
                        {}});
    verdicts.push_back({10, runs.cap_violations == 0,
                        std::to_string(runs.joint_runs) + " joint runs, " + std::to_string(runs.cap_violations) +
                            " over n + 4 + 3q; largest count " + std::to_string(runs.worst_divergence) + " (cap " +
                            std::to_string(runs.cap_at_worst) + ")",
                        {}});
    std::sort(verdicts.begin(), verdicts.end(), [](const Verdict& a, const Verdict& b) { return a.id < b.id; });

    std::string out;
    int failed = 0;
    for (const auto& v : verdicts) {
        out += std::string(v.pass ? "PASS" : "FAIL") + " criterion " + std::to_string(v.id) + ": " + v.summary + "\n";
        failed += !v.pass;
    }
    for (const auto& v : verdicts)
        for (const auto& d : v.details) out += "  [" + std::to_string(v.id) + "] " + d + "\n";
    out += std::to_string(static_cast<int>(verdicts.size()) - failed) + "/" + std::to_string(verdicts.size()) +
           " criteria pass\n";
    std::fputs(out.c_str(), stdout);
    if (!report_path.empty()) std::ofstream(report_path) << out;
    return strict ? failed : 0;
}
