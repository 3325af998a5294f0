#include "bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>

#include "ntrack/errors.hpp"

namespace ntrack::bench {

namespace {

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v[v.size() / 2];
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double d = n * sxx - sx * sx;
    return d == 0 ? 0 : (n * sxy - sx * sy) / d;
}

}  // namespace

Report run(const GeneratorBundle& bundle, const Ladder& ladder) {
    const auto& t = bundle.surface;
    auto it = bundle.generators.find(ladder.twist);
    if (it == bundle.generators.end()) throw UnknownGenerator("no generator named '" + ladder.twist + "'");
    const MappingClassMatrix& tw = it->second;
    ComposeOptions copt;
    copt.threads = ladder.threads;

    Report r;
    for (int e = 0; e < t.num_edges(); ++e) {
        if (tw.col(e) == edge_curve(t, e)) continue;
        if (r.edge1 < 0) r.edge1 = e;
        else if (r.edge2 < 0) r.edge2 = e;
    }
    if (r.edge2 < 0) throw InvalidMatrix("twist moves fewer than two edges");
    const auto u = universal_track(t);
    using clock = std::chrono::steady_clock;

    {
        std::vector<double> times;
        for (int k = 0; k < std::max(ladder.reps, 1); ++k) {
            const auto t0 = clock::now();
            count_intersections(u, t, edge_curve(t, r.edge1), edge_curve(t, r.edge1));
            times.push_back(std::chrono::duration<double>(clock::now() - t0).count());
        }
        r.baseline = median(times);
    }

    std::vector<double> lx, ly;
    for (int j = ladder.from; j <= ladder.to; ++j) {
        const BigInt k = BigInt(1) << j;
        const auto g1 = apply_to_curve(t, power(t, tw, k, copt), edge_curve(t, r.edge1), copt);
        const auto g2 = apply_to_curve(t, power(t, tw, -k, copt), edge_curve(t, r.edge2), copt);
        Row row;
        row.j = j;
        row.size1 = curve_complexity(g1);
        row.size2 = curve_complexity(g2);
        std::vector<double> total, enc, simp, sum;
        for (int rep = 0; rep < std::max(ladder.reps, 1); ++rep) {
            const auto t0 = clock::now();
            IntersectionResult res = count_intersections(u, t, g1, g2);
            total.push_back(std::chrono::duration<double>(clock::now() - t0).count());
            enc.push_back(res.stats.encode_seconds);
            simp.push_back(res.stats.simplify_seconds);
            sum.push_back(res.stats.sum_seconds);
            row.steps = res.stats.steps;
            row.value = res.value;
        }
        row.seconds = median(total);
        row.encode = median(enc);
        row.simplify = median(simp);
        row.sum = median(sum);
        lx.push_back(std::log(row.size1 * row.size2));
        ly.push_back(std::log(row.seconds));
        r.rows.push_back(std::move(row));
    }
    r.slope = fit_slope(lx, ly);
    return r;
}

std::string format(const Report& r) {
    std::string out;
    char buf[256];
    std::snprintf(buf, sizeof buf, "pair t^(2^j)(e%d) x t^(-2^j)(e%d)\nbaseline %.6f ms\n", r.edge1 + 1, r.edge2 + 1,
                  r.baseline * 1e3);
    out += buf;
    out += "j size1 size2 product total_ms encode_ms simplify_ms sum_ms steps value\n";
    for (const auto& row : r.rows) {
        std::snprintf(buf, sizeof buf, "%d %.3f %.3f %.3f %.4f %.4f %.4f %.4f %ld ", row.j, row.size1, row.size2,
                      row.size1 * row.size2, row.seconds * 1e3, row.encode * 1e3, row.simplify * 1e3, row.sum * 1e3,
                      row.steps);
        out += buf;
        out += to_string(row.value) + "\n";
    }
    std::snprintf(buf, sizeof buf, "slope %.4f\n", r.slope);
    out += buf;
    return out;
}

}  // namespace ntrack::bench
