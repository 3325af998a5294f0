// Writes the fixture bundles under fixtures/: the surface, the contribution
// table of its universal track, and the generator matrices.  Each generator
// is a half-twist about an edge of the fixture triangulation; its matrix is
// computed exactly from edge walks and then checked with the oracle.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "ntrack/oracle.hpp"
#include "ntrack/surface.hpp"
#include "ntrack/universal.hpp"
#include "twist_engine.hpp"

namespace fs = std::filesystem;
using namespace ntrack;
using namespace ntrack::fixtures;

namespace {

struct Family {
    std::string name;
    Triangulation surface;
    std::vector<std::pair<std::string, int>> generators;  // id, twist edge
    std::string twist_of;                                 // generator squared into `twist`
};

using Matrix = std::vector<NormalCoordinates>;  // stored by columns

std::vector<NormalCoordinates> images(const Triangulation& t, const std::vector<const HalfTwist*>& word) {
    std::vector<NormalCoordinates> cols;
    for (int j = 0; j < t.num_edges(); ++j) {
        ArcWalk w = edge_walk(t, j);
        for (auto it = word.rbegin(); it != word.rend(); ++it) w = (*it)->image(w);
        cols.push_back(walk_coordinates(t, w));
    }
    return cols;
}

void write_matrix(const fs::path& path, const Matrix& cols) {
    std::ofstream os(path);
    const std::size_t n = cols.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) os << (j ? " " : "") << to_string(cols[j][i]);
        os << '\n';
    }
}

// Images of the edges form a triangulation again: pairwise index -delta.
bool oracle_check(const Triangulation& t, const Matrix& cols, const std::string& what) {
    for (std::size_t i = 0; i < cols.size(); ++i)
        for (std::size_t j = i; j < cols.size(); ++j) {
            BigInt v = oracle_intersection(t, cols[i], cols[j]);
            if (v != (i == j ? -1 : 0)) {
                std::cerr << what << ": columns " << i + 1 << ", " << j + 1 << " meet " << to_string(v) << " times\n";
                return false;
            }
        }
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Generate mapping class generator fixtures"};
    std::string out = "fixtures";
    app.add_option("-o,--out", out, "output directory");
    CLI11_PARSE(app, argc, argv);

    std::vector<Family> families = {
        {"sphere4", build_sphere(4), {{"s1", 0}, {"s2", 3}, {"s3", 5}}, "s1"},
        {"sphere5", build_sphere(5), {{"s1", 0}, {"s2", 4}, {"s3", 7}, {"s4", 8}}, "s1"},
        {"disk13", build_disk(1, 3), {{"s1", 4}, {"s2", 5}}, "s1"},
    };

    bool ok = true;
    for (const auto& f : families) {
        const fs::path dir = fs::path(out) / f.name;
        fs::create_directories(dir);
        std::ofstream(dir / "surface.txt") << save_surface(f.surface);
        std::ofstream(dir / "contributions.txt") << dump_contributions(universal_track(f.surface));
        std::map<std::string, HalfTwist> twists;
        std::ofstream index(dir / "generators.txt");
        for (const auto& [id, edge] : f.generators) {
            auto& h = twists.emplace(id, HalfTwist(f.surface, edge)).first->second;
            Matrix cols = images(f.surface, {&h});
            ok = oracle_check(f.surface, cols, f.name + "/" + id) && ok;
            write_matrix(dir / (id + ".mat"), cols);
            index << id << ' ' << id << ".mat half-twist edge " << edge + 1 << '\n';
        }
        const HalfTwist& g = twists.at(f.twist_of);
        Matrix twist = images(f.surface, {&g, &g});
        ok = oracle_check(f.surface, twist, f.name + "/twist") && ok;
        write_matrix(dir / "twist.mat", twist);
        index << "t twist.mat dehn-twist " << f.twist_of << "^2\n";

        // Relations between consecutive and distant generators, at walk level.
        for (std::size_t i = 0; i + 1 < f.generators.size(); ++i) {
            const HalfTwist& a = twists.at(f.generators[i].first);
            const HalfTwist& b = twists.at(f.generators[i + 1].first);
            if (images(f.surface, {&a, &b, &a}) != images(f.surface, {&b, &a, &b})) {
                std::cerr << f.name << ": braid relation fails for " << f.generators[i].first << "\n";
                ok = false;
            }
            for (std::size_t k = i + 2; k < f.generators.size(); ++k) {
                const HalfTwist& c = twists.at(f.generators[k].first);
                if (images(f.surface, {&a, &c}) != images(f.surface, {&c, &a})) {
                    std::cerr << f.name << ": commutation fails\n";
                    ok = false;
                }
            }
        }
        std::cout << f.name << ": " << f.generators.size() << " generators written\n";
    }
    return ok ? 0 : 1;
}
