#pragma once

#include <string>
#include <vector>

#include "ntrack/mcg.hpp"

namespace ntrack::bench {

struct Ladder {
    std::string twist = "t";
    int from = 6;
    int to = 14;
    int reps = 3;
    int threads = 0;
};

struct Row {
    int j = 0;
    double size1 = 0, size2 = 0;  // |gamma|_T of the two curves
    double seconds = 0;           // median over repetitions
    double encode = 0, simplify = 0, sum = 0;
    long steps = 0;
    BigInt value;
};

struct Report {
    int edge1 = -1, edge2 = -1;
    double baseline = 0;  // edge curve against itself
    std::vector<Row> rows;
    double slope = 0;  // least-squares slope of log time against log(size1 * size2)
};

// Pairs t^(2^j)(e_a) with t^(-2^j)(e_b) for the first two edges moved by t.
Report run(const GeneratorBundle& bundle, const Ladder& ladder);

std::string format(const Report& r);

}  // namespace ntrack::bench
