#pragma once

#include <map>
#include <string>
#include <vector>

#include "ntrack/intersection.hpp"

namespace ntrack {

// Entry (i, j) is <e_i, g(e_j)>: column j holds the coordinates of g(e_j),
// row i those of g^-1(e_i).
class MappingClassMatrix {
public:
    MappingClassMatrix() = default;
    explicit MappingClassMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n) {}

    int size() const { return n_; }
    BigInt& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
    const BigInt& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }
    NormalCoordinates row(int i) const;
    NormalCoordinates col(int j) const;
    bool operator==(const MappingClassMatrix&) const = default;

private:
    int n_ = 0;
    std::vector<BigInt> a_;
};

// The identity mapping class: -I, since <e_i, e_j> = -delta_ij.
MappingClassMatrix identity_matrix(int n);

struct ComposeOptions {
    int threads = 0;  // 0: one per hardware thread
    IntersectionOptions intersection;
};

MappingClassMatrix compose(const Triangulation& t, const MappingClassMatrix& a, const MappingClassMatrix& b,
                           const ComposeOptions& opt = {});
MappingClassMatrix inverse(const MappingClassMatrix& m);
NormalCoordinates apply_to_curve(const Triangulation& t, const MappingClassMatrix& m, const NormalCoordinates& c,
                                 const ComposeOptions& opt = {});
MappingClassMatrix power(const Triangulation& t, const MappingClassMatrix& m, const BigInt& k,
                         const ComposeOptions& opt = {});

struct ZippedWord {
    std::vector<std::pair<std::string, BigInt>> letters;
};

struct WordEvaluation {
    MappingClassMatrix matrix;
    double zwl = 0;         // sum of log2(|k_i| + 1)
    double complexity = 0;  // matrix complexity of the result
};

using GeneratorSet = std::map<std::string, MappingClassMatrix>;

WordEvaluation evaluate_zipped_word(const Triangulation& t, const ZippedWord& w, const GeneratorSet& gens,
                                    const ComposeOptions& opt = {});

// c_T: sum over entries of log2(|M_ij + delta_ij| + 1).
double matrix_complexity(const MappingClassMatrix& m);
// E: log2 of the Euclidean norm of the matrix.
double euclidean_log_norm(const MappingClassMatrix& m);
// log2 of the Euclidean norm of (mu_ij).
double mu_log_norm(const Triangulation& t);

BigInt determinant(const MappingClassMatrix& m);
bool is_power_of_two(const BigInt& x);

struct MatrixCheck {
    bool valid = true;
    int stage = 0;  // first failing stage, 0 when valid
    std::string reason;
};

MatrixCheck validate_matrix(const Triangulation& t, const MappingClassMatrix& m, const ComposeOptions& opt = {});

MappingClassMatrix parse_matrix(const std::string& text);
MappingClassMatrix load_matrix_file(const std::string& path);
std::string format_matrix(const MappingClassMatrix& m);

ZippedWord parse_word(const std::string& text);
ZippedWord load_word_file(const std::string& path);

struct GeneratorBundle {
    Triangulation surface;
    GeneratorSet generators;
};

// Reads `surface.txt` and the `generators.txt` index of a fixture directory.
GeneratorBundle load_generator_bundle(const std::string& dir);

}  // namespace ntrack
