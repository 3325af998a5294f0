#include "ntrack/mcg.hpp"

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "ntrack/errors.hpp"
#include "ntrack/universal.hpp"

namespace ntrack {

namespace detail {
bool configuration_matches(const Triangulation& t, const MappingClassMatrix& m, std::string& why);
}

NormalCoordinates MappingClassMatrix::row(int i) const {
    NormalCoordinates r(n_);
    for (int j = 0; j < n_; ++j) r[j] = (*this)(i, j);
    return r;
}

NormalCoordinates MappingClassMatrix::col(int j) const {
    NormalCoordinates c(n_);
    for (int i = 0; i < n_; ++i) c[i] = (*this)(i, j);
    return c;
}

MappingClassMatrix identity_matrix(int n) {
    MappingClassMatrix m(n);
    for (int i = 0; i < n; ++i) m(i, i) = -1;
    return m;
}

namespace {

void require_size(const Triangulation& t, const MappingClassMatrix& m) {
    if (m.size() != t.num_edges())
        throw InvalidMatrix("matrix is " + std::to_string(m.size()) + "x" + std::to_string(m.size()) + " but the surface has " +
                            std::to_string(t.num_edges()) + " edges");
}

std::vector<MeasuredTrainTrack> encode_all(const UniversalTrack& u, const Triangulation& t,
                                           const std::vector<NormalCoordinates>& curves, const char* what) {
    std::vector<MeasuredTrainTrack> out;
    out.reserve(curves.size());
    for (std::size_t k = 0; k < curves.size(); ++k) {
        auto check = check_coords(t, curves[k]);
        if (!check.ok) throw InvalidMatrix(std::string(what) + " " + std::to_string(k + 1) + ": " + check.reason);
        out.push_back(encode_min(u, t, curves[k]));
    }
    return out;
}

template <class F>
void parallel_for(int count, int threads, F&& body) {
    if (threads <= 0) threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    threads = std::min(threads, count);
    if (threads <= 1) {
        for (int k = 0; k < count; ++k) body(k);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_lock;
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w)
        pool.emplace_back([&] {
            for (int k; (k = next.fetch_add(1)) < count;) {
                try {
                    body(k);
                } catch (...) {
                    std::lock_guard lock(failure_lock);
                    if (!failure) failure = std::current_exception();
                    next = count;
                }
            }
        });
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
}

// Every entry is an intersection of a curve from `lhs` with one from `rhs`.
MappingClassMatrix pairing(const Triangulation& t, const std::vector<NormalCoordinates>& lhs,
                           const std::vector<NormalCoordinates>& rhs, const ComposeOptions& opt) {
    const UniversalTrack u = universal_track(t);
    auto left = encode_all(u, t, lhs, "row");
    auto right = encode_all(u, t, rhs, "column");
    const int n = static_cast<int>(lhs.size());
    MappingClassMatrix out(n);
    parallel_for(n * n, opt.threads, [&](int k) {
        const int i = k / n, j = k % n;
        const bool swap = curve_complexity(lhs[i]) > curve_complexity(rhs[j]);
        JointTrack jt = swap ? make_joint(right[j], left[i]) : make_joint(left[i], right[j]);
        out(i, j) = simplify_joint(std::move(jt), opt.intersection).value;
    });
    return out;
}

}  // namespace

MappingClassMatrix compose(const Triangulation& t, const MappingClassMatrix& a, const MappingClassMatrix& b,
                           const ComposeOptions& opt) {
    require_size(t, a);
    require_size(t, b);
    std::vector<NormalCoordinates> rows, cols;
    for (int i = 0; i < a.size(); ++i) rows.push_back(a.row(i));
    for (int j = 0; j < b.size(); ++j) cols.push_back(b.col(j));
    return pairing(t, rows, cols, opt);
}

MappingClassMatrix inverse(const MappingClassMatrix& m) {
    MappingClassMatrix r(m.size());
    for (int i = 0; i < m.size(); ++i)
        for (int j = 0; j < m.size(); ++j) r(j, i) = m(i, j);
    return r;
}

NormalCoordinates apply_to_curve(const Triangulation& t, const MappingClassMatrix& m, const NormalCoordinates& c,
                                 const ComposeOptions& opt) {
    require_size(t, m);
    validate_coords(t, c);
    const UniversalTrack u = universal_track(t);
    const MeasuredTrainTrack curve = encode_min(u, t, c);
    std::vector<NormalCoordinates> rows;
    for (int i = 0; i < m.size(); ++i) rows.push_back(m.row(i));
    auto tracks = encode_all(u, t, rows, "row");
    NormalCoordinates out(m.size());
    parallel_for(m.size(), opt.threads, [&](int i) {
        const bool swap = curve_complexity(c) > curve_complexity(rows[i]);
        JointTrack jt = swap ? make_joint(tracks[i], curve) : make_joint(curve, tracks[i]);
        out[i] = simplify_joint(std::move(jt), opt.intersection).value;
    });
    return out;
}

MappingClassMatrix power(const Triangulation& t, const MappingClassMatrix& m, const BigInt& k,
                         const ComposeOptions& opt) {
    MappingClassMatrix base = k < 0 ? inverse(m) : m;
    BigInt e = big_abs(k);
    MappingClassMatrix acc = identity_matrix(m.size());
    bool first = true;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) {
            acc = first ? base : compose(t, acc, base, opt);
            first = false;
        }
        e >>= 1;
        if (e > 0) base = compose(t, base, base, opt);
    }
    return acc;
}

WordEvaluation evaluate_zipped_word(const Triangulation& t, const ZippedWord& w, const GeneratorSet& gens,
                                    const ComposeOptions& opt) {
    WordEvaluation r;
    r.matrix = identity_matrix(t.num_edges());
    bool first = true;
    for (const auto& [id, k] : w.letters) {
        auto it = gens.find(id);
        if (it == gens.end()) throw UnknownGenerator("unknown generator '" + id + "'");
        r.zwl += log2p1(k);
        if (k == 0) continue;
        MappingClassMatrix p = power(t, it->second, k, opt);
        r.matrix = first ? std::move(p) : compose(t, r.matrix, p, opt);
        first = false;
    }
    r.complexity = matrix_complexity(r.matrix);
    return r;
}

double matrix_complexity(const MappingClassMatrix& m) {
    double c = 0;
    for (int i = 0; i < m.size(); ++i)
        for (int j = 0; j < m.size(); ++j) c += log2p1(i == j ? BigInt(m(i, j) + 1) : m(i, j));
    return c;
}

double euclidean_log_norm(const MappingClassMatrix& m) {
    BigInt s = 0;
    for (int i = 0; i < m.size(); ++i)
        for (int j = 0; j < m.size(); ++j) s += m(i, j) * m(i, j);
    return 0.5 * log2_of(s);
}

double mu_log_norm(const Triangulation& t) {
    double s = 0;
    for (const auto& row : mu_table(t))
        for (int x : row) s += double(x) * x;
    return 0.5 * std::log2(s);
}

BigInt determinant(const MappingClassMatrix& m) {
    const int n = m.size();
    if (n == 0) return 1;
    std::vector<std::vector<BigInt>> a(n, std::vector<BigInt>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[i][j] = m(i, j);
    BigInt prev = 1;
    int sign = 1;
    for (int k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            int p = k + 1;
            while (p < n && a[p][k] == 0) ++p;
            if (p == n) return 0;
            std::swap(a[k], a[p]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                BigInt v = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                a[i][j] = v;
            }
        }
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

bool is_power_of_two(const BigInt& x) {
    if (x <= 0) return false;
    return mpz_popcount(x.get_mpz_t()) == 1;
}

MatrixCheck validate_matrix(const Triangulation& t, const MappingClassMatrix& m, const ComposeOptions& opt) {
    auto fail = [](int stage, std::string why) { return MatrixCheck{false, stage, std::move(why)}; };
    if (m.size() != t.num_edges()) return fail(1, "matrix size does not match the surface");
    const int n = m.size();
    for (int k = 0; k < n; ++k) {
        for (int pass = 0; pass < 2; ++pass) {
            const NormalCoordinates v = pass == 0 ? m.row(k) : m.col(k);
            const std::string what = (pass == 0 ? "row " : "column ") + std::to_string(k + 1);
            auto check = check_coords(t, v);
            if (!check.ok) return fail(1, what + ": " + check.reason);
            bool zero = true;
            for (const auto& x : v) zero = zero && x == 0;
            if (zero) return fail(1, what + " is the empty curve");
        }
    }
    std::vector<NormalCoordinates> cols;
    for (int j = 0; j < n; ++j) cols.push_back(m.col(j));
    const MappingClassMatrix gram = pairing(t, cols, cols, opt);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i != j && gram(i, j) != 0)
                return fail(2, "columns " + std::to_string(i + 1) + " and " + std::to_string(j + 1) + " intersect");
            if (i == j && gram(i, i) != -1)
                return fail(2, "column " + std::to_string(i + 1) + " is not a single proper arc");
        }
    std::string why;
    if (!detail::configuration_matches(t, m, why)) return fail(3, why);
    if (!(compose(t, m, inverse(m), opt) == identity_matrix(n))) return fail(4, "M composed with its transpose is not -I");
    return {};
}

MappingClassMatrix parse_matrix(const std::string& text) {
    std::vector<std::vector<BigInt>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::vector<BigInt> row;
        for (std::string tok; ls >> tok;) row.push_back(parse_bigint(tok));
        if (!row.empty()) rows.push_back(std::move(row));
    }
    const int n = static_cast<int>(rows.size());
    if (n == 0) throw ParseError("matrix file is empty");
    MappingClassMatrix m(n);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(rows[i].size()) != n)
            throw ParseError("matrix row " + std::to_string(i + 1) + " has " + std::to_string(rows[i].size()) +
                             " entries, expected " + std::to_string(n));
        for (int j = 0; j < n; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

MappingClassMatrix load_matrix_file(const std::string& path) { return parse_matrix(slurp(path)); }

std::string format_matrix(const MappingClassMatrix& m) {
    std::string s;
    for (int i = 0; i < m.size(); ++i) {
        for (int j = 0; j < m.size(); ++j) {
            if (j) s += ' ';
            s += to_string(m(i, j));
        }
        s += '\n';
    }
    return s;
}

ZippedWord parse_word(const std::string& text) {
    ZippedWord w;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::vector<std::string> tok;
        for (std::string s; ls >> s;) tok.push_back(s);
        if (tok.empty()) continue;
        if (tok.size() != 2) throw ParseError("word line " + std::to_string(lineno) + ": expected 'gen_id exponent'");
        w.letters.emplace_back(tok[0], parse_bigint(tok[1]));
    }
    return w;
}

ZippedWord load_word_file(const std::string& path) { return parse_word(slurp(path)); }

GeneratorBundle load_generator_bundle(const std::string& dir) {
    namespace fs = std::filesystem;
    GeneratorBundle b;
    b.surface = load_surface_file((fs::path(dir) / "surface.txt").string());
    std::istringstream in(slurp((fs::path(dir) / "generators.txt").string()));
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string id, file;
        if (!(ls >> id >> file) || id[0] == '#') continue;
        b.generators[id] = load_matrix_file((fs::path(dir) / file).string());
    }
    return b;
}

}  // namespace ntrack
