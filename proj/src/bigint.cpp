#include "ntrack/bigint.hpp"

#include <cmath>

#include "ntrack/errors.hpp"

namespace ntrack {

double log2_of(const BigInt& x) {
    if (sgn(x) <= 0) return 0.0;
    long exp = 0;
    double mant = mpz_get_d_2exp(&exp, x.get_mpz_t());
    return static_cast<double>(exp) + std::log2(mant);
}

double log2p1(const BigInt& x) {
    BigInt y = big_abs(x) + 1;
    return log2_of(y);
}

std::string to_string(const BigInt& x) { return x.get_str(10); }

BigInt parse_bigint(std::string_view text) {
    if (text.empty()) throw ParseError("empty integer literal");
    std::size_t i = 0;
    if (text[0] == '+' || text[0] == '-') i = 1;
    if (i == text.size()) throw ParseError("malformed integer literal '" + std::string(text) + "'");
    for (std::size_t k = i; k < text.size(); ++k) {
        if (text[k] < '0' || text[k] > '9')
            throw ParseError("malformed integer literal '" + std::string(text) + "'");
    }
    std::string digits(text.substr(text[0] == '+' ? 1 : 0));
    return BigInt(digits, 10);
}

}  // namespace ntrack
