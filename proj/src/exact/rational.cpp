#include "qsg/rational.hpp"

#include <limits>
#include <stdexcept>

namespace qsg {

Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

bool is_integer(const Rational& r) { return r.get_den() == 1; }

Integer to_integer(const Rational& r) {
    if (!is_integer(r)) throw std::domain_error("value " + to_string(r) + " is not an integer");
    return r.get_num();
}

std::int64_t to_int64(const Integer& v) {
    if (!v.fits_slong_p()) throw std::overflow_error("integer " + to_string(v) + " exceeds 64 bits");
    return static_cast<std::int64_t>(v.get_si());
}

Integer mod_floor(const Integer& a, const Integer& m) {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

Integer gcd(const Integer& a, const Integer& b) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

Integer pow(const Integer& base, unsigned long exponent) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
    return r;
}

std::string to_string(const Integer& v) { return v.get_str(); }

std::string to_string(const Rational& v) { return v.get_str(); }

}  // namespace qsg
