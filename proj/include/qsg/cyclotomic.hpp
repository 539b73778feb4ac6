#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "qsg/rational.hpp"

namespace qsg {

/// Integer polynomial, coefficient of q^k at index k; no trailing zeros.
using IntPolynomial = std::vector<Integer>;

std::uint64_t euler_totient(std::uint64_t n);

/// Phi_ell: q^ell - 1 divided by Phi_d for every proper divisor d of ell.
IntPolynomial cyclotomic_polynomial(std::uint64_t ell);

/// Element of Q(eps) = Q[q]/(Phi_ell) for a primitive ell-th root of unity
/// eps, stored as its reduced coefficient vector of length totient(ell).
class CyclotomicNumber {
   public:
    explicit CyclotomicNumber(std::uint64_t level);
    CyclotomicNumber(std::uint64_t level, std::vector<Rational> coefficients);

    static CyclotomicNumber one(std::uint64_t level);

    std::uint64_t level() const noexcept { return level_; }
    const std::vector<Rational>& coefficients() const noexcept { return coeffs_; }
    bool is_zero() const;

    CyclotomicNumber& operator+=(const CyclotomicNumber& rhs);
    CyclotomicNumber& operator-=(const CyclotomicNumber& rhs);
    CyclotomicNumber& operator*=(const CyclotomicNumber& rhs);
    CyclotomicNumber& operator*=(const Rational& s);
    CyclotomicNumber operator-() const;

    /// Multiplicative inverse; throws std::domain_error on zero.
    CyclotomicNumber inverse() const;
    CyclotomicNumber pow(std::int64_t e) const;

    friend CyclotomicNumber operator+(CyclotomicNumber a, const CyclotomicNumber& b) { return a += b; }
    friend CyclotomicNumber operator-(CyclotomicNumber a, const CyclotomicNumber& b) { return a -= b; }
    friend CyclotomicNumber operator*(CyclotomicNumber a, const CyclotomicNumber& b) { return a *= b; }
    friend CyclotomicNumber operator*(CyclotomicNumber a, const Rational& s) { return a *= s; }
    friend bool operator==(const CyclotomicNumber& a, const CyclotomicNumber& b) {
        return a.level_ == b.level_ && a.coeffs_ == b.coeffs_;
    }

   private:
    void check_level(const CyclotomicNumber& rhs) const;

    std::uint64_t level_;
    std::shared_ptr<const IntPolynomial> modulus_;
    std::vector<Rational> coeffs_;
};

/// eps^(k mod ell). Rejects even or nonpositive ell.
CyclotomicNumber root_of_unity_power(std::int64_t ell, std::int64_t k);

/// p(x) evaluated in Q(eps).
CyclotomicNumber evaluate(const IntPolynomial& p, const CyclotomicNumber& x);

}  // namespace qsg
