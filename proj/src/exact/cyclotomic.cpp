#include "qsg/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace qsg {

namespace {

using RatPoly = std::vector<Rational>;

void trim(IntPolynomial& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

void trim(RatPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

// Exact division by a monic divisor.
IntPolynomial divide_exact(IntPolynomial num, const IntPolynomial& den) {
    trim(num);
    const std::size_t dn = den.size() - 1;
    if (num.size() < den.size()) throw std::logic_error("cyclotomic: divisor degree too large");
    IntPolynomial q(num.size() - dn);
    for (std::size_t k = num.size(); k-- > dn;) {
        const Integer c = num[k];
        q[k - dn] = c;
        if (c == 0) continue;
        for (std::size_t i = 0; i <= dn; ++i) num[k - dn + i] -= c * den[i];
    }
    trim(num);
    if (!num.empty()) throw std::logic_error("cyclotomic: inexact division");
    return q;
}

std::shared_ptr<const IntPolynomial> shared_modulus(std::uint64_t ell) {
    static std::mutex mu;
    static std::map<std::uint64_t, std::shared_ptr<const IntPolynomial>> cache;
    std::lock_guard lock(mu);
    auto it = cache.find(ell);
    if (it != cache.end()) return it->second;
    auto p = std::make_shared<const IntPolynomial>(cyclotomic_polynomial(ell));
    cache.emplace(ell, p);
    return p;
}

// Reduce a rational polynomial modulo the monic integer polynomial `m`.
RatPoly reduce(RatPoly p, const IntPolynomial& m) {
    const std::size_t d = m.size() - 1;
    for (std::size_t k = p.size(); k-- > d;) {
        const Rational c = p[k];
        if (c == 0) continue;
        for (std::size_t i = 0; i <= d; ++i) p[k - d + i] -= c * m[i];
    }
    p.resize(d);
    return p;
}

// Quotient and remainder of a / b over Q.
std::pair<RatPoly, RatPoly> divmod(RatPoly a, const RatPoly& b) {
    trim(a);
    if (b.empty()) throw std::domain_error("polynomial division by zero");
    if (a.size() < b.size()) return {RatPoly{}, a};
    RatPoly q(a.size() - b.size() + 1);
    const Rational lead = b.back();
    const std::size_t db = b.size() - 1;
    for (std::size_t k = a.size() - 1;; --k) {
        const Rational c = a[k] / lead;
        q[k - db] = c;
        if (c != 0)
            for (std::size_t i = 0; i < b.size(); ++i) a[k - db + i] -= c * b[i];
        if (k == db) break;
    }
    trim(a);
    trim(q);
    return {q, a};
}

RatPoly mul(const RatPoly& a, const RatPoly& b) {
    if (a.empty() || b.empty()) return {};
    RatPoly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    return r;
}

RatPoly sub(RatPoly a, const RatPoly& b) {
    if (a.size() < b.size()) a.resize(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    trim(a);
    return a;
}

}  // namespace

std::uint64_t euler_totient(std::uint64_t n) {
    if (n == 0) return 0;
    std::uint64_t result = n;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        while (n % p == 0) n /= p;
        result -= result / p;
    }
    if (n > 1) result -= result / n;
    return result;
}

IntPolynomial cyclotomic_polynomial(std::uint64_t ell) {
    if (ell == 0) throw std::invalid_argument("cyclotomic_polynomial: ell must be >= 1");
    IntPolynomial p(ell + 1);
    p[0] = -1;
    p[ell] = 1;
    for (std::uint64_t d = 1; d < ell; ++d)
        if (ell % d == 0) p = divide_exact(std::move(p), cyclotomic_polynomial(d));
    return p;
}

CyclotomicNumber::CyclotomicNumber(std::uint64_t level)
    : level_(level), modulus_(shared_modulus(level)), coeffs_(modulus_->size() - 1) {}

CyclotomicNumber::CyclotomicNumber(std::uint64_t level, std::vector<Rational> coefficients)
    : level_(level), modulus_(shared_modulus(level)) {
    coeffs_ = reduce(std::move(coefficients), *modulus_);
}

CyclotomicNumber CyclotomicNumber::one(std::uint64_t level) {
    CyclotomicNumber x(level);
    x.coeffs_[0] = 1;
    return x;
}

bool CyclotomicNumber::is_zero() const {
    for (const auto& c : coeffs_)
        if (c != 0) return false;
    return true;
}

void CyclotomicNumber::check_level(const CyclotomicNumber& rhs) const {
    if (level_ != rhs.level_) throw std::invalid_argument("cyclotomic level mismatch");
}

CyclotomicNumber& CyclotomicNumber::operator+=(const CyclotomicNumber& rhs) {
    check_level(rhs);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
    return *this;
}

CyclotomicNumber& CyclotomicNumber::operator-=(const CyclotomicNumber& rhs) {
    check_level(rhs);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
    return *this;
}

CyclotomicNumber& CyclotomicNumber::operator*=(const CyclotomicNumber& rhs) {
    check_level(rhs);
    coeffs_ = reduce(mul(coeffs_, rhs.coeffs_), *modulus_);
    return *this;
}

CyclotomicNumber& CyclotomicNumber::operator*=(const Rational& s) {
    for (auto& c : coeffs_) c *= s;
    return *this;
}

CyclotomicNumber CyclotomicNumber::operator-() const {
    CyclotomicNumber r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

CyclotomicNumber CyclotomicNumber::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero in cyclotomic field");
    // Extended Euclid: track s with s * self = r (mod Phi).
    RatPoly m(modulus_->begin(), modulus_->end());
    RatPoly r0 = m, r1 = coeffs_;
    trim(r1);
    RatPoly s0, s1{Rational(1)};
    while (!(r1.size() == 1)) {
        auto [q, r2] = divmod(r0, r1);
        RatPoly s2 = sub(s0, mul(q, s1));
        r0 = std::move(r1);
        r1 = std::move(r2);
        s0 = std::move(s1);
        s1 = std::move(s2);
        if (r1.empty()) throw std::logic_error("cyclotomic modulus is not irreducible");
    }
    const Rational c = r1[0];
    for (auto& x : s1) x /= c;
    return CyclotomicNumber(level_, s1);
}

CyclotomicNumber CyclotomicNumber::pow(std::int64_t e) const {
    CyclotomicNumber base = e < 0 ? inverse() : *this;
    std::uint64_t k = e < 0 ? static_cast<std::uint64_t>(-e) : static_cast<std::uint64_t>(e);
    CyclotomicNumber result = one(level_);
    while (k) {
        if (k & 1) result *= base;
        base *= base;
        k >>= 1;
    }
    return result;
}

CyclotomicNumber root_of_unity_power(std::int64_t ell, std::int64_t k) {
    if (ell < 1 || ell % 2 == 0) throw std::invalid_argument("root_of_unity_power: level must be a positive odd integer");
    const std::int64_t e = mod_floor(k, ell);
    std::vector<Rational> mono(static_cast<std::size_t>(e) + 1);
    mono[static_cast<std::size_t>(e)] = 1;
    return CyclotomicNumber(static_cast<std::uint64_t>(ell), std::move(mono));
}

CyclotomicNumber evaluate(const IntPolynomial& p, const CyclotomicNumber& x) {
    CyclotomicNumber acc(x.level());
    for (std::size_t k = p.size(); k-- > 0;) {
        acc *= x;
        acc += CyclotomicNumber(x.level(), {Rational(p[k])});
    }
    return acc;
}

}  // namespace qsg
