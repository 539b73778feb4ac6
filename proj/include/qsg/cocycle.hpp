#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qsg/cyclotomic.hpp"
#include "qsg/modular.hpp"
#include "qsg/twist.hpp"

namespace qsg {

// Deformation data is carried as exponents: a value "x" below stands for
// q^x (generic q) or eps^x (at the root of unity).

/// Bidegree (-lambda, mu) of a matrix coefficient c_{f,v} with f of weight
/// -lambda and v of weight mu. Both weights lie in P.
struct Bidegree {
    LatticeElement lambda;
    LatticeElement mu;
};

/// Throws std::invalid_argument unless both weights lie in P.
void check_bidegree(const Bidegree& b, const CartanDatum& cd);

/// Exponent of the bicharacter p(l1, l2) = q^{-(phi l1, l2)/2}.
Rational chi_exponent(const TwistMap& tw, const LatticeElement& l1, const LatticeElement& l2);

/// sigma(c1, c2) = eps(c1) eps(c2) chi(lambda_1, lambda_2).
Rational sigma_exponent(const TwistMap& tw, const Bidegree& b1, const Bidegree& b2);

/// sigma^{-1}(c1, c2) = eps(c1) eps(c2) chi(mu_1, lambda_2).
Rational sigma_inverse_exponent(const TwistMap& tw, const Bidegree& b1, const Bidegree& b2);

/// Scalar relating the deformed and undeformed products:
/// ((phi mu_1, mu_2) - (phi lambda_1, lambda_2)) / 2.
Rational deformation_exponent(const TwistMap& tw, const Bidegree& b1, const Bidegree& b2);

/// Bilinear exponent rule (z1, z2) -> (phi lambda_{z1}, lambda_{z2})/2 mod ell
/// on (Z/ell)^n, lambda_z = sum z_i alpha_i.
class GroupTwoCocycle {
   public:
    GroupTwoCocycle(std::int64_t ell, std::vector<std::vector<std::int64_t>> coefficients);

    std::int64_t ell() const noexcept { return ell_; }
    std::size_t rank() const noexcept { return coeffs_.size(); }
    /// coefficient(i, j) = (phi alpha_i, alpha_j)/2 mod ell.
    std::int64_t coefficient(std::size_t i, std::size_t j) const { return coeffs_[i][j]; }
    std::int64_t value(const ModVector& z1, const ModVector& z2) const;

    /// Full ell^n x ell^n table; z enumerated lexicographically with the first
    /// coordinate most significant.
    std::vector<std::vector<std::int64_t>> table() const;
    /// `table()` as whitespace-separated text, one row per line.
    std::string to_text() const;

   private:
    std::int64_t ell_;
    std::vector<std::vector<std::int64_t>> coeffs_;
};

/// Throws std::invalid_argument for even ell, ell < 3, or 3 | ell when the
/// Cartan matrix has a triple bond.
void check_level(const CartanDatum& cd, std::int64_t ell);

GroupTwoCocycle twist_J(const TwistMap& tw, std::int64_t ell);

/// Element of the group algebra Q(eps)[(Z/ell)^rank]; coefficient of g at the
/// lexicographic index of g (first coordinate most significant).
struct GroupAlgebraElement {
    std::int64_t ell = 1;
    std::size_t rank = 0;
    std::vector<CyclotomicNumber> coeffs;

    static GroupAlgebraElement zero(std::int64_t ell, std::size_t rank);
    static GroupAlgebraElement identity(std::int64_t ell, std::size_t rank);

    std::size_t size() const noexcept { return coeffs.size(); }
    const CyclotomicNumber& at(const ModVector& g) const;
    friend bool operator==(const GroupAlgebraElement&, const GroupAlgebraElement&) = default;
};

std::size_t group_index(const ModVector& g, std::int64_t ell);
ModVector group_element(std::size_t index, std::int64_t ell, std::size_t rank);

GroupAlgebraElement convolve(const GroupAlgebraElement& a, const GroupAlgebraElement& b);

/// Values on characters chi_z(g) = eps^{<z,g>}, indexed like group elements.
std::vector<CyclotomicNumber> fourier(const GroupAlgebraElement& a);
/// Inverse of `fourier`, with the exact ell^{-rank} normalization.
GroupAlgebraElement inverse_fourier(const std::vector<CyclotomicNumber>& values, std::int64_t ell, std::size_t rank);

/// (counit (x) id)(x) for x in the group algebra of (Z/ell)^n x (Z/ell)^n.
GroupAlgebraElement counit_left(const GroupAlgebraElement& x);
/// (id (x) counit)(x).
GroupAlgebraElement counit_right(const GroupAlgebraElement& x);

struct TwistElement {
    GroupAlgebraElement J;
    GroupAlgebraElement J_inverse;
};

constexpr std::size_t kDefaultTableCap = 1u << 16;

/// J in Q(eps)[T x T], recovered from its character values eps^{twist_J(z1,z2)}.
/// Throws std::length_error when ell^{2n} exceeds `cap`.
TwistElement twist_J_group_algebra(const TwistMap& tw, std::int64_t ell, std::size_t cap = kDefaultTableCap);

}  // namespace qsg
