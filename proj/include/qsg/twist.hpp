#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "qsg/lie.hpp"

namespace qsg {

/// One failed condition of a twisting-map parameter matrix. Indices are
/// 1-based; `i`/`j` are 0 when the condition has no witnessing pair.
struct TwistViolation {
    enum class Kind { Shape, NonIntegral, NotAntisymmetric, NotHalfIntegral, Singular };
    Kind kind;
    int i = 0;
    int j = 0;
    std::string detail;
};

std::string to_string(TwistViolation::Kind k);

struct TwistReport {
    std::vector<TwistViolation> violations;
    bool ok() const noexcept { return violations.empty(); }
};

/// Checks, in order: shape, integrality of Y and X = AY, antisymmetry of DX,
/// half-integrality of (phi omega_i, omega_j)/2, invertibility of A + 2X.
/// All violations are collected.
TwistReport validate_twist(const CartanDatum& cd, const RationalMatrix& Y);
TwistReport validate_twist(const CartanDatum& cd, const IntMatrix& Y);

class InvalidTwist : public std::invalid_argument {
   public:
    explicit InvalidTwist(TwistReport report);
    const TwistReport& report() const noexcept { return report_; }

   private:
    TwistReport report_;
};

/// The twisting map phi, parameterized by Y: tau_i = sum_j y_ji alpha_j
/// (column i of Y) and phi(alpha_i) = 2 tau_i. X = AY gives tau_i in the
/// omega basis.
class TwistMap {
   public:
    TwistMap(const CartanDatum& cd, const IntMatrix& Y);  // throws InvalidTwist
    static TwistMap untwisted(const CartanDatum& cd);

    const CartanDatum& cartan() const noexcept { return cd_; }
    int rank() const noexcept { return cd_.rank(); }
    const IntMatrix& Y() const noexcept { return Y_; }
    const IntMatrix& X() const noexcept { return X_; }
    bool is_zero() const;
    /// det(A + 2X).
    const Integer& twist_determinant() const noexcept { return det_; }
    /// phi in the alpha basis: 2Y.
    RationalMatrix phi_alpha() const;
    /// tau_i in the alpha basis.
    std::vector<Integer> tau(int label) const;

   private:
    CartanDatum cd_;
    IntMatrix Y_;
    IntMatrix X_;
    Integer det_;
};

/// The C3 family Y(a, b, c) for the Cartan matrix [[2,-1,0],[-1,2,-1],[0,-2,2]].
/// Entries are rational; b and c must be even for an integral Y.
RationalMatrix c3_family(long long a, long long b, long long c);

LatticeElement apply_phi(const TwistMap& tw, const LatticeElement& x);

/// (1 + sign*phi)^(inverse ? -1 : 1) in the alpha basis.
RationalMatrix r_operator(const TwistMap& tw, int sign, bool inverse);

LatticeElement apply(const RationalMatrix& op_alpha, const LatticeElement& x, const CartanDatum& cd);

/// alpha-basis exponent of (1 - phi)(alpha_i): e_i - 2 Y e_i.
std::vector<Integer> kbar_exponent(const TwistMap& tw, int label);
/// alpha-basis exponent of (1 + phi)(alpha_j): e_j + 2 Y e_j.
std::vector<Integer> ktilde_exponent(const TwistMap& tw, int label);

/// Valid twisting maps with the n(n-1)/2 free entries x_ij (i < j) of X in
/// [-bound, bound], in lexicographic order of those entries.
std::vector<TwistMap> enumerate_twists(const CartanDatum& cd, int bound, std::size_t max_results);

}  // namespace qsg
