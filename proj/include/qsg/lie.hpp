#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qsg/matrix.hpp"

namespace qsg {

// Simple roots carry 1-based labels 1..n in every public signature that takes
// an index or an index set; coordinate vectors are 0-based as usual.
using IndexSet = std::vector<int>;

enum class LieType { A, B, C, D, E, F, G };

char to_char(LieType t);
LieType lie_type_from_char(char c);

/// Finite-type Cartan datum. Convention: a_ij = 2(alpha_j, alpha_i)/(alpha_i, alpha_i),
/// (alpha_i, alpha_j) = d_i a_ij, (omega_i, alpha_j) = d_i delta_ij.
class CartanDatum {
   public:
    /// Named type; throws std::invalid_argument on an invalid (type, rank) pair.
    static CartanDatum of_type(LieType type, int rank);
    /// Arbitrary user matrix; validated as a symmetrizable Cartan matrix of finite type.
    static CartanDatum from_matrix(const IntMatrix& A);

    std::optional<LieType> lie_type() const noexcept { return type_; }
    int rank() const noexcept { return static_cast<int>(A_.rows()); }
    const IntMatrix& cartan() const noexcept { return A_; }
    const std::vector<Integer>& symmetrizers() const noexcept { return d_; }
    const RationalMatrix& cartan_inverse() const noexcept { return A_inv_; }
    /// Gram matrix in the alpha basis: (alpha_i, alpha_j) = d_i a_ij.
    const RationalMatrix& gram_alpha() const noexcept { return gram_; }
    std::string label() const;

    friend bool operator==(const CartanDatum& a, const CartanDatum& b) { return a.A_ == b.A_; }

   private:
    CartanDatum(std::optional<LieType> type, IntMatrix A);

    std::optional<LieType> type_;
    IntMatrix A_;
    std::vector<Integer> d_;
    RationalMatrix A_inv_;
    RationalMatrix gram_;
};

IntMatrix cartan_matrix(LieType type, int rank);

/// Minimal positive d with d_i a_ij = d_j a_ji (per connected component).
/// Throws std::invalid_argument when no positive solution exists.
std::vector<Integer> symmetrizers(const IntMatrix& A);

enum class Basis { Alpha, Omega };

struct LatticeElement {
    Basis basis = Basis::Alpha;
    std::vector<Rational> coords;

    static LatticeElement alpha(std::vector<Rational> c) { return {Basis::Alpha, std::move(c)}; }
    static LatticeElement omega(std::vector<Rational> c) { return {Basis::Omega, std::move(c)}; }
    static LatticeElement simple_root(int n, int label);
    static LatticeElement fundamental_weight(int n, int label);
    static LatticeElement zero(int n, Basis b = Basis::Alpha);

    std::size_t rank() const noexcept { return coords.size(); }
    LatticeElement operator-() const;

    friend bool operator==(const LatticeElement&, const LatticeElement&) = default;
};

LatticeElement from_ints(Basis b, const std::vector<long long>& c);
LatticeElement add(const LatticeElement& a, const LatticeElement& b, const CartanDatum& cd);

LatticeElement alpha_to_omega(const LatticeElement& x, const CartanDatum& cd);
LatticeElement omega_to_alpha(const LatticeElement& x, const CartanDatum& cd);
LatticeElement to_basis(const LatticeElement& x, Basis b, const CartanDatum& cd);

bool in_root_lattice(const LatticeElement& x, const CartanDatum& cd);
bool in_weight_lattice(const LatticeElement& x, const CartanDatum& cd);

Rational bilinear_form(const LatticeElement& x, const LatticeElement& y, const CartanDatum& cd);

/// Positive root in the alpha basis.
struct Root {
    std::vector<long long> coords;
    IndexSet support;  // 1-based labels with nonzero coordinate

    long long height() const;
    LatticeElement element() const;
    friend bool operator==(const Root&, const Root&) = default;
};

/// All positive roots by reflection closure of the simple roots, ordered by
/// height, then lexicographically on alpha-coordinates.
std::vector<Root> positive_roots(const CartanDatum& cd);

/// Positive roots whose support lies in I.
std::vector<Root> roots_supported(const CartanDatum& cd, const IndexSet& I);

/// n + 2 |positive roots|.
long long lie_algebra_dimension(const CartanDatum& cd);

/// Throws std::invalid_argument unless every label is in 1..n and unique.
void check_index_set(const IndexSet& I, int n);

}  // namespace qsg
