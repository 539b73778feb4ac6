#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qsg/torus.hpp"

namespace qsg {

/// Z/m_1 x ... x Z/m_k with m_1 | m_2 | ... and every m_i >= 2.
struct FiniteAbelianGroup {
    std::vector<std::int64_t> invariant_factors;

    static FiniteAbelianGroup trivial() { return {}; }
    std::size_t generator_count() const noexcept { return invariant_factors.size(); }
    Integer order() const;
    /// Empty when the factors form a valid divisibility chain.
    std::optional<std::string> defect() const;
    friend bool operator==(const FiniteAbelianGroup&, const FiniteAbelianGroup&) = default;
};

/// Finite abelian Gamma embedded in the maximal torus: generator i goes to the
/// torus point with coordinates embedding(:, i) / m_i in (Q/Z)^n.
struct EmbeddedGamma {
    FiniteAbelianGroup group;
    IntMatrix embedding;  // n x k
    friend bool operator==(const EmbeddedGamma&, const EmbeddedGamma&) = default;
};

/// Gamma known only through its order (nullopt: infinite).
struct OpaqueGamma {
    std::optional<Integer> order;
    friend bool operator==(const OpaqueGamma&, const OpaqueGamma&) = default;
};

using GammaData = std::variant<EmbeddedGamma, OpaqueGamma>;

std::optional<Integer> gamma_order(const GammaData& g);

/// delta: N -> Gamma^, given on generators of N. images[k][i] is read mod m_i:
/// the character sending generator i of Gamma to exp(2 pi i images[k][i] / m_i).
/// Empty `sources` means the trivial homomorphism.
struct CharacterHom {
    std::vector<ModVector> sources;
    std::vector<std::vector<std::int64_t>> images;
    friend bool operator==(const CharacterHom&, const CharacterHom&) = default;
};

struct TwistedSubgroupDatum {
    IndexSet iplus;
    IndexSet iminus;
    TorusSubgroup N;
    GammaData gamma;
    CharacterHom delta;
    /// Optional Sigma recipe; when present it must reproduce N as its annihilator.
    std::optional<std::vector<SigmaGenerator>> sigma_recipe;

    static TwistedSubgroupDatum trivial(std::int64_t ell, std::size_t n);
};

struct DatumViolation {
    std::string condition;  // "index_sets", "N_subgroup", "gamma", "gamma_injective", "delta", "sigma_recipe"
    std::string detail;
};

struct DatumReport {
    std::vector<DatumViolation> violations;
    bool ok() const noexcept { return violations.empty(); }
};

DatumReport validate_datum(const TwistMap& tw, std::int64_t ell, const TwistedSubgroupDatum& d);

/// cofactor * base^exponent with base not dividing cofactor.
struct FactoredDimension {
    Integer cofactor = 1;
    std::int64_t base = 1;
    long exponent = 0;

    static FactoredDimension make(const Integer& value, std::int64_t base);
    Integer value() const;
    friend bool operator==(const FactoredDimension&, const FactoredDimension&) = default;
};

std::string to_string(const FactoredDimension& f);

struct DimH {
    Integer sigma_order;
    Integer n_order;
    std::size_t psi_plus = 0;  // roots supported in I+
    std::size_t psi_minus = 0;
    FactoredDimension primary;  // |Sigma| ell^(|Psi+| + |Psi-|)
    FactoredDimension literal;  // |Sigma| ell^(|I+| + |I-|)
};

/// Throws std::invalid_argument when N is not inside t_hat_I_complement.
DimH dim_H(const TwistMap& tw, std::int64_t ell, const IndexSet& iplus, const IndexSet& iminus,
           const TorusSubgroup& N);

/// |Gamma| dim_H (primary convention); nullopt for infinite Gamma.
/// Throws std::invalid_argument on an invalid datum.
std::optional<FactoredDimension> dim_A(const TwistMap& tw, std::int64_t ell, const TwistedSubgroupDatum& d);

/// delta(x) for x in N, components reduced mod m_i. Throws when x is not in N.
std::vector<std::int64_t> evaluate_delta(const TwistedSubgroupDatum& d, const ModVector& x, std::int64_t ell);

struct LeqResult {
    /// nullopt when an opaque Gamma makes the tau condition undecidable.
    std::optional<bool> holds;
    std::vector<std::string> failed;
    /// Witness tau: Gamma' -> Gamma, column j = image of generator j of Gamma'.
    std::optional<IntMatrix> tau;
};

/// d <= d'. Both data must be valid over the same (tw, ell).
LeqResult datum_leq(const TwistMap& tw, std::int64_t ell, const TwistedSubgroupDatum& d,
                    const TwistedSubgroupDatum& dp);

std::optional<bool> datum_equiv(const TwistMap& tw, std::int64_t ell, const TwistedSubgroupDatum& d,
                                const TwistedSubgroupDatum& dp);

/// Character pullback along tau: c'_j = m'_j sum_i c_i tau_ij / m_i mod m'_j.
std::vector<std::int64_t> pull_back_character(const IntMatrix& tau, const FiniteAbelianGroup& target,
                                              const FiniteAbelianGroup& source, const std::vector<std::int64_t>& c);

struct TripleRecord {
    IndexSet iplus;
    IndexSet iminus;
    TorusSubgroup N;
    TorusSubgroup sigma;
    DimH dims;
};

struct EnumerationOptions {
    std::size_t max_results = static_cast<std::size_t>(-1);
    std::size_t cap = kDefaultEnumerationCap;
    /// Restrict to a single (I+, I-) shape.
    std::optional<std::pair<IndexSet, IndexSet>> only;
};

/// Every (I+, I-, N) with N a subgroup of t_hat_I_complement. Shapes are
/// ordered by the bitmask of I+, then of I-; subgroups by order then generators.
/// Throws std::length_error when a shape exceeds `cap`.
std::vector<TripleRecord> enumerate_triples(const TwistMap& tw, std::int64_t ell, const EnumerationOptions& opts);

struct Predicates {
    bool pointed_necessary = false;
    bool semisimple = false;
    bool dual_pointed_consistent = true;
    /// Needs a Sigma recipe; nullopt otherwise.
    std::optional<bool> cocycle_deformation_obstructed;
};

Predicates predicates(const TwistMap& tw, std::int64_t ell, const TwistedSubgroupDatum& d);

/// The same Sigma recipe evaluated at phi and at phi = 0.
struct UntwistedComparison {
    Integer sigma_phi, n_phi, sigma_zero, n_zero;
    DimH dim_phi, dim_zero;
    Rational ratio;  // dim_phi / dim_zero, primary convention
    bool obstructed = false;
};

UntwistedComparison compare_with_untwisted(const TwistMap& tw, std::int64_t ell, const IndexSet& iplus,
                                           const IndexSet& iminus, const std::vector<SigmaGenerator>& recipe);

}  // namespace qsg
