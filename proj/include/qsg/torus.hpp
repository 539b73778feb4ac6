#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qsg/modular.hpp"
#include "qsg/twist.hpp"

namespace qsg {

/// Upper bound on elements or subgroups materialized by enumeration helpers.
constexpr std::size_t kDefaultEnumerationCap = 200000;

/// Subgroup of (Z/ell)^n in Hermite canonical form. Equal subgroups compare
/// equal; the order is order-then-generators.
class TorusSubgroup {
   public:
    static TorusSubgroup from_generators(std::span<const ModVector> gens, std::int64_t ell, std::size_t n);
    static TorusSubgroup trivial(std::int64_t ell, std::size_t n);
    static TorusSubgroup full(std::int64_t ell, std::size_t n);

    std::int64_t ell() const noexcept { return form_.ell; }
    std::size_t rank() const noexcept { return form_.n; }
    Integer order() const { return form_.order(); }
    bool is_trivial() const noexcept { return form_.rows.empty(); }
    /// Canonical generators (Hermite rows).
    const std::vector<ModVector>& generators() const noexcept { return form_.rows; }
    const HermiteMod& canonical_form() const noexcept { return form_; }

    bool contains(const ModVector& v) const;
    bool contains(const TorusSubgroup& other) const;
    /// Every element; throws std::length_error when the order exceeds `cap`.
    std::vector<ModVector> elements(std::size_t cap = kDefaultEnumerationCap) const;

    TorusSubgroup join(const TorusSubgroup& other) const;
    TorusSubgroup intersect(const TorusSubgroup& other) const;

    friend bool operator==(const TorusSubgroup&, const TorusSubgroup&) = default;
    friend bool operator<(const TorusSubgroup& a, const TorusSubgroup& b);

   private:
    explicit TorusSubgroup(HermiteMod form) : form_(std::move(form)) {}
    HermiteMod form_;
};

/// {z : <z, g> = 0 mod ell for all g in sub}, via kernel_mod.
TorusSubgroup annihilator(const TorusSubgroup& sub);

/// All subgroups of `ambient`, sorted. Throws std::length_error past `cap`.
std::vector<TorusSubgroup> enumerate_subgroups(const TorusSubgroup& ambient,
                                               std::size_t cap = kDefaultEnumerationCap);

/// Character D^z of the torus: K_{alpha_t} -> eps^{z_t}.
struct Character {
    ModVector z;
    /// <z, g> mod ell; evaluates to eps^{pairing}.
    std::int64_t pairing(const ModVector& g, std::int64_t ell) const;
};

/// One entry of a generator recipe for Sigma: a named torus element whose
/// exponent depends on phi, or a fixed exponent vector.
struct SigmaGenerator {
    enum class Kind { Kbar, Ktilde, Tau, Alpha, Explicit };
    Kind kind = Kind::Explicit;
    int label = 0;                    // 1-based, named kinds only
    std::vector<long long> exponent;  // Explicit only

    friend bool operator==(const SigmaGenerator&, const SigmaGenerator&) = default;
};

/// "kbar:i", "ktilde:i", "tau:i", "alpha:i" or a comma list "2,3,2".
/// Throws std::invalid_argument.
SigmaGenerator parse_sigma_generator(std::string_view text);
std::string to_string(const SigmaGenerator& g);

/// Exponent in the alpha basis, reduced mod ell. kbar: (1-phi)alpha_i,
/// ktilde: (1+phi)alpha_i, tau: tau_i, alpha: alpha_i.
ModVector resolve(const SigmaGenerator& g, const TwistMap& tw, std::int64_t ell);
TorusSubgroup sigma_from_recipe(std::span<const SigmaGenerator> recipe, const TwistMap& tw, std::int64_t ell);

struct Triple {
    IndexSet iplus;
    IndexSet iminus;
    TorusSubgroup sigma;
};

/// <kbar_i : i in I+, ktilde_j : j in I->.
TorusSubgroup t_phi_I(const TwistMap& tw, std::int64_t ell, const IndexSet& iplus, const IndexSet& iminus);
/// <K_{alpha_i} : i in I+ and I->.
TorusSubgroup t_phi_I_prime(const TwistMap& tw, std::int64_t ell, const IndexSet& iplus, const IndexSet& iminus);

struct TripleViolation {
    std::string what;  // e.g. "ktilde:1 not in Sigma"
    ModVector witness;
};

struct TripleReport {
    std::vector<TripleViolation> violations;
    bool ok() const noexcept { return violations.empty(); }
};

/// Checks T_{I'} in T_I in Sigma generator by generator.
TripleReport validate_triple(const TwistMap& tw, std::int64_t ell, const Triple& t);

/// Rows for I+ (in label order): (delta_ij - 2 y_ji) mod ell; then rows for
/// I-: (delta_jk + 2 y_kj) mod ell.
IntMatrix s_phi_matrix(const TwistMap& tw, std::int64_t ell, const IndexSet& iplus, const IndexSet& iminus);

/// Kernel of s_phi_matrix over Z/ell: the characters of T / T_I.
TorusSubgroup t_hat_I_complement(const TwistMap& tw, std::int64_t ell, const IndexSet& iplus,
                                 const IndexSet& iminus);

/// N = annihilator of Sigma. Throws std::invalid_argument for an invalid triple.
TorusSubgroup n_phi_from_sigma(const TwistMap& tw, std::int64_t ell, const Triple& t);

struct SigmaOrderIdentity {
    Integer sigma_order;
    Integer n_order;
    bool holds = false;  // |Sigma| |N| = ell^n
};
SigmaOrderIdentity sigma_order_identity(const TwistMap& tw, std::int64_t ell, const Triple& t);

/// |Omega| = |Sigma| / |T_I|.
Integer omega_order(const TwistMap& tw, std::int64_t ell, const Triple& t);

/// Throws std::invalid_argument unless ell >= 2.
void check_modulus(std::int64_t ell);

}  // namespace qsg
