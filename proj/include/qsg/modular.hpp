#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qsg/rational.hpp"

namespace qsg {

struct ExtGcd {
    std::int64_t g, u, v;  // g = u*a + v*b, g >= 0
};
ExtGcd ext_gcd(std::int64_t a, std::int64_t b);

std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t m);

/// Hermite normal form of the lattice spanned by `gens` together with ell*Z^n.
///
/// This is the canonical presentation of the subgroup <gens> of (Z/ell)^n:
/// pivot[j] is the diagonal entry of column j (a divisor of ell; ell when the
/// column carries no generator), and `rows` holds the rows with pivot < ell in
/// column order. Entries right of a pivot are reduced into [0, pivot of that
/// column). Two generating sets give equal HermiteMod iff they generate the
/// same subgroup.
struct HermiteMod {
    std::int64_t ell = 1;
    std::size_t n = 0;
    std::vector<std::int64_t> pivots;     // size n
    std::vector<std::size_t> pivot_cols;  // column of each row in `rows`
    std::vector<ModVector> rows;

    bool contains(const ModVector& v) const;
    /// Subgroup order ell^n / prod(pivots).
    Integer order() const;
    /// Number of choices of the coefficient of rows[k].
    std::int64_t row_period(std::size_t k) const { return ell / pivots[pivot_cols[k]]; }

    friend bool operator==(const HermiteMod&, const HermiteMod&) = default;
};

HermiteMod hermite_mod(std::span<const ModVector> gens, std::int64_t ell, std::size_t n);

ModVector reduce_mod(const ModVector& v, std::int64_t ell);

}  // namespace qsg
