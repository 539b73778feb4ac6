#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qsg/matrix.hpp"

namespace qsg {

/// S = U * M * V with U, V unimodular and S diagonal, s1 | s2 | ..., s_i >= 0.
struct SmithForm {
    IntMatrix U;
    IntMatrix S;
    IntMatrix V;

    /// The min(rows, cols) diagonal entries of S.
    std::vector<Integer> diagonal() const;
    std::size_t rank() const;
};

SmithForm smith_normal_form(const IntMatrix& M);

/// Solutions of M z = 0 over Z/ell, as a generating set together with the
/// order of each generator. Generators are independent: the solution group is
/// their direct sum and `order` is the product of `orders`.
struct ModKernel {
    std::int64_t ell = 1;
    std::vector<ModVector> generators;
    std::vector<std::int64_t> orders;
    Integer order = 1;
};

ModKernel kernel_mod(const IntMatrix& M, std::int64_t ell);

/// One solution x of M x = b (mod modulus), entries in [0, modulus), free
/// coordinates set to zero in the Smith basis. std::nullopt when unsolvable.
std::optional<std::vector<Integer>> solve_congruence(const IntMatrix& M, const std::vector<Integer>& b,
                                                     const Integer& modulus);

/// Rank over Z/p for prime p (number of elementary divisors not divisible by p).
std::size_t rank_mod_prime(const IntMatrix& M, std::int64_t p);

bool is_prime(std::int64_t n);

}  // namespace qsg
