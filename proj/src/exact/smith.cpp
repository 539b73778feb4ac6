#include "qsg/smith.hpp"

#include <stdexcept>

namespace qsg {

namespace {

Integer abs_value(const Integer& x) { return x < 0 ? Integer(-x) : x; }

Integer trunc_div(const Integer& a, const Integer& b) {
    Integer q;
    mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

bool divides(const Integer& d, const Integer& x) {
    return mpz_divisible_p(x.get_mpz_t(), d.get_mpz_t()) != 0;
}

// Smallest nonzero |entry| in the trailing submatrix starting at (t, t).
bool find_pivot(const IntMatrix& S, std::size_t t, std::size_t& pi, std::size_t& pj) {
    bool found = false;
    Integer best;
    for (std::size_t i = t; i < S.rows(); ++i)
        for (std::size_t j = t; j < S.cols(); ++j) {
            if (S(i, j) == 0) continue;
            Integer a = abs_value(S(i, j));
            if (!found || a < best) {
                best = a;
                pi = i;
                pj = j;
                found = true;
            }
        }
    return found;
}

}  // namespace

std::vector<Integer> SmithForm::diagonal() const {
    std::vector<Integer> d;
    const std::size_t k = std::min(S.rows(), S.cols());
    for (std::size_t i = 0; i < k; ++i) d.push_back(S(i, i));
    return d;
}

std::size_t SmithForm::rank() const {
    std::size_t r = 0;
    for (const auto& d : diagonal())
        if (d != 0) ++r;
    return r;
}

SmithForm smith_normal_form(const IntMatrix& M) {
    SmithForm f{IntMatrix::identity(M.rows()), M, IntMatrix::identity(M.cols())};
    IntMatrix& S = f.S;
    const std::size_t k = std::min(S.rows(), S.cols());

    for (std::size_t t = 0; t < k; ++t) {
        bool done = false;
        while (true) {
            std::size_t pi = 0, pj = 0;
            if (!find_pivot(S, t, pi, pj)) {
                done = true;
                break;
            }
            S.swap_rows(t, pi);
            f.U.swap_rows(t, pi);
            S.swap_cols(t, pj);
            f.V.swap_cols(t, pj);

            bool clean = true;
            for (std::size_t i = t + 1; i < S.rows(); ++i) {
                if (S(i, t) == 0) continue;
                const Integer q = -trunc_div(S(i, t), S(t, t));
                S.add_row_multiple(i, t, q);
                f.U.add_row_multiple(i, t, q);
                if (S(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < S.cols(); ++j) {
                if (S(t, j) == 0) continue;
                const Integer q = -trunc_div(S(t, j), S(t, t));
                S.add_col_multiple(j, t, q);
                f.V.add_col_multiple(j, t, q);
                if (S(t, j) != 0) clean = false;
            }
            if (!clean) continue;

            // Divisibility: fold an offending row into row t and repeat.
            bool fixed = false;
            for (std::size_t i = t + 1; i < S.rows() && !fixed; ++i)
                for (std::size_t j = t + 1; j < S.cols(); ++j)
                    if (!divides(S(t, t), S(i, j))) {
                        S.add_row_multiple(t, i, Integer(1));
                        f.U.add_row_multiple(t, i, Integer(1));
                        fixed = true;
                        break;
                    }
            if (!fixed) break;
        }
        if (done) break;
        if (S(t, t) < 0) {
            for (std::size_t j = 0; j < S.cols(); ++j) S(t, j) = -S(t, j);
            for (std::size_t j = 0; j < f.U.cols(); ++j) f.U(t, j) = -f.U(t, j);
        }
    }
    return f;
}

ModKernel kernel_mod(const IntMatrix& M, std::int64_t ell) {
    if (ell < 1) throw std::invalid_argument("kernel_mod: modulus must be >= 1");
    const Integer L = static_cast<long>(ell);
    IntMatrix R = M;
    for (std::size_t i = 0; i < R.rows(); ++i)
        for (std::size_t j = 0; j < R.cols(); ++j) R(i, j) = mod_floor(R(i, j), L);

    const SmithForm f = smith_normal_form(R);
    const auto diag = f.diagonal();
    ModKernel out;
    out.ell = ell;
    for (std::size_t i = 0; i < R.cols(); ++i) {
        const Integer s = i < diag.size() ? diag[i] : Integer(0);
        const Integer g = gcd(L, s);  // gcd(ell, 0) = ell
        if (g == 1) continue;
        const Integer step = L / g;
        ModVector v(R.cols());
        for (std::size_t r = 0; r < R.cols(); ++r) v[r] = to_int64(mod_floor(step * f.V(r, i), L));
        out.generators.push_back(std::move(v));
        out.orders.push_back(to_int64(g));
        out.order *= g;
    }
    return out;
}

std::optional<std::vector<Integer>> solve_congruence(const IntMatrix& M, const std::vector<Integer>& b,
                                                     const Integer& modulus) {
    if (modulus < 1) throw std::invalid_argument("solve_congruence: modulus must be >= 1");
    if (b.size() != M.rows()) throw std::invalid_argument("solve_congruence: right-hand side length mismatch");
    const SmithForm f = smith_normal_form(M);
    const std::vector<Integer> c = f.U * b;
    const auto diag = f.diagonal();
    std::vector<Integer> y(M.cols());
    for (std::size_t i = 0; i < M.rows(); ++i) {
        const Integer s = i < diag.size() ? diag[i] : Integer(0);
        const Integer ci = mod_floor(c[i], modulus);
        const Integer g = gcd(s, modulus);
        if (!divides(g, ci)) return std::nullopt;
        if (i >= diag.size() || s == 0) continue;
        const Integer m = modulus / g;
        Integer inv;
        const Integer sg = mod_floor(Integer(s / g), m);
        if (m == 1) {
            inv = 0;
        } else if (mpz_invert(inv.get_mpz_t(), sg.get_mpz_t(), m.get_mpz_t()) == 0) {
            throw std::logic_error("solve_congruence: unit expected");
        }
        y[i] = mod_floor(Integer((ci / g) * inv), m);
    }
    std::vector<Integer> x = f.V * y;
    for (auto& xi : x) xi = mod_floor(xi, modulus);
    return x;
}

std::size_t rank_mod_prime(const IntMatrix& M, std::int64_t p) {
    if (!is_prime(p)) throw std::invalid_argument("rank_mod_prime: modulus is not prime");
    const Integer P = static_cast<long>(p);
    std::size_t r = 0;
    for (const auto& s : smith_normal_form(M).diagonal())
        if (s != 0 && !divides(P, s)) ++r;
    return r;
}

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

}  // namespace qsg
