#include "qsg/modular.hpp"

#include <optional>
#include <stdexcept>

namespace qsg {

ExtGcd ext_gcd(std::int64_t a, std::int64_t b) {
    std::int64_t old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        const std::int64_t q = old_r / r;
        std::int64_t tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
        tmp = old_t - q * t;
        old_t = t;
        t = tmp;
    }
    if (old_r < 0) return {-old_r, -old_s, -old_t};
    return {old_r, old_s, old_t};
}

std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t m) {
    const __int128 p = static_cast<__int128>(a) * b;
    std::int64_t r = static_cast<std::int64_t>(p % m);
    return r < 0 ? r + m : r;
}

ModVector reduce_mod(const ModVector& v, std::int64_t ell) {
    ModVector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = mod_floor(v[i], ell);
    return out;
}

namespace {

bool is_zero(const ModVector& v) {
    for (auto x : v)
        if (x != 0) return false;
    return true;
}

// (a, b) <- (u a + v b, s a + t b) mod ell
void combine(ModVector& a, ModVector& b, std::int64_t u, std::int64_t v, std::int64_t s, std::int64_t t,
             std::int64_t ell) {
    for (std::size_t k = 0; k < a.size(); ++k) {
        const std::int64_t x = a[k], y = b[k];
        a[k] = mod_floor(mul_mod(u, x, ell) + mul_mod(v, y, ell), ell);
        b[k] = mod_floor(mul_mod(s, x, ell) + mul_mod(t, y, ell), ell);
    }
}

}  // namespace

HermiteMod hermite_mod(std::span<const ModVector> gens, std::int64_t ell, std::size_t n) {
    if (ell < 1) throw std::invalid_argument("hermite_mod: modulus must be >= 1");
    std::vector<ModVector> pool;
    for (const auto& g : gens) {
        if (g.size() != n) throw std::invalid_argument("hermite_mod: generator length mismatch");
        ModVector r = reduce_mod(g, ell);
        if (!is_zero(r)) pool.push_back(std::move(r));
    }

    HermiteMod h;
    h.ell = ell;
    h.n = n;
    h.pivots.assign(n, ell);
    std::vector<std::optional<ModVector>> pivot_row(n);

    for (std::size_t j = 0; j < n; ++j) {
        std::optional<ModVector> p;
        std::vector<ModVector> rest;
        for (auto& r : pool) {
            if (r[j] == 0) {
                rest.push_back(std::move(r));
                continue;
            }
            if (!p) {
                p = std::move(r);
                continue;
            }
            const auto e = ext_gcd((*p)[j], r[j]);
            const std::int64_t a = (*p)[j] / e.g, b = r[j] / e.g;
            combine(*p, r, e.u, e.v, -b, a, ell);  // det = u a + v b = 1
            if (!is_zero(r)) rest.push_back(std::move(r));
        }
        pool = std::move(rest);
        if (!p) continue;

        // Fold against ell * e_j: pivot becomes gcd(p_j, ell).
        const std::int64_t x = (*p)[j];
        const auto e = ext_gcd(x, ell);
        const std::int64_t b = ell / e.g;
        ModVector second = *p;
        for (auto& c : second) c = mod_floor(mul_mod(-b, c, ell), ell);
        for (auto& c : *p) c = mul_mod(e.u, c, ell);
        (*p)[j] = e.g;
        if (!is_zero(second)) pool.push_back(std::move(second));
        h.pivots[j] = e.g;
        pivot_row[j] = std::move(p);
    }

    // Reduce entries above each pivot into [0, pivot).
    for (std::size_t j = 0; j < n; ++j) {
        if (!pivot_row[j]) continue;
        const std::int64_t piv = h.pivots[j];
        for (std::size_t i = 0; i < j; ++i) {
            if (!pivot_row[i]) continue;
            ModVector& r = *pivot_row[i];
            const std::int64_t q = r[j] / piv;
            if (q == 0) continue;
            for (std::size_t k = 0; k < n; ++k) r[k] = mod_floor(r[k] - mul_mod(q, (*pivot_row[j])[k], ell), ell);
        }
    }
    for (std::size_t j = 0; j < n; ++j)
        if (pivot_row[j]) {
            h.pivot_cols.push_back(j);
            h.rows.push_back(std::move(*pivot_row[j]));
        }
    return h;
}

bool HermiteMod::contains(const ModVector& v) const {
    if (v.size() != n) return false;
    ModVector r = reduce_mod(v, ell);
    std::size_t k = 0;
    for (std::size_t j = 0; j < n; ++j) {
        const bool has_row = k < pivot_cols.size() && pivot_cols[k] == j;
        if (r[j] % pivots[j] != 0) return false;
        if (has_row && r[j] != 0) {
            const std::int64_t q = r[j] / pivots[j];
            for (std::size_t c = 0; c < n; ++c) r[c] = mod_floor(r[c] - mul_mod(q, rows[k][c], ell), ell);
        }
        if (has_row) ++k;
    }
    return true;
}

Integer HermiteMod::order() const {
    Integer o = 1;
    for (auto p : pivots) o *= static_cast<long>(ell / p);
    return o;
}

}  // namespace qsg
