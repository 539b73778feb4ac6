#include "qsg/cocycle.hpp"

#include <sstream>
#include <stdexcept>

namespace qsg {

void check_bidegree(const Bidegree& b, const CartanDatum& cd) {
    if (!in_weight_lattice(b.lambda, cd) || !in_weight_lattice(b.mu, cd))
        throw std::invalid_argument("bidegree weights must lie in the weight lattice");
}

Rational chi_exponent(const TwistMap& tw, const LatticeElement& l1, const LatticeElement& l2) {
    return Rational(-1, 2) * bilinear_form(apply_phi(tw, l1), l2, tw.cartan());
}

Rational sigma_exponent(const TwistMap& tw, const Bidegree& b1, const Bidegree& b2) {
    return chi_exponent(tw, b1.lambda, b2.lambda);
}

Rational sigma_inverse_exponent(const TwistMap& tw, const Bidegree& b1, const Bidegree& b2) {
    return chi_exponent(tw, b1.mu, b2.lambda);
}

Rational deformation_exponent(const TwistMap& tw, const Bidegree& b1, const Bidegree& b2) {
    const CartanDatum& cd = tw.cartan();
    const Rational mu_part = bilinear_form(apply_phi(tw, b1.mu), b2.mu, cd);
    const Rational lambda_part = bilinear_form(apply_phi(tw, b1.lambda), b2.lambda, cd);
    return Rational(1, 2) * (mu_part - lambda_part);
}

GroupTwoCocycle::GroupTwoCocycle(std::int64_t ell, std::vector<std::vector<std::int64_t>> coefficients)
    : ell_(ell), coeffs_(std::move(coefficients)) {
    for (auto& row : coeffs_) {
        if (row.size() != coeffs_.size()) throw std::invalid_argument("cocycle coefficient matrix must be square");
        for (auto& c : row) c = mod_floor(c, ell_);
    }
}

std::int64_t GroupTwoCocycle::value(const ModVector& z1, const ModVector& z2) const {
    const std::size_t n = rank();
    if (z1.size() != n || z2.size() != n) throw std::invalid_argument("cocycle argument rank mismatch");
    std::int64_t s = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::int64_t a = mod_floor(z1[i], ell_);
        if (a == 0) continue;
        for (std::size_t j = 0; j < n; ++j)
            s = mod_floor(s + mul_mod(a, mul_mod(coeffs_[i][j], mod_floor(z2[j], ell_), ell_), ell_), ell_);
    }
    return s;
}

std::vector<std::vector<std::int64_t>> GroupTwoCocycle::table() const {
    std::size_t size = 1;
    for (std::size_t i = 0; i < rank(); ++i) size *= static_cast<std::size_t>(ell_);
    std::vector<std::vector<std::int64_t>> t(size, std::vector<std::int64_t>(size));
    for (std::size_t a = 0; a < size; ++a) {
        const ModVector z1 = group_element(a, ell_, rank());
        for (std::size_t b = 0; b < size; ++b) t[a][b] = value(z1, group_element(b, ell_, rank()));
    }
    return t;
}

std::string GroupTwoCocycle::to_text() const {
    std::ostringstream os;
    for (const auto& row : table()) {
        for (std::size_t j = 0; j < row.size(); ++j) os << (j ? " " : "") << row[j];
        os << '\n';
    }
    return os.str();
}

void check_level(const CartanDatum& cd, std::int64_t ell) {
    if (ell < 3 || ell % 2 == 0) throw std::invalid_argument("level must be an odd integer >= 3");
    bool triple_bond = false;
    for (const auto& a : cd.cartan().entries())
        if (a == -3) triple_bond = true;
    if (triple_bond && ell % 3 == 0) throw std::invalid_argument("level must be coprime to 3 for type G2");
}

GroupTwoCocycle twist_J(const TwistMap& tw, std::int64_t ell) {
    check_level(tw.cartan(), ell);
    const int n = tw.rank();
    std::vector<std::vector<std::int64_t>> c(n, std::vector<std::int64_t>(n));
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            const Rational v = Rational(1, 2) * bilinear_form(apply_phi(tw, LatticeElement::simple_root(n, i)),
                                                              LatticeElement::simple_root(n, j), tw.cartan());
            if (!is_integer(v))
                throw std::logic_error("(phi alpha_i, alpha_j)/2 is not integral; exponent not defined mod ell");
            c[i - 1][j - 1] = to_int64(mod_floor(v.get_num(), Integer(static_cast<long>(ell))));
        }
    return GroupTwoCocycle(ell, std::move(c));
}

std::size_t group_index(const ModVector& g, std::int64_t ell) {
    std::size_t idx = 0;
    for (auto x : g) idx = idx * static_cast<std::size_t>(ell) + static_cast<std::size_t>(mod_floor(x, ell));
    return idx;
}

ModVector group_element(std::size_t index, std::int64_t ell, std::size_t rank) {
    ModVector g(rank);
    for (std::size_t k = rank; k-- > 0;) {
        g[k] = static_cast<std::int64_t>(index % static_cast<std::size_t>(ell));
        index /= static_cast<std::size_t>(ell);
    }
    return g;
}

namespace {

std::size_t power_size(std::int64_t ell, std::size_t rank) {
    std::size_t s = 1;
    for (std::size_t i = 0; i < rank; ++i) s *= static_cast<std::size_t>(ell);
    return s;
}

// One-dimensional transform along every axis: out[g] = sum_z in[z] eps^{sign z g}.
std::vector<CyclotomicNumber> separable_transform(std::vector<CyclotomicNumber> v, std::int64_t ell,
                                                  std::size_t rank, int sign) {
    const auto L = static_cast<std::size_t>(ell);
    std::vector<CyclotomicNumber> powers;
    for (std::int64_t t = 0; t < ell; ++t) powers.push_back(root_of_unity_power(ell, sign * t));

    std::size_t stride = 1;
    for (std::size_t axis = 0; axis < rank; ++axis) {
        // Axis `rank-1-axis` has stride L^axis in the lexicographic index.
        std::vector<CyclotomicNumber> out(v.size(), CyclotomicNumber(static_cast<std::uint64_t>(ell)));
        for (std::size_t base = 0; base < v.size(); ++base) {
            if ((base / stride) % L != 0) continue;
            for (std::size_t g = 0; g < L; ++g) {
                CyclotomicNumber acc(static_cast<std::uint64_t>(ell));
                for (std::size_t z = 0; z < L; ++z) {
                    const CyclotomicNumber& x = v[base + z * stride];
                    if (x.is_zero()) continue;
                    acc += x * powers[(z * g) % L];
                }
                out[base + g * stride] = std::move(acc);
            }
        }
        v = std::move(out);
        stride *= L;
    }
    return v;
}

}  // namespace

GroupAlgebraElement GroupAlgebraElement::zero(std::int64_t ell, std::size_t rank) {
    return {ell, rank,
            std::vector<CyclotomicNumber>(power_size(ell, rank), CyclotomicNumber(static_cast<std::uint64_t>(ell)))};
}

GroupAlgebraElement GroupAlgebraElement::identity(std::int64_t ell, std::size_t rank) {
    GroupAlgebraElement e = zero(ell, rank);
    e.coeffs[0] = CyclotomicNumber::one(static_cast<std::uint64_t>(ell));
    return e;
}

const CyclotomicNumber& GroupAlgebraElement::at(const ModVector& g) const {
    if (g.size() != rank) throw std::invalid_argument("group element rank mismatch");
    return coeffs.at(group_index(g, ell));
}

GroupAlgebraElement convolve(const GroupAlgebraElement& a, const GroupAlgebraElement& b) {
    if (a.ell != b.ell || a.rank != b.rank) throw std::invalid_argument("convolution of mismatched group algebras");
    GroupAlgebraElement out = GroupAlgebraElement::zero(a.ell, a.rank);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a.coeffs[i].is_zero()) continue;
        const ModVector g = group_element(i, a.ell, a.rank);
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (b.coeffs[j].is_zero()) continue;
            ModVector h = group_element(j, a.ell, a.rank);
            for (std::size_t k = 0; k < h.size(); ++k) h[k] += g[k];
            out.coeffs[group_index(h, a.ell)] += a.coeffs[i] * b.coeffs[j];
        }
    }
    return out;
}

std::vector<CyclotomicNumber> fourier(const GroupAlgebraElement& a) {
    return separable_transform(a.coeffs, a.ell, a.rank, 1);
}

GroupAlgebraElement inverse_fourier(const std::vector<CyclotomicNumber>& values, std::int64_t ell, std::size_t rank) {
    if (values.size() != power_size(ell, rank)) throw std::invalid_argument("inverse_fourier: table size mismatch");
    GroupAlgebraElement out{ell, rank, separable_transform(values, ell, rank, -1)};
    const Rational scale = make_rational(Integer(1), pow(Integer(static_cast<long>(ell)), static_cast<unsigned long>(rank)));
    for (auto& c : out.coeffs) c *= scale;
    return out;
}

namespace {

GroupAlgebraElement counit_half(const GroupAlgebraElement& x, bool kill_left) {
    if (x.rank % 2 != 0) throw std::invalid_argument("counit: expected a tensor square");
    const std::size_t n = x.rank / 2;
    GroupAlgebraElement out = GroupAlgebraElement::zero(x.ell, n);
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x.coeffs[i].is_zero()) continue;
        const ModVector g = group_element(i, x.ell, x.rank);
        const ModVector kept = kill_left ? ModVector(g.begin() + n, g.end()) : ModVector(g.begin(), g.begin() + n);
        out.coeffs[group_index(kept, x.ell)] += x.coeffs[i];
    }
    return out;
}

}  // namespace

GroupAlgebraElement counit_left(const GroupAlgebraElement& x) { return counit_half(x, true); }

GroupAlgebraElement counit_right(const GroupAlgebraElement& x) { return counit_half(x, false); }

TwistElement twist_J_group_algebra(const TwistMap& tw, std::int64_t ell, std::size_t cap) {
    const GroupTwoCocycle cocycle = twist_J(tw, ell);
    const std::size_t n = cocycle.rank();
    const std::size_t side = power_size(ell, n);
    if (side > cap / side) throw std::length_error("twist table of size ell^(2n) exceeds the configured cap");

    std::vector<CyclotomicNumber> values, inverse_values;
    values.reserve(side * side);
    inverse_values.reserve(side * side);
    for (std::size_t i = 0; i < side * side; ++i) {
        const ModVector z = group_element(i, ell, 2 * n);
        const ModVector z1(z.begin(), z.begin() + n), z2(z.begin() + n, z.end());
        const std::int64_t e = cocycle.value(z1, z2);
        values.push_back(root_of_unity_power(ell, e));
        inverse_values.push_back(root_of_unity_power(ell, -e));
    }
    return {inverse_fourier(values, ell, 2 * n), inverse_fourier(inverse_values, ell, 2 * n)};
}

}  // namespace qsg
