#include "qsg/lie.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <stdexcept>

namespace qsg {

char to_char(LieType t) { return "ABCDEFG"[static_cast<int>(t)]; }

LieType lie_type_from_char(char c) {
    if (c >= 'a' && c <= 'g') c = static_cast<char>(c - 'a' + 'A');
    if (c < 'A' || c > 'G') throw std::invalid_argument(std::string("unknown Lie type '") + c + "'");
    return static_cast<LieType>(c - 'A');
}

namespace {

void link(IntMatrix& A, int i, int j, long aij = -1, long aji = -1) {
    A(i - 1, j - 1) = aij;
    A(j - 1, i - 1) = aji;
}

}  // namespace

IntMatrix cartan_matrix(LieType type, int n) {
    auto bad = [&] {
        return std::invalid_argument("invalid Cartan type " + std::string(1, to_char(type)) + std::to_string(n));
    };
    switch (type) {
        case LieType::A: if (n < 1) throw bad(); break;
        case LieType::B:
        case LieType::C: if (n < 2) throw bad(); break;
        case LieType::D: if (n < 4) throw bad(); break;
        case LieType::E: if (n < 6 || n > 8) throw bad(); break;
        case LieType::F: if (n != 4) throw bad(); break;
        case LieType::G: if (n != 2) throw bad(); break;
    }
    IntMatrix A(n, n);
    for (int i = 0; i < n; ++i) A(i, i) = 2;
    switch (type) {
        case LieType::A:
            for (int i = 1; i < n; ++i) link(A, i, i + 1);
            break;
        case LieType::B:
            for (int i = 1; i < n - 1; ++i) link(A, i, i + 1);
            link(A, n - 1, n, -2, -1);
            break;
        case LieType::C:
            for (int i = 1; i < n - 1; ++i) link(A, i, i + 1);
            link(A, n - 1, n, -1, -2);
            break;
        case LieType::D:
            for (int i = 1; i < n - 1; ++i) link(A, i, i + 1);
            link(A, n - 2, n);
            break;
        case LieType::E:
            link(A, 1, 3);
            link(A, 2, 4);
            for (int i = 3; i < n; ++i) link(A, i, i + 1);
            break;
        case LieType::F:
            link(A, 1, 2);
            link(A, 2, 3, -1, -2);
            link(A, 3, 4);
            break;
        case LieType::G:
            link(A, 1, 2, -3, -1);
            break;
    }
    return A;
}

std::vector<Integer> symmetrizers(const IntMatrix& A) {
    if (!A.is_square()) throw std::invalid_argument("Cartan matrix must be square");
    const std::size_t n = A.rows();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if ((A(i, j) == 0) != (A(j, i) == 0))
                throw std::invalid_argument("matrix is not symmetrizable: zero pattern is not symmetric at (" +
                                            std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");

    std::vector<Rational> d(n);
    std::vector<bool> seen(n, false);
    std::vector<Integer> out(n);
    for (std::size_t root = 0; root < n; ++root) {
        if (seen[root]) continue;
        std::vector<std::size_t> component{root};
        d[root] = 1;
        seen[root] = true;
        for (std::size_t k = 0; k < component.size(); ++k) {
            const std::size_t i = component[k];
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i || A(i, j) == 0) continue;
                // d_i a_ij = d_j a_ji
                const Rational dj = d[i] * Rational(A(i, j)) / Rational(A(j, i));
                if (!seen[j]) {
                    d[j] = dj;
                    seen[j] = true;
                    component.push_back(j);
                } else if (d[j] != dj) {
                    throw std::invalid_argument("matrix is not symmetrizable");
                }
            }
        }
        Integer den_lcm = 1;
        for (auto i : component) {
            if (d[i] <= 0) throw std::invalid_argument("matrix admits no positive symmetrizer");
            mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), d[i].get_den_mpz_t());
        }
        Integer g = 0;
        for (auto i : component) {
            out[i] = to_integer(d[i] * Rational(den_lcm));
            g = gcd(g, out[i]);
        }
        for (auto i : component) out[i] /= g;
    }
    return out;
}

CartanDatum::CartanDatum(std::optional<LieType> type, IntMatrix A) : type_(type), A_(std::move(A)) {
    const std::size_t n = A_.rows();
    if (!A_.is_square() || n == 0) throw std::invalid_argument("Cartan matrix must be square and nonempty");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j && A_(i, j) != 2) throw std::invalid_argument("Cartan matrix diagonal entries must be 2");
            if (i != j && A_(i, j) > 0) throw std::invalid_argument("Cartan matrix off-diagonal entries must be <= 0");
        }
    d_ = qsg::symmetrizers(A_);
    gram_ = RationalMatrix(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) gram_(i, j) = Rational(d_[i] * A_(i, j));
    // Finite type: the symmetrized form is positive definite.
    for (std::size_t k = 1; k <= n; ++k) {
        std::vector<std::size_t> idx(k);
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        if (determinant(gram_.submatrix(idx, idx)) <= 0)
            throw std::invalid_argument("Cartan matrix is not of finite type");
    }
    auto inv = inverse(to_rational(A_));
    if (!inv) throw std::invalid_argument("Cartan matrix is singular");
    A_inv_ = std::move(*inv);
}

CartanDatum CartanDatum::of_type(LieType type, int rank) { return CartanDatum(type, cartan_matrix(type, rank)); }

CartanDatum CartanDatum::from_matrix(const IntMatrix& A) { return CartanDatum(std::nullopt, A); }

std::string CartanDatum::label() const {
    if (type_) return std::string(1, to_char(*type_)) + std::to_string(rank());
    return "custom" + std::to_string(rank());
}

LatticeElement LatticeElement::simple_root(int n, int label) {
    LatticeElement e = zero(n, Basis::Alpha);
    e.coords.at(static_cast<std::size_t>(label - 1)) = 1;
    return e;
}

LatticeElement LatticeElement::fundamental_weight(int n, int label) {
    LatticeElement e = zero(n, Basis::Omega);
    e.coords.at(static_cast<std::size_t>(label - 1)) = 1;
    return e;
}

LatticeElement LatticeElement::zero(int n, Basis b) { return {b, std::vector<Rational>(static_cast<std::size_t>(n))}; }

LatticeElement LatticeElement::operator-() const {
    LatticeElement r = *this;
    for (auto& c : r.coords) c = -c;
    return r;
}

LatticeElement from_ints(Basis b, const std::vector<long long>& c) {
    LatticeElement e{b, {}};
    for (auto x : c) e.coords.emplace_back(static_cast<long>(x));
    return e;
}

namespace {

void check_rank(const LatticeElement& x, const CartanDatum& cd) {
    if (x.rank() != static_cast<std::size_t>(cd.rank()))
        throw std::invalid_argument("lattice element rank " + std::to_string(x.rank()) +
                                    " does not match Cartan rank " + std::to_string(cd.rank()));
}

}  // namespace

LatticeElement alpha_to_omega(const LatticeElement& x, const CartanDatum& cd) {
    check_rank(x, cd);
    if (x.basis == Basis::Omega) return x;
    // alpha_i = sum_j a_ji omega_j, so omega-coords are A c.
    return LatticeElement::omega(to_rational(cd.cartan()) * x.coords);
}

LatticeElement omega_to_alpha(const LatticeElement& x, const CartanDatum& cd) {
    check_rank(x, cd);
    if (x.basis == Basis::Alpha) return x;
    return LatticeElement::alpha(cd.cartan_inverse() * x.coords);
}

LatticeElement to_basis(const LatticeElement& x, Basis b, const CartanDatum& cd) {
    return b == Basis::Alpha ? omega_to_alpha(x, cd) : alpha_to_omega(x, cd);
}

LatticeElement add(const LatticeElement& a, const LatticeElement& b, const CartanDatum& cd) {
    LatticeElement r = a;
    const LatticeElement bb = to_basis(b, a.basis, cd);
    for (std::size_t i = 0; i < r.coords.size(); ++i) r.coords[i] += bb.coords[i];
    return r;
}

bool in_root_lattice(const LatticeElement& x, const CartanDatum& cd) {
    for (const auto& c : omega_to_alpha(x, cd).coords)
        if (!is_integer(c)) return false;
    return true;
}

bool in_weight_lattice(const LatticeElement& x, const CartanDatum& cd) {
    for (const auto& c : alpha_to_omega(x, cd).coords)
        if (!is_integer(c)) return false;
    return true;
}

Rational bilinear_form(const LatticeElement& x, const LatticeElement& y, const CartanDatum& cd) {
    check_rank(x, cd);
    check_rank(y, cd);
    const LatticeElement l = alpha_to_omega(x, cd);
    const LatticeElement m = omega_to_alpha(y, cd);
    Rational s = 0;
    const auto& d = cd.symmetrizers();
    for (std::size_t i = 0; i < l.coords.size(); ++i) s += l.coords[i] * Rational(d[i]) * m.coords[i];
    return s;
}

long long Root::height() const { return std::accumulate(coords.begin(), coords.end(), 0LL); }

LatticeElement Root::element() const { return from_ints(Basis::Alpha, coords); }

std::vector<Root> positive_roots(const CartanDatum& cd) {
    const int n = cd.rank();
    std::vector<std::vector<long long>> A(n, std::vector<long long>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) A[i][j] = to_int64(cd.cartan()(i, j));

    std::set<std::vector<long long>> seen;
    std::deque<std::vector<long long>> queue;
    for (int i = 0; i < n; ++i) {
        std::vector<long long> e(n, 0);
        e[i] = 1;
        seen.insert(e);
        queue.push_back(e);
    }
    // The finite types have at most 120 positive roots (E8).
    constexpr std::size_t kMaxRoots = 4096;
    while (!queue.empty()) {
        const auto beta = queue.front();
        queue.pop_front();
        for (int i = 0; i < n; ++i) {
            // s_i(beta) = beta - <beta, alpha_i^vee> alpha_i, <beta, alpha_i^vee> = (A beta)_i
            long long pairing = 0;
            for (int j = 0; j < n; ++j) pairing += A[i][j] * beta[j];
            auto image = beta;
            image[i] -= pairing;
            if (std::any_of(image.begin(), image.end(), [](long long c) { return c < 0; })) continue;
            if (seen.insert(image).second) {
                if (seen.size() > kMaxRoots) throw std::runtime_error("root closure did not terminate");
                queue.push_back(image);
            }
        }
    }

    std::vector<Root> roots;
    for (const auto& c : seen) {
        Root r{c, {}};
        for (int i = 0; i < n; ++i)
            if (c[i] != 0) r.support.push_back(i + 1);
        roots.push_back(std::move(r));
    }
    std::sort(roots.begin(), roots.end(), [](const Root& a, const Root& b) {
        const auto ha = a.height(), hb = b.height();
        return ha != hb ? ha < hb : a.coords < b.coords;
    });
    return roots;
}

void check_index_set(const IndexSet& I, int n) {
    std::set<int> s;
    for (int i : I) {
        if (i < 1 || i > n)
            throw std::invalid_argument("simple root label " + std::to_string(i) + " outside 1.." + std::to_string(n));
        if (!s.insert(i).second) throw std::invalid_argument("duplicate simple root label " + std::to_string(i));
    }
}

std::vector<Root> roots_supported(const CartanDatum& cd, const IndexSet& I) {
    check_index_set(I, cd.rank());
    std::vector<Root> out;
    for (auto& r : positive_roots(cd)) {
        const bool inside = std::all_of(r.support.begin(), r.support.end(),
                                        [&](int s) { return std::find(I.begin(), I.end(), s) != I.end(); });
        if (inside) out.push_back(std::move(r));
    }
    return out;
}

long long lie_algebra_dimension(const CartanDatum& cd) {
    return cd.rank() + 2 * static_cast<long long>(positive_roots(cd).size());
}

}  // namespace qsg
