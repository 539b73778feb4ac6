#include "qsg/twist.hpp"

#include <functional>

namespace qsg {

std::string to_string(TwistViolation::Kind k) {
    switch (k) {
        case TwistViolation::Kind::Shape: return "shape";
        case TwistViolation::Kind::NonIntegral: return "integrality";
        case TwistViolation::Kind::NotAntisymmetric: return "antisymmetry";
        case TwistViolation::Kind::NotHalfIntegral: return "half_integrality";
        case TwistViolation::Kind::Singular: return "invertibility";
    }
    return "unknown";
}

namespace {

std::string pair_text(std::size_t i, std::size_t j) {
    return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

}  // namespace

TwistReport validate_twist(const CartanDatum& cd, const RationalMatrix& Y) {
    TwistReport rep;
    const std::size_t n = static_cast<std::size_t>(cd.rank());
    if (Y.rows() != n || Y.cols() != n) {
        rep.violations.push_back({TwistViolation::Kind::Shape, 0, 0,
                                  "Y must be " + std::to_string(n) + "x" + std::to_string(n)});
        return rep;
    }
    auto add = [&](TwistViolation::Kind k, std::size_t i, std::size_t j, std::string detail) {
        rep.violations.push_back({k, static_cast<int>(i + 1), static_cast<int>(j + 1), std::move(detail)});
    };

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!is_integer(Y(i, j))) add(TwistViolation::Kind::NonIntegral, i, j, "y" + pair_text(i, j) + " = " + to_string(Y(i, j)));

    const RationalMatrix X = to_rational(cd.cartan()) * Y;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!is_integer(X(i, j))) add(TwistViolation::Kind::NonIntegral, i, j, "x" + pair_text(i, j) + " = " + to_string(X(i, j)));

    const auto& d = cd.symmetrizers();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            const Rational dij = Rational(d[i]) * X(i, j);
            const Rational dji = Rational(d[j]) * X(j, i);
            if (dij != -dji)
                add(TwistViolation::Kind::NotAntisymmetric, i, j,
                    "d_i x_ij = " + to_string(dij) + ", d_j x_ji = " + to_string(dji));
        }

    // (phi omega_i, omega_j) / 2 in the alpha basis: omega_i = A^{-1} e_i, phi = 2Y.
    const RationalMatrix& Ainv = cd.cartan_inverse();
    const RationalMatrix half = (Y * Ainv).transpose() * cd.gram_alpha() * Ainv;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!is_integer(half(i, j)))
                add(TwistViolation::Kind::NotHalfIntegral, i, j,
                    "(phi w_i, w_j)/2 = " + to_string(half(i, j)) + " for (i,j) = " + pair_text(i, j));

    if (determinant(to_rational(cd.cartan()) + Rational(2) * X) == 0)
        rep.violations.push_back({TwistViolation::Kind::Singular, 0, 0, "A + 2X is singular"});
    return rep;
}

TwistReport validate_twist(const CartanDatum& cd, const IntMatrix& Y) { return validate_twist(cd, to_rational(Y)); }

InvalidTwist::InvalidTwist(TwistReport report)
    : std::invalid_argument([&] {
          std::string msg = "invalid twisting map:";
          for (const auto& v : report.violations) msg += " [" + to_string(v.kind) + "] " + v.detail + ";";
          return msg;
      }()),
      report_(std::move(report)) {}

TwistMap::TwistMap(const CartanDatum& cd, const IntMatrix& Y) : cd_(cd), Y_(Y) {
    TwistReport rep = validate_twist(cd, Y);
    if (!rep.ok()) throw InvalidTwist(std::move(rep));
    X_ = cd.cartan() * Y;
    det_ = determinant(cd.cartan() + Integer(2) * X_);
}

TwistMap TwistMap::untwisted(const CartanDatum& cd) {
    return TwistMap(cd, IntMatrix(static_cast<std::size_t>(cd.rank()), static_cast<std::size_t>(cd.rank())));
}

bool TwistMap::is_zero() const {
    for (const auto& y : Y_.entries())
        if (y != 0) return false;
    return true;
}

RationalMatrix TwistMap::phi_alpha() const { return Rational(2) * to_rational(Y_); }

std::vector<Integer> TwistMap::tau(int label) const {
    if (label < 1 || label > rank()) throw std::out_of_range("tau: label out of range");
    return Y_.column(static_cast<std::size_t>(label - 1));
}

RationalMatrix c3_family(long long a, long long b, long long c) {
    auto q = [](long long num, long long den) { return make_rational(static_cast<long>(num), static_cast<long>(den)); };
    RationalMatrix Y(3, 3);
    Y(0, 0) = q(2 * a + b, 2);
    Y(0, 1) = q(-2 * a + c, 2);
    Y(0, 2) = q(-b - c, 2);
    Y(1, 0) = q(2 * a + b, 1);
    Y(1, 1) = q(-a + c, 1);
    Y(1, 2) = q(-b - 2 * c, 2);
    Y(2, 0) = q(4 * a + 3 * b, 2);
    Y(2, 1) = q(-2 * a + 3 * c, 2);
    Y(2, 2) = q(-b - 2 * c, 2);
    return Y;
}

LatticeElement apply(const RationalMatrix& op_alpha, const LatticeElement& x, const CartanDatum& cd) {
    const LatticeElement a = omega_to_alpha(x, cd);
    return to_basis(LatticeElement::alpha(op_alpha * a.coords), x.basis, cd);
}

LatticeElement apply_phi(const TwistMap& tw, const LatticeElement& x) { return apply(tw.phi_alpha(), x, tw.cartan()); }

RationalMatrix r_operator(const TwistMap& tw, int sign, bool inverse) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("r_operator: sign must be +1 or -1");
    const std::size_t n = static_cast<std::size_t>(tw.rank());
    RationalMatrix op = RationalMatrix::identity(n) + Rational(sign) * tw.phi_alpha();
    if (!inverse) return op;
    auto inv = qsg::inverse(op);
    if (!inv) throw std::logic_error("1 +/- phi is singular for a validated twisting map");
    return *inv;
}

namespace {

std::vector<Integer> k_exponent(const TwistMap& tw, int label, int sign) {
    if (label < 1 || label > tw.rank()) throw std::out_of_range("simple root label out of range");
    std::vector<Integer> v = tw.tau(label);
    for (auto& x : v) x *= 2 * sign;
    v[static_cast<std::size_t>(label - 1)] += 1;
    return v;
}

}  // namespace

std::vector<Integer> kbar_exponent(const TwistMap& tw, int label) { return k_exponent(tw, label, -1); }

std::vector<Integer> ktilde_exponent(const TwistMap& tw, int label) { return k_exponent(tw, label, 1); }

std::vector<TwistMap> enumerate_twists(const CartanDatum& cd, int bound, std::size_t max_results) {
    const std::size_t n = static_cast<std::size_t>(cd.rank());
    const auto& d = cd.symmetrizers();
    std::vector<std::pair<std::size_t, std::size_t>> slots;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) slots.emplace_back(i, j);

    std::vector<TwistMap> out;
    RationalMatrix X(n, n);
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
        if (out.size() >= max_results) return;
        if (k == slots.size()) {
            const RationalMatrix Y = cd.cartan_inverse() * X;
            if (validate_twist(cd, Y).ok()) out.emplace_back(cd, to_integral(Y));
            return;
        }
        const auto [i, j] = slots[k];
        for (int v = -bound; v <= bound; ++v) {
            X(i, j) = v;
            X(j, i) = -Rational(d[i]) * Rational(v) / Rational(d[j]);  // d_j x_ji = -d_i x_ij
            rec(k + 1);
        }
    };
    rec(0);
    return out;
}

}  // namespace qsg
