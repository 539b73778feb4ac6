#include <doctest.h>

#include <sstream>

#include "oracles.hpp"
#include "qsg/cocycle.hpp"

using namespace qsg;

namespace {

TwistMap c3_twist() {
    return TwistMap(CartanDatum::from_matrix(int_matrix({{2, -1, 0}, {-1, 2, -1}, {0, -2, 2}})),
                    to_integral(c3_family(1, 2, 0)));
}

LatticeElement w(std::vector<long long> c) { return from_ints(Basis::Omega, c); }

}  // namespace

TEST_CASE("chi exponent") {
    const TwistMap tw = c3_twist();
    const auto a1 = LatticeElement::simple_root(3, 1), a2 = LatticeElement::simple_root(3, 2);
    // phi(alpha_1) = 4a1 + 8a2 + 10a3; (a_i, a_2) = d_i a_i2 with d = (2,2,1): (-2, 4, -2).
    CHECK(chi_exponent(tw, a1, a2) == make_rational(-(4 * -2 + 8 * 4 + 10 * -2), 2));
    CHECK(chi_exponent(tw, a1, a1) == 0);
    const TwistMap zero = TwistMap::untwisted(tw.cartan());
    CHECK(chi_exponent(zero, a1, a2) == 0);
}

TEST_CASE("sigma and deformation exponents") {
    const TwistMap tw = c3_twist();
    oracle::Rng rng(5);
    for (int k = 0; k < 50; ++k) {
        auto rnd = [&] { return w({oracle::uniform(rng, -4, 4), oracle::uniform(rng, -4, 4), oracle::uniform(rng, -4, 4)}); };
        const Bidegree b1{rnd(), rnd()}, b2{rnd(), rnd()};
        const auto& cd = tw.cartan();
        const Rational direct = -bilinear_form(apply_phi(tw, b1.mu), b2.lambda, cd) / 2;
        CHECK(sigma_inverse_exponent(tw, b1, b2) == direct);
        CHECK(sigma_exponent(tw, b1, b2) == chi_exponent(tw, b1.lambda, b2.lambda));
        const Rational expansion =
            (bilinear_form(apply_phi(tw, b1.mu), b2.mu, cd) - bilinear_form(apply_phi(tw, b1.lambda), b2.lambda, cd)) / 2;
        CHECK(deformation_exponent(tw, b1, b2) == expansion);
        CHECK(deformation_exponent(tw, b1, b2) ==
              chi_exponent(tw, b1.lambda, b2.lambda) - chi_exponent(tw, b1.mu, b2.mu));
        CHECK(deformation_exponent(tw, {b1.lambda, b1.lambda}, {b2.lambda, b2.lambda}) == 0);
    }
    const Bidegree diag{w({1, 0, 2}), w({1, 0, 2})}, other{w({0, 3, -1}), w({2, 2, 2})};
    CHECK(sigma_inverse_exponent(tw, diag, other) == chi_exponent(tw, diag.lambda, other.lambda));
    CHECK_THROWS(check_bidegree({LatticeElement::omega({make_rational(1, 2), 0, 0}), w({0, 0, 0})}, tw.cartan()));
}

TEST_CASE("twist_J coefficients") {
    const TwistMap tw = c3_twist();
    const GroupTwoCocycle J = twist_J(tw, 11);
    // (phi a1, a2)/2 = 2, reduced mod 11.
    CHECK(J.coefficient(0, 1) == 2);
    for (std::size_t i = 0; i < 3; ++i) CHECK(J.coefficient(i, i) == 0);
    CHECK(J.value({0, 0, 0}, {3, 4, 5}) == 0);
    CHECK(J.value({3, 4, 5}, {0, 0, 0}) == 0);
    const GroupTwoCocycle Z = twist_J(TwistMap::untwisted(tw.cartan()), 5);
    for (const auto& row : Z.table())
        for (auto x : row) CHECK(x == 0);
}

TEST_CASE("check_level") {
    const auto g2 = CartanDatum::of_type(LieType::G, 2);
    CHECK_THROWS(check_level(g2, 9));
    CHECK_NOTHROW(check_level(g2, 7));
    CHECK_THROWS(check_level(CartanDatum::of_type(LieType::A, 2), 4));
    CHECK_THROWS(check_level(CartanDatum::of_type(LieType::A, 2), 1));
    CHECK_NOTHROW(check_level(CartanDatum::of_type(LieType::A, 2), 9));
}

TEST_CASE("twist table text") {
    const TwistMap tw(CartanDatum::of_type(LieType::B, 2), int_matrix({{2, -4}, {2, -2}}));
    const GroupTwoCocycle J = twist_J(tw, 3);
    const auto table = J.table();
    REQUIRE(table.size() == 9);
    std::istringstream in(J.to_text());
    std::string line;
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        std::istringstream row(line);
        std::int64_t x;
        std::size_t col = 0;
        while (row >> x) {
            CHECK(x == table[rows][col]);
            CHECK(x >= 0);
            CHECK(x < 3);
            ++col;
        }
        CHECK(col == 9);
        ++rows;
    }
    CHECK(rows == 9);
    // Row index 1 is z1 = (0, 1), column 3 is z2 = (1, 0).
    CHECK(table[1][3] == J.value({0, 1}, {1, 0}));
}

TEST_CASE("fourier round trip") {
    oracle::Rng rng(9);
    for (std::int64_t ell : {3, 5}) {
        auto x = GroupAlgebraElement::zero(ell, 2);
        for (auto& c : x.coeffs) c = root_of_unity_power(ell, oracle::uniform(rng, 0, ell - 1)) * Rational(oracle::uniform(rng, -3, 3));
        CHECK(inverse_fourier(fourier(x), ell, 2) == x);
        CHECK(convolve(x, GroupAlgebraElement::identity(ell, 2)) == x);
        CHECK(group_index(group_element(7, ell, 2), ell) == 7);
    }
}

TEST_CASE("group algebra twist") {
    const TwistMap tw(CartanDatum::of_type(LieType::B, 2), int_matrix({{2, -4}, {2, -2}}));
    for (std::int64_t ell : {3}) {
        const TwistElement t = twist_J_group_algebra(tw, ell);
        const auto id = GroupAlgebraElement::identity(ell, 4);
        CHECK(t.J != id);
        CHECK(convolve(t.J, t.J_inverse) == id);
        CHECK(counit_left(t.J) == GroupAlgebraElement::identity(ell, 2));
        CHECK(counit_right(t.J) == GroupAlgebraElement::identity(ell, 2));
    }
    const TwistElement z = twist_J_group_algebra(TwistMap::untwisted(tw.cartan()), 3);
    CHECK(z.J == GroupAlgebraElement::identity(3, 4));
    CHECK_THROWS_AS(twist_J_group_algebra(tw, 5, 100), std::length_error);
}
