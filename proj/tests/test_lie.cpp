#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "qsg/lie.hpp"

using namespace qsg;

namespace {

const IntMatrix kC3 = int_matrix({{2, -1, 0}, {-1, 2, -1}, {0, -2, 2}});

std::vector<Integer> ints(std::initializer_list<long> v) { return {v.begin(), v.end()}; }

}  // namespace

TEST_CASE("cartan matrices and symmetrizers") {
    const auto a2 = CartanDatum::of_type(LieType::A, 2);
    CHECK(a2.cartan() == int_matrix({{2, -1}, {-1, 2}}));
    CHECK(a2.symmetrizers() == ints({1, 1}));

    const auto c3 = CartanDatum::of_type(LieType::C, 3);
    CHECK(c3.cartan() == kC3);
    CHECK(c3.symmetrizers() == ints({2, 2, 1}));

    CHECK(symmetrizers(int_matrix({{2, -2}, {-1, 2}})) == ints({1, 2}));
    CHECK_THROWS_AS(CartanDatum::of_type(LieType::G, 3), std::invalid_argument);
    CHECK_THROWS_AS(CartanDatum::of_type(LieType::D, 3), std::invalid_argument);
    CHECK_THROWS(CartanDatum::from_matrix(int_matrix({{2, -1}, {-4, 2}})));  // affine
    CHECK_THROWS(CartanDatum::from_matrix(int_matrix({{2, 1}, {1, 2}})));
    CHECK_THROWS(CartanDatum::from_matrix(int_matrix({{2, -1}, {0, 2}})));
}

TEST_CASE("cartan invariants for every named type") {
    const std::vector<std::pair<LieType, int>> types{{LieType::A, 4}, {LieType::B, 4}, {LieType::C, 4}, {LieType::D, 5},
                                                     {LieType::E, 6}, {LieType::E, 7}, {LieType::E, 8}, {LieType::F, 4},
                                                     {LieType::G, 2}};
    for (const auto& [t, n] : types) {
        const auto cd = CartanDatum::of_type(t, n);
        const auto& A = cd.cartan();
        const auto& d = cd.symmetrizers();
        Integer g = 0;
        for (int i = 0; i < n; ++i) {
            CHECK(A(i, i) == 2);
            g = gcd(g, d[static_cast<std::size_t>(i)]);
            for (int j = 0; j < n; ++j) {
                if (i != j) CHECK(A(i, j) <= 0);
                CHECK(d[static_cast<std::size_t>(i)] * A(i, j) == d[static_cast<std::size_t>(j)] * A(j, i));
            }
        }
        CHECK(g == 1);
        CHECK(determinant(A) != 0);
    }
}

TEST_CASE("bilinear form conventions") {
    const auto c3 = CartanDatum::from_matrix(kC3);
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j) {
            const auto wi = LatticeElement::fundamental_weight(3, i);
            const auto ai = LatticeElement::simple_root(3, i), aj = LatticeElement::simple_root(3, j);
            CHECK(bilinear_form(wi, aj, c3) == (i == j ? Rational(c3.symmetrizers()[static_cast<std::size_t>(i - 1)]) : 0));
            CHECK(bilinear_form(ai, aj, c3) == Rational(c3.symmetrizers()[static_cast<std::size_t>(i - 1)] * kC3(i - 1, j - 1)));
        }
    CHECK(bilinear_form(LatticeElement::zero(3), LatticeElement::simple_root(3, 2), c3) == 0);
    CHECK_THROWS(bilinear_form(LatticeElement::zero(2), LatticeElement::zero(3), c3));
}

TEST_CASE("basis conversions") {
    const auto a2 = CartanDatum::of_type(LieType::A, 2);
    CHECK(alpha_to_omega(LatticeElement::simple_root(2, 1), a2).coords == std::vector<Rational>{2, -1});
    CHECK(omega_to_alpha(LatticeElement::fundamental_weight(2, 1), a2).coords ==
          std::vector<Rational>{make_rational(2, 3), make_rational(1, 3)});
    oracle::Rng rng(3);
    for (const auto& cd : oracle::small_types(4))
        for (int k = 0; k < 25; ++k) {
            std::vector<Rational> c(static_cast<std::size_t>(cd.rank()));
            for (auto& x : c) x = make_rational(oracle::uniform(rng, -20, 20), oracle::uniform(rng, 1, 6));
            const auto x = LatticeElement::alpha(c);
            CHECK(omega_to_alpha(alpha_to_omega(x, cd), cd) == x);
            CHECK(alpha_to_omega(omega_to_alpha(LatticeElement::omega(c), cd), cd) == LatticeElement::omega(c));
        }
    CHECK(in_root_lattice(LatticeElement::simple_root(2, 1), a2));
    CHECK_FALSE(in_root_lattice(LatticeElement::fundamental_weight(2, 1), a2));
    CHECK(in_weight_lattice(LatticeElement::simple_root(2, 1), a2));
    CHECK_FALSE(in_weight_lattice(LatticeElement::alpha({make_rational(1, 2), 0}), a2));
}

TEST_CASE("positive roots") {
    const auto a2 = CartanDatum::of_type(LieType::A, 2);
    const auto roots = positive_roots(a2);
    REQUIRE(roots.size() == 3);
    CHECK(roots[0].coords == std::vector<long long>{0, 1});
    CHECK(roots[1].coords == std::vector<long long>{1, 0});
    CHECK(roots[2].coords == std::vector<long long>{1, 1});

    for (int n = 1; n <= 4; ++n)
        CHECK(positive_roots(CartanDatum::of_type(LieType::A, n)).size() == static_cast<std::size_t>(n * (n + 1) / 2));
    CHECK(positive_roots(CartanDatum::from_matrix(kC3)).size() == 9);
    CHECK(positive_roots(CartanDatum::of_type(LieType::G, 2)).size() == 6);
    CHECK(positive_roots(CartanDatum::of_type(LieType::E, 8)).size() == 120);
    CHECK(lie_algebra_dimension(CartanDatum::of_type(LieType::F, 4)) == 52);
    CHECK(lie_algebra_dimension(CartanDatum::from_matrix(kC3)) == 21);
}

TEST_CASE("root system closed under simple reflections") {
    for (const auto& cd : oracle::small_types(4)) {
        const auto roots = positive_roots(cd);
        std::set<std::vector<Rational>> all;
        for (const auto& r : roots) {
            all.insert(r.element().coords);
            all.insert((-r.element()).coords);
        }
        const auto& A = cd.cartan();
        for (const auto& r : roots)
            for (int i = 0; i < cd.rank(); ++i) {
                // s_i(beta) = beta - <beta, alpha_i^vee> alpha_i, with <beta, alpha_i^vee> = sum_j a_ij c_j.
                auto c = r.element().coords;
                Rational pairing = 0;
                for (int j = 0; j < cd.rank(); ++j) pairing += Rational(A(i, j)) * c[static_cast<std::size_t>(j)];
                c[static_cast<std::size_t>(i)] -= pairing;
                CHECK(all.count(c) == 1);
            }
    }
}

TEST_CASE("roots supported in a label set") {
    const auto c3 = CartanDatum::from_matrix(kC3);
    CHECK(roots_supported(c3, {}).empty());
    CHECK(roots_supported(c3, {2, 3}).size() == 4);
    const auto a2 = CartanDatum::of_type(LieType::A, 2);
    const auto one = roots_supported(a2, {1});
    REQUIRE(one.size() == 1);
    CHECK(one[0].support == IndexSet{1});
    CHECK_THROWS(check_index_set({0}, 3));
    CHECK_THROWS(check_index_set({2, 2}, 3));
    CHECK_THROWS(check_index_set({4}, 3));
}
