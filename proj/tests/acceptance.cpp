// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>

#include "properties.hpp"
#include "qsg/cocycle.hpp"
#include "qsg/datum.hpp"

namespace {

using namespace qsg;

constexpr std::int64_t kEll = 11;

TwistMap c3_datum() {
    return TwistMap(CartanDatum::from_matrix(int_matrix({{2, -1, 0}, {-1, 2, -1}, {0, -2, 2}})),
                    to_integral(c3_family(1, 2, 0)));
}

TorusSubgroup sub(std::vector<ModVector> gens) { return TorusSubgroup::from_generators(gens, kEll, 3); }

struct Check {
    bool ok = true;
    std::string detail;
    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

Check criterion_1() {
    Check c;
    const TwistMap tw = c3_datum();
    const IntMatrix S = s_phi_matrix(tw, kEll, {2}, {1});
    c.require(S == int_matrix({{2, 3, 2}, {5, 8, 10}}), "S rows " + to_string(S));
    std::vector<ModVector> rows{{5, 8, 10}, {2, 3, 2}};
    c.require(hermite_mod(rows, kEll, 3).rows == std::vector<ModVector>{{1, 0, 8}, {0, 1, 10}}, "row form");
    std::vector<ModVector> s_rows;
    for (const auto& r : S.to_rows()) s_rows.push_back({to_int64(r[0]), to_int64(r[1]), to_int64(r[2])});
    c.require(sub(s_rows) == sub(rows), "row space differs from <(5,8,10),(2,3,2)>");
    const TorusSubgroup ker = t_hat_I_complement(tw, kEll, {2}, {1});
    c.require(ker == sub({{3, 1, 1}}) && ker.order() == 11, "kernel is not <(3,1,1)> of order 11");
    const Triple t{{2}, {1}, sub({{2, 3, 2}, {5, 8, 10}, {10, 10, 10}})};
    c.require(validate_triple(tw, kEll, t).ok(), "triple invalid");
    c.require(t.sigma.order() == 1331, "|Sigma| != 11^3");
    c.require(n_phi_from_sigma(tw, kEll, t).is_trivial(), "N not trivial");
    return c;
}

Check criterion_2() {
    Check c;
    const TwistMap tw = c3_datum();
    const TorusSubgroup ker = t_hat_I_complement(tw, kEll, {2}, {});
    c.require(ker.order() == 121, "kernel order");
    c.require(ker.contains(ModVector{1, 0, 10}) && ker.contains(ModVector{0, 1, 4}), "kernel generators");
    c.require(ker == sub({{1, 0, 10}, {0, 1, 4}}), "kernel as subgroup");
    const Triple t{{2}, {}, sub({{5, 8, 10}, {2, 3, 2}})};
    c.require(validate_triple(tw, kEll, t).ok(), "triple invalid");
    const TorusSubgroup N = n_phi_from_sigma(tw, kEll, t);
    c.require(N.order() == 11 && N.contains(ModVector{3, 1, 1}) && N == sub({{3, 1, 1}}), "N != <(3,1,1)>");
    c.require(sigma_order_identity(tw, kEll, t).holds, "|Sigma| |N| != 11^3");
    return c;
}

Check criterion_3() {
    Check c;
    const TwistMap tw = c3_datum();
    std::vector<SigmaGenerator> recipe;
    for (auto s : {"2,3,2", "5,8,10", "10,10,10"}) recipe.push_back(parse_sigma_generator(s));
    // The same Sigma named through phi-dependent elements, so phi = 0 rebuilds it.
    std::vector<SigmaGenerator> named;
    for (auto s : {"kbar:2", "ktilde:1", "tau:3", "tau:2"}) named.push_back(parse_sigma_generator(s));
    c.require(sigma_from_recipe(named, tw, kEll) == sigma_from_recipe(recipe, tw, kEll), "named recipe differs");
    const UntwistedComparison u = compare_with_untwisted(tw, kEll, {2}, {1}, named);
    c.require(u.sigma_phi == 1331 && u.n_phi == 1, "order data at phi");
    c.require(u.sigma_zero == 121 && u.n_zero == 11, "order data at phi = 0");
    c.require(u.ratio == 11, "dim_H ratio " + to_string(u.ratio));
    c.require(u.obstructed, "comparison not obstructed");
    TwistedSubgroupDatum d = TwistedSubgroupDatum::trivial(kEll, 3);
    d.iplus = {2};
    d.iminus = {1};
    d.sigma_recipe = named;
    c.require(validate_datum(tw, kEll, d).ok(), "datum invalid");
    c.require(predicates(tw, kEll, d).cocycle_deformation_obstructed == true, "predicate not true");
    return c;
}

Check criterion_4() {
    Check c;
    const TwistMap tw = c3_datum();
    const std::vector<std::vector<long long>> expected{{4, 8, 10}, {-2, -2, -2}, {-2, -2, -2}};
    for (int i = 1; i <= 3; ++i) {
        const LatticeElement img = apply_phi(tw, LatticeElement::simple_root(3, i));
        c.require(img == from_ints(Basis::Alpha, expected[static_cast<std::size_t>(i - 1)]),
                  "phi(alpha_" + std::to_string(i) + ")");
    }
    return c;
}

Check criterion_5(props::Rng& rng) {
    Check c;
    const auto pool = oracle::twist_pool(4);
    const std::size_t n = 500;
    for (const auto& o : {props::form_symmetry(rng, n), props::phi_antisymmetry(rng, n, pool),
                          props::adjointness(rng, n, pool), props::chi_bicharacter(rng, n, pool),
                          props::chi_cocycle(rng, n, pool), props::twist_j_cocycle(rng, n, pool),
                          props::double_annihilator(rng, n), props::sigma_order_identity(rng, n, pool)})
        c.require(o.ok(n), o.name + " (" + std::to_string(o.cases) + " cases): " + o.first_failure);
    return c;
}

Check criterion_6(props::Rng& rng) {
    Check c;
    for (std::int64_t ell : {3, 5, 9})
        for (const auto& o : {props::kernel_oracle(rng, ell, 100), props::annihilator_oracle(rng, ell, 100)})
            c.require(o.ok(100), o.name + ": " + o.first_failure);
    return c;
}

Check criterion_7() {
    Check c;
    // A2 twists have X in 3Z, so J is trivial at ell = 3; B2 is nontrivial at both levels.
    const std::vector<std::pair<TwistMap, std::int64_t>> cases{
        {TwistMap(CartanDatum::of_type(LieType::B, 2), int_matrix({{2, -4}, {2, -2}})), 3},
        {TwistMap(CartanDatum::of_type(LieType::B, 2), int_matrix({{2, -4}, {2, -2}})), 5},
        {TwistMap(CartanDatum::of_type(LieType::A, 2), int_matrix({{1, -2}, {2, -1}})), 5}};
    for (const auto& [tw, ell] : cases) {
        const TwistElement t = twist_J_group_algebra(tw, ell);
        const auto id = GroupAlgebraElement::identity(ell, 4);
        const std::string at = " for " + tw.cartan().label() + " at ell = " + std::to_string(ell);
        c.require(t.J != id, "J is trivial" + at);
        c.require(convolve(t.J, t.J_inverse) == id, "J * J^-1" + at);
        c.require(convolve(t.J_inverse, t.J) == id, "J^-1 * J" + at);
        c.require(counit_left(t.J) == GroupAlgebraElement::identity(ell, 2), "(counit x id)(J)" + at);
        c.require(counit_right(t.J) == GroupAlgebraElement::identity(ell, 2), "(id x counit)(J)" + at);
    }
    return c;
}

Check criterion_8() {
    Check c;
    const std::vector<std::pair<CartanDatum, long>> cases{
        {CartanDatum::of_type(LieType::A, 2), 8},
        {CartanDatum::of_type(LieType::B, 2), 10},
        {CartanDatum::of_type(LieType::G, 2), 14},
        {CartanDatum::from_matrix(int_matrix({{2, -1, 0}, {-1, 2, -1}, {0, -2, 2}})), 21}};
    for (const auto& [cd, dim] : cases) {
        const long n = cd.rank();
        c.require(n + 2 * static_cast<long>(positive_roots(cd).size()) == dim, cd.label() + " root count");
        IndexSet all;
        for (int i = 1; i <= n; ++i) all.push_back(i);
        for (std::int64_t ell : {5, 7, 11}) {
            const TwistMap tw = TwistMap::untwisted(cd);
            const DimH h = dim_H(tw, ell, all, all, TorusSubgroup::trivial(ell, static_cast<std::size_t>(n)));
            c.require(h.primary == FactoredDimension{1, ell, dim}, cd.label() + " dim_H at ell = " + std::to_string(ell));
        }
    }
    const TwistMap c3 = c3_datum();
    c.require(dim_H(c3, kEll, {1, 2, 3}, {1, 2, 3}, TorusSubgroup::trivial(kEll, 3)).primary ==
                  FactoredDimension{1, kEll, 21},
              "twisted C3 dim_H");
    return c;
}

Check criterion_9(props::Rng& rng) {
    Check c;
    const auto o = props::order_structure(rng, 200);
    c.require(o.ok(200), o.first_failure);
    return c;
}

}  // namespace

int main() {
    props::Rng rng(20261016);
    const std::vector<std::pair<std::string, std::function<Check()>>> criteria{
        {"1 golden (a): S matrix, kernel <(3,1,1)>, |Sigma| = 11^3, N trivial", criterion_1},
        {"2 golden (b): kernel order 121, N = <(3,1,1)>", criterion_2},
        {"3 untwisted comparison: (1331, 1) vs (121, 11), ratio 11, obstructed", criterion_3},
        {"4 phi images of the simple roots", criterion_4},
        {"5 property suite, 500 cases each", [&] { return criterion_5(rng); }},
        {"6 kernel_mod and annihilator vs brute force, ell in {3,5,9}", [&] { return criterion_6(rng); }},
        {"7 group-algebra twist: J * J^-1 = 1 and counits, rank 2, ell in {3,5}", criterion_7},
        {"8 dim_H(Pi, Pi, trivial N) = ell^dim g for A2, B2, G2, C3", criterion_8},
        {"9 datum_leq order structure on 200 random data", [&] { return criterion_9(rng); }},
    };
    int failed = 0;
    const auto start = std::chrono::steady_clock::now();
    for (const auto& [name, run] : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Check c;
        try {
            c = run();
        } catch (const std::exception& e) {
            c.ok = false;
            c.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        char timing[32];
        std::snprintf(timing, sizeof timing, "%.2fs", secs);
        std::cout << (c.ok ? "PASS" : "FAIL") << "  criterion " << name << "  [" << timing << "]";
        if (!c.ok) std::cout << "  -- " << c.detail;
        std::cout << '\n';
        failed += !c.ok;
    }
    const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << (failed ? "FAIL" : "PASS") << "  " << (criteria.size() - failed) << "/" << criteria.size()
              << " criteria in " << total << "s\n";
    return failed ? 1 : 0;
}
