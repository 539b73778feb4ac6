#include <algorithm>
#include <functional>

#include "qsg/cli.hpp"
#include "qsg/cocycle.hpp"
#include "qsg/smith.hpp"

namespace qsg::cli {

namespace {

json int_matrix_json(const IntMatrix& m) {
    json rows = json::array();
    for (const auto& r : m.to_rows()) {
        json row = json::array();
        for (const auto& x : r) row.push_back(to_json(x));
        rows.push_back(std::move(row));
    }
    return rows;
}

json rational_json(const Rational& q) {
    if (is_integer(q)) return to_json(q.get_num());
    return to_string(q);
}

json dim_h_json(const DimH& h) {
    return {{"sigma_order", to_json(h.sigma_order)},
            {"N_order", to_json(h.n_order)},
            {"psi_plus", h.psi_plus},
            {"psi_minus", h.psi_minus},
            {"primary", to_json(h.primary)},
            {"literal", to_json(h.literal)}};
}

json base_report(std::string_view command, const ProblemSpec& s) {
    return {{"command", std::string(command)}, {"inputs", spec_to_json(s)}};
}

std::int64_t require_ell(const ProblemSpec& s) {
    if (!s.ell) throw ParseError("this command needs --ell");
    return *s.ell;
}

json violations_json(const TwistReport& rep) {
    json v = json::array();
    for (const auto& x : rep.violations)
        v.push_back({{"condition", to_string(x.kind)}, {"i", x.i}, {"j", x.j}, {"detail", x.detail}});
    return v;
}

void add_twist_inputs(json& r, const TwistMap& tw) {
    r["inputs"]["cartan"] = int_matrix_json(tw.cartan().cartan());
    r["inputs"]["Y"] = int_matrix_json(tw.Y());
}

}  // namespace

CommandResult cmd_validate_phi(const ProblemSpec& s) {
    const CartanDatum cd = build_cartan(s);
    const RationalMatrix Y = build_Y(s, cd);
    json r = base_report("validate-phi", s);
    r["inputs"]["cartan"] = int_matrix_json(cd.cartan());
    json y = json::array();
    for (std::size_t i = 0; i < Y.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < Y.cols(); ++j) row.push_back(rational_json(Y(i, j)));
        y.push_back(std::move(row));
    }
    r["inputs"]["Y"] = std::move(y);
    r["formulas"] = {"X = A Y", "D X antisymmetric", "(phi w_i, w_j)/2 integral", "det(A + 2X) != 0"};

    const TwistReport rep = validate_twist(cd, Y);
    json res = {{"valid", rep.ok()}, {"violations", violations_json(rep)}};
    int code = rep.ok() ? kOk : kValidationFailure;
    if (rep.ok()) {
        const TwistMap tw(cd, to_integral(Y));
        res["X"] = int_matrix_json(tw.X());
        res["twist_determinant"] = to_json(tw.twist_determinant());
        json images = json::array();
        for (int i = 1; i <= tw.rank(); ++i) {
            const LatticeElement p = apply_phi(tw, LatticeElement::simple_root(tw.rank(), i));
            json v = json::array();
            for (const auto& c : p.coords) v.push_back(rational_json(c));
            images.push_back(std::move(v));
        }
        res["phi_alpha"] = std::move(images);
        if (s.ell) {
            const GroupTwoCocycle J = twist_J(tw, *s.ell);
            json c = json::array();
            for (std::size_t i = 0; i < J.rank(); ++i) {
                json row = json::array();
                for (std::size_t j = 0; j < J.rank(); ++j) row.push_back(J.coefficient(i, j));
                c.push_back(std::move(row));
            }
            res["twist_J_coefficients"] = std::move(c);
        }
    }
    r["results"] = std::move(res);
    return {code, {std::move(r)}, {}};
}

CommandResult cmd_kernel(const ProblemSpec& s) {
    const std::int64_t ell = require_ell(s);
    check_modulus(ell);
    const TwistMap tw = build_twist(s);
    const IndexSet plus = s.iplus.value_or(IndexSet{}), minus = s.iminus.value_or(IndexSet{});
    const IntMatrix S = s_phi_matrix(tw, ell, plus, minus);
    const auto n = static_cast<std::size_t>(tw.rank());
    std::vector<ModVector> rows;
    for (std::size_t i = 0; i < S.rows(); ++i) {
        ModVector v;
        for (std::size_t j = 0; j < n; ++j) v.push_back(to_int64(S(i, j)));
        rows.push_back(std::move(v));
    }
    const TorusSubgroup kernel = t_hat_I_complement(tw, ell, plus, minus);

    json r = base_report("kernel", s);
    add_twist_inputs(r, tw);
    r["formulas"] = {"row i in I+: (delta_ij - 2 y_ji) mod ell", "row j in I-: (delta_jk + 2 y_kj) mod ell",
                     "kernel over Z/ell via Smith normal form"};
    json res = {{"S", rows},
                {"row_form", hermite_mod(rows, ell, n).rows},
                {"kernel", to_json(kernel)}};
    if (is_prime(ell)) {
        const std::size_t rk = S.rows() ? rank_mod_prime(S, ell) : 0;
        res["rank"] = rk;
        res["kernel_exponent"] = n - rk;
    }
    r["results"] = std::move(res);
    return {kOk, {std::move(r)}, {}};
}

CommandResult cmd_datum(const ProblemSpec& s) {
    const std::int64_t ell = require_ell(s);
    const TwistMap tw = build_twist(s);
    const TwistedSubgroupDatum d = build_datum(s, tw, ell);
    json r = base_report("datum", s);
    add_twist_inputs(r, tw);
    r["formulas"] = {"|Sigma| = ell^n / |N|", "dim H = |Sigma| ell^(|Psi+| + |Psi-|)",
                     "dim H (literal) = |Sigma| ell^(|I+| + |I-|)", "dim A = |Gamma| dim H"};

    const DatumReport rep = validate_datum(tw, ell, d);
    json res;
    res["valid"] = rep.ok();
    json v = json::array();
    for (const auto& x : rep.violations) v.push_back({{"condition", x.condition}, {"detail", x.detail}});
    res["violations"] = std::move(v);
    if (!rep.ok()) {
        r["results"] = std::move(res);
        return {kValidationFailure, {std::move(r)}, {}};
    }
    const DimH h = dim_H(tw, ell, d.iplus, d.iminus, d.N);
    res["N"] = to_json(d.N);
    res["dim_H"] = dim_h_json(h);
    const auto order = gamma_order(d.gamma);
    res["gamma_order"] = order ? to_json(*order) : json("INFINITE");
    const auto a = dim_A(tw, ell, d);
    res["dim_A"] = a ? to_json(*a) : json("INFINITE");
    const Predicates p = predicates(tw, ell, d);
    res["predicates"] = {{"pointed_necessary", p.pointed_necessary},
                         {"semisimple", p.semisimple},
                         {"dual_pointed_consistent", p.dual_pointed_consistent},
                         {"cocycle_deformation_obstructed", p.cocycle_deformation_obstructed
                                                                ? json(*p.cocycle_deformation_obstructed)
                                                                : json(nullptr)}};
    if (d.sigma_recipe) {
        const TorusSubgroup sigma = sigma_from_recipe(*d.sigma_recipe, tw, ell);
        res["sigma"] = to_json(sigma);
        res["omega_order"] = to_json(omega_order(tw, ell, Triple{d.iplus, d.iminus, sigma}));
        const UntwistedComparison c = compare_with_untwisted(tw, ell, d.iplus, d.iminus, *d.sigma_recipe);
        res["untwisted_comparison"] = {{"sigma_order_phi", to_json(c.sigma_phi)},
                                       {"N_order_phi", to_json(c.n_phi)},
                                       {"sigma_order_zero", to_json(c.sigma_zero)},
                                       {"N_order_zero", to_json(c.n_zero)},
                                       {"dim_H_phi", to_json(c.dim_phi.primary)},
                                       {"dim_H_zero", to_json(c.dim_zero.primary)},
                                       {"dim_ratio", rational_json(c.ratio)},
                                       {"obstructed", c.obstructed}};
    }
    r["results"] = std::move(res);
    return {kOk, {std::move(r)}, {}};
}

CommandResult cmd_enumerate(const ProblemSpec& s, std::size_t cap) {
    const std::int64_t ell = require_ell(s);
    const TwistMap tw = build_twist(s);
    EnumerationOptions opts;
    opts.cap = cap;
    if (s.max_results) opts.max_results = *s.max_results;
    if (s.iplus || s.iminus) opts.only = std::make_pair(s.iplus.value_or(IndexSet{}), s.iminus.value_or(IndexSet{}));

    const auto triples = enumerate_triples(tw, ell, opts);
    CommandResult out;
    json shapes = json::array();
    for (const auto& t : triples) {
        out.lines.push_back({{"kind", "triple"},
                             {"iplus", t.iplus},
                             {"iminus", t.iminus},
                             {"N", to_json(t.N)},
                             {"sigma_order", to_json(t.dims.sigma_order)},
                             {"dim_H", to_json(t.dims.primary)},
                             {"dim_H_literal", to_json(t.dims.literal)}});
        if (shapes.empty() || shapes.back()["iplus"] != json(t.iplus) || shapes.back()["iminus"] != json(t.iminus))
            shapes.push_back({{"iplus", t.iplus}, {"iminus", t.iminus}, {"count", 0}});
        shapes.back()["count"] = shapes.back()["count"].get<int>() + 1;
    }
    json r = base_report("enumerate", s);
    add_twist_inputs(r, tw);
    r["kind"] = "summary";
    r["formulas"] = {"N ranges over subgroups of ker S mod ell", "|Sigma| = ell^n / |N|"};
    r["results"] = {{"count", triples.size()}, {"shapes", std::move(shapes)}, {"cap", cap}};
    out.lines.push_back(std::move(r));
    return out;
}

namespace {

struct Fixture {
    std::string name;
    json expected;
    std::function<json(const TwistMap&)> compute;
};

std::vector<Fixture> paper_fixtures() {
    constexpr std::int64_t ell = 11;
    const auto sub = [](std::vector<ModVector> g) { return to_json(TorusSubgroup::from_generators(g, ell, 3)); };
    const auto recipe_a = [] {
        std::vector<SigmaGenerator> r;
        for (auto t : {"kbar:2", "ktilde:1", "tau:3", "tau:2"}) r.push_back(parse_sigma_generator(t));
        return r;
    };
    const std::vector<ModVector> sigma_a{{2, 3, 2}, {5, 8, 10}, {10, 10, 10}};
    const std::vector<ModVector> sigma_b{{5, 8, 10}, {2, 3, 2}};

    std::vector<Fixture> f;
    f.push_back({"phi_images", json{{4, 8, 10}, {-2, -2, -2}, {-2, -2, -2}}, [](const TwistMap& tw) {
                     json out = json::array();
                     for (int i = 1; i <= 3; ++i) {
                         json v = json::array();
                         for (const auto& c : apply_phi(tw, LatticeElement::simple_root(3, i)).coords)
                             v.push_back(rational_json(c));
                         out.push_back(std::move(v));
                     }
                     return out;
                 }});
    f.push_back({"ex_a_S_matrix", json{{"rows", {{2, 3, 2}, {5, 8, 10}}}, {"row_form", {{1, 0, 8}, {0, 1, 10}}}},
                 [](const TwistMap& tw) {
                     const IntMatrix S = s_phi_matrix(tw, ell, {2}, {1});
                     std::vector<ModVector> rows;
                     for (const auto& r : S.to_rows()) {
                         ModVector v;
                         for (const auto& x : r) v.push_back(to_int64(x));
                         rows.push_back(v);
                     }
                     return json{{"rows", rows}, {"row_form", hermite_mod(rows, ell, 3).rows}};
                 }});
    f.push_back({"ex_a_kernel", sub({{3, 1, 1}}),
                 [](const TwistMap& tw) { return to_json(t_hat_I_complement(tw, ell, {2}, {1})); }});
    f.push_back({"ex_a_sigma_full", json{{"valid", true}, {"order", 1331}}, [sigma_a](const TwistMap& tw) {
                     const Triple t{{2}, {1}, TorusSubgroup::from_generators(sigma_a, ell, 3)};
                     return json{{"valid", validate_triple(tw, ell, t).ok()}, {"order", to_json(t.sigma.order())}};
                 }});
    f.push_back({"ex_a_N_trivial", sub({}), [sigma_a](const TwistMap& tw) {
                     return to_json(n_phi_from_sigma(tw, ell, {{2}, {1}, TorusSubgroup::from_generators(sigma_a, ell, 3)}));
                 }});
    f.push_back({"ex_b_kernel", sub({{1, 0, 10}, {0, 1, 4}}),
                 [](const TwistMap& tw) { return to_json(t_hat_I_complement(tw, ell, {2}, {})); }});
    f.push_back({"ex_b_N", json{{"N", sub({{3, 1, 1}})}, {"sigma_order", 121}}, [sigma_b](const TwistMap& tw) {
                     const Triple t{{2}, {}, TorusSubgroup::from_generators(sigma_b, ell, 3)};
                     return json{{"N", to_json(n_phi_from_sigma(tw, ell, t))}, {"sigma_order", to_json(t.sigma.order())}};
                 }});
    f.push_back({"ex_b_datum_valid", true, [](const TwistMap& tw) {
                     TwistedSubgroupDatum d = TwistedSubgroupDatum::trivial(ell, 3);
                     d.iplus = {2};
                     const std::vector<ModVector> g{{3, 1, 1}};
                     d.N = TorusSubgroup::from_generators(g, ell, 3);
                     return json(validate_datum(tw, ell, d).ok());
                 }});
    f.push_back({"untwisted_comparison",
                 json{{"phi", {1331, 1}}, {"zero", {121, 11}}, {"dim_ratio", 11}, {"obstructed", true}},
                 [recipe_a](const TwistMap& tw) {
                     const auto c = compare_with_untwisted(tw, ell, {2}, {1}, recipe_a());
                     return json{{"phi", {to_json(c.sigma_phi), to_json(c.n_phi)}},
                                 {"zero", {to_json(c.sigma_zero), to_json(c.n_zero)}},
                                 {"dim_ratio", rational_json(c.ratio)},
                                 {"obstructed", c.obstructed}};
                 }});
    f.push_back({"full_kernel_dimension", to_json(FactoredDimension{1, ell, 21}), [](const TwistMap& tw) {
                     return to_json(dim_H(tw, ell, {1, 2, 3}, {1, 2, 3}, TorusSubgroup::trivial(ell, 3)).primary);
                 }});
    f.push_back({"semisimple_predicate", true, [](const TwistMap& tw) {
                     TwistedSubgroupDatum d = TwistedSubgroupDatum::trivial(ell, 3);
                     IntMatrix E(3, 1);
                     E(0, 0) = 1;
                     d.gamma = EmbeddedGamma{FiniteAbelianGroup{{2}}, E};
                     return json(predicates(tw, ell, d).semisimple);
                 }});
    return f;
}

}  // namespace

CommandResult cmd_paper_examples(const ProblemSpec& s) {
    if (s.ell && *s.ell != 11) throw GuardError("the worked-example fixtures are pinned to ell = 11");
    if ((s.type && (*s.type != LieType::C || s.rank != 3)) ||
        (s.cartan && *s.cartan != cartan_matrix(LieType::C, 3)))
        throw GuardError("the worked-example fixtures are pinned to type C3");

    ProblemSpec effective = s;
    if (!effective.Y && !effective.family_c3) effective.family_c3 = std::array<long long, 3>{1, 2, 0};
    if (!effective.type && !effective.cartan) {
        effective.type = LieType::C;
        effective.rank = 3;
    }
    std::optional<TwistMap> tw;
    std::string twist_error;
    try {
        tw = build_twist(effective);
    } catch (const std::exception& e) {
        twist_error = e.what();
    }

    CommandResult out;
    std::size_t passed = 0;
    const auto fixtures = paper_fixtures();
    for (const auto& f : fixtures) {
        json computed;
        if (tw) {
            try {
                computed = f.compute(*tw);
            } catch (const std::exception& e) {
                computed = {{"error", e.what()}};
            }
        } else {
            computed = {{"error", twist_error}};
        }
        const bool pass = computed == f.expected;
        passed += pass;
        out.lines.push_back(
            {{"kind", "fixture"}, {"name", f.name}, {"expected", f.expected}, {"computed", computed}, {"pass", pass}});
    }
    json r = base_report("paper-examples", effective);
    r["kind"] = "summary";
    r["results"] = {{"passed", passed}, {"failed", fixtures.size() - passed}, {"all_pass", passed == fixtures.size()}};
    out.lines.push_back(std::move(r));
    out.exit_code = passed == fixtures.size() ? kOk : kValidationFailure;
    return out;
}

CommandResult cmd_twist_table(const ProblemSpec& s, std::size_t cap) {
    const std::int64_t ell = require_ell(s);
    const TwistMap tw = build_twist(s);
    const GroupTwoCocycle J = twist_J(tw, ell);
    Integer entries = pow(Integer(static_cast<long>(ell)), 2ul * J.rank());
    if (entries > Integer(static_cast<unsigned long>(cap)))
        throw GuardError("twist table has " + to_string(entries) + " entries, above the cap " + std::to_string(cap));
    return {kOk, {}, J.to_text()};
}

CommandResult run_command(std::string_view command, const ProblemSpec& s, std::size_t cap) {
    // The table guard never exceeds its own default, whatever the enumeration cap is.
    if (command == "twist-table") cap = std::min(cap, kDefaultTableCap);
    auto failure = [&](int code, const std::string& msg, json extra = json::object()) {
        json r = {{"command", std::string(command)}, {"error", msg}, {"exit_code", code}};
        for (auto& [k, v] : extra.items()) r[k] = v;
        return CommandResult{code, {std::move(r)}, {}};
    };
    try {
        if (command == "validate-phi") return cmd_validate_phi(s);
        if (command == "kernel") return cmd_kernel(s);
        if (command == "datum") return cmd_datum(s);
        if (command == "enumerate") return cmd_enumerate(s, cap);
        if (command == "paper-examples") return cmd_paper_examples(s);
        if (command == "twist-table") return cmd_twist_table(s, cap);
        return failure(kParseFailure, "unknown command");
    } catch (const ParseError& e) {
        return failure(kParseFailure, e.what());
    } catch (const GuardError& e) {
        return failure(kGuardFailure, e.what(), {{"bound", cap}});
    } catch (const std::length_error& e) {
        return failure(kGuardFailure, e.what(), {{"bound", cap}});
    } catch (const InvalidTwist& e) {
        return failure(kValidationFailure, e.what(), {{"violations", violations_json(e.report())}});
    } catch (const std::exception& e) {
        return failure(kValidationFailure, e.what());
    }
}

}  // namespace qsg::cli
