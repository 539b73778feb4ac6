#include "qsg/datum.hpp"

#include <algorithm>
#include <future>
#include <numeric>
#include <stdexcept>

#include "qsg/cocycle.hpp"
#include "qsg/smith.hpp"

namespace qsg {

Integer FiniteAbelianGroup::order() const {
    Integer o = 1;
    for (auto m : invariant_factors) o *= static_cast<long>(m);
    return o;
}

std::optional<std::string> FiniteAbelianGroup::defect() const {
    for (std::size_t i = 0; i < invariant_factors.size(); ++i) {
        if (invariant_factors[i] < 2) return "invariant factor " + std::to_string(invariant_factors[i]) + " < 2";
        if (i > 0 && invariant_factors[i] % invariant_factors[i - 1] != 0)
            return std::to_string(invariant_factors[i - 1]) + " does not divide " + std::to_string(invariant_factors[i]);
    }
    return std::nullopt;
}

std::optional<Integer> gamma_order(const GammaData& g) {
    if (const auto* e = std::get_if<EmbeddedGamma>(&g)) return e->group.order();
    return std::get<OpaqueGamma>(g).order;
}

TwistedSubgroupDatum TwistedSubgroupDatum::trivial(std::int64_t ell, std::size_t n) {
    return {{}, {}, TorusSubgroup::trivial(ell, n), EmbeddedGamma{FiniteAbelianGroup::trivial(), IntMatrix(n, 0)}, {},
            std::nullopt};
}

namespace {

std::int64_t lcm_of(const std::vector<std::int64_t>& ms, std::int64_t start = 1) {
    std::int64_t l = start;
    for (auto m : ms) l = std::lcm(l, m);
    return l;
}

std::string vec_text(const std::vector<std::int64_t>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

// E * diag(M / m_i).
IntMatrix scaled_embedding(const EmbeddedGamma& g, std::int64_t M) {
    IntMatrix A = g.embedding;
    for (std::size_t i = 0; i < A.cols(); ++i)
        for (std::size_t r = 0; r < A.rows(); ++r) A(r, i) *= static_cast<long>(M / g.group.invariant_factors[i]);
    return A;
}

// A nonzero element of ker(gamma), as residues mod m_i, if any.
std::optional<std::vector<std::int64_t>> embedding_kernel_witness(const EmbeddedGamma& g) {
    const auto& m = g.group.invariant_factors;
    if (m.empty()) return std::nullopt;
    const std::int64_t M = lcm_of(m);
    const ModKernel k = kernel_mod(scaled_embedding(g, M), M);
    for (const auto& c : k.generators) {
        std::vector<std::int64_t> r(m.size());
        bool nonzero = false;
        for (std::size_t i = 0; i < m.size(); ++i) {
            r[i] = mod_floor(c[i], m[i]);
            nonzero = nonzero || r[i] != 0;
        }
        if (nonzero) return r;
    }
    return std::nullopt;
}

const std::vector<std::int64_t>& factors_of(const GammaData& g) {
    static const std::vector<std::int64_t> none;
    if (const auto* e = std::get_if<EmbeddedGamma>(&g)) return e->group.invariant_factors;
    return none;
}

IntMatrix source_matrix(const CharacterHom& h, std::size_t n) {
    IntMatrix S(n, h.sources.size());
    for (std::size_t k = 0; k < h.sources.size(); ++k)
        for (std::size_t r = 0; r < n; ++r) S(r, k) = static_cast<long>(h.sources[k][r]);
    return S;
}

void check_delta(const TwistedSubgroupDatum& d, std::int64_t ell, std::size_t n, DatumReport& rep) {
    auto fail = [&](std::string msg) { rep.violations.push_back({"delta", std::move(msg)}); };
    const CharacterHom& h = d.delta;
    if (h.sources.empty()) {
        if (!h.images.empty()) fail("images given without source generators");
        return;
    }
    if (std::holds_alternative<OpaqueGamma>(d.gamma)) {
        fail("a nontrivial delta needs a torus-embedded Gamma");
        return;
    }
    const auto& m = factors_of(d.gamma);
    if (h.images.size() != h.sources.size()) {
        fail("expected one image per source generator");
        return;
    }
    for (std::size_t k = 0; k < h.sources.size(); ++k) {
        if (h.sources[k].size() != n) return fail("source generator " + std::to_string(k + 1) + " has the wrong length");
        if (h.images[k].size() != m.size())
            return fail("image " + std::to_string(k + 1) + " must have " + std::to_string(m.size()) + " components");
        if (!d.N.contains(reduce_mod(h.sources[k], ell)))
            return fail("source " + vec_text(reduce_mod(h.sources[k], ell)) + " is not in N");
    }
    if (TorusSubgroup::from_generators(h.sources, ell, n) != d.N) return fail("source generators do not generate N");

    // Relations among the sources: ker of S over Z/ell, plus ell * e_k.
    const ModKernel rel = kernel_mod(source_matrix(h, n), ell);
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t k = 0; k < h.sources.size(); ++k)
            if (mod_floor(mul_mod(ell % m[i], mod_floor(h.images[k][i], m[i]), m[i]), m[i]) != 0)
                return fail("ell * image of source " + std::to_string(k + 1) + " is nonzero mod " + std::to_string(m[i]));
        for (const auto& c : rel.generators) {
            std::int64_t s = 0;
            for (std::size_t k = 0; k < c.size(); ++k)
                s = mod_floor(s + mul_mod(mod_floor(c[k], m[i]), mod_floor(h.images[k][i], m[i]), m[i]), m[i]);
            if (s != 0) return fail("relation " + vec_text(c) + " among sources maps to a nontrivial character");
        }
    }
}

}  // namespace

DatumReport validate_datum(const TwistMap& tw, std::int64_t ell, const TwistedSubgroupDatum& d) {
    DatumReport rep;
    const auto n = static_cast<std::size_t>(tw.rank());
    if (ell < 3 || ell % 2 == 0) {
        rep.violations.push_back({"level", "ell must be odd and >= 3"});
        return rep;
    }
    try {
        check_index_set(d.iplus, tw.rank());
        check_index_set(d.iminus, tw.rank());
    } catch (const std::exception& e) {
        rep.violations.push_back({"index_sets", e.what()});
        return rep;
    }
    if (d.N.ell() != ell || d.N.rank() != n) {
        rep.violations.push_back({"N_subgroup", "N must be a subgroup of (Z/" + std::to_string(ell) + ")^" + std::to_string(n)});
        return rep;
    }
    const TorusSubgroup kernel = t_hat_I_complement(tw, ell, d.iplus, d.iminus);
    for (const auto& g : d.N.generators())
        if (!kernel.contains(g)) {
            rep.violations.push_back({"N_subgroup", vec_text(g) + " is not a character of T/T_I"});
            break;
        }

    bool gamma_ok = true;
    if (const auto* e = std::get_if<EmbeddedGamma>(&d.gamma)) {
        if (auto defect = e->group.defect()) {
            rep.violations.push_back({"gamma", *defect});
            gamma_ok = false;
        } else if (e->embedding.rows() != n || e->embedding.cols() != e->group.generator_count()) {
            rep.violations.push_back({"gamma", "embedding must be " + std::to_string(n) + "x" +
                                                   std::to_string(e->group.generator_count())});
            gamma_ok = false;
        } else if (auto w = embedding_kernel_witness(*e)) {
            rep.violations.push_back({"gamma_injective", "nonzero element " + vec_text(*w) + " maps to the identity"});
        }
    } else if (const auto& o = std::get<OpaqueGamma>(d.gamma).order; o && *o < 1) {
        rep.violations.push_back({"gamma", "order must be positive"});
        gamma_ok = false;
    }
    if (gamma_ok) check_delta(d, ell, n, rep);

    if (d.sigma_recipe) {
        try {
            const Triple t{d.iplus, d.iminus, sigma_from_recipe(*d.sigma_recipe, tw, ell)};
            const TripleReport tr = validate_triple(tw, ell, t);
            if (!tr.ok())
                rep.violations.push_back({"sigma_recipe", tr.violations.front().what});
            else if (annihilator(t.sigma) != d.N)
                rep.violations.push_back({"sigma_recipe", "annihilator of Sigma differs from N"});
        } catch (const std::exception& e) {
            rep.violations.push_back({"sigma_recipe", e.what()});
        }
    }
    return rep;
}

FactoredDimension FactoredDimension::make(const Integer& value, std::int64_t base) {
    if (value < 1 || base < 2) throw std::invalid_argument("FactoredDimension: need value >= 1 and base >= 2");
    FactoredDimension f{value, base, 0};
    const Integer b = static_cast<long>(base);
    while (f.cofactor % b == 0) {
        f.cofactor /= b;
        ++f.exponent;
    }
    return f;
}

Integer FactoredDimension::value() const {
    return cofactor * pow(Integer(static_cast<long>(base)), static_cast<unsigned long>(exponent));
}

std::string to_string(const FactoredDimension& f) {
    std::string s = f.cofactor == 1 ? "" : to_string(f.cofactor) + "*";
    return s + std::to_string(f.base) + "^" + std::to_string(f.exponent);
}

DimH dim_H(const TwistMap& tw, std::int64_t ell, const IndexSet& iplus, const IndexSet& iminus,
           const TorusSubgroup& N) {
    const auto n = static_cast<std::size_t>(tw.rank());
    if (N.ell() != ell || N.rank() != n) throw std::invalid_argument("dim_H: N has the wrong level or rank");
    if (!t_hat_I_complement(tw, ell, iplus, iminus).contains(N))
        throw std::invalid_argument("dim_H: N is not a subgroup of the characters of T/T_I");
    const Integer L = static_cast<long>(ell);
    DimH out;
    out.n_order = N.order();
    out.sigma_order = pow(L, static_cast<unsigned long>(n)) / out.n_order;
    out.psi_plus = roots_supported(tw.cartan(), iplus).size();
    out.psi_minus = roots_supported(tw.cartan(), iminus).size();
    out.primary = FactoredDimension::make(out.sigma_order * pow(L, static_cast<unsigned long>(out.psi_plus + out.psi_minus)), ell);
    out.literal = FactoredDimension::make(out.sigma_order * pow(L, static_cast<unsigned long>(iplus.size() + iminus.size())), ell);
    return out;
}

std::optional<FactoredDimension> dim_A(const TwistMap& tw, std::int64_t ell, const TwistedSubgroupDatum& d) {
    const DatumReport rep = validate_datum(tw, ell, d);
    if (!rep.ok()) throw std::invalid_argument("invalid datum: " + rep.violations.front().detail);
    const auto order = gamma_order(d.gamma);
    if (!order) return std::nullopt;
    const DimH h = dim_H(tw, ell, d.iplus, d.iminus, d.N);
    return FactoredDimension::make(*order * h.primary.value(), ell);
}

std::vector<std::int64_t> evaluate_delta(const TwistedSubgroupDatum& d, const ModVector& x, std::int64_t ell) {
    const auto& m = factors_of(d.gamma);
    std::vector<std::int64_t> out(m.size(), 0);
    if (!d.N.contains(reduce_mod(x, ell))) throw std::invalid_argument("evaluate_delta: element not in N");
    if (d.delta.sources.empty()) return out;
    std::vector<Integer> b;
    for (auto v : x) b.emplace_back(static_cast<long>(v));
    const auto c = solve_congruence(source_matrix(d.delta, x.size()), b, Integer(static_cast<long>(ell)));
    if (!c) throw std::logic_error("evaluate_delta: element of N not generated by the sources");
    for (std::size_t i = 0; i < m.size(); ++i) {
        std::int64_t s = 0;
        for (std::size_t k = 0; k < c->size(); ++k)
            s = mod_floor(s + mul_mod(to_int64(mod_floor((*c)[k], Integer(static_cast<long>(m[i])))),
                                      mod_floor(d.delta.images[k][i], m[i]), m[i]),
                          m[i]);
        out[i] = s;
    }
    return out;
}

std::vector<std::int64_t> pull_back_character(const IntMatrix& tau, const FiniteAbelianGroup& target,
                                              const FiniteAbelianGroup& source, const std::vector<std::int64_t>& c) {
    const auto& m = target.invariant_factors;
    const auto& mp = source.invariant_factors;
    std::vector<std::int64_t> out(mp.size());
    for (std::size_t j = 0; j < mp.size(); ++j) {
        Rational s = 0;
        for (std::size_t i = 0; i < m.size(); ++i)
            s += make_rational(Integer(static_cast<long>(c[i])) * tau(i, j), Integer(static_cast<long>(m[i])));
        s *= static_cast<long>(mp[j]);
        out[j] = to_int64(mod_floor(to_integer(s), Integer(static_cast<long>(mp[j]))));
    }
    return out;
}

namespace {

bool subset(IndexSet a, IndexSet b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// tau: Gamma' -> Gamma with gamma tau = gamma', unique when gamma is injective.
std::optional<IntMatrix> solve_tau(const EmbeddedGamma& g, const EmbeddedGamma& gp) {
    const auto& m = g.group.invariant_factors;
    const auto& mp = gp.group.invariant_factors;
    const std::size_t n = g.embedding.rows();
    const std::int64_t M = lcm_of(mp, lcm_of(m));
    const IntMatrix A = scaled_embedding(g, M);
    IntMatrix tau(m.size(), mp.size());
    for (std::size_t j = 0; j < mp.size(); ++j) {
        std::vector<Integer> b(n);
        for (std::size_t r = 0; r < n; ++r) b[r] = gp.embedding(r, j) * static_cast<long>(M / mp[j]);
        if (m.empty()) {
            for (const auto& x : b)
                if (mod_floor(x, Integer(static_cast<long>(M))) != 0) return std::nullopt;
            continue;
        }
        const auto t = solve_congruence(A, b, Integer(static_cast<long>(M)));
        if (!t) return std::nullopt;
        for (std::size_t i = 0; i < m.size(); ++i) tau(i, j) = mod_floor((*t)[i], Integer(static_cast<long>(m[i])));
    }
    return tau;
}

}  // namespace

LeqResult datum_leq(const TwistMap& tw, std::int64_t ell, const TwistedSubgroupDatum& d,
                    const TwistedSubgroupDatum& dp) {
    if (d.N.ell() != ell || dp.N.ell() != ell || d.N.rank() != dp.N.rank() ||
        d.N.rank() != static_cast<std::size_t>(tw.rank()))
        throw std::invalid_argument("datum_leq: data over different levels or ranks");
    LeqResult out;
    if (!subset(dp.iplus, d.iplus) || !subset(dp.iminus, d.iminus)) out.failed.push_back("index_sets");
    if (!dp.N.contains(d.N)) out.failed.push_back("N_inclusion");

    const auto* g = std::get_if<EmbeddedGamma>(&d.gamma);
    const auto* gp = std::get_if<EmbeddedGamma>(&dp.gamma);
    if (!g || !gp) {
        out.holds = out.failed.empty() ? std::nullopt : std::optional<bool>(false);
        return out;
    }
    out.tau = solve_tau(*g, *gp);
    if (!out.tau) {
        out.failed.push_back("tau_exists");
    } else if (dp.N.contains(d.N)) {
        for (const auto& x : d.N.generators()) {
            const auto lhs = evaluate_delta(dp, x, ell);
            const auto rhs = pull_back_character(*out.tau, g->group, gp->group, evaluate_delta(d, x, ell));
            if (lhs != rhs) {
                out.failed.push_back("delta_compatible");
                break;
            }
        }
    }
    out.holds = out.failed.empty();
    return out;
}

std::optional<bool> datum_equiv(const TwistMap& tw, std::int64_t ell, const TwistedSubgroupDatum& d,
                                const TwistedSubgroupDatum& dp) {
    const LeqResult a = datum_leq(tw, ell, d, dp);
    const LeqResult b = datum_leq(tw, ell, dp, d);
    if (a.holds == false || b.holds == false) return false;
    if (!a.holds || !b.holds) return std::nullopt;
    auto sorted = [](IndexSet s) {
        std::sort(s.begin(), s.end());
        return s;
    };
    if (sorted(d.iplus) != sorted(dp.iplus) || sorted(d.iminus) != sorted(dp.iminus) || d.N != dp.N ||
        gamma_order(d.gamma) != gamma_order(dp.gamma))
        throw std::logic_error("datum_equiv: mutual <= without equal (I+, I-, N, |Gamma|)");
    return true;
}

namespace {

IndexSet labels_of_mask(unsigned mask, int n) {
    IndexSet s;
    for (int i = 0; i < n; ++i)
        if (mask & (1u << i)) s.push_back(i + 1);
    return s;
}

unsigned mask_of(const IndexSet& s) {
    unsigned m = 0;
    for (int i : s) m |= 1u << (i - 1);
    return m;
}

std::vector<TripleRecord> triples_for_shape(const TwistMap& tw, std::int64_t ell, const IndexSet& plus,
                                            const IndexSet& minus, std::size_t limit, std::size_t cap) {
    std::vector<TripleRecord> out;
    const TorusSubgroup kernel = t_hat_I_complement(tw, ell, plus, minus);
    for (auto& N : enumerate_subgroups(kernel, cap)) {
        if (out.size() >= limit) break;
        TorusSubgroup sigma = annihilator(N);
        DimH dims = dim_H(tw, ell, plus, minus, N);
        out.push_back({plus, minus, std::move(N), std::move(sigma), std::move(dims)});
    }
    return out;
}

}  // namespace

std::vector<TripleRecord> enumerate_triples(const TwistMap& tw, std::int64_t ell, const EnumerationOptions& opts) {
    check_level(tw.cartan(), ell);
    if (opts.max_results == 0) return {};
    const int n = tw.rank();
    if (n > 16) throw std::length_error("enumerate_triples: rank too large");
    std::vector<std::pair<IndexSet, IndexSet>> shapes;
    if (opts.only) {
        check_index_set(opts.only->first, n);
        check_index_set(opts.only->second, n);
        shapes.emplace_back(labels_of_mask(mask_of(opts.only->first), n), labels_of_mask(mask_of(opts.only->second), n));
    } else {
        for (unsigned p = 0; p < (1u << n); ++p)
            for (unsigned q = 0; q < (1u << n); ++q) shapes.emplace_back(labels_of_mask(p, n), labels_of_mask(q, n));
    }

    std::vector<std::future<std::vector<TripleRecord>>> jobs;
    jobs.reserve(shapes.size());
    for (const auto& [plus, minus] : shapes)
        jobs.push_back(std::async(std::launch::async, triples_for_shape, std::cref(tw), ell, plus, minus,
                                  opts.max_results, opts.cap));

    std::vector<TripleRecord> out;
    std::exception_ptr error;
    for (auto& j : jobs) {
        try {
            auto part = j.get();
            for (auto& r : part)
                if (out.size() < opts.max_results) out.push_back(std::move(r));
        } catch (...) {
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
    return out;
}

Predicates predicates(const TwistMap& tw, std::int64_t ell, const TwistedSubgroupDatum& d) {
    const DatumReport rep = validate_datum(tw, ell, d);
    if (!rep.ok()) throw std::invalid_argument("invalid datum: " + rep.violations.front().detail);
    Predicates p;
    IndexSet plus = d.iplus, minus = d.iminus;
    std::sort(plus.begin(), plus.end());
    std::sort(minus.begin(), minus.end());
    IndexSet common;
    std::set_intersection(plus.begin(), plus.end(), minus.begin(), minus.end(), std::back_inserter(common));
    p.pointed_necessary = common.empty();
    p.semisimple = plus.empty() && minus.empty() && gamma_order(d.gamma).has_value();
    p.dual_pointed_consistent = std::holds_alternative<EmbeddedGamma>(d.gamma);
    if (d.sigma_recipe)
        p.cocycle_deformation_obstructed =
            compare_with_untwisted(tw, ell, d.iplus, d.iminus, *d.sigma_recipe).obstructed;
    return p;
}

UntwistedComparison compare_with_untwisted(const TwistMap& tw, std::int64_t ell, const IndexSet& iplus,
                                           const IndexSet& iminus, const std::vector<SigmaGenerator>& recipe) {
    const TwistMap zero = TwistMap::untwisted(tw.cartan());
    const Triple at_phi{iplus, iminus, sigma_from_recipe(recipe, tw, ell)};
    const Triple at_zero{iplus, iminus, sigma_from_recipe(recipe, zero, ell)};
    const TorusSubgroup n_phi = n_phi_from_sigma(tw, ell, at_phi);
    const TorusSubgroup n_zero = n_phi_from_sigma(zero, ell, at_zero);

    UntwistedComparison c;
    c.sigma_phi = at_phi.sigma.order();
    c.n_phi = n_phi.order();
    c.sigma_zero = at_zero.sigma.order();
    c.n_zero = n_zero.order();
    c.dim_phi = dim_H(tw, ell, iplus, iminus, n_phi);
    c.dim_zero = dim_H(zero, ell, iplus, iminus, n_zero);
    c.ratio = make_rational(c.dim_phi.primary.value(), c.dim_zero.primary.value());
    const auto n = static_cast<std::size_t>(tw.rank());
    c.obstructed = at_phi.sigma == TorusSubgroup::full(ell, n) && at_zero.sigma != TorusSubgroup::full(ell, n);
    return c;
}

}  // namespace qsg
