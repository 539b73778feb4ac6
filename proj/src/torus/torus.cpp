#include "qsg/torus.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <stdexcept>

#include "qsg/smith.hpp"

namespace qsg {

void check_modulus(std::int64_t ell) {
    if (ell < 2) throw std::invalid_argument("level must be >= 2");
}

TorusSubgroup TorusSubgroup::from_generators(std::span<const ModVector> gens, std::int64_t ell, std::size_t n) {
    check_modulus(ell);
    for (const auto& g : gens)
        if (g.size() != n) throw std::invalid_argument("generator length does not match the torus rank");
    return TorusSubgroup(hermite_mod(gens, ell, n));
}

TorusSubgroup TorusSubgroup::trivial(std::int64_t ell, std::size_t n) { return from_generators({}, ell, n); }

TorusSubgroup TorusSubgroup::full(std::int64_t ell, std::size_t n) {
    std::vector<ModVector> e(n, ModVector(n, 0));
    for (std::size_t i = 0; i < n; ++i) e[i][i] = 1;
    return from_generators(e, ell, n);
}

bool TorusSubgroup::contains(const ModVector& v) const {
    if (v.size() != rank()) throw std::invalid_argument("element length does not match the torus rank");
    return form_.contains(v);
}

bool TorusSubgroup::contains(const TorusSubgroup& other) const {
    if (other.ell() != ell() || other.rank() != rank()) return false;
    return std::all_of(other.generators().begin(), other.generators().end(),
                       [&](const ModVector& g) { return form_.contains(g); });
}

std::vector<ModVector> TorusSubgroup::elements(std::size_t cap) const {
    if (order() > Integer(static_cast<unsigned long>(cap)))
        throw std::length_error("subgroup of order " + to_string(order()) + " exceeds the enumeration cap");
    std::vector<ModVector> out{ModVector(rank(), 0)};
    for (std::size_t k = 0; k < form_.rows.size(); ++k) {
        const std::int64_t period = form_.row_period(k);
        const std::size_t base = out.size();
        for (std::int64_t c = 1; c < period; ++c)
            for (std::size_t e = 0; e < base; ++e) {
                ModVector v = out[e];
                for (std::size_t j = 0; j < v.size(); ++j)
                    v[j] = mod_floor(v[j] + mul_mod(c, form_.rows[k][j], ell()), ell());
                out.push_back(std::move(v));
            }
    }
    std::sort(out.begin(), out.end());
    return out;
}

TorusSubgroup TorusSubgroup::join(const TorusSubgroup& other) const {
    if (other.ell() != ell() || other.rank() != rank()) throw std::invalid_argument("join of mismatched tori");
    std::vector<ModVector> gens = generators();
    gens.insert(gens.end(), other.generators().begin(), other.generators().end());
    return from_generators(gens, ell(), rank());
}

TorusSubgroup TorusSubgroup::intersect(const TorusSubgroup& other) const {
    return annihilator(annihilator(*this).join(annihilator(other)));
}

bool operator<(const TorusSubgroup& a, const TorusSubgroup& b) {
    const Integer oa = a.order(), ob = b.order();
    if (oa != ob) return oa < ob;
    return a.generators() < b.generators();
}

TorusSubgroup annihilator(const TorusSubgroup& sub) {
    const std::size_t n = sub.rank();
    if (sub.is_trivial()) return TorusSubgroup::full(sub.ell(), n);
    IntMatrix M(sub.generators().size(), n);
    for (std::size_t i = 0; i < M.rows(); ++i)
        for (std::size_t j = 0; j < n; ++j) M(i, j) = static_cast<long>(sub.generators()[i][j]);
    const ModKernel k = kernel_mod(M, sub.ell());
    return TorusSubgroup::from_generators(k.generators, sub.ell(), n);
}

std::vector<TorusSubgroup> enumerate_subgroups(const TorusSubgroup& ambient, std::size_t cap) {
    const std::int64_t ell = ambient.ell();
    const std::size_t n = ambient.rank();
    std::set<TorusSubgroup> cyclic;
    for (const auto& x : ambient.elements(cap)) cyclic.insert(TorusSubgroup::from_generators({&x, 1}, ell, n));

    // Every subgroup of a finite group is a join of cyclic subgroups.
    std::set<TorusSubgroup> seen{TorusSubgroup::trivial(ell, n)};
    std::vector<TorusSubgroup> frontier{TorusSubgroup::trivial(ell, n)};
    while (!frontier.empty()) {
        std::vector<TorusSubgroup> next;
        for (const auto& s : frontier)
            for (const auto& c : cyclic) {
                if (s.contains(c)) continue;
                TorusSubgroup j = s.join(c);
                if (seen.insert(j).second) {
                    if (seen.size() > cap) throw std::length_error("subgroup count exceeds the enumeration cap");
                    next.push_back(std::move(j));
                }
            }
        frontier = std::move(next);
    }
    return {seen.begin(), seen.end()};
}

std::int64_t Character::pairing(const ModVector& g, std::int64_t ell) const {
    if (g.size() != z.size()) throw std::invalid_argument("character pairing rank mismatch");
    std::int64_t s = 0;
    for (std::size_t t = 0; t < z.size(); ++t) s = mod_floor(s + mul_mod(mod_floor(z[t], ell), mod_floor(g[t], ell), ell), ell);
    return s;
}

namespace {

int parse_int(std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    int v = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || p != s.data() + s.size())
        throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
    return v;
}

ModVector to_mod(const std::vector<Integer>& v, std::int64_t ell) {
    ModVector out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(to_int64(mod_floor(x, Integer(static_cast<long>(ell)))));
    return out;
}

void check_label(int label, int n) {
    if (label < 1 || label > n) throw std::out_of_range("simple root label " + std::to_string(label) + " out of range");
}

}  // namespace

SigmaGenerator parse_sigma_generator(std::string_view text) {
    const auto colon = text.find(':');
    SigmaGenerator g;
    if (colon == std::string_view::npos) {
        if (text.empty()) throw std::invalid_argument("empty Sigma generator");
        std::size_t start = 0;
        while (true) {
            const auto comma = text.find(',', start);
            g.exponent.push_back(parse_int(text.substr(start, comma - start)));
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        return g;
    }
    const std::string_view kind = text.substr(0, colon);
    if (kind == "kbar") g.kind = SigmaGenerator::Kind::Kbar;
    else if (kind == "ktilde") g.kind = SigmaGenerator::Kind::Ktilde;
    else if (kind == "tau") g.kind = SigmaGenerator::Kind::Tau;
    else if (kind == "alpha") g.kind = SigmaGenerator::Kind::Alpha;
    else throw std::invalid_argument("unknown Sigma generator kind '" + std::string(kind) + "'");
    g.label = parse_int(text.substr(colon + 1));
    if (g.label < 1) throw std::invalid_argument("Sigma generator labels are 1-based");
    return g;
}

std::string to_string(const SigmaGenerator& g) {
    switch (g.kind) {
        case SigmaGenerator::Kind::Kbar: return "kbar:" + std::to_string(g.label);
        case SigmaGenerator::Kind::Ktilde: return "ktilde:" + std::to_string(g.label);
        case SigmaGenerator::Kind::Tau: return "tau:" + std::to_string(g.label);
        case SigmaGenerator::Kind::Alpha: return "alpha:" + std::to_string(g.label);
        case SigmaGenerator::Kind::Explicit: break;
    }
    std::string s;
    for (std::size_t i = 0; i < g.exponent.size(); ++i) s += (i ? "," : "") + std::to_string(g.exponent[i]);
    return s;
}

ModVector resolve(const SigmaGenerator& g, const TwistMap& tw, std::int64_t ell) {
    check_modulus(ell);
    const int n = tw.rank();
    if (g.kind == SigmaGenerator::Kind::Explicit) {
        if (g.exponent.size() != static_cast<std::size_t>(n))
            throw std::invalid_argument("Sigma generator '" + to_string(g) + "' has the wrong length");
        ModVector v;
        for (auto x : g.exponent) v.push_back(mod_floor(static_cast<std::int64_t>(x), ell));
        return v;
    }
    check_label(g.label, n);
    switch (g.kind) {
        case SigmaGenerator::Kind::Kbar: return to_mod(kbar_exponent(tw, g.label), ell);
        case SigmaGenerator::Kind::Ktilde: return to_mod(ktilde_exponent(tw, g.label), ell);
        case SigmaGenerator::Kind::Tau: return to_mod(tw.tau(g.label), ell);
        default: {
            ModVector e(static_cast<std::size_t>(n), 0);
            e[static_cast<std::size_t>(g.label - 1)] = 1 % ell;
            return e;
        }
    }
}

TorusSubgroup sigma_from_recipe(std::span<const SigmaGenerator> recipe, const TwistMap& tw, std::int64_t ell) {
    std::vector<ModVector> gens;
    for (const auto& g : recipe) gens.push_back(resolve(g, tw, ell));
    return TorusSubgroup::from_generators(gens, ell, static_cast<std::size_t>(tw.rank()));
}

namespace {

std::vector<ModVector> t_phi_I_generators(const TwistMap& tw, std::int64_t ell, const IndexSet& iplus,
                                          const IndexSet& iminus) {
    check_index_set(iplus, tw.rank());
    check_index_set(iminus, tw.rank());
    IndexSet plus = iplus, minus = iminus;
    std::sort(plus.begin(), plus.end());
    std::sort(minus.begin(), minus.end());
    std::vector<ModVector> gens;
    for (int i : plus) gens.push_back(to_mod(kbar_exponent(tw, i), ell));
    for (int j : minus) gens.push_back(to_mod(ktilde_exponent(tw, j), ell));
    return gens;
}

IndexSet intersection(IndexSet a, IndexSet b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    IndexSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

}  // namespace

TorusSubgroup t_phi_I(const TwistMap& tw, std::int64_t ell, const IndexSet& iplus, const IndexSet& iminus) {
    check_modulus(ell);
    return TorusSubgroup::from_generators(t_phi_I_generators(tw, ell, iplus, iminus), ell,
                                          static_cast<std::size_t>(tw.rank()));
}

TorusSubgroup t_phi_I_prime(const TwistMap& tw, std::int64_t ell, const IndexSet& iplus, const IndexSet& iminus) {
    check_modulus(ell);
    check_index_set(iplus, tw.rank());
    check_index_set(iminus, tw.rank());
    std::vector<ModVector> gens;
    for (int i : intersection(iplus, iminus)) {
        ModVector e(static_cast<std::size_t>(tw.rank()), 0);
        e[static_cast<std::size_t>(i - 1)] = 1;
        gens.push_back(std::move(e));
    }
    return TorusSubgroup::from_generators(gens, ell, static_cast<std::size_t>(tw.rank()));
}

TripleReport validate_triple(const TwistMap& tw, std::int64_t ell, const Triple& t) {
    TripleReport rep;
    const auto n = static_cast<std::size_t>(tw.rank());
    try {
        check_modulus(ell);
        check_index_set(t.iplus, tw.rank());
        check_index_set(t.iminus, tw.rank());
    } catch (const std::exception& e) {
        rep.violations.push_back({e.what(), {}});
        return rep;
    }
    if (t.sigma.ell() != ell || t.sigma.rank() != n) {
        rep.violations.push_back({"Sigma is not a subgroup of (Z/" + std::to_string(ell) + ")^" + std::to_string(n), {}});
        return rep;
    }
    IndexSet plus = t.iplus, minus = t.iminus;
    std::sort(plus.begin(), plus.end());
    std::sort(minus.begin(), minus.end());
    const TorusSubgroup tI = t_phi_I(tw, ell, plus, minus);
    for (int i : intersection(plus, minus)) {
        ModVector e(n, 0);
        e[static_cast<std::size_t>(i - 1)] = 1;
        if (!tI.contains(e)) rep.violations.push_back({"alpha:" + std::to_string(i) + " not in T_I", e});
    }
    for (int i : plus) {
        const ModVector v = to_mod(kbar_exponent(tw, i), ell);
        if (!t.sigma.contains(v)) rep.violations.push_back({"kbar:" + std::to_string(i) + " not in Sigma", v});
    }
    for (int j : minus) {
        const ModVector v = to_mod(ktilde_exponent(tw, j), ell);
        if (!t.sigma.contains(v)) rep.violations.push_back({"ktilde:" + std::to_string(j) + " not in Sigma", v});
    }
    return rep;
}

IntMatrix s_phi_matrix(const TwistMap& tw, std::int64_t ell, const IndexSet& iplus, const IndexSet& iminus) {
    check_modulus(ell);
    const auto rows = t_phi_I_generators(tw, ell, iplus, iminus);
    const auto n = static_cast<std::size_t>(tw.rank());
    IntMatrix S(rows.size(), n);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < n; ++c) S(r, c) = static_cast<long>(rows[r][c]);
    return S;
}

TorusSubgroup t_hat_I_complement(const TwistMap& tw, std::int64_t ell, const IndexSet& iplus,
                                 const IndexSet& iminus) {
    const IntMatrix S = s_phi_matrix(tw, ell, iplus, iminus);
    const auto n = static_cast<std::size_t>(tw.rank());
    if (S.rows() == 0) return TorusSubgroup::full(ell, n);
    return TorusSubgroup::from_generators(kernel_mod(S, ell).generators, ell, n);
}

TorusSubgroup n_phi_from_sigma(const TwistMap& tw, std::int64_t ell, const Triple& t) {
    const TripleReport rep = validate_triple(tw, ell, t);
    if (!rep.ok()) throw std::invalid_argument("invalid triple: " + rep.violations.front().what);
    return annihilator(t.sigma);
}

SigmaOrderIdentity sigma_order_identity(const TwistMap& tw, std::int64_t ell, const Triple& t) {
    const TorusSubgroup N = n_phi_from_sigma(tw, ell, t);
    SigmaOrderIdentity out{t.sigma.order(), N.order(), false};
    out.holds = out.sigma_order * out.n_order == pow(Integer(static_cast<long>(ell)), static_cast<unsigned long>(tw.rank()));
    return out;
}

Integer omega_order(const TwistMap& tw, std::int64_t ell, const Triple& t) {
    const TripleReport rep = validate_triple(tw, ell, t);
    if (!rep.ok()) throw std::invalid_argument("invalid triple: " + rep.violations.front().what);
    return t.sigma.order() / t_phi_I(tw, ell, t.iplus, t.iminus).order();
}

}  // namespace qsg
