#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <set>

#include "qsg/cli.hpp"

namespace qsg::cli {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

long long parse_ll(std::string_view s) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    long long v = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || p != s.data() + s.size())
        throw ParseError("expected an integer, got '" + std::string(s) + "'");
    return v;
}

Rational parse_rational(std::string_view s) {
    s = trim(s);
    const auto slash = s.find('/');
    if (slash == std::string_view::npos) return Rational(Integer(static_cast<long>(parse_ll(s))));
    const long long den = parse_ll(s.substr(slash + 1));
    if (den == 0) throw ParseError("zero denominator in '" + std::string(s) + "'");
    return make_rational(Integer(static_cast<long>(parse_ll(s.substr(0, slash)))), Integer(static_cast<long>(den)));
}

template <class T, class F>
Matrix<T> parse_matrix(std::string_view text, F parse_entry) {
    std::vector<std::vector<T>> rows;
    for (auto r : split(text, ';')) {
        if (r.empty()) throw ParseError("empty matrix row in '" + std::string(text) + "'");
        std::vector<T> row;
        for (auto e : split(r, ',')) row.push_back(parse_entry(e));
        rows.push_back(std::move(row));
    }
    const std::size_t cols = rows.front().size();
    for (const auto& r : rows)
        if (r.size() != cols) throw ParseError("ragged matrix '" + std::string(text) + "'");
    return Matrix<T>::from_rows(rows, cols);
}

// JSON helpers. Every accessor throws ParseError naming the offending key.
long long json_int(const json& j, const std::string& what) {
    if (!j.is_number_integer()) throw ParseError(what + ": expected an integer");
    return j.get<long long>();
}

Rational json_rational(const json& j, const std::string& what) {
    if (j.is_number_integer()) return Rational(Integer(static_cast<long>(j.get<long long>())));
    if (j.is_string()) return parse_rational(j.get<std::string>());
    throw ParseError(what + ": expected an integer or a \"p/q\" string");
}

std::vector<long long> json_int_list(const json& j, const std::string& what) {
    if (!j.is_array()) throw ParseError(what + ": expected an array");
    std::vector<long long> out;
    for (const auto& x : j) out.push_back(json_int(x, what));
    return out;
}

template <class T, class F>
Matrix<T> json_matrix(const json& j, const std::string& what, F entry) {
    if (!j.is_array() || j.empty()) throw ParseError(what + ": expected a nonempty array of rows");
    std::vector<std::vector<T>> rows;
    for (const auto& r : j) {
        if (!r.is_array()) throw ParseError(what + ": rows must be arrays");
        std::vector<T> row;
        for (const auto& x : r) row.push_back(entry(x, what));
        rows.push_back(std::move(row));
    }
    const std::size_t cols = rows.front().size();
    for (const auto& r : rows)
        if (r.size() != cols) throw ParseError(what + ": ragged matrix");
    return Matrix<T>::from_rows(rows, cols);
}

IntMatrix json_int_matrix(const json& j, const std::string& what) {
    return json_matrix<Integer>(j, what, [](const json& x, const std::string& w) {
        return Integer(static_cast<long>(json_int(x, w)));
    });
}

IndexSet to_index_set(const std::vector<long long>& v) {
    IndexSet s;
    for (auto x : v) s.push_back(static_cast<int>(x));
    return s;
}

ModVector to_mod_vector(const std::vector<long long>& v) { return {v.begin(), v.end()}; }

json matrix_json(const IntMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json r = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(to_json(m(i, j)));
        rows.push_back(std::move(r));
    }
    return rows;
}

json rational_json(const Rational& q) {
    if (is_integer(q)) return to_json(q.get_num());
    return to_string(q);
}

const std::set<std::string> kKnownKeys{"type",  "rank",   "cartan", "ell",   "Y",     "family_c3",  "iplus",
                                       "iminus", "sigma", "N",      "gamma", "delta", "max_results"};

}  // namespace

RationalMatrix parse_rational_matrix(std::string_view text) {
    return parse_matrix<Rational>(text, [](std::string_view e) { return parse_rational(e); });
}

IntMatrix parse_int_matrix(std::string_view text) {
    return parse_matrix<Integer>(text, [](std::string_view e) { return Integer(static_cast<long>(parse_ll(e))); });
}

std::vector<long long> parse_int_list(std::string_view text) {
    std::vector<long long> out;
    for (auto e : split(text, ',')) out.push_back(parse_ll(e));
    return out;
}

IndexSet parse_index_set(std::string_view text) {
    if (trim(text).empty()) return {};
    return to_index_set(parse_int_list(text));
}

json to_json(const Integer& v) {
    if (v.fits_slong_p()) return v.get_si();
    return to_string(v);
}

json to_json(const FactoredDimension& f) {
    return {{"cofactor", to_json(f.cofactor)}, {"base", f.base}, {"exponent", f.exponent}};
}

json to_json(const TorusSubgroup& s) { return {{"generators", s.generators()}, {"order", to_json(s.order())}}; }

ProblemSpec spec_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("spec must be a JSON object");
    for (const auto& [key, _] : j.items())
        if (!kKnownKeys.count(key)) throw ParseError("unknown spec key '" + key + "'");
    ProblemSpec s;
    if (j.contains("type")) {
        const json& t = j["type"];
        if (!t.is_string() || t.get<std::string>().size() != 1) throw ParseError("type: expected one of A..G");
        try {
            s.type = lie_type_from_char(t.get<std::string>()[0]);
        } catch (const std::exception& e) {
            throw ParseError(std::string("type: ") + e.what());
        }
    }
    if (j.contains("rank")) s.rank = static_cast<int>(json_int(j["rank"], "rank"));
    if (j.contains("cartan")) s.cartan = json_int_matrix(j["cartan"], "cartan");
    if (j.contains("ell")) s.ell = json_int(j["ell"], "ell");
    if (j.contains("Y")) s.Y = json_matrix<Rational>(j["Y"], "Y", json_rational);
    if (j.contains("family_c3")) {
        const auto v = json_int_list(j["family_c3"], "family_c3");
        if (v.size() != 3) throw ParseError("family_c3: expected [a, b, c]");
        s.family_c3 = std::array<long long, 3>{v[0], v[1], v[2]};
    }
    if (j.contains("iplus")) s.iplus = to_index_set(json_int_list(j["iplus"], "iplus"));
    if (j.contains("iminus")) s.iminus = to_index_set(json_int_list(j["iminus"], "iminus"));
    if (j.contains("sigma")) {
        if (!j["sigma"].is_array()) throw ParseError("sigma: expected an array");
        for (const auto& g : j["sigma"]) {
            if (g.is_array()) {
                SigmaGenerator sg;
                sg.exponent = json_int_list(g, "sigma");
                s.sigma.push_back(std::move(sg));
            } else if (g.is_string()) {
                try {
                    s.sigma.push_back(parse_sigma_generator(g.get<std::string>()));
                } catch (const std::exception& e) {
                    throw ParseError(std::string("sigma: ") + e.what());
                }
            } else {
                throw ParseError("sigma: entries must be strings or integer arrays");
            }
        }
    }
    if (j.contains("N")) {
        if (!j["N"].is_array()) throw ParseError("N: expected an array of vectors");
        std::vector<ModVector> gens;
        for (const auto& g : j["N"]) gens.push_back(to_mod_vector(json_int_list(g, "N")));
        s.n_generators = std::move(gens);
    }
    if (j.contains("gamma")) {
        const json& g = j["gamma"];
        if (!g.is_object()) throw ParseError("gamma: expected an object");
        for (const auto& [key, _] : g.items())
            if (key != "invariant_factors" && key != "embedding" && key != "order" && key != "infinite")
                throw ParseError("gamma: unknown key '" + key + "'");
        if (g.contains("invariant_factors")) {
            const auto f = json_int_list(g["invariant_factors"], "gamma.invariant_factors");
            s.gamma_factors = std::vector<std::int64_t>(f.begin(), f.end());
        }
        if (g.contains("embedding")) s.gamma_embedding = json_int_matrix(g["embedding"], "gamma.embedding");
        if (g.contains("order")) s.gamma_order = Integer(static_cast<long>(json_int(g["order"], "gamma.order")));
        if (g.contains("infinite")) {
            if (!g["infinite"].is_boolean()) throw ParseError("gamma.infinite: expected a boolean");
            s.gamma_infinite = g["infinite"].get<bool>();
        }
    }
    if (j.contains("delta")) {
        const json& d = j["delta"];
        if (!d.is_object() || !d.contains("sources") || !d.contains("images"))
            throw ParseError("delta: expected {\"sources\": [...], \"images\": [...]}");
        for (const auto& v : d["sources"]) s.delta.sources.push_back(to_mod_vector(json_int_list(v, "delta.sources")));
        for (const auto& v : d["images"]) {
            const auto img = json_int_list(v, "delta.images");
            s.delta.images.emplace_back(img.begin(), img.end());
        }
    }
    if (j.contains("max_results")) {
        const long long m = json_int(j["max_results"], "max_results");
        if (m < 0) throw ParseError("max_results must be >= 0");
        s.max_results = static_cast<std::size_t>(m);
    }
    const int gamma_kinds = s.gamma_factors.has_value() + s.gamma_order.has_value() + s.gamma_infinite;
    if (gamma_kinds > 1) throw ParseError("gamma: give invariant factors, an order, or infinite, not several");
    if (s.gamma_embedding && !s.gamma_factors) throw ParseError("gamma: an embedding needs invariant factors");
    return s;
}

json spec_to_json(const ProblemSpec& s) {
    json j = json::object();
    if (s.type) j["type"] = std::string(1, to_char(*s.type));
    if (s.rank) j["rank"] = s.rank;
    if (s.cartan) j["cartan"] = matrix_json(*s.cartan);
    if (s.ell) j["ell"] = *s.ell;
    if (s.Y) {
        json rows = json::array();
        for (std::size_t i = 0; i < s.Y->rows(); ++i) {
            json r = json::array();
            for (std::size_t k = 0; k < s.Y->cols(); ++k) r.push_back(rational_json((*s.Y)(i, k)));
            rows.push_back(std::move(r));
        }
        j["Y"] = std::move(rows);
    }
    if (s.family_c3) j["family_c3"] = *s.family_c3;
    if (s.iplus) j["iplus"] = *s.iplus;
    if (s.iminus) j["iminus"] = *s.iminus;
    if (!s.sigma.empty()) {
        json g = json::array();
        for (const auto& x : s.sigma) g.push_back(to_string(x));
        j["sigma"] = std::move(g);
    }
    if (s.n_generators) j["N"] = *s.n_generators;
    if (s.gamma_factors || s.gamma_order || s.gamma_infinite) {
        json g = json::object();
        if (s.gamma_factors) g["invariant_factors"] = *s.gamma_factors;
        if (s.gamma_embedding) g["embedding"] = matrix_json(*s.gamma_embedding);
        if (s.gamma_order) g["order"] = to_json(*s.gamma_order);
        if (s.gamma_infinite) g["infinite"] = true;
        j["gamma"] = std::move(g);
    }
    if (!s.delta.sources.empty() || !s.delta.images.empty())
        j["delta"] = {{"sources", s.delta.sources}, {"images", s.delta.images}};
    if (s.max_results) j["max_results"] = *s.max_results;
    return j;
}

CartanDatum build_cartan(const ProblemSpec& s) {
    if (s.cartan) {
        CartanDatum cd = CartanDatum::from_matrix(*s.cartan);
        if (s.type && (s.rank <= 0 || cartan_matrix(*s.type, s.rank) != *s.cartan))
            throw std::invalid_argument("explicit Cartan matrix does not match the named type");
        return cd;
    }
    if (s.type) {
        if (s.rank <= 0) throw ParseError("a named type needs a positive rank");
        return CartanDatum::of_type(*s.type, s.rank);
    }
    if (s.family_c3) return CartanDatum::of_type(LieType::C, 3);
    throw ParseError("no Cartan data: give --type/--rank, --cartan, or --family-c3");
}

RationalMatrix build_Y(const ProblemSpec& s, const CartanDatum& cd) {
    const auto n = static_cast<std::size_t>(cd.rank());
    if (s.Y && s.family_c3) throw ParseError("give either Y or family_c3, not both");
    if (s.Y) return *s.Y;
    if (s.family_c3) {
        if (cd.cartan() != cartan_matrix(LieType::C, 3))
            throw std::invalid_argument("the C3 family needs the C3 Cartan matrix");
        const auto& [a, b, c] = *s.family_c3;
        return c3_family(a, b, c);
    }
    return RationalMatrix(n, n);
}

TwistMap build_twist(const ProblemSpec& s) {
    const CartanDatum cd = build_cartan(s);
    const RationalMatrix Y = build_Y(s, cd);
    TwistReport rep = validate_twist(cd, Y);
    if (!rep.ok()) throw InvalidTwist(std::move(rep));
    return TwistMap(cd, to_integral(Y));
}

TwistedSubgroupDatum build_datum(const ProblemSpec& s, const TwistMap& tw, std::int64_t ell) {
    const auto n = static_cast<std::size_t>(tw.rank());
    TwistedSubgroupDatum d = TwistedSubgroupDatum::trivial(ell, n);
    d.iplus = s.iplus.value_or(IndexSet{});
    d.iminus = s.iminus.value_or(IndexSet{});
    if (!s.sigma.empty()) d.sigma_recipe = s.sigma;
    if (s.n_generators) {
        for (const auto& g : *s.n_generators)
            if (g.size() != n) throw std::invalid_argument("N generator has the wrong length");
        d.N = TorusSubgroup::from_generators(*s.n_generators, ell, n);
    } else if (d.sigma_recipe) {
        d.N = annihilator(sigma_from_recipe(*d.sigma_recipe, tw, ell));
    }
    if (s.gamma_factors) {
        const auto& m = *s.gamma_factors;
        IntMatrix E(n, m.size());
        if (s.gamma_embedding) {
            E = *s.gamma_embedding;
        } else {
            if (m.size() > n) throw std::invalid_argument("the default embedding needs at most n invariant factors");
            for (std::size_t i = 0; i < m.size(); ++i) E(i, i) = 1;
        }
        d.gamma = EmbeddedGamma{FiniteAbelianGroup{m}, E};
    } else if (s.gamma_order) {
        d.gamma = OpaqueGamma{*s.gamma_order};
    } else if (s.gamma_infinite) {
        d.gamma = OpaqueGamma{std::nullopt};
    }
    d.delta = s.delta;
    return d;
}

std::size_t enumeration_cap_from_env() {
    const char* v = std::getenv("QSG_ENUM_CAP");
    if (!v || !*v) return kDefaultEnumerationCap;
    const long long cap = parse_ll(v);
    if (cap < 1) throw ParseError("QSG_ENUM_CAP must be positive");
    return static_cast<std::size_t>(cap);
}

}  // namespace qsg::cli
