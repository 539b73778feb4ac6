#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qsg/cli.hpp"

namespace qsg::cli {

namespace {

struct FlagValues {
    std::string spec_file;
    std::string type, cartan, Y, family_c3, iplus, iminus, gamma, gamma_embed, gamma_order;
    std::optional<int> rank;
    std::optional<std::int64_t> ell;
    std::optional<std::size_t> max_results;
    std::vector<std::string> sigma, n_gen, delta;
    bool iplus_given = false, iminus_given = false;
};

void add_shared_options(CLI::App& sub, FlagValues& f) {
    sub.add_option("--spec", f.spec_file, "JSON problem file; flags override its fields");
    sub.add_option("--type", f.type, "Cartan type letter A..G");
    sub.add_option("--rank", f.rank, "rank for --type");
    sub.add_option("--cartan", f.cartan, "Cartan matrix \"2,-1;-1,2\"");
    sub.add_option("--ell", f.ell, "order of the root of unity");
    sub.add_option("--Y", f.Y, "twist parameter matrix, entries may be p/q");
    sub.add_option("--family-c3", f.family_c3, "C3 family parameters \"a,b,c\"");
    sub.add_option("--iplus", f.iplus, "labels of I+, comma separated (\"\" for none)");
    sub.add_option("--iminus", f.iminus, "labels of I-, comma separated (\"\" for none)");
    sub.add_option("--sigma-gen", f.sigma, "Sigma generator: kbar:i, ktilde:i, tau:i, alpha:i or \"a,b,c\"");
    sub.add_option("--n-gen", f.n_gen, "generator of N, \"a,b,c\"");
    sub.add_option("--gamma", f.gamma, "invariant factors of Gamma, \"m1,m2\"");
    sub.add_option("--gamma-embed", f.gamma_embed, "n x k embedding of Gamma into the torus");
    sub.add_option("--gamma-order", f.gamma_order, "order of an opaque Gamma, or \"infinite\"");
    sub.add_option("--delta", f.delta, "delta on one generator of N: \"a,b,c:i1,i2\"");
    sub.add_option("--max-results", f.max_results, "stop enumeration after this many triples");
}

ModVector mod_vector(std::string_view text) {
    const auto v = parse_int_list(text);
    return {v.begin(), v.end()};
}

ProblemSpec assemble(const FlagValues& f) {
    ProblemSpec s;
    if (!f.spec_file.empty()) {
        std::ifstream in(f.spec_file);
        if (!in) throw ParseError("cannot open spec file " + f.spec_file);
        json j;
        try {
            j = json::parse(in);
        } catch (const json::exception& e) {
            throw ParseError(std::string("spec file: ") + e.what());
        }
        s = spec_from_json(j);
    }
    if (!f.type.empty()) {
        if (f.type.size() != 1) throw ParseError("--type: expected one letter");
        try {
            s.type = lie_type_from_char(f.type[0]);
        } catch (const std::exception& e) {
            throw ParseError(std::string("--type: ") + e.what());
        }
    }
    if (f.rank) s.rank = *f.rank;
    if (!f.cartan.empty()) s.cartan = parse_int_matrix(f.cartan);
    if (f.ell) s.ell = *f.ell;
    if (!f.Y.empty()) s.Y = parse_rational_matrix(f.Y);
    if (!f.family_c3.empty()) {
        const auto v = parse_int_list(f.family_c3);
        if (v.size() != 3) throw ParseError("--family-c3: expected a,b,c");
        s.family_c3 = std::array<long long, 3>{v[0], v[1], v[2]};
    }
    // An explicitly empty --iplus still counts as given.
    if (!f.iplus.empty() || f.iplus_given) s.iplus = parse_index_set(f.iplus);
    if (!f.iminus.empty() || f.iminus_given) s.iminus = parse_index_set(f.iminus);
    if (!f.sigma.empty()) {
        s.sigma.clear();
        for (const auto& g : f.sigma) {
            try {
                s.sigma.push_back(parse_sigma_generator(g));
            } catch (const std::invalid_argument& e) {
                throw ParseError(std::string("--sigma-gen: ") + e.what());
            }
        }
    }
    if (!f.n_gen.empty()) {
        std::vector<ModVector> gens;
        for (const auto& g : f.n_gen) gens.push_back(mod_vector(g));
        s.n_generators = std::move(gens);
    }
    if (!f.gamma.empty() || !f.gamma_order.empty()) {
        s.gamma_factors.reset();
        s.gamma_embedding.reset();
        s.gamma_order.reset();
        s.gamma_infinite = false;
    }
    if (!f.gamma.empty()) {
        const auto v = parse_int_list(f.gamma);
        s.gamma_factors = std::vector<std::int64_t>(v.begin(), v.end());
    }
    if (!f.gamma_embed.empty()) s.gamma_embedding = parse_int_matrix(f.gamma_embed);
    if (!f.gamma_order.empty()) {
        if (f.gamma_order == "infinite") {
            s.gamma_infinite = true;
        } else {
            const auto v = parse_int_list(f.gamma_order);
            if (v.size() != 1 || v[0] < 1) throw ParseError("--gamma-order: expected a positive integer or infinite");
            s.gamma_order = Integer(static_cast<long>(v[0]));
        }
    }
    if (s.gamma_embedding && !s.gamma_factors) throw ParseError("--gamma-embed needs --gamma");
    if ((s.gamma_factors.has_value() + s.gamma_order.has_value() + s.gamma_infinite) > 1)
        throw ParseError("give --gamma or --gamma-order, not both");
    if (!f.delta.empty()) {
        s.delta = {};
        for (const auto& d : f.delta) {
            const auto colon = d.find(':');
            if (colon == std::string::npos) throw ParseError("--delta: expected \"source:images\"");
            s.delta.sources.push_back(mod_vector(std::string_view(d).substr(0, colon)));
            const auto img = parse_int_list(std::string_view(d).substr(colon + 1));
            s.delta.images.emplace_back(img.begin(), img.end());
        }
    }
    if (f.max_results) s.max_results = *f.max_results;
    return s;
}

void emit(const CommandResult& r, std::ostream& out) {
    for (const auto& line : r.lines) out << line.dump() << '\n';
    out << r.text;
}

}  // namespace

int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Quantum subgroup data for twisted small quantum groups"};
    app.require_subcommand(1);
    FlagValues f;
    const std::vector<std::pair<std::string, std::string>> commands = {
        {"validate-phi", "check a twist parameter matrix"},
        {"kernel", "S matrix and its kernel mod ell"},
        {"datum", "validate a subgroup datum and report dimensions"},
        {"enumerate", "list every (I+, I-, N) triple"},
        {"paper-examples", "run the built-in C3 worked examples at ell = 11"},
        {"twist-table", "print the two-cocycle table of J"},
    };
    std::vector<CLI::App*> subs;
    for (const auto& [name, help] : commands) {
        CLI::App* sub = app.add_subcommand(name, help);
        add_shared_options(*sub, f);
        subs.push_back(sub);
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kParseFailure;
    }

    std::string command;
    for (auto* sub : subs)
        if (sub->parsed()) command = sub->get_name();

    ProblemSpec spec;
    std::size_t cap = 0;
    try {
        const CLI::App* sub = app.get_subcommand(command);
        f.iplus_given = sub->count("--iplus") > 0;
        f.iminus_given = sub->count("--iminus") > 0;
        spec = assemble(f);
        cap = enumeration_cap_from_env();
    } catch (const ParseError& e) {
        out << json{{"command", command}, {"error", e.what()}, {"exit_code", kParseFailure}}.dump() << '\n';
        return kParseFailure;
    }
    const CommandResult r = run_command(command, spec, cap);
    emit(r, out);
    return r.exit_code;
}

}  // namespace qsg::cli
