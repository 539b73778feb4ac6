#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qsg/datum.hpp"

namespace qsg::cli {

using json = nlohmann::json;

enum ExitCode : int { kOk = 0, kValidationFailure = 1, kGuardFailure = 2, kParseFailure = 3 };

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Resource or applicability guard (caps, pinned fixtures).
struct GuardError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Problem description shared by every subcommand. Absent optionals take the
/// defaults documented in the README.
struct ProblemSpec {
    std::optional<LieType> type;
    int rank = 0;
    std::optional<IntMatrix> cartan;
    std::optional<std::int64_t> ell;
    std::optional<RationalMatrix> Y;
    std::optional<std::array<long long, 3>> family_c3;
    std::optional<IndexSet> iplus;
    std::optional<IndexSet> iminus;
    std::vector<SigmaGenerator> sigma;
    std::optional<std::vector<ModVector>> n_generators;
    std::optional<std::vector<std::int64_t>> gamma_factors;
    std::optional<IntMatrix> gamma_embedding;  // default: generator i -> coordinate i
    std::optional<Integer> gamma_order;        // opaque Gamma of this order
    bool gamma_infinite = false;               // opaque infinite Gamma
    CharacterHom delta;
    std::optional<std::size_t> max_results;

    friend bool operator==(const ProblemSpec&, const ProblemSpec&) = default;
};

/// Throws ParseError.
ProblemSpec spec_from_json(const json& j);
json spec_to_json(const ProblemSpec& s);

/// Matrix text "a,b;c,d" (rows split on ';'). Throws ParseError.
RationalMatrix parse_rational_matrix(std::string_view text);
IntMatrix parse_int_matrix(std::string_view text);
std::vector<long long> parse_int_list(std::string_view text);
/// "" -> empty set.
IndexSet parse_index_set(std::string_view text);

CartanDatum build_cartan(const ProblemSpec& s);
/// Rational Y: from `Y`, then `family_c3`, else zero.
RationalMatrix build_Y(const ProblemSpec& s, const CartanDatum& cd);
/// Throws InvalidTwist.
TwistMap build_twist(const ProblemSpec& s);
/// Throws std::invalid_argument when the datum cannot be assembled.
TwistedSubgroupDatum build_datum(const ProblemSpec& s, const TwistMap& tw, std::int64_t ell);

struct CommandResult {
    int exit_code = kOk;
    std::vector<json> lines;  // line-delimited JSON reports
    std::string text;         // plain-text payload (twist-table)
};

CommandResult cmd_validate_phi(const ProblemSpec& s);
CommandResult cmd_kernel(const ProblemSpec& s);
CommandResult cmd_datum(const ProblemSpec& s);
CommandResult cmd_enumerate(const ProblemSpec& s, std::size_t cap);
CommandResult cmd_paper_examples(const ProblemSpec& s);
CommandResult cmd_twist_table(const ProblemSpec& s, std::size_t cap);

/// Dispatches by subcommand name and maps exceptions to exit codes; never throws.
CommandResult run_command(std::string_view command, const ProblemSpec& s, std::size_t cap);

/// QSG_ENUM_CAP, or the library default. Throws ParseError on a malformed value.
std::size_t enumeration_cap_from_env();

/// Full command-line entry point.
int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err);

json to_json(const Integer& v);
json to_json(const FactoredDimension& f);
json to_json(const TorusSubgroup& s);

}  // namespace qsg::cli
