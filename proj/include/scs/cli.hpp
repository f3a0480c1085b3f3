#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "scs/phasespace.hpp"

/** \file cli.hpp
 *
 *  \brief Verification drivers behind the `scs` command-line tool.
 *
 *  Each cmd_* function runs one suite and returns a Report; run_cli parses
 *  arguments, writes the report in the requested format and maps the outcome
 *  to an exit code.
 */

namespace scs::cli {

enum ExitCode : int { ok = 0, numeric_failure = 1, usage = 2, io_failure = 3 };

enum class Format { csv, json };

/// Zero or negative sizes and a zero tolerance mean "use the command default".
struct RunConfig {
    int j_max = -1;
    int n_theta = 0;
    int n_phi = 0;
    int n_alpha = 0;
    int l_panels = 0;
    int l_order = 16;
    int hk_nodes = 32;
    double tol = 0.0;
    std::uint64_t seed = 1;
    int points = 0;     ///< sampled phase points (reproduce, operators) or pairs (overlap)
    Format format = Format::csv;
    std::string out;    ///< empty: standard output

    /// Throws DomainError for explicitly set values out of range.
    void validate() const;
};

/// Thrown for malformed arguments; maps to exit code 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Cell = std::variant<long long, double, std::string>;

struct Report {
    std::string command;
    std::uint64_t seed = 0;
    std::vector<std::pair<std::string, Cell>> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    std::vector<std::string> failures;  ///< one line per breached tolerance

    bool pass() const { return failures.empty(); }
};

void write_report(std::ostream& out, const Report& r, Format f);

/// "a..b" or "a" with 0 <= a <= b <= 12; throws UsageError otherwise.
std::pair<int, int> parse_range(const std::string& s);

/// "theta,phi,alpha,l"; throws UsageError if malformed or outside the coordinate ranges.
PhasePoint parse_point(const std::string& s);

Report cmd_moments(std::pair<int, int> j_range, const RunConfig& cfg);
Report cmd_gram(const RunConfig& cfg);
Report cmd_reproduce(const RunConfig& cfg);
Report cmd_operators(const RunConfig& cfg);
/// Explicit pairs, or cfg.points seeded random pairs with l <= 1 when empty.
Report cmd_overlap(const std::vector<std::pair<PhasePoint, PhasePoint>>& pairs, const RunConfig& cfg);

/// Writes the Husimi field itself; returns the summary.
Report cmd_husimi(const PhasePoint& p, const RunConfig& cfg, std::ostream& field_out);

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace scs::cli
