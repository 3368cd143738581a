#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qjac/rational.hpp"

namespace qjac::cli {

enum class Command
{
    verify_wronskian,
    verify_orders,
    verify_characters,
    verify_identities,
    classify,
    sweep,
};

enum class Format
{
    json,
    csv,
    text,
};

/// Environment variable naming the default directory for reports when
/// --output is not given. Without it reports go to standard output.
inline constexpr const char *output_dir_env = "QJAC_OUTPUT_DIR";

/// Report schema version written into every JSON report.
inline constexpr int schema_version = 1;

struct RunConfig
{
    Command command = Command::verify_wronskian;
    std::vector<long> m_values;
    std::vector<long> k_values;
    std::vector<long> N_values;
    std::optional<Rational> q_trunc; // command default when absent
    std::optional<std::string> output;
    Format format = Format::json;
    std::optional<std::string> dump_series; // directory for series text files
    unsigned jobs = 1;
    std::uint64_t seed = 20240611;
    unsigned samples = 20;
    std::optional<std::string> jacobi_file;
    bool weak = false;
    std::optional<int> part_i_r;
};

Command parse_command(const std::string &name);
std::string command_name(Command c);
Format parse_format(const std::string &name);

/// "2..8", "5" or "1,4,6" (and mixtures such as "1,3..5"); values in order.
std::vector<long> parse_range(const std::string &text);

/// Fills command-specific defaults for unset ranges and q_trunc, then checks
/// the invariants (q_trunc > 0, ranges nonempty). Throws InvalidInput.
RunConfig normalize(RunConfig config);

/// Runs the command and writes its report to the configured destination (or
/// `out` when there is none). Returns 0 iff every check passes; on failure a
/// one-line JSON failure record goes to `err`. Discrepancy flags never change
/// the exit status.
int run(const RunConfig &config, std::ostream &out, std::ostream &err);

} // namespace qjac::cli
