#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace gcmeta {

/// Exit codes of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitFailure = 1,       // input diagnostics, failed verification
    kExitUsage = 2,         // bad command line
    kExitAnswerSets = 10,   // solve found at least one answer set
    kExitNoAnswerSet = 20,  // solve proved there is none
    kExitBudget = 30,       // solve ran out of budget
};

/// Record of one tool run. Reruns with the same inputs produce identical
/// manifests apart from `wall_ms`.
struct RunManifest {
    std::string subcommand;
    std::map<std::string, std::string> input_digests;  // path -> SHA-256 hex
    nlohmann::json options = nlohmann::json::object();
    std::vector<std::uint64_t> seeds;
    std::map<std::string, double> wall_ms;  // phase -> milliseconds
    std::string result_digest;
    std::vector<std::string> warnings;
    nlohmann::json extra = nlohmann::json::object();

    nlohmann::json to_json() const;
};

/// Lowercase hex SHA-256 of `data`.
std::string sha256_hex(std::string_view data);

/// "0..3,7" -> 0 1 2 3 7. Throws Error on malformed input.
std::vector<std::uint64_t> parse_number_list(std::string_view text);

/// Runs the tool; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gcmeta
