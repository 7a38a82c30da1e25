#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace adelic {

using json = nlohmann::json;

/// Malformed configuration or input file (exit code 2).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Everything a run depends on.  Field and divisor specs are held inline so
/// a report's "input" block re-parses to the same configuration.
struct RunConfig {
    std::string command;  ///< rr1d | theta | residue-verify | surface-index | surface-chi | verify-all
    json field;           ///< {"kind": ...}
    json divisor;         ///< 1D: list of {place, coeff}; surface: {"q", "divisor": [{form, coeff}]}
    json divisor_b;       ///< second surface divisor for surface-index
    json window_spec;     ///< residue-verify: {"places": [...], "lower", "upper", "divisor"?}
    double tol = 1e-12;
    int precision = 64;
    std::uint64_t seed = 20240601;
    std::string format = "json";  ///< json | table
    std::string units = "logq";   ///< logq | nat, table rendering of exact quantities
    long window = 4;              ///< residue-verify: truncation bounds [-window, window]
    long samples = 200;           ///< residue-verify: random functions for reciprocity
    std::vector<int> criteria;    ///< verify-all: subset (empty = all)

    json to_json() const;
    static RunConfig from_json(const json& j);
};

/// Default precision: ADELIC_PRECISION if set, else 64.  Throws ConfigError
/// outside [53, 64].
int default_precision();
void validate(const RunConfig& c);

/// Reads a JSON file; parse errors carry the file name and line.
json read_json_file(const std::string& path);

struct Report {
    json body;
    bool all_pass = true;
};

/// Dispatches to the module operation.  Domain errors propagate unchanged.
Report run(const RunConfig& config);

/// Aligned two-column rendering of a report.
std::string render_table(const json& report);

}  // namespace adelic
