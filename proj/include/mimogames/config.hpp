/* config.hpp
 *
 * Structured text configuration for the CLI: INI-style sections and keys
 * mapping onto the sweep spec. Parsing is strict: unknown sections or keys,
 * bad types, and out-of-range values are all errors naming the offending
 * `section.key`. serialize() emits a canonical form that parses back to an
 * equal config.
 */
#pragma once

#include <string>

#include "mimogames/montecarlo.hpp"

namespace mimogames {

// Raised for malformed lines, unknown sections or keys, and type or range
// violations; the message carries the `section.key` path.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    SweepSpec sweep;
    std::string out_dir = "out";
    bool write_csv = true;
    bool write_json = true;
};

bool operator==(const RunConfig& a, const RunConfig& b);

// Empty text yields the defaults (the reference experiment setup).
RunConfig parse_config(const std::string& text);

RunConfig load_config_file(const std::string& path);

std::string serialize_config(const RunConfig& config);

}  // namespace mimogames
