#pragma once

#include <iosfwd>
#include <string>

#include "risamp/harness.hpp"

namespace risamp {

/// Parses a flat `key = value` document (one pair per line, `#` comments).
/// Every key mirrors a SystemConfig field; unknown keys raise
/// std::invalid_argument.
SystemConfig parse_config(std::istream& in);
SystemConfig load_config(const std::string& path);

/// Inverse of parse_config, mainly for reproducibility dumps.
std::string dump_config(const SystemConfig& cfg);

}  // namespace risamp
