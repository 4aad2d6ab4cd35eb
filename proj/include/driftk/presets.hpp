#pragma once

#include <string>
#include <vector>

#include "driftk/config.hpp"

namespace driftk {

// Built-in, fully calibrated experiment configs.
std::vector<std::string> preset_names();
Config preset_config(const std::string& name); // throws ConfigError if unknown

} // namespace driftk
