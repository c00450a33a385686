#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace kzent {

/// Names of the scenario configurations compiled into the binary.
std::vector<std::string> preset_names();

/// JSON text of a preset. Throws ConfigError for an unknown name.
std::string_view preset_json(std::string_view name);

}  // namespace kzent
