#pragma once

#include "imds/decomposition.hpp"
#include "imds/model.hpp"

#include <string>
#include <string_view>

namespace imds {

SystemSpec parse_model(std::string_view text);
SystemSpec load_model(const std::string& path);
std::string serialize_model(const SystemSpec&);

Decomposition parse_decomposition(const SystemSpec&, std::string_view text);
Decomposition load_decomposition(const SystemSpec&, const std::string& path);
std::string serialize_decomposition(const SystemSpec&, const Decomposition&);

std::string read_file(const std::string& path);

}  // namespace imds
