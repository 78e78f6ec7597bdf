#pragma once

#include <string>
#include <vector>

#include "fpiter/space.hpp"
#include "fpiter/volterra_fredholm.hpp"

namespace fpiter {

/// Named example mappings usable from the CLI and the bindings.
const std::vector<std::string>& map_catalog_keys();
MappingSpec make_map(const std::string& key);

/// Named integral problems, most with a manufactured exact solution.
const std::vector<std::string>& problem_catalog_keys();
IntegralProblem make_problem(const std::string& key);

}  // namespace fpiter
