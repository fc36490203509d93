#pragma once

#include <string>
#include <vector>

#include "fibercav/config.hpp"
#include "fibercav/table.hpp"

namespace fibercav {

// identifiers of the prebound data sets, e.g. "2a", "10f", "11"
std::vector<std::string> figure_ids();

// Produces the data series for one prebound figure id.  Each id carries its
// own pinned parameter set (geometry, reflectivity, polarization, tuning,
// horizon); base supplies everything the binding leaves free, such as output
// precision and the fiber indices.  Unknown ids throw ConfigError.
ResultTable figure_table(const std::string& id, const RunConfig& base);

}  // namespace fibercav
