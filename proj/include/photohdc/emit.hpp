#pragma once

// JSON renderings of reports and search results.

#include <string>

#include "photohdc/dse.hpp"
#include "photohdc/ppa.hpp"

namespace photohdc {

std::string report_json(const PpaReport& report);
std::string search_json(const SearchResult& result, Objective objective, const Budgets& budgets);

}  // namespace photohdc
