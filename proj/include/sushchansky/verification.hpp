#pragma once

#include <string>
#include <vector>

#include "sushchansky/construction.hpp"

namespace sushchansky {

struct CheckResult {
    std::string name;
    std::string claim;  // the verified statement, in words
    bool pass = false;
    std::string detail;
};

/// Known suites: abelian, orders, orbit-tree, branch, ggroup, infinite-order,
/// tableau-agreement, all. Throws std::invalid_argument on an unknown name.
std::vector<CheckResult> verify_suite(const SushchanskySystem& sys, const std::string& suite);

std::vector<std::string> verify_suite_names();

}  // namespace sushchansky
