#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace wpvol {

struct CheckItem {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct CheckSuiteResult {
    std::string suite;
    std::vector<CheckItem> items;
    bool pass = true;

    void add(const std::string& name, bool ok, const std::string& detail = "");
};

/// Identity suites behind `check --suite ...`:
///   ring          exact-ring axioms and series inverses (randomized, seeded)
///   paths         kernel vs residue vs n-recursion, all cells 2g-2+n <= c
///   string-dilaton  string/dilaton identities over the corollary range
///   decomposition tight decomposition re-gluing and cylinder series
///   jt            gluing closed forms against quadrature oracles
CheckSuiteResult run_check_suite(const std::string& suite, int max_complexity);

/// All of the above; max_complexity bounds the paths/string-dilaton cells.
std::vector<CheckSuiteResult> run_all_checks(int max_complexity);

nlohmann::json check_results_to_json(const std::vector<CheckSuiteResult>& results);

}  // namespace wpvol
