#pragma once

#include <set>
#include <string>
#include <vector>

#include <json.hpp>

namespace ginibre::verify {

inline constexpr int kSchemaVersion = 1;

struct CriterionResult {
    int id = 0;
    std::string key;
    std::string suite;
    std::string title;
    bool pass = false;
    double seconds = 0.0;
    double budget_seconds = 0.0;
    std::string summary;
    nlohmann::json table;
};

struct Criterion {
    int id;
    const char* key;
    const char* suite;
    const char* title;
    double budget_seconds;
};

const std::vector<Criterion>& criteria();

CriterionResult run_criterion(int id);

// Criteria whose key or suite appears in `skip` are omitted.
std::vector<CriterionResult> run_all(const std::set<std::string>& skip = {});

nlohmann::json to_json(const CriterionResult& r);
std::string format_line(const CriterionResult& r);

}  // namespace ginibre::verify
