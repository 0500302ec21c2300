#pragma once

#include "gqlharvest/oracle/validate.hpp"
#include "gqlharvest/suite/testcase.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace gqlharvest::suite {

struct RunConfig {
    std::string endpoint;  // full URL, e.g. "http://127.0.0.1:8000/graphql/"
    int parallelism = 4;
    double timeout_seconds = 30.0;
    std::vector<std::pair<std::string, std::string>> headers;
    std::string pre_hook;  // shell command run once before the suite
};

struct CaseResult {
    std::string id;
    oracle::ValidationReport report;

    bool operator==(const CaseResult&) const = default;
};

struct SuiteResult {
    std::vector<CaseResult> cases;  // ordered by case id
    std::uint64_t tests = 0;
    std::uint64_t passing = 0;
    std::uint64_t failing = 0;
    std::uint64_t assertions_evaluated = 0;
    double wall_time_seconds = 0.0;

    bool operator==(const SuiteResult&) const = default;
};

// Posts every case as {query, variables, operationName} and validates the
// response. A request that yields no response at all (refused, timed out)
// records a single failing TRANSPORT outcome. Case results are ordered by
// id regardless of parallelism. Throws Error when the pre-hook command
// exits nonzero.
SuiteResult run_suite(const std::vector<TestCase>& cases, const RunConfig& config);

Json suite_result_to_json(const SuiteResult& result);
SuiteResult suite_result_from_json(const Json& doc);  // FormatError

}  // namespace gqlharvest::suite
