#pragma once

#include "gqlharvest/json.hpp"
#include "gqlharvest/schema/model.hpp"
#include "gqlharvest/suite/runner.hpp"
#include "gqlharvest/suite/testcase.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace gqlharvest::report {

// Failing outcomes aggregated by (entry point, path with list indices
// wildcarded, check kind) — one group per distinct fault location, since a
// single server-side fault usually fans out over many cases and indices.
struct FailureGroup {
    std::string entry_point;  // first data field on the failing path
    std::string path;         // e.g. "data.teasers[*].url"
    std::string check;        // check kind name
    std::uint64_t occurrences = 0;
    std::vector<std::string> case_ids;  // sorted, unique

    bool operator==(const FailureGroup&) const = default;
};

// One pipeline run rendered as the standard metric table.
struct RunSummary {
    std::uint64_t types = 0;
    std::uint64_t entry_points = 0;
    std::uint64_t unique_queries = 0;
    std::uint64_t assertions_evaluated = 0;
    std::uint64_t passing = 0;
    std::uint64_t failing = 0;
    std::uint64_t schema_tuples = 0;
    std::uint64_t covered_tuples = 0;
    std::string schema_cov;  // "30.8%"
    std::vector<FailureGroup> failure_groups;

    bool operator==(const RunSummary&) const = default;
};

// Wildcards list indices: "data.teasers[1].url" -> "data.teasers[*].url".
std::string wildcard_indices(const std::string& path);

// Coverage is recomputed statically from the manifest queries;
// unique_queries comes from the store the manifest was generated from.
RunSummary build_summary(const schema::SchemaModel& schema,
                         const std::vector<suite::TestCase>& manifest,
                         const suite::SuiteResult& result, std::uint64_t unique_queries);

Json summary_to_json(const RunSummary& summary);

// Fixed-width text table, one metric per line, failure groups appended.
std::string render_table(const RunSummary& summary);

}  // namespace gqlharvest::report
