#pragma once

#include "gqlharvest/json.hpp"
#include "gqlharvest/query/ast.hpp"
#include "gqlharvest/schema/model.hpp"

#include <set>
#include <string>
#include <vector>

namespace gqlharvest::coverage {

// Schema coverage of a set of documents: |covered| / |universe|, where the
// universe is every {object, field} tuple of the schema. Tuples on the
// mutation root are excluded from the universe unless asked for, matching
// the generated suite (queries only).
struct CoverageReport {
    int schema_tuples = 0;
    std::set<schema::SchemaTuple> covered;
    int entry_points_total = 0;    // fields on the Query root
    int entry_points_covered = 0;  // of those, reached by some document

    int covered_tuples() const { return static_cast<int>(covered.size()); }
    double ratio() const;
    // "30.8%": one decimal, round half up.
    std::string percent() const;

    bool operator==(const CoverageReport&) const = default;
};

struct CoverageOptions {
    bool include_mutation_entry_points = false;
};

// The universe coverage is measured against: every schema tuple, minus the
// mutation root's tuples unless included.
std::set<schema::SchemaTuple> universe_of(const schema::SchemaModel& schema,
                                          const CoverageOptions& options = {});

// Static coverage: the union of reached_tuples over the documents. Mutation
// documents contribute nothing. Throws what reached_tuples throws for a
// document that does not fit the schema.
CoverageReport coverage_of(const std::vector<query::QueryDocument>& docs,
                           const schema::SchemaModel& schema, const CoverageOptions& options = {});

// The four-way partition of a universe by two covered sets.
struct SuiteDiff {
    std::set<schema::SchemaTuple> only_in_a;
    std::set<schema::SchemaTuple> only_in_b;
    std::set<schema::SchemaTuple> intersection;
    std::set<schema::SchemaTuple> uncovered_by_both;

    bool operator==(const SuiteDiff&) const = default;
};

SuiteDiff diff(const std::set<schema::SchemaTuple>& a, const std::set<schema::SchemaTuple>& b,
               const std::set<schema::SchemaTuple>& universe);

// Integer tenths-of-a-percent with round-half-up, rendered "48.7%".
std::string render_percent(std::int64_t covered, std::int64_t total);

// Tuple sets serialize as arrays of {"object", "field"}, sorted.
Json tuple_set_to_json(const std::set<schema::SchemaTuple>& tuples);
std::set<schema::SchemaTuple> tuple_set_from_json(const Json& doc);  // FormatError

Json coverage_report_to_json(const CoverageReport& report);
Json suite_diff_to_json(const SuiteDiff& diff);

}  // namespace gqlharvest::coverage
