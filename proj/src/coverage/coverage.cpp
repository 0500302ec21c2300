#include "gqlharvest/coverage/coverage.hpp"

#include "gqlharvest/errors.hpp"
#include "gqlharvest/query/analysis.hpp"

#include <algorithm>

namespace gqlharvest::coverage {

double CoverageReport::ratio() const {
    return schema_tuples == 0 ? 0.0 : static_cast<double>(covered.size()) / schema_tuples;
}

std::string CoverageReport::percent() const {
    return render_percent(static_cast<std::int64_t>(covered.size()), schema_tuples);
}

std::string render_percent(std::int64_t covered, std::int64_t total) {
    if (total <= 0) {
        return "0.0%";
    }
    // Tenths of a percent with exact integer round-half-up:
    // round(covered / total * 1000) = floor((2*covered*1000 + total) / (2*total)).
    const std::int64_t tenths = (2 * covered * 1000 + total) / (2 * total);
    return std::to_string(tenths / 10) + "." + std::to_string(tenths % 10) + "%";
}

std::set<schema::SchemaTuple> universe_of(const schema::SchemaModel& schema,
                                          const CoverageOptions& options) {
    std::set<schema::SchemaTuple> universe = schema::tuple_universe(schema);
    if (!options.include_mutation_entry_points && schema.mutation_type_name()) {
        std::erase_if(universe, [&](const schema::SchemaTuple& t) {
            return t.object_name == *schema.mutation_type_name();
        });
    }
    return universe;
}

CoverageReport coverage_of(const std::vector<query::QueryDocument>& docs,
                           const schema::SchemaModel& schema, const CoverageOptions& options) {
    std::set<schema::SchemaTuple> universe = universe_of(schema, options);

    CoverageReport report;
    report.schema_tuples = static_cast<int>(universe.size());
    for (const query::QueryDocument& doc : docs) {
        if (doc.operation_kind == query::OperationKind::Mutation) continue;
        std::set<schema::SchemaTuple> reached = query::reached_tuples(schema, doc);
        report.covered.insert(reached.begin(), reached.end());
    }

    const std::string& root = schema.query_type_name();
    report.entry_points_total = static_cast<int>(schema.query_type().fields.size());
    report.entry_points_covered = static_cast<int>(std::count_if(
        report.covered.begin(), report.covered.end(),
        [&](const schema::SchemaTuple& t) { return t.object_name == root; }));
    return report;
}

SuiteDiff diff(const std::set<schema::SchemaTuple>& a, const std::set<schema::SchemaTuple>& b,
               const std::set<schema::SchemaTuple>& universe) {
    SuiteDiff out;
    for (const schema::SchemaTuple& t : a) {
        if (b.count(t)) {
            out.intersection.insert(t);
        } else {
            out.only_in_a.insert(t);
        }
    }
    for (const schema::SchemaTuple& t : b) {
        if (!a.count(t)) out.only_in_b.insert(t);
    }
    for (const schema::SchemaTuple& t : universe) {
        if (!a.count(t) && !b.count(t)) out.uncovered_by_both.insert(t);
    }
    return out;
}

Json tuple_set_to_json(const std::set<schema::SchemaTuple>& tuples) {
    Json out = Json::array();
    for (const schema::SchemaTuple& t : tuples) {  // std::set is already sorted
        Json entry = Json::object();
        entry["object"] = t.object_name;
        entry["field"] = t.field_name;
        out.push_back(std::move(entry));
    }
    return out;
}

std::set<schema::SchemaTuple> tuple_set_from_json(const Json& doc) {
    if (!doc.is_array()) {
        throw FormatError("tuple set must be a JSON array");
    }
    std::set<schema::SchemaTuple> out;
    for (const Json& entry : doc) {
        if (!entry.is_object() || !entry.contains("object") || !entry.contains("field") ||
            !entry.at("object").is_string() || !entry.at("field").is_string()) {
            throw FormatError("tuple entries must carry string \"object\" and \"field\"");
        }
        out.insert(
            {entry.at("object").get<std::string>(), entry.at("field").get<std::string>()});
    }
    return out;
}

Json coverage_report_to_json(const CoverageReport& report) {
    Json out = Json::object();
    out["schema_tuples"] = report.schema_tuples;
    out["covered_tuples"] = report.covered_tuples();
    out["schema_cov"] = report.percent();
    out["entry_points_total"] = report.entry_points_total;
    out["entry_points_covered"] = report.entry_points_covered;
    out["tuples"] = tuple_set_to_json(report.covered);
    return out;
}

Json suite_diff_to_json(const SuiteDiff& diff) {
    Json out = Json::object();
    out["only_in_a"] = tuple_set_to_json(diff.only_in_a);
    out["only_in_b"] = tuple_set_to_json(diff.only_in_b);
    out["intersection"] = tuple_set_to_json(diff.intersection);
    out["uncovered_by_both"] = tuple_set_to_json(diff.uncovered_by_both);
    return out;
}

}  // namespace gqlharvest::coverage
