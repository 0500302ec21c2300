#include "gqlharvest/report/summary.hpp"

#include "gqlharvest/coverage/coverage.hpp"
#include "gqlharvest/query/parser.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <tuple>

namespace gqlharvest::report {
namespace {

std::string entry_point_of(const std::string& path) {
    if (path.empty()) return "(response)";
    // Paths look like "data.<field>..."; anything else is reported whole.
    const std::string prefix = "data.";
    if (path.rfind(prefix, 0) != 0) return path;
    std::size_t end = prefix.size();
    while (end < path.size() && path[end] != '.' && path[end] != '[') ++end;
    return path.substr(prefix.size(), end - prefix.size());
}

}  // namespace

std::string wildcard_indices(const std::string& path) {
    std::string out;
    out.reserve(path.size());
    for (std::size_t i = 0; i < path.size(); ++i) {
        if (path[i] == '[') {
            std::size_t j = i + 1;
            while (j < path.size() && std::isdigit(static_cast<unsigned char>(path[j]))) ++j;
            if (j < path.size() && path[j] == ']' && j > i + 1) {
                out += "[*]";
                i = j;
                continue;
            }
        }
        out += path[i];
    }
    return out;
}

RunSummary build_summary(const schema::SchemaModel& schema,
                         const std::vector<suite::TestCase>& manifest,
                         const suite::SuiteResult& result, std::uint64_t unique_queries) {
    RunSummary summary;
    summary.types = schema.types().size();
    summary.entry_points = schema.query_type().fields.size();
    summary.unique_queries = unique_queries;
    summary.assertions_evaluated = result.assertions_evaluated;
    summary.passing = result.passing;
    summary.failing = result.failing;

    std::vector<query::QueryDocument> docs;
    docs.reserve(manifest.size());
    for (const suite::TestCase& test_case : manifest) {
        docs.push_back(query::parse_query(test_case.query_text));
    }
    coverage::CoverageReport cov = coverage::coverage_of(docs, schema);
    summary.schema_tuples = static_cast<std::uint64_t>(cov.schema_tuples);
    summary.covered_tuples = static_cast<std::uint64_t>(cov.covered_tuples());
    summary.schema_cov = cov.percent();

    std::map<std::tuple<std::string, std::string, std::string>, FailureGroup> groups;
    for (const suite::CaseResult& case_result : result.cases) {
        for (const oracle::CheckOutcome& outcome : case_result.report.outcomes) {
            if (outcome.verdict != oracle::Verdict::Fail) continue;
            const std::string path = wildcard_indices(outcome.path);
            const std::string entry = entry_point_of(outcome.path);
            const std::string check = oracle::to_string(outcome.check.kind);
            FailureGroup& group = groups[{entry, path, check}];
            group.entry_point = entry;
            group.path = path;
            group.check = check;
            group.occurrences += 1;
            if (std::find(group.case_ids.begin(), group.case_ids.end(), case_result.id) ==
                group.case_ids.end()) {
                group.case_ids.push_back(case_result.id);
            }
        }
    }
    for (auto& [key, group] : groups) {
        std::sort(group.case_ids.begin(), group.case_ids.end());
        summary.failure_groups.push_back(std::move(group));
    }
    return summary;
}

Json summary_to_json(const RunSummary& summary) {
    Json out = Json::object();
    out["TYPES"] = summary.types;
    out["ENTRY_POINTS"] = summary.entry_points;
    out["UNIQUE_QUERIES"] = summary.unique_queries;
    out["ASSERTIONS_EVALUATED"] = summary.assertions_evaluated;
    out["PASSING"] = summary.passing;
    out["FAILING"] = summary.failing;
    out["SCHEMA_TUPLES"] = summary.schema_tuples;
    out["COVERED_TUPLES"] = summary.covered_tuples;
    out["SCHEMA_COV"] = summary.schema_cov;
    Json groups = Json::array();
    for (const FailureGroup& group : summary.failure_groups) {
        Json entry = Json::object();
        entry["entry_point"] = group.entry_point;
        entry["path"] = group.path;
        entry["check"] = group.check;
        entry["occurrences"] = group.occurrences;
        entry["cases"] = group.case_ids;
        groups.push_back(std::move(entry));
    }
    out["failure_groups"] = std::move(groups);
    return out;
}

std::string render_table(const RunSummary& summary) {
    const std::pair<const char*, std::string> rows[] = {
        {"TYPES", std::to_string(summary.types)},
        {"ENTRY_POINTS", std::to_string(summary.entry_points)},
        {"UNIQUE_QUERIES", std::to_string(summary.unique_queries)},
        {"ASSERTIONS_EVALUATED", std::to_string(summary.assertions_evaluated)},
        {"PASSING", std::to_string(summary.passing)},
        {"FAILING", std::to_string(summary.failing)},
        {"SCHEMA_TUPLES", std::to_string(summary.schema_tuples)},
        {"COVERED_TUPLES", std::to_string(summary.covered_tuples)},
        {"SCHEMA_COV", summary.schema_cov},
    };
    std::size_t label_width = 0;
    std::size_t value_width = 0;
    for (const auto& [label, value] : rows) {
        label_width = std::max(label_width, std::string(label).size());
        value_width = std::max(value_width, value.size());
    }
    std::string out;
    for (const auto& [label, value] : rows) {
        std::string line = label;
        line.append(label_width - line.size() + 2, ' ');
        line.append(value_width - value.size(), ' ');
        line += value;
        out += line + "\n";
    }
    if (!summary.failure_groups.empty()) {
        out += "\nfailing checks grouped by location:\n";
        for (const FailureGroup& group : summary.failure_groups) {
            out += "  " + group.entry_point + "  " +
                   (group.path.empty() ? "(response)" : group.path) + "  " + group.check + "  " +
                   std::to_string(group.occurrences) + " failure(s) in " +
                   std::to_string(group.case_ids.size()) + " case(s)\n";
        }
    }
    return out;
}

}  // namespace gqlharvest::report
