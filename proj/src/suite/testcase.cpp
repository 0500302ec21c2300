#include "gqlharvest/suite/testcase.hpp"

#include "gqlharvest/errors.hpp"
#include "gqlharvest/query/parser.hpp"
#include "gqlharvest/util/timeutil.hpp"

#include <fstream>

namespace gqlharvest::suite {
namespace {

std::int64_t parse_timestamp(const Json& origin, const char* member) {
    if (!origin.contains(member) || !origin.at(member).is_string()) {
        throw FormatError(std::string("test case origin is missing \"") + member + "\"");
    }
    auto parsed = util::parse_utc(origin.at(member).get<std::string>());
    if (!parsed) {
        throw FormatError(std::string("malformed origin timestamp \"") + member + "\"");
    }
    return *parsed;
}

}  // namespace

std::string case_id(const std::optional<std::string>& operation_name,
                    const query::CanonicalKey& key) {
    return (operation_name ? *operation_name : "anonymous") + "-" + key.hex().substr(0, 8);
}

GenerationResult generate(const std::vector<recorder::QueryRecord>& records,
                          const schema::SchemaModel& schema) {
    GenerationResult result;
    for (const recorder::QueryRecord& record : records) {
        if (record.operation_kind == query::OperationKind::Mutation) {
            result.skipped.push_back(
                {record.key.hex(), record.operation_name, "mutation: excluded from generation"});
            continue;
        }
        TestCase test_case;
        try {
            query::QueryDocument doc = query::parse_query(record.query_text);
            test_case.oracle = oracle::derive_oracles(schema, doc);
        } catch (const Error& e) {
            result.skipped.push_back({record.key.hex(), record.operation_name, e.what()});
            continue;
        }
        test_case.id = case_id(record.operation_name, record.key);
        test_case.query_text = record.query_text;
        test_case.variables = record.variables;
        test_case.operation_name = record.operation_name;
        test_case.origin = {record.times_called, record.created_at, record.updated_at};
        result.cases.push_back(std::move(test_case));
    }
    return result;
}

Json test_case_to_json(const TestCase& test_case) {
    Json out = Json::object();
    out["id"] = test_case.id;
    out["query"] = test_case.query_text;
    out["variables"] = test_case.variables;
    out["operation_name"] =
        test_case.operation_name ? Json(*test_case.operation_name) : Json(nullptr);
    out["oracle"] = oracle::oracle_tree_to_json(test_case.oracle);
    Json origin = Json::object();
    origin["times_called"] = test_case.origin.times_called;
    origin["created_at"] = util::format_utc(test_case.origin.created_at);
    origin["updated_at"] = util::format_utc(test_case.origin.updated_at);
    out["origin"] = origin;
    return out;
}

TestCase test_case_from_json(const Json& doc) {
    if (!doc.is_object()) {
        throw FormatError("test case must be a JSON object");
    }
    for (const char* member : {"id", "query", "variables", "oracle", "origin"}) {
        if (!doc.contains(member)) {
            throw FormatError(std::string("test case is missing \"") + member + "\"");
        }
    }
    TestCase out;
    if (!doc.at("id").is_string()) throw FormatError("test case \"id\" must be a string");
    out.id = doc.at("id").get<std::string>();
    if (!doc.at("query").is_string()) throw FormatError("test case \"query\" must be a string");
    out.query_text = doc.at("query").get<std::string>();
    if (!doc.at("variables").is_object()) {
        throw FormatError("test case \"variables\" must be an object");
    }
    out.variables = doc.at("variables");
    if (doc.contains("operation_name") && !doc.at("operation_name").is_null()) {
        if (!doc.at("operation_name").is_string()) {
            throw FormatError("test case \"operation_name\" must be a string or null");
        }
        out.operation_name = doc.at("operation_name").get<std::string>();
    }
    out.oracle = oracle::oracle_tree_from_json(doc.at("oracle"));
    const Json& origin = doc.at("origin");
    if (!origin.is_object() || !origin.contains("times_called") ||
        !origin.at("times_called").is_number_unsigned()) {
        throw FormatError("test case \"origin\" must carry times_called and timestamps");
    }
    out.origin.times_called = origin.at("times_called").get<std::uint64_t>();
    out.origin.created_at = parse_timestamp(origin, "created_at");
    out.origin.updated_at = parse_timestamp(origin, "updated_at");
    return out;
}

void export_manifest(const std::vector<TestCase>& cases, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) {
        throw StorageError("cannot write manifest " + path.string());
    }
    for (const TestCase& test_case : cases) {
        out << test_case_to_json(test_case).dump() << '\n';
    }
    out.flush();
    if (!out) {
        throw StorageError("manifest write failed: " + path.string());
    }
}

std::vector<TestCase> import_manifest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw StorageError("cannot read manifest " + path.string());
    }
    std::vector<TestCase> out;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (line.empty()) continue;
        Json doc = Json::parse(line, nullptr, /*allow_exceptions=*/false);
        if (doc.is_discarded()) {
            throw FormatError("manifest line " + std::to_string(line_number) +
                              " is not valid JSON");
        }
        out.push_back(test_case_from_json(doc));
    }
    return out;
}

}  // namespace gqlharvest::suite
