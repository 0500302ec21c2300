#pragma once

#include "gqlharvest/json.hpp"
#include "gqlharvest/oracle/tree.hpp"
#include "gqlharvest/recorder/store.hpp"
#include "gqlharvest/schema/model.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace gqlharvest::suite {

// Call metadata carried over from the originating QueryRecord.
struct TestOrigin {
    std::uint64_t times_called = 0;
    std::int64_t created_at = 0;  // UTC unix seconds
    std::int64_t updated_at = 0;

    bool operator==(const TestOrigin&) const = default;
};

// One replayable test: the harvested request plus its derived oracle tree.
// id is the operation name (or "anonymous") joined with a short prefix of
// the canonical key, so ids are stable across runs and across machines.
struct TestCase {
    std::string id;
    std::string query_text;
    Json variables = Json::object();
    std::optional<std::string> operation_name;
    oracle::OracleTree oracle;
    TestOrigin origin;

    bool operator==(const TestCase&) const = default;
};

// A record that produced no test case, and why: mutations are excluded by
// design; stale records no longer fit the schema.
struct GenerationIssue {
    std::string key;  // hex digest
    std::optional<std::string> operation_name;
    std::string reason;

    bool operator==(const GenerationIssue&) const = default;
};

struct GenerationResult {
    std::vector<TestCase> cases;
    std::vector<GenerationIssue> skipped;
};

std::string case_id(const std::optional<std::string>& operation_name,
                    const query::CanonicalKey& key);

// One test case per QUERY record, in the order given (export order).
// Mutations and records that fail to parse or to derive are reported in
// skipped, never fatally.
GenerationResult generate(const std::vector<recorder::QueryRecord>& records,
                          const schema::SchemaModel& schema);

// Manifest lines: {id, query, variables, operation_name, oracle, origin}.
Json test_case_to_json(const TestCase& test_case);
TestCase test_case_from_json(const Json& doc);  // FormatError

// JSON-Lines manifest; import(export(x)) == x. Throws StorageError on IO
// failure and FormatError on malformed lines.
void export_manifest(const std::vector<TestCase>& cases, const std::filesystem::path& path);
std::vector<TestCase> import_manifest(const std::filesystem::path& path);

}  // namespace gqlharvest::suite
