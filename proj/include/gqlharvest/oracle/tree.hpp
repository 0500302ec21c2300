#pragma once

#include "gqlharvest/json.hpp"
#include "gqlharvest/oracle/check.hpp"
#include "gqlharvest/query/ast.hpp"
#include "gqlharvest/schema/model.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gqlharvest::oracle {

struct FieldOracle;

// Selections behind an inline fragment (or spread) on a narrowing type
// condition. They apply only when the response object's __typename falls in
// applies_to — the concrete object types the condition can match here.
struct ConditionalBlock {
    std::string type_condition;
    std::vector<std::string> applies_to;
    std::vector<FieldOracle> children;

    bool operator==(const ConditionalBlock&) const;
};

// The expectation for one selected field. checks apply to the field's value
// (PRESENT first); for list fields element_checks[d] holds the checks run on
// every element at list-nesting depth d. children/conditionals descend into
// object-shaped values.
struct FieldOracle {
    std::string response_key;  // alias if the query aliased the field
    std::string field_name;
    std::string parent_type;
    std::string declared_type;  // rendered, e.g. "[Teaser]" or "String!"
    std::vector<Check> checks;
    std::vector<std::vector<Check>> element_checks;
    std::vector<FieldOracle> children;
    std::vector<ConditionalBlock> conditionals;

    bool operator==(const FieldOracle&) const;
};

// The full expectation for one query: the implied format triple (status 200,
// well-formed JSON object body, no errors member) plus one oracle per
// top-level selection.
struct OracleTree {
    std::optional<std::string> operation_name;
    std::string root_type;
    std::vector<FieldOracle> roots;

    bool operator==(const OracleTree&) const = default;
};

// Derives the oracle tree for a query operation against the schema. The tree
// is isomorphic to the selection set after fragment inlining. Throws
// UnknownFieldError / ReferenceError on schema mismatches and
// UnsupportedOperationError for mutation documents.
OracleTree derive_oracles(const schema::SchemaModel& schema, const query::QueryDocument& doc);

// Serialization used by suite manifests. from_json throws FormatError.
Json oracle_tree_to_json(const OracleTree& tree);
OracleTree oracle_tree_from_json(const Json& doc);

}  // namespace gqlharvest::oracle
