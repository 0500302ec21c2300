#pragma once

#include "gqlharvest/query/ast.hpp"
#include "gqlharvest/schema/model.hpp"

#include <set>
#include <string>
#include <vector>

namespace gqlharvest::query {

// Static walk of the document against a schema. Returns every {type, field}
// tuple the document selects, attributed to the type the selection is made
// on: interface fields count for the interface, fields inside a narrowing
// fragment count for the narrowed type. __typename never contributes.
//
// Throws UnknownFieldError (carrying the dotted query path) when a selection
// does not fit the schema, UndefinedFragmentError / ReferenceError on
// dangling references, and UnsupportedOperationError for a mutation against
// a schema without a mutation root.
std::set<schema::SchemaTuple> reached_tuples(const schema::SchemaModel& schema,
                                             const QueryDocument& doc);

// One declared variable of the operation.
struct VariableInfo {
    std::string name;
    schema::TypeRef type;
    bool required = false;  // outermost NON_NULL

    bool operator==(const VariableInfo&) const = default;
};

// The operation's declared variables in declaration order.
std::vector<VariableInfo> list_variables(const QueryDocument& doc);

}  // namespace gqlharvest::query
