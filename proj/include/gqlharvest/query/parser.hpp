#pragma once

#include "gqlharvest/query/ast.hpp"

#include <string_view>

namespace gqlharvest::query {

// Parses one GraphQL request document (exactly one query or mutation
// operation, plus any fragments). Schema-independent validity is enforced
// here: fragment spreads must resolve, fragment cycles are rejected, used
// variables must be declared. Throws SyntaxError, UndefinedFragmentError or
// UndeclaredVariableError.
QueryDocument parse_query(std::string_view text);

}  // namespace gqlharvest::query
