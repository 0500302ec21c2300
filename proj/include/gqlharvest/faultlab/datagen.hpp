#pragma once

#include "gqlharvest/faultlab/fault.hpp"
#include "gqlharvest/json.hpp"
#include "gqlharvest/query/ast.hpp"
#include "gqlharvest/schema/model.hpp"

#include <cstdint>
#include <vector>

namespace gqlharvest::faultlab {

// A response body that satisfies every oracle derive_oracles would produce
// for the document: correct kinds everywhere, nullable positions null with
// probability 1/4, list lengths taken from a literal "first" argument when
// present. Deterministic in (schema, doc, seed). Throws what oracle
// derivation throws for documents that do not fit the schema.
Json conformant_response(const schema::SchemaModel& schema, const query::QueryDocument& doc,
                         std::uint64_t seed);

struct SyntheticResponse {
    int status = 200;
    Json body;
};

// conformant_response plus fault application: the response is generated
// clean, then every fault whose target the document reaches (and whose
// trigger holds) rewrites exactly its target locations. variables resolve
// variable references in arguments (list lengths, argument triggers).
SyntheticResponse faulted_response(const schema::SchemaModel& schema,
                                   const query::QueryDocument& doc, std::uint64_t seed,
                                   const std::vector<FaultSpec>& faults, const Json& variables);

}  // namespace gqlharvest::faultlab
