#pragma once

#include "gqlharvest/json.hpp"
#include "gqlharvest/schema/model.hpp"

namespace gqlharvest::schema {

// Builds a SchemaModel from a standard introspection result (the
// data.__schema envelope; a bare __schema object is also accepted).
// Built-in scalars and __-prefixed meta types are dropped. Throws FormatError
// when the envelope or a member has the wrong shape.
SchemaModel ingest_introspection(const Json& introspection_document);

// Renders the full introspection response document for a model, as a GraphQL
// server would answer the standard introspection query.
Json render_introspection(const SchemaModel& schema);

// The standard introspection query text (sent by `generate` when the schema
// source is an endpoint).
extern const char* const kIntrospectionQuery;

}  // namespace gqlharvest::schema
