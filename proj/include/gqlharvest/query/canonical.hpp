#pragma once

#include "gqlharvest/json.hpp"
#include "gqlharvest/query/ast.hpp"
#include "gqlharvest/util/digest.hpp"

#include <string>

namespace gqlharvest::query {

// Identity of one recorded call: query shape plus concrete variable values.
using CanonicalKey = util::Digest;

// Deterministic single-line rendering of a parsed document: argument names
// sorted, literals normalized, whitespace collapsed, fragments appended in
// source order. Two documents that differ only in formatting or argument
// order render identically; field order is preserved.
std::string canonical_text(const QueryDocument& doc);

// SHA-256 over the canonical text and the key-sorted variable values.
// Distinct variable bindings for the same query yield distinct keys. A null
// variables document is treated as an empty object.
CanonicalKey canonicalize(const QueryDocument& doc, const Json& variables);

}  // namespace gqlharvest::query
