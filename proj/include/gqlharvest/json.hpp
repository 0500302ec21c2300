#pragma once

#include <nlohmann/json.hpp>

#include <string>

namespace gqlharvest {

// Insertion-ordered JSON is the default document type so that serialized
// artifacts (journals, manifests, reports) are byte-stable across runs.
using Json = nlohmann::ordered_json;

// Compact dump with every object's keys sorted recursively. Used wherever a
// canonical byte form is required (dedup keys, tuple-set files).
std::string canonical_dump(const Json& value);

}  // namespace gqlharvest
