#pragma once

#include "gqlharvest/json.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gqlharvest::faultlab {

// The injectable schema-fault catalog. The first five corrupt one field's
// value in an otherwise conformant response; the last two corrupt the
// response envelope when the request reaches the target entry point.
enum class FaultKind {
    NullNonnullField,  // NULL_NONNULL_FIELD
    WrongScalarType,   // WRONG_SCALAR_TYPE
    MissingField,      // MISSING_FIELD
    NonMemberEnum,     // NON_MEMBER_ENUM
    ListAsScalar,      // LIST_AS_SCALAR
    ErrorsMember,      // ERRORS_MEMBER
    Http5xx,           // HTTP_5XX
};

std::string to_string(FaultKind kind);
FaultKind fault_kind_from_string(std::string_view text);  // FormatError

// Optional predicate limiting where the fault fires. Exactly one of field /
// argument is set: field compares a sibling field's (deterministically
// generated) value, argument compares one of the target field's argument
// values from the incoming request.
struct FaultTrigger {
    std::string field;
    std::string argument;
    Json equals;

    bool operator==(const FaultTrigger&) const = default;
};

// One fault at one (object, field) target. Entry-point faults name the
// query root as the object.
struct FaultSpec {
    std::string id;
    FaultKind kind = FaultKind::NullNonnullField;
    std::string object_name;
    std::string field_name;
    std::optional<FaultTrigger> trigger;

    bool operator==(const FaultSpec&) const = default;
};

// {"id", "kind", "target": {"object", "field"}, "trigger"?: {"field"|"arg",
// "equals"}}.
Json fault_spec_to_json(const FaultSpec& spec);
FaultSpec fault_spec_from_json(const Json& doc);  // FormatError

}  // namespace gqlharvest::faultlab
