#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace gqlharvest::oracle {

enum class CheckKind {
    // Response-level format checks, evaluated before any field check.
    StatusIs200,
    BodyIsValidJsonObject,
    NoErrorsMember,
    // Per-field schema checks.
    Present,
    NotNull,
    IsList,
    IsMap,
    IsString,
    IsBool,
    IsInt,
    IsNumeric,
    EnumMember,
    TypenameEquals,
    TypenameIn,
    // Synthesized by the suite runner when no response was obtained at all.
    Transport,
};

std::string to_string(CheckKind kind);
// Inverse of to_string; throws FormatError on unknown names.
CheckKind check_kind_from_string(std::string_view text);

// One executable assertion. ENUM_MEMBER and TYPENAME_IN carry their allowed
// names in operands; TYPENAME_EQUALS carries exactly one operand.
struct Check {
    CheckKind kind = CheckKind::Present;
    std::vector<std::string> operands;

    bool operator==(const Check&) const = default;
};

}  // namespace gqlharvest::oracle
