#include "gqlharvest/oracle/check.hpp"

#include "gqlharvest/errors.hpp"

#include <array>
#include <utility>

namespace gqlharvest::oracle {
namespace {

constexpr std::array<std::pair<CheckKind, const char*>, 15> kNames{{
    {CheckKind::StatusIs200, "STATUS_IS_200"},
    {CheckKind::BodyIsValidJsonObject, "BODY_IS_VALID_JSON_OBJECT"},
    {CheckKind::NoErrorsMember, "NO_ERRORS_MEMBER"},
    {CheckKind::Present, "PRESENT"},
    {CheckKind::NotNull, "NOT_NULL"},
    {CheckKind::IsList, "IS_LIST"},
    {CheckKind::IsMap, "IS_MAP"},
    {CheckKind::IsString, "IS_STRING"},
    {CheckKind::IsBool, "IS_BOOL"},
    {CheckKind::IsInt, "IS_INT"},
    {CheckKind::IsNumeric, "IS_NUMERIC"},
    {CheckKind::EnumMember, "ENUM_MEMBER"},
    {CheckKind::TypenameEquals, "TYPENAME_EQUALS"},
    {CheckKind::TypenameIn, "TYPENAME_IN"},
    {CheckKind::Transport, "TRANSPORT"},
}};

}  // namespace

std::string to_string(CheckKind kind) {
    for (const auto& [k, name] : kNames) {
        if (k == kind) return name;
    }
    return "UNKNOWN";
}

CheckKind check_kind_from_string(std::string_view text) {
    for (const auto& [k, name] : kNames) {
        if (text == name) return k;
    }
    throw FormatError("unknown check kind \"" + std::string(text) + "\"");
}

}  // namespace gqlharvest::oracle
