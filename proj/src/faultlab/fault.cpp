#include "gqlharvest/faultlab/fault.hpp"

#include "gqlharvest/errors.hpp"

#include <array>
#include <utility>

namespace gqlharvest::faultlab {
namespace {

constexpr std::array<std::pair<FaultKind, const char*>, 7> kNames{{
    {FaultKind::NullNonnullField, "NULL_NONNULL_FIELD"},
    {FaultKind::WrongScalarType, "WRONG_SCALAR_TYPE"},
    {FaultKind::MissingField, "MISSING_FIELD"},
    {FaultKind::NonMemberEnum, "NON_MEMBER_ENUM"},
    {FaultKind::ListAsScalar, "LIST_AS_SCALAR"},
    {FaultKind::ErrorsMember, "ERRORS_MEMBER"},
    {FaultKind::Http5xx, "HTTP_5XX"},
}};

}  // namespace

std::string to_string(FaultKind kind) {
    for (const auto& [value, name] : kNames) {
        if (value == kind) return name;
    }
    return {};
}

FaultKind fault_kind_from_string(std::string_view text) {
    for (const auto& [value, name] : kNames) {
        if (text == name) return value;
    }
    throw FormatError("unknown fault kind \"" + std::string(text) + "\"");
}

Json fault_spec_to_json(const FaultSpec& spec) {
    Json out = Json::object();
    out["id"] = spec.id;
    out["kind"] = to_string(spec.kind);
    Json target = Json::object();
    target["object"] = spec.object_name;
    target["field"] = spec.field_name;
    out["target"] = std::move(target);
    if (spec.trigger) {
        Json trigger = Json::object();
        if (!spec.trigger->field.empty()) {
            trigger["field"] = spec.trigger->field;
        } else {
            trigger["arg"] = spec.trigger->argument;
        }
        trigger["equals"] = spec.trigger->equals;
        out["trigger"] = std::move(trigger);
    }
    return out;
}

FaultSpec fault_spec_from_json(const Json& doc) {
    if (!doc.is_object() || !doc.contains("id") || !doc.contains("kind") ||
        !doc.contains("target")) {
        throw FormatError("fault spec must carry id, kind and target");
    }
    FaultSpec spec;
    if (!doc.at("id").is_string()) throw FormatError("fault \"id\" must be a string");
    spec.id = doc.at("id").get<std::string>();
    if (!doc.at("kind").is_string()) throw FormatError("fault \"kind\" must be a string");
    spec.kind = fault_kind_from_string(doc.at("kind").get<std::string>());
    const Json& target = doc.at("target");
    if (!target.is_object() || !target.contains("object") || !target.contains("field") ||
        !target.at("object").is_string() || !target.at("field").is_string()) {
        throw FormatError("fault \"target\" must carry string \"object\" and \"field\"");
    }
    spec.object_name = target.at("object").get<std::string>();
    spec.field_name = target.at("field").get<std::string>();
    if (doc.contains("trigger")) {
        const Json& trigger = doc.at("trigger");
        if (!trigger.is_object() || !trigger.contains("equals") ||
            trigger.contains("field") == trigger.contains("arg")) {
            throw FormatError(
                "fault \"trigger\" must carry \"equals\" and exactly one of \"field\" or \"arg\"");
        }
        FaultTrigger parsed;
        if (trigger.contains("field")) {
            if (!trigger.at("field").is_string()) {
                throw FormatError("trigger \"field\" must be a string");
            }
            parsed.field = trigger.at("field").get<std::string>();
        } else {
            if (!trigger.at("arg").is_string()) {
                throw FormatError("trigger \"arg\" must be a string");
            }
            parsed.argument = trigger.at("arg").get<std::string>();
        }
        parsed.equals = trigger.at("equals");
        spec.trigger = std::move(parsed);
    }
    return spec;
}

}  // namespace gqlharvest::faultlab
