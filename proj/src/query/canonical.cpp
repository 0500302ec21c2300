#include "gqlharvest/query/canonical.hpp"

#include <algorithm>
#include <variant>

namespace gqlharvest::query {
namespace {

void write_selection_set(std::string& out, const SelectionSet& set);

void write_arguments(std::string& out, const std::vector<Argument>& arguments) {
    if (arguments.empty()) return;
    std::vector<const Argument*> sorted;
    sorted.reserve(arguments.size());
    for (const Argument& arg : arguments) sorted.push_back(&arg);
    std::sort(sorted.begin(), sorted.end(),
              [](const Argument* a, const Argument* b) { return a->name < b->name; });
    out += '(';
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (i > 0) out += ',';
        out += sorted[i]->name;
        out += ':';
        out += sorted[i]->value.to_string();
    }
    out += ')';
}

void write_field(std::string& out, const Field& field) {
    if (field.alias) {
        out += *field.alias;
        out += ':';
    }
    out += field.name;
    write_arguments(out, field.arguments);
    if (field.nested) write_selection_set(out, *field.nested);
}

void write_selection_set(std::string& out, const SelectionSet& set) {
    out += '{';
    bool first = true;
    for (const Selection& sel : set.items) {
        if (!first) out += ' ';
        first = false;
        if (const auto* field = std::get_if<Field>(&sel)) {
            write_field(out, *field);
        } else if (const auto* spread = std::get_if<FragmentSpread>(&sel)) {
            out += "...";
            out += spread->name;
        } else if (const auto* inl = std::get_if<InlineFragment>(&sel)) {
            out += "...";
            if (inl->type_condition) {
                out += "on ";
                out += *inl->type_condition;
            }
            write_selection_set(out, *inl->selections);
        }
    }
    out += '}';
}

}  // namespace

std::string canonical_text(const QueryDocument& doc) {
    std::string out = to_string(doc.operation_kind);
    if (doc.operation_name) {
        out += ' ';
        out += *doc.operation_name;
    }
    if (!doc.variable_definitions.empty()) {
        out += '(';
        for (std::size_t i = 0; i < doc.variable_definitions.size(); ++i) {
            const VariableDefinition& def = doc.variable_definitions[i];
            if (i > 0) out += ',';
            out += '$';
            out += def.name;
            out += ':';
            out += def.type.to_string();
            if (def.default_value) {
                out += '=';
                out += def.default_value->to_string();
            }
        }
        out += ')';
    }
    write_selection_set(out, doc.selection_set);
    for (const std::string& name : doc.fragment_order) {
        out += " fragment ";
        out += name;
        out += " on ";
        out += doc.fragments.at(name).type_condition;
        write_selection_set(out, doc.fragments.at(name).selections);
    }
    return out;
}

CanonicalKey canonicalize(const QueryDocument& doc, const Json& variables) {
    const Json vars = variables.is_null() ? Json::object() : variables;
    return util::sha256(canonical_text(doc) + "\n" + canonical_dump(vars));
}

}  // namespace gqlharvest::query
