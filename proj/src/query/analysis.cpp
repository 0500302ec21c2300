#include "gqlharvest/query/analysis.hpp"

#include "gqlharvest/errors.hpp"

#include <variant>

namespace gqlharvest::query {
namespace {

std::string join_path(const std::vector<std::string>& path) {
    std::string out;
    for (const std::string& part : path) {
        if (!out.empty()) out += '.';
        out += part;
    }
    return out;
}

bool is_composite(schema::TypeKind kind) {
    return kind == schema::TypeKind::Object || kind == schema::TypeKind::Interface ||
           kind == schema::TypeKind::Union;
}

class TupleWalk {
public:
    TupleWalk(const schema::SchemaModel& schema, const QueryDocument& doc)
        : schema_(schema), doc_(doc) {}

    std::set<schema::SchemaTuple> run() {
        std::string root = schema_.query_type_name();
        if (doc_.operation_kind == OperationKind::Mutation) {
            if (!schema_.mutation_type_name()) {
                throw UnsupportedOperationError("schema declares no mutation root type");
            }
            root = *schema_.mutation_type_name();
        }
        walk(root, doc_.selection_set);
        return std::move(out_);
    }

private:
    void walk(const std::string& parent_type, const SelectionSet& set) {
        const schema::TypeDef& parent = schema_.type(parent_type);
        for (const Selection& sel : set.items) {
            if (const auto* field = std::get_if<Field>(&sel)) {
                walk_field(parent, *field);
            } else if (const auto* spread = std::get_if<FragmentSpread>(&sel)) {
                auto it = doc_.fragments.find(spread->name);
                if (it == doc_.fragments.end()) {
                    throw UndefinedFragmentError("undefined fragment '" + spread->name + "'");
                }
                if (!active_spreads_.insert(spread->name).second) {
                    throw Error("fragment cycle through '" + spread->name + "'");
                }
                walk_narrowed(it->second.type_condition, it->second.selections);
                active_spreads_.erase(spread->name);
            } else if (const auto* inl = std::get_if<InlineFragment>(&sel)) {
                if (inl->type_condition) {
                    walk_narrowed(*inl->type_condition, *inl->selections);
                } else {
                    walk(parent_type, *inl->selections);
                }
            }
        }
    }

    void walk_narrowed(const std::string& condition, const SelectionSet& selections) {
        const schema::TypeDef& target = schema_.type(condition);
        if (!is_composite(target.kind)) {
            throw ReferenceError(
                "fragment condition on " + to_string(target.kind) + " type '" + condition + "'",
                condition);
        }
        walk(condition, selections);
    }

    void walk_field(const schema::TypeDef& parent, const Field& field) {
        path_.push_back(field.response_key());
        if (field.name == "__typename") {
            if (field.nested) {
                throw UnknownFieldError("__typename cannot have a selection set",
                                        join_path(path_));
            }
            path_.pop_back();
            return;
        }
        if (parent.kind == schema::TypeKind::Union) {
            throw UnknownFieldError(
                "cannot select field '" + field.name + "' directly on union '" + parent.name + "'",
                join_path(path_));
        }
        const schema::FieldDef* def = parent.find_field(field.name);
        if (!def) {
            throw UnknownFieldError("type '" + parent.name + "' has no field '" + field.name + "'",
                                    join_path(path_));
        }
        out_.insert({parent.name, field.name});
        const std::string base = def->type.base_name();
        const schema::TypeDef& target = *schema::lookup_type(schema_, base);
        if (field.nested) {
            if (!is_composite(target.kind)) {
                throw UnknownFieldError("field '" + field.name + "' of " + to_string(target.kind) +
                                            " type '" + base + "' cannot have a selection set",
                                        join_path(path_));
            }
            walk(base, *field.nested);
        } else if (is_composite(target.kind)) {
            throw UnknownFieldError("field '" + field.name + "' of " + to_string(target.kind) +
                                        " type '" + base + "' needs a selection set",
                                    join_path(path_));
        }
        path_.pop_back();
    }

    const schema::SchemaModel& schema_;
    const QueryDocument& doc_;
    std::set<schema::SchemaTuple> out_;
    std::vector<std::string> path_;
    std::set<std::string> active_spreads_;
};

}  // namespace

std::set<schema::SchemaTuple> reached_tuples(const schema::SchemaModel& schema,
                                             const QueryDocument& doc) {
    return TupleWalk(schema, doc).run();
}

std::vector<VariableInfo> list_variables(const QueryDocument& doc) {
    std::vector<VariableInfo> out;
    out.reserve(doc.variable_definitions.size());
    for (const VariableDefinition& def : doc.variable_definitions) {
        out.push_back({def.name, def.type, def.type.is_non_null()});
    }
    return out;
}

}  // namespace gqlharvest::query
