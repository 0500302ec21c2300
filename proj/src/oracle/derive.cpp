#include "gqlharvest/oracle/tree.hpp"

#include "gqlharvest/errors.hpp"

#include <algorithm>
#include <set>
#include <utility>
#include <variant>

namespace gqlharvest::oracle {

bool ConditionalBlock::operator==(const ConditionalBlock& other) const {
    return type_condition == other.type_condition && applies_to == other.applies_to &&
           children == other.children;
}

bool FieldOracle::operator==(const FieldOracle& other) const {
    return response_key == other.response_key && field_name == other.field_name &&
           parent_type == other.parent_type && declared_type == other.declared_type &&
           checks == other.checks && element_checks == other.element_checks &&
           children == other.children && conditionals == other.conditionals;
}

namespace {

using query::Field;
using query::FragmentSpread;
using query::InlineFragment;
using query::Selection;
using query::SelectionSet;
using schema::TypeDef;
using schema::TypeKind;
using schema::TypeRef;

bool is_composite(TypeKind kind) {
    return kind == TypeKind::Object || kind == TypeKind::Interface || kind == TypeKind::Union;
}

struct DerivedSet {
    std::vector<FieldOracle> children;
    std::vector<ConditionalBlock> conditionals;
};

class Deriver {
public:
    Deriver(const schema::SchemaModel& schema, const query::QueryDocument& doc)
        : schema_(schema), doc_(doc) {}

    OracleTree run() {
        if (doc_.operation_kind == query::OperationKind::Mutation) {
            throw UnsupportedOperationError("oracle derivation covers query operations only");
        }
        OracleTree tree;
        tree.operation_name = doc_.operation_name;
        tree.root_type = schema_.query_type_name();
        DerivedSet root = derive_set(tree.root_type, doc_.selection_set);
        tree.roots = std::move(root.children);
        if (!root.conditionals.empty()) {
            // The root type is a concrete object; narrowing conditions on it
            // are merged or rejected in derive_set, never left conditional.
            throw ReferenceError("conditional selection on the root type", tree.root_type);
        }
        return tree;
    }

private:
    DerivedSet derive_set(const std::string& parent_type, const SelectionSet& set) {
        const TypeDef& parent = schema_.type(parent_type);
        DerivedSet out;
        for (const Selection& sel : set.items) {
            if (const auto* field = std::get_if<Field>(&sel)) {
                path_.push_back(field->response_key());
                out.children.push_back(derive_field(parent, *field));
                path_.pop_back();
            } else if (const auto* spread = std::get_if<FragmentSpread>(&sel)) {
                auto it = doc_.fragments.find(spread->name);
                if (it == doc_.fragments.end()) {
                    throw UndefinedFragmentError("undefined fragment '" + spread->name + "'");
                }
                if (!active_spreads_.insert(spread->name).second) {
                    throw Error("fragment cycle through '" + spread->name + "'");
                }
                merge_narrowed(out, parent, it->second.type_condition, it->second.selections);
                active_spreads_.erase(spread->name);
            } else if (const auto* inl = std::get_if<InlineFragment>(&sel)) {
                if (!inl->type_condition) {
                    DerivedSet sub = derive_set(parent_type, *inl->selections);
                    append(out, std::move(sub));
                } else {
                    merge_narrowed(out, parent, *inl->type_condition, *inl->selections);
                }
            }
        }
        return out;
    }

    // A type condition on a concrete parent either always matches (merged
    // unconditionally) or can never match (rejected). On an abstract parent
    // it becomes a ConditionalBlock keyed on the possible concrete types.
    void merge_narrowed(DerivedSet& out, const TypeDef& parent, const std::string& condition,
                        const SelectionSet& selections) {
        if (condition == parent.name) {
            append(out, derive_set(condition, selections));
            return;
        }
        const TypeDef& target = schema_.type(condition);
        if (!is_composite(target.kind)) {
            throw ReferenceError(
                "fragment condition on " + to_string(target.kind) + " type '" + condition + "'",
                condition);
        }
        if (parent.kind == TypeKind::Object) {
            if (!concrete_matches(parent.name, target)) {
                throw ReferenceError("fragment on '" + condition + "' can never match '" +
                                         parent.name + "'",
                                     condition);
            }
            append(out, derive_set(condition, selections));
            return;
        }
        std::vector<std::string> parent_possible = schema_.possible_types(parent.name);
        std::vector<std::string> applies;
        if (target.kind == TypeKind::Object) {
            if (std::find(parent_possible.begin(), parent_possible.end(), condition) !=
                parent_possible.end()) {
                applies.push_back(condition);
            }
        } else {
            for (const std::string& name : schema_.possible_types(condition)) {
                if (std::find(parent_possible.begin(), parent_possible.end(), name) !=
                    parent_possible.end()) {
                    applies.push_back(name);
                }
            }
        }
        if (applies.empty()) {
            throw ReferenceError(
                "fragment on '" + condition + "' can never match '" + parent.name + "'", condition);
        }
        DerivedSet sub = derive_set(condition, selections);
        ConditionalBlock block;
        block.type_condition = condition;
        block.applies_to = applies;
        block.children = std::move(sub.children);
        out.conditionals.push_back(std::move(block));
        // Conditions nested inside the block dispatch on the same observed
        // __typename; narrow their applicability to the outer block's.
        for (ConditionalBlock& nested : sub.conditionals) {
            std::vector<std::string> narrowed;
            for (const std::string& name : nested.applies_to) {
                if (std::find(applies.begin(), applies.end(), name) != applies.end()) {
                    narrowed.push_back(name);
                }
            }
            nested.applies_to = std::move(narrowed);
            if (!nested.applies_to.empty()) out.conditionals.push_back(std::move(nested));
        }
    }

    bool concrete_matches(const std::string& object_name, const TypeDef& condition) {
        if (condition.kind == TypeKind::Object) return condition.name == object_name;
        std::vector<std::string> possible = schema_.possible_types(condition.name);
        return std::find(possible.begin(), possible.end(), object_name) != possible.end();
    }

    FieldOracle derive_field(const TypeDef& parent, const Field& field) {
        FieldOracle oracle;
        oracle.response_key = field.response_key();
        oracle.field_name = field.name;
        oracle.parent_type = parent.name;
        if (field.name == "__typename") {
            if (field.nested) {
                throw UnknownFieldError("__typename cannot have a selection set", join_path());
            }
            oracle.declared_type = "String!";
            if (parent.kind == TypeKind::Object) {
                oracle.checks.push_back({CheckKind::TypenameEquals, {parent.name}});
            } else {
                oracle.checks.push_back({CheckKind::TypenameIn, schema_.possible_types(parent.name)});
            }
            return oracle;
        }
        if (parent.kind == TypeKind::Union) {
            throw UnknownFieldError(
                "cannot select field '" + field.name + "' directly on union '" + parent.name + "'",
                join_path());
        }
        const schema::FieldDef* def = parent.find_field(field.name);
        if (!def) {
            throw UnknownFieldError(
                "type '" + parent.name + "' has no field '" + field.name + "'", join_path());
        }
        oracle.declared_type = def->type.to_string();

        oracle.checks.push_back({CheckKind::Present, {}});
        const std::string base = def->type.base_name();
        const TypeDef& target = *schema::lookup_type(schema_, base);
        derive_value_checks(def->type, target, oracle.checks, oracle.element_checks);

        if (field.nested) {
            if (!is_composite(target.kind)) {
                throw UnknownFieldError("field '" + field.name + "' of " + to_string(target.kind) +
                                            " type '" + base + "' cannot have a selection set",
                                        join_path());
            }
            DerivedSet sub = derive_set(base, *field.nested);
            oracle.children = std::move(sub.children);
            oracle.conditionals = std::move(sub.conditionals);
        } else if (is_composite(target.kind)) {
            throw UnknownFieldError("field '" + field.name + "' of " + to_string(target.kind) +
                                        " type '" + base + "' needs a selection set",
                                    join_path());
        }
        // Singular object-shaped values get a map check only when something
        // is selected below them; list elements never do (a non-object
        // element still fails, with a synthesized IS_MAP outcome).
        if (oracle.element_checks.empty() && is_composite(target.kind) &&
            !(oracle.children.empty() && oracle.conditionals.empty())) {
            oracle.checks.push_back({CheckKind::IsMap, {}});
        }
        return oracle;
    }

    // Unwraps the declared type into value checks (after PRESENT) and
    // per-depth element checks for list types.
    void derive_value_checks(const TypeRef& declared, const TypeDef& base_def,
                             std::vector<Check>& checks,
                             std::vector<std::vector<Check>>& element_checks) {
        const TypeRef* ref = &declared;
        if (ref->is_non_null()) {
            checks.push_back({CheckKind::NotNull, {}});
            ref = &ref->inner();
        }
        if (ref->kind() == TypeRef::Kind::Named) {
            append_kind_check(checks, base_def);
            return;
        }
        checks.push_back({CheckKind::IsList, {}});
        ref = &ref->inner();
        while (true) {
            std::vector<Check> level;
            if (ref->is_non_null()) {
                level.push_back({CheckKind::NotNull, {}});
                ref = &ref->inner();
            }
            if (ref->kind() == TypeRef::Kind::List) {
                level.push_back({CheckKind::IsList, {}});
                element_checks.push_back(std::move(level));
                ref = &ref->inner();
                continue;
            }
            append_kind_check(level, base_def);
            element_checks.push_back(std::move(level));
            return;
        }
    }

    void append_kind_check(std::vector<Check>& checks, const TypeDef& base_def) {
        const std::string& name = base_def.name;
        if (name == "Int") {
            checks.push_back({CheckKind::IsInt, {}});
        } else if (name == "Float") {
            checks.push_back({CheckKind::IsNumeric, {}});
        } else if (name == "String" || name == "ID") {
            checks.push_back({CheckKind::IsString, {}});
        } else if (name == "Boolean") {
            checks.push_back({CheckKind::IsBool, {}});
        } else if (base_def.kind == TypeKind::Enum) {
            checks.push_back({CheckKind::EnumMember, base_def.enum_values});
        }
        // Custom scalars are opaque (nullability only); composite kinds get
        // their map check at the field level, not here.
    }

    static void append(DerivedSet& out, DerivedSet&& sub) {
        for (FieldOracle& child : sub.children) out.children.push_back(std::move(child));
        for (ConditionalBlock& block : sub.conditionals) {
            out.conditionals.push_back(std::move(block));
        }
    }

    std::string join_path() const {
        std::string out;
        for (const std::string& part : path_) {
            if (!out.empty()) out += '.';
            out += part;
        }
        return out;
    }

    const schema::SchemaModel& schema_;
    const query::QueryDocument& doc_;
    std::vector<std::string> path_;
    std::set<std::string> active_spreads_;
};

}  // namespace

OracleTree derive_oracles(const schema::SchemaModel& schema, const query::QueryDocument& doc) {
    return Deriver(schema, doc).run();
}

}  // namespace gqlharvest::oracle
