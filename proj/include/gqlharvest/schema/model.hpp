#pragma once

#include "gqlharvest/schema/type_ref.hpp"

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace gqlharvest::schema {

enum class TypeKind { Object, Interface, Union, Enum, Scalar, InputObject };

std::string to_string(TypeKind kind);

struct ArgumentDef {
    std::string name;
    TypeRef type;
    bool required = false;  // outermost NON_NULL

    bool operator==(const ArgumentDef&) const = default;
};

struct FieldDef {
    std::string name;
    TypeRef type;
    std::vector<ArgumentDef> arguments;

    bool operator==(const FieldDef&) const = default;
};

struct TypeDef {
    std::string name;
    TypeKind kind = TypeKind::Object;
    std::vector<FieldDef> fields;                     // OBJECT / INTERFACE / INPUT_OBJECT
    std::vector<std::string> enum_values;             // ENUM
    std::vector<std::string> union_members;           // UNION
    std::vector<std::string> implemented_interfaces;  // OBJECT

    const FieldDef* find_field(const std::string& field_name) const;

    bool operator==(const TypeDef&) const = default;
};

// One {object, field} pair of the schema; the unit of schema coverage.
struct SchemaTuple {
    std::string object_name;
    std::string field_name;

    auto operator<=>(const SchemaTuple&) const = default;
};

// Immutable type-system model. Construction validates all invariants; after
// that the model is safe to share read-only across threads.
class SchemaModel {
public:
    // Validates and throws ReferenceError / DuplicateTypeError / FormatError
    // on an inconsistent type system.
    SchemaModel(std::vector<TypeDef> types, std::string query_type_name,
                std::optional<std::string> mutation_type_name);

    const std::map<std::string, TypeDef>& types() const { return types_; }
    // Type names in declaration order.
    const std::vector<std::string>& declaration_order() const { return declaration_order_; }
    const std::string& query_type_name() const { return query_type_name_; }
    const std::optional<std::string>& mutation_type_name() const { return mutation_type_name_; }

    const TypeDef* find_type(const std::string& name) const;
    // Throws ReferenceError when absent.
    const TypeDef& type(const std::string& name) const;

    const TypeDef& query_type() const { return type(query_type_name_); }

    // Object types implementing the given interface, or members of the given
    // union, in declaration order.
    std::vector<std::string> possible_types(const std::string& abstract_type) const;

private:
    void check_invariants() const;

    std::map<std::string, TypeDef> types_;
    std::vector<std::string> declaration_order_;
    std::string query_type_name_;
    std::optional<std::string> mutation_type_name_;
};

// One tuple per declared field of every OBJECT or INTERFACE type (root types
// included). ENUM, UNION, SCALAR and INPUT_OBJECT contribute nothing; the
// __typename meta-field is never a tuple.
std::set<SchemaTuple> tuple_universe(const SchemaModel& schema);

// Type lookup that also resolves the five built-in scalars (which have no
// declaration in the model). Returns nullptr for genuinely unknown names.
const TypeDef* lookup_type(const SchemaModel& schema, const std::string& name);

// Field lookup used by oracle derivation and coverage. Resolves __typename on
// any OBJECT/INTERFACE as a synthetic NON_NULL(String) field. Throws
// UnknownFieldError otherwise.
FieldDef resolve_field(const SchemaModel& schema, const std::string& parent_type,
                       const std::string& field_name);

// Model equality modulo field/enum/member ordering.
bool canonical_equal(const SchemaModel& a, const SchemaModel& b);

}  // namespace gqlharvest::schema
