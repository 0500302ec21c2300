#pragma once

#include "gqlharvest/json.hpp"
#include "gqlharvest/schema/type_ref.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace gqlharvest::query {

// Literal or variable reference appearing in arguments and default values.
// Enum literals are distinct from strings (they print unquoted).
class Value {
public:
    enum class Kind { Null, Int, Float, String, Bool, Enum, Variable, List, Object };

    static Value null();
    static Value integer(std::int64_t v);
    static Value floating(double v);
    static Value string(std::string v);
    static Value boolean(bool v);
    static Value enum_value(std::string name);
    static Value variable(std::string name);
    static Value list(std::vector<Value> items);
    static Value object(std::vector<std::pair<std::string, Value>> fields);

    Kind kind() const { return kind_; }
    std::int64_t as_int() const { return int_; }
    double as_float() const { return float_; }
    bool as_bool() const { return bool_; }
    // String content, enum name or variable name, depending on kind.
    const std::string& text() const { return text_; }
    const std::vector<Value>& items() const { return list_; }
    const std::vector<std::pair<std::string, Value>>& fields() const { return object_; }

    // Canonical GraphQL rendering (object keys sorted, shortest float form).
    std::string to_string() const;

    // Plain JSON value; variables are resolved from the given document and
    // enum names become JSON strings. Unbound variables map to null.
    Json to_json(const Json& variables) const;

    bool operator==(const Value&) const = default;

private:
    Kind kind_ = Kind::Null;
    std::int64_t int_ = 0;
    double float_ = 0.0;
    bool bool_ = false;
    std::string text_;
    std::vector<Value> list_;
    std::vector<std::pair<std::string, Value>> object_;
};

struct Argument {
    std::string name;
    Value value;

    bool operator==(const Argument&) const = default;
};

struct SelectionSet;

struct Field {
    std::optional<std::string> alias;
    std::string name;
    std::vector<Argument> arguments;
    std::unique_ptr<SelectionSet> nested;  // null for leaf fields

    Field();
    Field(const Field& other);
    Field(Field&&) noexcept;
    Field& operator=(const Field& other);
    Field& operator=(Field&&) noexcept;
    ~Field();

    const std::string& response_key() const { return alias ? *alias : name; }
};

struct FragmentSpread {
    std::string name;
};

struct InlineFragment {
    std::optional<std::string> type_condition;
    std::unique_ptr<SelectionSet> selections;

    InlineFragment();
    InlineFragment(const InlineFragment& other);
    InlineFragment(InlineFragment&&) noexcept;
    InlineFragment& operator=(const InlineFragment& other);
    InlineFragment& operator=(InlineFragment&&) noexcept;
    ~InlineFragment();
};

using Selection = std::variant<Field, FragmentSpread, InlineFragment>;

struct SelectionSet {
    std::vector<Selection> items;
};

struct VariableDefinition {
    std::string name;
    schema::TypeRef type;
    std::optional<Value> default_value;
};

struct FragmentDefinition {
    std::string type_condition;
    SelectionSet selections;
};

enum class OperationKind { Query, Mutation };

std::string to_string(OperationKind kind);

// One parsed GraphQL request document: a single operation plus its fragments.
struct QueryDocument {
    OperationKind operation_kind = OperationKind::Query;
    std::optional<std::string> operation_name;
    std::vector<VariableDefinition> variable_definitions;
    SelectionSet selection_set;
    std::map<std::string, FragmentDefinition> fragments;
    std::vector<std::string> fragment_order;  // appearance order in the source
};

// Deep copy helpers for the boxed selection nodes.
std::unique_ptr<SelectionSet> clone(const SelectionSet& set);

// Replaces every fragment spread by a type-conditioned inline fragment with
// the fragment's selections. The result has no spreads.
SelectionSet inline_fragments(const SelectionSet& set, const QueryDocument& doc);

}  // namespace gqlharvest::query
