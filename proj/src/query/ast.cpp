#include "gqlharvest/query/ast.hpp"

#include "gqlharvest/errors.hpp"

#include <algorithm>
#include <charconv>

namespace gqlharvest::query {

Value Value::null() {
    return Value{};
}

Value Value::integer(std::int64_t v) {
    Value x;
    x.kind_ = Kind::Int;
    x.int_ = v;
    return x;
}

Value Value::floating(double v) {
    Value x;
    x.kind_ = Kind::Float;
    x.float_ = v;
    return x;
}

Value Value::string(std::string v) {
    Value x;
    x.kind_ = Kind::String;
    x.text_ = std::move(v);
    return x;
}

Value Value::boolean(bool v) {
    Value x;
    x.kind_ = Kind::Bool;
    x.bool_ = v;
    return x;
}

Value Value::enum_value(std::string name) {
    Value x;
    x.kind_ = Kind::Enum;
    x.text_ = std::move(name);
    return x;
}

Value Value::variable(std::string name) {
    Value x;
    x.kind_ = Kind::Variable;
    x.text_ = std::move(name);
    return x;
}

Value Value::list(std::vector<Value> items) {
    Value x;
    x.kind_ = Kind::List;
    x.list_ = std::move(items);
    return x;
}

Value Value::object(std::vector<std::pair<std::string, Value>> fields) {
    Value x;
    x.kind_ = Kind::Object;
    x.object_ = std::move(fields);
    return x;
}

namespace {

std::string escape_string(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            case '\b': out += "\\b"; break;
            case '\f': out += "\\f"; break;
            default: out.push_back(c);
        }
    }
    out.push_back('"');
    return out;
}

std::string shortest_float(double v) {
    char buf[32];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    std::string s(buf, p);
    // Keep floats visually distinct from ints in the canonical text.
    if (s.find('.') == std::string::npos && s.find('e') == std::string::npos &&
        s.find("inf") == std::string::npos && s.find("nan") == std::string::npos) {
        s += ".0";
    }
    return s;
}

}  // namespace

std::string Value::to_string() const {
    switch (kind_) {
        case Kind::Null: return "null";
        case Kind::Int: return std::to_string(int_);
        case Kind::Float: return shortest_float(float_);
        case Kind::String: return escape_string(text_);
        case Kind::Bool: return bool_ ? "true" : "false";
        case Kind::Enum: return text_;
        case Kind::Variable: return "$" + text_;
        case Kind::List: {
            std::string out = "[";
            for (std::size_t i = 0; i < list_.size(); ++i) {
                if (i) {
                    out += ", ";
                }
                out += list_[i].to_string();
            }
            return out + "]";
        }
        case Kind::Object: {
            auto sorted = object_;
            std::sort(sorted.begin(), sorted.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            std::string out = "{";
            for (std::size_t i = 0; i < sorted.size(); ++i) {
                if (i) {
                    out += ", ";
                }
                out += sorted[i].first + ": " + sorted[i].second.to_string();
            }
            return out + "}";
        }
    }
    return {};
}

Json Value::to_json(const Json& variables) const {
    switch (kind_) {
        case Kind::Null: return nullptr;
        case Kind::Int: return int_;
        case Kind::Float: return float_;
        case Kind::String: return text_;
        case Kind::Bool: return bool_;
        case Kind::Enum: return text_;
        case Kind::Variable:
            if (variables.is_object() && variables.contains(text_)) {
                return variables.at(text_);
            }
            return nullptr;
        case Kind::List: {
            Json out = Json::array();
            for (const auto& v : list_) {
                out.push_back(v.to_json(variables));
            }
            return out;
        }
        case Kind::Object: {
            Json out = Json::object();
            for (const auto& [k, v] : object_) {
                out[k] = v.to_json(variables);
            }
            return out;
        }
    }
    return nullptr;
}

Field::Field() = default;
Field::Field(Field&&) noexcept = default;
Field& Field::operator=(Field&&) noexcept = default;
Field::~Field() = default;

Field::Field(const Field& other)
    : alias(other.alias),
      name(other.name),
      arguments(other.arguments),
      nested(other.nested ? clone(*other.nested) : nullptr) {}

Field& Field::operator=(const Field& other) {
    if (this != &other) {
        alias = other.alias;
        name = other.name;
        arguments = other.arguments;
        nested = other.nested ? clone(*other.nested) : nullptr;
    }
    return *this;
}

InlineFragment::InlineFragment() = default;
InlineFragment::InlineFragment(InlineFragment&&) noexcept = default;
InlineFragment& InlineFragment::operator=(InlineFragment&&) noexcept = default;
InlineFragment::~InlineFragment() = default;

InlineFragment::InlineFragment(const InlineFragment& other)
    : type_condition(other.type_condition),
      selections(other.selections ? clone(*other.selections) : nullptr) {}

InlineFragment& InlineFragment::operator=(const InlineFragment& other) {
    if (this != &other) {
        type_condition = other.type_condition;
        selections = other.selections ? clone(*other.selections) : nullptr;
    }
    return *this;
}

std::string to_string(OperationKind kind) {
    return kind == OperationKind::Query ? "query" : "mutation";
}

std::unique_ptr<SelectionSet> clone(const SelectionSet& set) {
    auto out = std::make_unique<SelectionSet>();
    out->items = set.items;
    return out;
}

SelectionSet inline_fragments(const SelectionSet& set, const QueryDocument& doc) {
    SelectionSet out;
    for (const Selection& sel : set.items) {
        if (const auto* field = std::get_if<Field>(&sel)) {
            Field copy = *field;
            if (copy.nested) {
                copy.nested = std::make_unique<SelectionSet>(inline_fragments(*copy.nested, doc));
            }
            out.items.push_back(std::move(copy));
        } else if (const auto* spread = std::get_if<FragmentSpread>(&sel)) {
            auto it = doc.fragments.find(spread->name);
            if (it == doc.fragments.end()) {
                throw UndefinedFragmentError("undefined fragment: " + spread->name);
            }
            InlineFragment inlined;
            inlined.type_condition = it->second.type_condition;
            inlined.selections =
                std::make_unique<SelectionSet>(inline_fragments(it->second.selections, doc));
            out.items.push_back(std::move(inlined));
        } else {
            const auto& frag = std::get<InlineFragment>(sel);
            InlineFragment copy;
            copy.type_condition = frag.type_condition;
            copy.selections = std::make_unique<SelectionSet>(inline_fragments(*frag.selections, doc));
            out.items.push_back(std::move(copy));
        }
    }
    return out;
}

}  // namespace gqlharvest::query
