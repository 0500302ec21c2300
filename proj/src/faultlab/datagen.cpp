#include "gqlharvest/faultlab/datagen.hpp"

#include "gqlharvest/errors.hpp"

#include <algorithm>
#include <variant>

namespace gqlharvest::faultlab {
namespace {

using query::Field;
using query::FragmentSpread;
using query::InlineFragment;
using query::Selection;
using query::SelectionSet;
using schema::TypeDef;
using schema::TypeKind;
using schema::TypeRef;

// FNV-1a over (seed, label) with a final avalanche; every random-looking
// decision in the generator is a pure function of this.
std::uint64_t mix(std::uint64_t seed, const std::string& label) {
    std::uint64_t h = 1469598103934665603ull ^ (seed * 1099511628211ull);
    for (unsigned char c : label) {
        h = (h ^ c) * 1099511628211ull;
    }
    h ^= h >> 33;
    h *= 0xff51afd7ed558ccdull;
    h ^= h >> 33;
    return h;
}

std::string hex_suffix(std::uint64_t value) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    for (int i = 0; i < 6; ++i) {
        out += digits[value & 0xf];
        value >>= 4;
    }
    return out;
}

bool is_composite(TypeKind kind) {
    return kind == TypeKind::Object || kind == TypeKind::Interface || kind == TypeKind::Union;
}

// One generated field value and where it sits in the body; the unit the
// fault rewriter operates on.
struct Location {
    std::string parent_type;   // resolution context (narrowed by fragments)
    std::string field_name;
    std::string response_key;  // alias-aware last path segment
    std::string pointer;       // JSON pointer to the value
    std::string parent_pointer;
    std::string parent_path;   // dotted path of the parent object, for mixing
    const Field* field = nullptr;
};

class Generator {
public:
    Generator(const schema::SchemaModel& schema, const query::QueryDocument& doc,
              std::uint64_t seed, const Json& variables)
        : schema_(schema), doc_(doc), seed_(seed), variables_(variables) {}

    Json run() {
        if (doc_.operation_kind == query::OperationKind::Mutation) {
            throw UnsupportedOperationError("synthetic data covers query operations only");
        }
        Json data = Json::object();
        const std::string& root = schema_.query_type_name();
        gen_set(root, root, doc_.selection_set, data, "data", "/data");
        Json body = Json::object();
        body["data"] = std::move(data);
        return body;
    }

    const std::vector<Location>& locations() const { return locations_; }

    // The value the generator would have produced for a (possibly
    // unselected) field at a given position; used by field triggers.
    Json value_for(const std::string& parent_type, const std::string& field_name,
                   const std::string& parent_path) {
        schema::FieldDef def = schema::resolve_field(schema_, parent_type, field_name);
        return gen_value(def.type, nullptr, parent_path + "." + field_name, "");
    }

private:
    void gen_set(const std::string& context, const std::string& concrete,
                 const SelectionSet& set, Json& object, const std::string& path,
                 const std::string& pointer) {
        for (const Selection& sel : set.items) {
            if (const auto* field = std::get_if<Field>(&sel)) {
                gen_field(context, concrete, *field, object, path, pointer);
            } else if (const auto* spread = std::get_if<FragmentSpread>(&sel)) {
                auto it = doc_.fragments.find(spread->name);
                if (it == doc_.fragments.end()) {
                    throw UndefinedFragmentError("undefined fragment '" + spread->name + "'");
                }
                if (condition_matches(it->second.type_condition, concrete)) {
                    gen_set(it->second.type_condition, concrete, it->second.selections, object,
                            path, pointer);
                }
            } else if (const auto* inl = std::get_if<InlineFragment>(&sel)) {
                if (!inl->type_condition) {
                    gen_set(context, concrete, *inl->selections, object, path, pointer);
                } else if (condition_matches(*inl->type_condition, concrete)) {
                    gen_set(*inl->type_condition, concrete, *inl->selections, object, path,
                            pointer);
                }
            }
        }
    }

    bool condition_matches(const std::string& condition, const std::string& concrete) {
        if (condition == concrete) return true;
        const TypeDef& def = schema_.type(condition);
        if (!is_composite(def.kind)) {
            throw ReferenceError("fragment condition on non-composite type '" + condition + "'",
                                 condition);
        }
        if (def.kind == TypeKind::Object) return false;
        std::vector<std::string> possible = schema_.possible_types(condition);
        return std::find(possible.begin(), possible.end(), concrete) != possible.end();
    }

    void gen_field(const std::string& context, const std::string& concrete, const Field& field,
                   Json& object, const std::string& path, const std::string& pointer) {
        const std::string& key = field.response_key();
        const std::string field_path = path + "." + key;
        const std::string field_pointer = pointer + "/" + key;
        if (field.name == "__typename") {
            object[key] = concrete;
            return;
        }
        schema::FieldDef def = schema::resolve_field(schema_, context, field.name);
        object[key] = gen_value(def.type, &field, field_path, field_pointer);
        locations_.push_back(
            {context, field.name, key, field_pointer, pointer, path, &field});
    }

    Json gen_value(const TypeRef& declared, const Field* field, const std::string& path,
                   const std::string& pointer) {
        const TypeRef* ref = &declared;
        if (!ref->is_non_null()) {
            if (mix(seed_, path + "#null") % 4 == 0) return Json(nullptr);
        } else {
            ref = &ref->inner();
        }
        if (ref->is_list()) {
            const std::size_t n = list_length(field, path);
            Json out = Json::array();
            for (std::size_t i = 0; i < n; ++i) {
                const std::string item_path = path + "[" + std::to_string(i) + "]";
                out.push_back(gen_value(ref->inner(), field,
                                        item_path, pointer + "/" + std::to_string(i)));
            }
            return out;
        }
        const std::string& base = ref->name();
        const TypeDef& target = *schema::lookup_type(schema_, base);
        if (is_composite(target.kind)) {
            std::string concrete = base;
            if (target.kind != TypeKind::Object) {
                std::vector<std::string> possible = schema_.possible_types(base);
                if (!possible.empty()) {
                    concrete = possible[mix(seed_, path + "#type") % possible.size()];
                }
            }
            Json out = Json::object();
            if (field && field->nested) {
                gen_set(base, concrete, *field->nested, out, path, pointer);
            }
            return out;
        }
        return gen_leaf(target, path);
    }

    std::size_t list_length(const Field* field, const std::string& path) {
        if (field) {
            for (const query::Argument& arg : field->arguments) {
                if (arg.name != "first") continue;
                Json value = arg.value.to_json(variables_);
                if (value.is_number_integer() || value.is_number_unsigned()) {
                    const std::int64_t n = value.get<std::int64_t>();
                    if (n >= 0) return static_cast<std::size_t>(std::min<std::int64_t>(n, 10));
                }
            }
        }
        return 1 + mix(seed_, path + "#len") % 3;
    }

    Json gen_leaf(const TypeDef& target, const std::string& path) {
        const std::uint64_t m = mix(seed_, path + "#val");
        if (target.kind == TypeKind::Enum) {
            return target.enum_values[m % target.enum_values.size()];
        }
        if (target.name == "Int") return static_cast<std::int64_t>(m % 1000);
        if (target.name == "Float") return static_cast<double>(m % 10000) / 100.0;
        if (target.name == "Boolean") return (m & 1) == 1;
        if (target.name == "ID") return "id-" + std::to_string(m % 100000);
        // String and custom scalars.
        return "v-" + hex_suffix(m);
    }

    const schema::SchemaModel& schema_;
    const query::QueryDocument& doc_;
    std::uint64_t seed_;
    Json variables_;
    std::vector<Location> locations_;
};

// Top-level fields of the operation after fragment expansion on the root,
// for entry-point fault matching.
void collect_roots(const query::QueryDocument& doc, const SelectionSet& set,
                   std::vector<const Field*>& out) {
    for (const Selection& sel : set.items) {
        if (const auto* field = std::get_if<Field>(&sel)) {
            out.push_back(field);
        } else if (const auto* spread = std::get_if<FragmentSpread>(&sel)) {
            auto it = doc.fragments.find(spread->name);
            if (it != doc.fragments.end()) collect_roots(doc, it->second.selections, out);
        } else if (const auto* inl = std::get_if<InlineFragment>(&sel)) {
            collect_roots(doc, *inl->selections, out);
        }
    }
}

bool argument_trigger_holds(const FaultTrigger& trigger, const Field* field,
                            const Json& variables) {
    if (!field) return false;
    for (const query::Argument& arg : field->arguments) {
        if (arg.name == trigger.argument) {
            return arg.value.to_json(variables) == trigger.equals;
        }
    }
    return false;
}

Json wrong_scalar_replacement(const schema::SchemaModel& schema, const FaultSpec& fault) {
    // A value of a kind the declared type can never have.
    const TypeDef* parent = schema.find_type(fault.object_name);
    if (parent) {
        if (const schema::FieldDef* def = parent->find_field(fault.field_name)) {
            const std::string& base = def->type.base_name();
            if (base == "Int" || base == "Float" || base == "Boolean") return "wrong-type";
        }
    }
    return 12345;
}

}  // namespace

Json conformant_response(const schema::SchemaModel& schema, const query::QueryDocument& doc,
                         std::uint64_t seed) {
    Generator generator(schema, doc, seed, Json::object());
    return generator.run();
}

SyntheticResponse faulted_response(const schema::SchemaModel& schema,
                                   const query::QueryDocument& doc, std::uint64_t seed,
                                   const std::vector<FaultSpec>& faults, const Json& variables) {
    Generator generator(schema, doc, seed,
                        variables.is_object() ? variables : Json::object());
    SyntheticResponse response;
    response.body = generator.run();

    std::vector<const Field*> roots;
    collect_roots(doc, doc.selection_set, roots);
    const Json vars = variables.is_object() ? variables : Json::object();

    for (const FaultSpec& fault : faults) {
        if (fault.kind == FaultKind::Http5xx || fault.kind == FaultKind::ErrorsMember) {
            if (fault.object_name != schema.query_type_name()) continue;
            const Field* hit = nullptr;
            for (const Field* root : roots) {
                if (root->name != fault.field_name) continue;
                if (fault.trigger && !fault.trigger->argument.empty() &&
                    !argument_trigger_holds(*fault.trigger, root, vars)) {
                    continue;
                }
                hit = root;
                break;
            }
            if (!hit) continue;
            if (fault.kind == FaultKind::Http5xx) {
                response.status = 500;
                response.body = Json::object();
                response.body["errors"] =
                    Json::array({Json{{"message", "injected server error (" + fault.id + ")"}}});
                return response;
            }
            response.body["errors"] = Json::array(
                {Json{{"message", "injected error on " + fault.field_name + " (" + fault.id + ")"}}});
            continue;
        }

        for (const Location& location : generator.locations()) {
            if (location.parent_type != fault.object_name ||
                location.field_name != fault.field_name) {
                continue;
            }
            // A fault earlier in the list may already have removed this
            // subtree; resolve pointers defensively.
            const Json::json_pointer parent_ptr(location.parent_pointer);
            if (!response.body.contains(parent_ptr)) continue;
            Json& parent_object = response.body.at(parent_ptr);
            if (fault.trigger) {
                if (!fault.trigger->field.empty()) {
                    Json sibling;
                    if (parent_object.contains(fault.trigger->field)) {
                        sibling = parent_object.at(fault.trigger->field);
                    } else {
                        sibling = generator.value_for(location.parent_type, fault.trigger->field,
                                                      location.parent_path);
                    }
                    if (sibling != fault.trigger->equals) continue;
                } else if (!argument_trigger_holds(*fault.trigger, location.field, vars)) {
                    continue;
                }
            }
            if (fault.kind == FaultKind::MissingField) {
                parent_object.erase(location.response_key);
                continue;
            }
            if (!parent_object.contains(location.response_key)) continue;
            Json& target = parent_object.at(location.response_key);
            switch (fault.kind) {
                case FaultKind::NullNonnullField:
                    target = Json(nullptr);
                    break;
                case FaultKind::WrongScalarType:
                    target = wrong_scalar_replacement(schema, fault);
                    break;
                case FaultKind::NonMemberEnum:
                    target = "NOT_A_MEMBER";
                    break;
                case FaultKind::ListAsScalar:
                    target = "not-a-list";
                    break;
                default:
                    break;
            }
        }
    }
    return response;
}

}  // namespace gqlharvest::faultlab
