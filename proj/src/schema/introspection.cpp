#include "gqlharvest/schema/introspection.hpp"

#include "gqlharvest/errors.hpp"

#include <functional>

namespace gqlharvest::schema {

namespace {

TypeRef type_ref_from_json(const Json& node) {
    if (!node.is_object() || !node.contains("kind")) {
        throw FormatError("introspection type node missing \"kind\"");
    }
    std::string kind = node.at("kind").get<std::string>();
    if (kind == "NON_NULL") {
        return TypeRef::non_null(type_ref_from_json(node.at("ofType")));
    }
    if (kind == "LIST") {
        return TypeRef::list(type_ref_from_json(node.at("ofType")));
    }
    if (!node.contains("name") || node.at("name").is_null()) {
        throw FormatError("introspection named type node missing \"name\"");
    }
    return TypeRef::named(node.at("name").get<std::string>());
}

TypeKind kind_from_string(const std::string& kind, const std::string& type_name) {
    if (kind == "OBJECT") return TypeKind::Object;
    if (kind == "INTERFACE") return TypeKind::Interface;
    if (kind == "UNION") return TypeKind::Union;
    if (kind == "ENUM") return TypeKind::Enum;
    if (kind == "SCALAR") return TypeKind::Scalar;
    if (kind == "INPUT_OBJECT") return TypeKind::InputObject;
    throw FormatError("unknown type kind \"" + kind + "\" for type " + type_name);
}

Json type_ref_to_json(const TypeRef& ref) {
    Json node;
    switch (ref.kind()) {
        case TypeRef::Kind::NonNull:
            node["kind"] = "NON_NULL";
            node["name"] = nullptr;
            node["ofType"] = type_ref_to_json(ref.inner());
            break;
        case TypeRef::Kind::List:
            node["kind"] = "LIST";
            node["name"] = nullptr;
            node["ofType"] = type_ref_to_json(ref.inner());
            break;
        case TypeRef::Kind::Named:
            node["kind"] = "NAMED";  // placeholder, fixed up by caller
            node["name"] = ref.name();
            node["ofType"] = nullptr;
            break;
    }
    return node;
}

}  // namespace

SchemaModel ingest_introspection(const Json& document) {
    const Json* schema_node = nullptr;
    if (document.contains("data") && document.at("data").is_object() &&
        document.at("data").contains("__schema")) {
        schema_node = &document.at("data").at("__schema");
    } else if (document.contains("__schema")) {
        schema_node = &document.at("__schema");
    } else {
        throw FormatError("document has no __schema envelope");
    }
    if (!schema_node->is_object() || !schema_node->contains("types") ||
        !schema_node->at("types").is_array()) {
        throw FormatError("__schema has no \"types\" array");
    }

    std::string query_name = "Query";
    if (schema_node->contains("queryType") && schema_node->at("queryType").is_object()) {
        query_name = schema_node->at("queryType").at("name").get<std::string>();
    }
    std::optional<std::string> mutation_name;
    if (schema_node->contains("mutationType") && schema_node->at("mutationType").is_object()) {
        mutation_name = schema_node->at("mutationType").at("name").get<std::string>();
    }

    std::vector<TypeDef> types;
    for (const Json& t : schema_node->at("types")) {
        if (!t.is_object() || !t.contains("name") || !t.at("name").is_string()) {
            throw FormatError("introspection type entry missing \"name\"");
        }
        std::string name = t.at("name").get<std::string>();
        if (name.rfind("__", 0) == 0 || is_builtin_scalar(name)) {
            continue;
        }
        TypeDef def;
        def.name = name;
        def.kind = kind_from_string(t.at("kind").get<std::string>(), name);
        if (t.contains("fields") && t.at("fields").is_array()) {
            for (const Json& f : t.at("fields")) {
                FieldDef field{f.at("name").get<std::string>(), type_ref_from_json(f.at("type")),
                               {}};
                if (f.contains("args") && f.at("args").is_array()) {
                    for (const Json& a : f.at("args")) {
                        ArgumentDef arg{a.at("name").get<std::string>(),
                                        type_ref_from_json(a.at("type")), false};
                        arg.required = arg.type.is_non_null();
                        field.arguments.push_back(std::move(arg));
                    }
                }
                def.fields.push_back(std::move(field));
            }
        }
        if (def.kind == TypeKind::InputObject && t.contains("inputFields") &&
            t.at("inputFields").is_array()) {
            for (const Json& f : t.at("inputFields")) {
                def.fields.push_back(
                    FieldDef{f.at("name").get<std::string>(), type_ref_from_json(f.at("type")), {}});
            }
        }
        if (t.contains("enumValues") && t.at("enumValues").is_array()) {
            for (const Json& v : t.at("enumValues")) {
                def.enum_values.push_back(v.at("name").get<std::string>());
            }
        }
        if (def.kind == TypeKind::Union && t.contains("possibleTypes") &&
            t.at("possibleTypes").is_array()) {
            for (const Json& v : t.at("possibleTypes")) {
                def.union_members.push_back(v.at("name").get<std::string>());
            }
        }
        if (t.contains("interfaces") && t.at("interfaces").is_array()) {
            for (const Json& v : t.at("interfaces")) {
                def.implemented_interfaces.push_back(v.at("name").get<std::string>());
            }
        }
        types.push_back(std::move(def));
    }

    return SchemaModel(std::move(types), std::move(query_name), std::move(mutation_name));
}

Json render_introspection(const SchemaModel& schema) {
    auto named_ref = [&](const TypeRef& ref) {
        Json node = type_ref_to_json(ref);
        // Fix up the placeholder kinds on named nodes using the model.
        std::function<void(Json&)> fix = [&](Json& n) {
            if (n.is_null()) {
                return;
            }
            if (n.at("kind") == "NAMED") {
                std::string name = n.at("name").get<std::string>();
                if (is_builtin_scalar(name)) {
                    n["kind"] = "SCALAR";
                } else {
                    n["kind"] = to_string(schema.type(name).kind);
                }
                n.erase("ofType");
            } else {
                fix(n.at("ofType"));
            }
        };
        fix(node);
        return node;
    };

    Json types = Json::array();
    auto scalar_entry = [](const std::string& name) {
        Json t;
        t["kind"] = "SCALAR";
        t["name"] = name;
        t["description"] = nullptr;
        t["fields"] = nullptr;
        t["inputFields"] = nullptr;
        t["interfaces"] = nullptr;
        t["enumValues"] = nullptr;
        t["possibleTypes"] = nullptr;
        return t;
    };
    for (const char* s : {"Int", "Float", "String", "Boolean", "ID"}) {
        types.push_back(scalar_entry(s));
    }

    for (const auto& name : schema.declaration_order()) {
        const TypeDef& def = schema.types().at(name);
        Json t;
        t["kind"] = to_string(def.kind);
        t["name"] = name;
        t["description"] = nullptr;
        if (def.kind == TypeKind::Object || def.kind == TypeKind::Interface) {
            Json fields = Json::array();
            for (const auto& f : def.fields) {
                Json fj;
                fj["name"] = f.name;
                fj["description"] = nullptr;
                Json args = Json::array();
                for (const auto& a : f.arguments) {
                    Json aj;
                    aj["name"] = a.name;
                    aj["description"] = nullptr;
                    aj["type"] = named_ref(a.type);
                    aj["defaultValue"] = nullptr;
                    args.push_back(std::move(aj));
                }
                fj["args"] = std::move(args);
                fj["type"] = named_ref(f.type);
                fj["isDeprecated"] = false;
                fj["deprecationReason"] = nullptr;
                fields.push_back(std::move(fj));
            }
            t["fields"] = std::move(fields);
        } else {
            t["fields"] = nullptr;
        }
        if (def.kind == TypeKind::InputObject) {
            Json input_fields = Json::array();
            for (const auto& f : def.fields) {
                Json fj;
                fj["name"] = f.name;
                fj["description"] = nullptr;
                fj["type"] = named_ref(f.type);
                fj["defaultValue"] = nullptr;
                input_fields.push_back(std::move(fj));
            }
            t["inputFields"] = std::move(input_fields);
        } else {
            t["inputFields"] = nullptr;
        }
        if (def.kind == TypeKind::Object) {
            Json ifaces = Json::array();
            for (const auto& i : def.implemented_interfaces) {
                Json ij;
                ij["kind"] = "INTERFACE";
                ij["name"] = i;
                ifaces.push_back(std::move(ij));
            }
            t["interfaces"] = std::move(ifaces);
        } else {
            t["interfaces"] = nullptr;
        }
        if (def.kind == TypeKind::Enum) {
            Json values = Json::array();
            for (const auto& v : def.enum_values) {
                Json vj;
                vj["name"] = v;
                vj["description"] = nullptr;
                vj["isDeprecated"] = false;
                vj["deprecationReason"] = nullptr;
                values.push_back(std::move(vj));
            }
            t["enumValues"] = std::move(values);
        } else {
            t["enumValues"] = nullptr;
        }
        if (def.kind == TypeKind::Union || def.kind == TypeKind::Interface) {
            Json possible = Json::array();
            for (const auto& p : schema.possible_types(name)) {
                Json pj;
                pj["kind"] = "OBJECT";
                pj["name"] = p;
                possible.push_back(std::move(pj));
            }
            t["possibleTypes"] = std::move(possible);
        } else {
            t["possibleTypes"] = nullptr;
        }
        types.push_back(std::move(t));
    }

    Json schema_node;
    schema_node["queryType"] = Json{{"name", schema.query_type_name()}};
    schema_node["mutationType"] =
        schema.mutation_type_name() ? Json{{"name", *schema.mutation_type_name()}} : Json(nullptr);
    schema_node["subscriptionType"] = nullptr;
    schema_node["types"] = std::move(types);
    schema_node["directives"] = Json::array();

    Json document;
    document["data"] = Json{{"__schema", std::move(schema_node)}};
    return document;
}

const char* const kIntrospectionQuery = R"(query IntrospectionQuery {
  __schema {
    queryType { name }
    mutationType { name }
    subscriptionType { name }
    types {
      kind
      name
      fields(includeDeprecated: true) {
        name
        args { name type { ...TypeRef } }
        type { ...TypeRef }
      }
      inputFields { name type { ...TypeRef } }
      interfaces { name }
      enumValues(includeDeprecated: true) { name }
      possibleTypes { name }
    }
  }
}
fragment TypeRef on __Type {
  kind
  name
  ofType {
    kind
    name
    ofType {
      kind
      name
      ofType {
        kind
        name
        ofType { kind name ofType { kind name ofType { kind name ofType { kind name } } } }
      }
    }
  }
})";

}  // namespace gqlharvest::schema
