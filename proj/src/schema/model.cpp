#include "gqlharvest/schema/model.hpp"

#include "gqlharvest/errors.hpp"

#include <algorithm>

namespace gqlharvest::schema {

std::string to_string(TypeKind kind) {
    switch (kind) {
        case TypeKind::Object: return "OBJECT";
        case TypeKind::Interface: return "INTERFACE";
        case TypeKind::Union: return "UNION";
        case TypeKind::Enum: return "ENUM";
        case TypeKind::Scalar: return "SCALAR";
        case TypeKind::InputObject: return "INPUT_OBJECT";
    }
    return {};
}

const FieldDef* TypeDef::find_field(const std::string& field_name) const {
    for (const auto& f : fields) {
        if (f.name == field_name) {
            return &f;
        }
    }
    return nullptr;
}

SchemaModel::SchemaModel(std::vector<TypeDef> types, std::string query_type_name,
                         std::optional<std::string> mutation_type_name)
    : query_type_name_(std::move(query_type_name)),
      mutation_type_name_(std::move(mutation_type_name)) {
    for (auto& t : types) {
        std::string name = t.name;
        if (!types_.emplace(name, std::move(t)).second) {
            throw DuplicateTypeError("duplicate type definition: " + name);
        }
        declaration_order_.push_back(std::move(name));
    }
    check_invariants();
}

const TypeDef* SchemaModel::find_type(const std::string& name) const {
    auto it = types_.find(name);
    return it == types_.end() ? nullptr : &it->second;
}

const TypeDef& SchemaModel::type(const std::string& name) const {
    const TypeDef* t = find_type(name);
    if (!t) {
        throw ReferenceError("unknown type: " + name, name);
    }
    return *t;
}

const TypeDef* lookup_type(const SchemaModel& schema, const std::string& name) {
    if (const TypeDef* t = schema.find_type(name)) {
        return t;
    }
    static const std::map<std::string, TypeDef> builtins = [] {
        std::map<std::string, TypeDef> out;
        for (const char* scalar : {"Int", "Float", "String", "Boolean", "ID"}) {
            TypeDef def;
            def.name = scalar;
            def.kind = TypeKind::Scalar;
            out.emplace(scalar, std::move(def));
        }
        return out;
    }();
    auto it = builtins.find(name);
    return it == builtins.end() ? nullptr : &it->second;
}

std::vector<std::string> SchemaModel::possible_types(const std::string& abstract_type) const {
    const TypeDef& def = type(abstract_type);
    std::vector<std::string> out;
    if (def.kind == TypeKind::Union) {
        return def.union_members;
    }
    if (def.kind == TypeKind::Interface) {
        for (const auto& name : declaration_order_) {
            const TypeDef& t = types_.at(name);
            if (t.kind == TypeKind::Object &&
                std::find(t.implemented_interfaces.begin(), t.implemented_interfaces.end(),
                          abstract_type) != t.implemented_interfaces.end()) {
                out.push_back(name);
            }
        }
    }
    return out;
}

namespace {

// Covariant field-type compatibility: the implementing field may narrow
// nullability and substitute an object for an interface it implements or a
// union it belongs to.
bool is_subtype(const SchemaModel& model, const TypeRef& sub, const TypeRef& super) {
    if (sub == super) {
        return true;
    }
    if (sub.is_non_null()) {
        if (super.is_non_null()) {
            return is_subtype(model, sub.inner(), super.inner());
        }
        return is_subtype(model, sub.inner(), super);
    }
    if (sub.is_list() && super.is_list()) {
        return is_subtype(model, sub.inner(), super.inner());
    }
    if (sub.is_named() && super.is_named()) {
        const TypeDef* sub_def = model.find_type(sub.name());
        const TypeDef* super_def = model.find_type(super.name());
        if (!sub_def || !super_def || sub_def->kind != TypeKind::Object) {
            return false;
        }
        if (super_def->kind == TypeKind::Interface) {
            return std::find(sub_def->implemented_interfaces.begin(),
                             sub_def->implemented_interfaces.end(),
                             super.name()) != sub_def->implemented_interfaces.end();
        }
        if (super_def->kind == TypeKind::Union) {
            return std::find(super_def->union_members.begin(), super_def->union_members.end(),
                             sub.name()) != super_def->union_members.end();
        }
    }
    return false;
}

}  // namespace

void SchemaModel::check_invariants() const {
    auto require_type = [&](const std::string& name, const std::string& where) {
        if (!is_builtin_scalar(name) && !find_type(name)) {
            throw ReferenceError("undeclared type \"" + name + "\" referenced by " + where, name);
        }
    };

    for (const auto& [name, def] : types_) {
        if ((def.kind == TypeKind::Object || def.kind == TypeKind::Interface) &&
            def.fields.empty()) {
            throw FormatError(to_string(def.kind) + " type " + name + " declares no fields");
        }
        if (def.kind == TypeKind::Enum && def.enum_values.empty()) {
            throw FormatError("ENUM type " + name + " declares no values");
        }
        std::set<std::string> seen_fields;
        for (const auto& f : def.fields) {
            if (!seen_fields.insert(f.name).second) {
                throw FormatError("duplicate field " + f.name + " on type " + name);
            }
            require_type(f.type.base_name(), name + "." + f.name);
            for (const auto& arg : f.arguments) {
                require_type(arg.type.base_name(), name + "." + f.name + "(" + arg.name + ")");
            }
        }
        for (const auto& member : def.union_members) {
            const TypeDef* m = find_type(member);
            if (!m || m->kind != TypeKind::Object) {
                throw ReferenceError("union " + name + " member " + member +
                                         " is not a declared object type",
                                     member);
            }
        }
        for (const auto& iface_name : def.implemented_interfaces) {
            const TypeDef* iface = find_type(iface_name);
            if (!iface || iface->kind != TypeKind::Interface) {
                throw ReferenceError(
                    "type " + name + " implements undeclared interface " + iface_name, iface_name);
            }
            for (const auto& iface_field : iface->fields) {
                const FieldDef* own = def.find_field(iface_field.name);
                if (!own) {
                    throw FormatError("type " + name + " is missing interface field " +
                                      iface_name + "." + iface_field.name);
                }
                if (!is_subtype(*this, own->type, iface_field.type)) {
                    throw FormatError("type " + name + "." + own->name + " (" +
                                      own->type.to_string() + ") is incompatible with " +
                                      iface_name + "." + iface_field.name + " (" +
                                      iface_field.type.to_string() + ")");
                }
            }
        }
    }

    const TypeDef* query = find_type(query_type_name_);
    if (!query) {
        throw ReferenceError("schema declares no query type \"" + query_type_name_ + "\"",
                             query_type_name_);
    }
    if (query->kind != TypeKind::Object) {
        throw FormatError("query type " + query_type_name_ + " is not an object type");
    }
    if (mutation_type_name_) {
        const TypeDef* mutation = find_type(*mutation_type_name_);
        if (!mutation || mutation->kind != TypeKind::Object) {
            throw ReferenceError("mutation type " + *mutation_type_name_ +
                                     " is not a declared object type",
                                 *mutation_type_name_);
        }
    }
}

std::set<SchemaTuple> tuple_universe(const SchemaModel& schema) {
    std::set<SchemaTuple> out;
    for (const auto& [name, def] : schema.types()) {
        if (def.kind != TypeKind::Object && def.kind != TypeKind::Interface) {
            continue;
        }
        for (const auto& f : def.fields) {
            out.insert(SchemaTuple{name, f.name});
        }
    }
    return out;
}

FieldDef resolve_field(const SchemaModel& schema, const std::string& parent_type,
                       const std::string& field_name) {
    const TypeDef& parent = schema.type(parent_type);
    if (field_name == "__typename") {
        if (parent.kind == TypeKind::Object || parent.kind == TypeKind::Interface ||
            parent.kind == TypeKind::Union) {
            return FieldDef{"__typename", TypeRef::non_null(TypeRef::named("String")), {}};
        }
        throw UnknownFieldError("__typename is not available on " + to_string(parent.kind) +
                                    " type " + parent_type,
                                parent_type);
    }
    if (parent.kind != TypeKind::Object && parent.kind != TypeKind::Interface) {
        throw UnknownFieldError("cannot select field " + field_name + " on " +
                                    to_string(parent.kind) + " type " + parent_type,
                                parent_type + "." + field_name);
    }
    const FieldDef* f = parent.find_field(field_name);
    if (!f) {
        throw UnknownFieldError("type " + parent_type + " has no field " + field_name,
                                parent_type + "." + field_name);
    }
    return *f;
}

namespace {

bool canonical_equal_fields(std::vector<FieldDef> a, std::vector<FieldDef> b) {
    auto by_name = [](const FieldDef& x, const FieldDef& y) { return x.name < y.name; };
    std::sort(a.begin(), a.end(), by_name);
    std::sort(b.begin(), b.end(), by_name);
    return a == b;
}

bool canonical_equal_types(const TypeDef& a, const TypeDef& b) {
    if (a.name != b.name || a.kind != b.kind) {
        return false;
    }
    if (!canonical_equal_fields(a.fields, b.fields)) {
        return false;
    }
    auto sorted = [](std::vector<std::string> v) {
        std::sort(v.begin(), v.end());
        return v;
    };
    return sorted(a.enum_values) == sorted(b.enum_values) &&
           sorted(a.union_members) == sorted(b.union_members) &&
           sorted(a.implemented_interfaces) == sorted(b.implemented_interfaces);
}

}  // namespace

bool canonical_equal(const SchemaModel& a, const SchemaModel& b) {
    if (a.query_type_name() != b.query_type_name() ||
        a.mutation_type_name() != b.mutation_type_name() || a.types().size() != b.types().size()) {
        return false;
    }
    for (const auto& [name, def] : a.types()) {
        const TypeDef* other = b.find_type(name);
        if (!other || !canonical_equal_types(def, *other)) {
            return false;
        }
    }
    return true;
}

}  // namespace gqlharvest::schema
