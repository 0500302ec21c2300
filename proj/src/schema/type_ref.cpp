#include "gqlharvest/schema/type_ref.hpp"

#include "gqlharvest/errors.hpp"

#include <stdexcept>

namespace gqlharvest::schema {

TypeRef TypeRef::named(std::string name) {
    return TypeRef(Kind::Named, std::move(name), nullptr);
}

TypeRef TypeRef::list(TypeRef inner) {
    return TypeRef(Kind::List, {}, std::make_shared<const TypeRef>(std::move(inner)));
}

TypeRef TypeRef::non_null(TypeRef inner) {
    if (inner.is_non_null()) {
        throw std::logic_error("NON_NULL cannot directly wrap NON_NULL");
    }
    return TypeRef(Kind::NonNull, {}, std::make_shared<const TypeRef>(std::move(inner)));
}

const std::string& TypeRef::name() const {
    if (!is_named()) {
        throw std::logic_error("name() on a wrapper TypeRef");
    }
    return name_;
}

const TypeRef& TypeRef::inner() const {
    if (is_named()) {
        throw std::logic_error("inner() on a named TypeRef");
    }
    return *inner_;
}

const std::string& TypeRef::base_name() const {
    const TypeRef* t = this;
    while (!t->is_named()) {
        t = t->inner_.get();
    }
    return t->name_;
}

const TypeRef& TypeRef::nullable() const {
    return is_non_null() ? *inner_ : *this;
}

std::string TypeRef::to_string() const {
    switch (kind_) {
        case Kind::Named: return name_;
        case Kind::List: return "[" + inner_->to_string() + "]";
        case Kind::NonNull: return inner_->to_string() + "!";
    }
    return {};
}

TypeRef TypeRef::parse(std::string_view text) {
    std::size_t pos = 0;
    auto fail = [&] { throw FormatError("malformed type reference: " + std::string(text)); };

    // Recursive descent over "Name", "[T]" and trailing "!".
    auto parse_inner = [&](auto&& self) -> TypeRef {
        if (pos >= text.size()) {
            fail();
        }
        TypeRef base = [&] {
            if (text[pos] == '[') {
                ++pos;
                TypeRef inner = self(self);
                if (pos >= text.size() || text[pos] != ']') {
                    fail();
                }
                ++pos;
                return TypeRef::list(std::move(inner));
            }
            std::size_t start = pos;
            while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) ||
                                         text[pos] == '_')) {
                ++pos;
            }
            if (pos == start) {
                fail();
            }
            return TypeRef::named(std::string(text.substr(start, pos - start)));
        }();
        if (pos < text.size() && text[pos] == '!') {
            ++pos;
            return TypeRef::non_null(std::move(base));
        }
        return base;
    };
    TypeRef result = parse_inner(parse_inner);
    if (pos != text.size()) {
        fail();
    }
    return result;
}

bool TypeRef::operator==(const TypeRef& other) const {
    if (kind_ != other.kind_) {
        return false;
    }
    if (is_named()) {
        return name_ == other.name_;
    }
    return *inner_ == *other.inner_;
}

bool is_builtin_scalar(std::string_view name) {
    return name == "Int" || name == "Float" || name == "String" || name == "Boolean" ||
           name == "ID";
}

}  // namespace gqlharvest::schema
