#pragma once

#include <compare>
#include <memory>
#include <string>
#include <string_view>

namespace gqlharvest::schema {

// Recursive type reference: NAMED(name), LIST(inner) or NON_NULL(inner).
// NON_NULL never directly wraps NON_NULL. Immutable; cheap to copy (inner
// nodes are shared).
class TypeRef {
public:
    enum class Kind { Named, List, NonNull };

    static TypeRef named(std::string name);
    static TypeRef list(TypeRef inner);
    static TypeRef non_null(TypeRef inner);

    Kind kind() const { return kind_; }
    bool is_named() const { return kind_ == Kind::Named; }
    bool is_list() const { return kind_ == Kind::List; }
    bool is_non_null() const { return kind_ == Kind::NonNull; }

    // Named only.
    const std::string& name() const;
    // List / NonNull only.
    const TypeRef& inner() const;

    // The wrapped named type, unwrapping every LIST and NON_NULL.
    const std::string& base_name() const;
    // REF with an outermost NON_NULL removed, if any.
    const TypeRef& nullable() const;

    // SDL rendering, e.g. "[String!]!".
    std::string to_string() const;
    // Inverse of to_string.
    static TypeRef parse(std::string_view text);

    bool operator==(const TypeRef& other) const;
    bool operator!=(const TypeRef& other) const { return !(*this == other); }

private:
    TypeRef(Kind kind, std::string name, std::shared_ptr<const TypeRef> inner)
        : kind_(kind), name_(std::move(name)), inner_(std::move(inner)) {}

    Kind kind_;
    std::string name_;
    std::shared_ptr<const TypeRef> inner_;
};

// Built-in scalar names: Int, Float, String, Boolean, ID.
bool is_builtin_scalar(std::string_view name);

}  // namespace gqlharvest::schema
