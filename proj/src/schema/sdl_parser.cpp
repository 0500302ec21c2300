#include "gqlharvest/errors.hpp"
#include "gqlharvest/schema/sdl.hpp"
#include "gqlharvest/text/lexer.hpp"

#include <optional>
#include <sstream>

namespace gqlharvest::schema {

namespace {

using text::Lexer;
using text::Token;
using text::TokenKind;

class SdlParser {
public:
    explicit SdlParser(std::string_view source) : lexer_(source) {}

    SchemaModel parse() {
        while (lexer_.peek().kind != TokenKind::End) {
            parse_definition();
        }
        std::string query_name = query_type_name_.value_or("Query");
        std::optional<std::string> mutation_name = mutation_type_name_;
        if (!mutation_name && has_type("Mutation")) {
            mutation_name = "Mutation";
        }
        return SchemaModel(std::move(types_), std::move(query_name), std::move(mutation_name));
    }

private:
    [[noreturn]] void fail(const std::string& message) {
        throw SyntaxError(message, lexer_.peek().line, lexer_.peek().column);
    }

    Token expect_name() {
        if (lexer_.peek().kind != TokenKind::Name) {
            fail("expected a name, got \"" + lexer_.peek().value + "\"");
        }
        return lexer_.next();
    }

    void expect_punct(std::string_view p) {
        if (!lexer_.peek().is_punct(p)) {
            fail("expected \"" + std::string(p) + "\", got \"" + lexer_.peek().value + "\"");
        }
        lexer_.next();
    }

    bool accept_punct(std::string_view p) {
        if (lexer_.peek().is_punct(p)) {
            lexer_.next();
            return true;
        }
        return false;
    }

    bool has_type(const std::string& name) const {
        for (const auto& t : types_) {
            if (t.name == name) {
                return true;
            }
        }
        return false;
    }

    void skip_description() {
        if (lexer_.peek().kind == TokenKind::StringValue) {
            lexer_.next();
        }
    }

    // Directives carry no oracle-relevant information; consume them whole.
    void skip_directives() {
        while (lexer_.peek().is_punct("@")) {
            lexer_.next();
            expect_name();
            if (lexer_.peek().is_punct("(")) {
                skip_balanced("(", ")");
            }
        }
    }

    void skip_balanced(std::string_view open, std::string_view close) {
        expect_punct(open);
        int depth = 1;
        while (depth > 0) {
            const Token& t = lexer_.peek();
            if (t.kind == TokenKind::End) {
                fail("unterminated \"" + std::string(open) + "\"");
            }
            if (t.is_punct(open)) {
                ++depth;
            } else if (t.is_punct(close)) {
                --depth;
            }
            lexer_.next();
        }
    }

    // Default values and directive arguments are not modeled; skip one value.
    void skip_value() {
        const Token& t = lexer_.peek();
        if (t.is_punct("[")) {
            skip_balanced("[", "]");
        } else if (t.is_punct("{")) {
            skip_balanced("{", "}");
        } else if (t.is_punct("$")) {
            lexer_.next();
            expect_name();
        } else if (t.kind == TokenKind::Name || t.kind == TokenKind::IntValue ||
                   t.kind == TokenKind::FloatValue || t.kind == TokenKind::StringValue) {
            lexer_.next();
        } else {
            fail("expected a value, got \"" + t.value + "\"");
        }
    }

    TypeRef parse_type_ref() {
        TypeRef base = [&] {
            if (accept_punct("[")) {
                TypeRef inner = parse_type_ref();
                expect_punct("]");
                return TypeRef::list(std::move(inner));
            }
            return TypeRef::named(expect_name().value);
        }();
        if (accept_punct("!")) {
            return TypeRef::non_null(std::move(base));
        }
        return base;
    }

    std::vector<ArgumentDef> parse_argument_defs() {
        std::vector<ArgumentDef> args;
        expect_punct("(");
        while (!accept_punct(")")) {
            skip_description();
            std::string name = expect_name().value;
            expect_punct(":");
            TypeRef type = parse_type_ref();
            if (accept_punct("=")) {
                skip_value();
            }
            skip_directives();
            bool required = type.is_non_null();
            args.push_back(ArgumentDef{std::move(name), std::move(type), required});
        }
        return args;
    }

    std::vector<FieldDef> parse_field_defs() {
        std::vector<FieldDef> fields;
        expect_punct("{");
        while (!accept_punct("}")) {
            skip_description();
            std::string name = expect_name().value;
            std::vector<ArgumentDef> args;
            if (lexer_.peek().is_punct("(")) {
                args = parse_argument_defs();
            }
            expect_punct(":");
            TypeRef type = parse_type_ref();
            skip_directives();
            fields.push_back(FieldDef{std::move(name), std::move(type), std::move(args)});
        }
        return fields;
    }

    void parse_definition() {
        skip_description();
        const Token& t = lexer_.peek();
        if (t.kind != TokenKind::Name) {
            fail("expected a type definition, got \"" + t.value + "\"");
        }
        const std::string& keyword = t.value;
        if (keyword == "schema") {
            parse_schema_block();
        } else if (keyword == "type") {
            parse_object();
        } else if (keyword == "interface") {
            parse_interface();
        } else if (keyword == "union") {
            parse_union();
        } else if (keyword == "enum") {
            parse_enum();
        } else if (keyword == "input") {
            parse_input_object();
        } else if (keyword == "scalar") {
            lexer_.next();
            TypeDef def;
            def.name = expect_name().value;
            def.kind = TypeKind::Scalar;
            skip_directives();
            add_type(std::move(def));
        } else if (keyword == "directive") {
            skip_directive_definition();
        } else if (keyword == "extend") {
            skip_extension();
        } else {
            fail("unexpected keyword \"" + keyword + "\"");
        }
    }

    void parse_schema_block() {
        lexer_.next();
        skip_directives();
        expect_punct("{");
        while (!accept_punct("}")) {
            std::string op = expect_name().value;
            expect_punct(":");
            std::string type_name = expect_name().value;
            if (op == "query") {
                query_type_name_ = type_name;
            } else if (op == "mutation") {
                mutation_type_name_ = type_name;
            } else if (op != "subscription") {
                fail("unknown operation kind \"" + op + "\" in schema block");
            }
        }
    }

    void parse_object() {
        lexer_.next();
        TypeDef def;
        def.name = expect_name().value;
        def.kind = TypeKind::Object;
        if (lexer_.peek().is_name("implements")) {
            lexer_.next();
            accept_punct("&");
            def.implemented_interfaces.push_back(expect_name().value);
            while (accept_punct("&")) {
                def.implemented_interfaces.push_back(expect_name().value);
            }
        }
        skip_directives();
        if (lexer_.peek().is_punct("{")) {
            def.fields = parse_field_defs();
        }
        add_type(std::move(def));
    }

    void parse_interface() {
        lexer_.next();
        TypeDef def;
        def.name = expect_name().value;
        def.kind = TypeKind::Interface;
        if (lexer_.peek().is_name("implements")) {
            lexer_.next();
            accept_punct("&");
            expect_name();
            while (accept_punct("&")) {
                expect_name();
            }
        }
        skip_directives();
        if (lexer_.peek().is_punct("{")) {
            def.fields = parse_field_defs();
        }
        add_type(std::move(def));
    }

    void parse_union() {
        lexer_.next();
        TypeDef def;
        def.name = expect_name().value;
        def.kind = TypeKind::Union;
        skip_directives();
        expect_punct("=");
        accept_punct("|");
        def.union_members.push_back(expect_name().value);
        while (accept_punct("|")) {
            def.union_members.push_back(expect_name().value);
        }
        add_type(std::move(def));
    }

    void parse_enum() {
        lexer_.next();
        TypeDef def;
        def.name = expect_name().value;
        def.kind = TypeKind::Enum;
        skip_directives();
        expect_punct("{");
        while (!accept_punct("}")) {
            skip_description();
            def.enum_values.push_back(expect_name().value);
            skip_directives();
        }
        add_type(std::move(def));
    }

    void parse_input_object() {
        lexer_.next();
        TypeDef def;
        def.name = expect_name().value;
        def.kind = TypeKind::InputObject;
        skip_directives();
        expect_punct("{");
        while (!accept_punct("}")) {
            skip_description();
            std::string name = expect_name().value;
            expect_punct(":");
            TypeRef type = parse_type_ref();
            if (accept_punct("=")) {
                skip_value();
            }
            skip_directives();
            def.fields.push_back(FieldDef{std::move(name), std::move(type), {}});
        }
        add_type(std::move(def));
    }

    void skip_directive_definition() {
        lexer_.next();
        expect_punct("@");
        expect_name();
        if (lexer_.peek().is_punct("(")) {
            skip_balanced("(", ")");
        }
        if (lexer_.peek().is_name("repeatable")) {
            lexer_.next();
        }
        if (!lexer_.peek().is_name("on")) {
            fail("expected \"on\" in directive definition");
        }
        lexer_.next();
        accept_punct("|");
        expect_name();
        while (accept_punct("|")) {
            expect_name();
        }
    }

    void skip_extension() {
        lexer_.next();
        // "extend <kind> Name ..." — consume the header, then any implements
        // list, directives and braced body.
        expect_name();
        if (lexer_.peek().kind == TokenKind::Name && !lexer_.peek().is_name("implements")) {
            lexer_.next();
        }
        if (lexer_.peek().is_name("implements")) {
            lexer_.next();
            accept_punct("&");
            expect_name();
            while (accept_punct("&")) {
                expect_name();
            }
        }
        skip_directives();
        if (lexer_.peek().is_punct("=")) {
            lexer_.next();
            accept_punct("|");
            expect_name();
            while (accept_punct("|")) {
                expect_name();
            }
        } else if (lexer_.peek().is_punct("{")) {
            skip_balanced("{", "}");
        }
    }

    void add_type(TypeDef def) {
        if (has_type(def.name)) {
            throw DuplicateTypeError("duplicate type definition: " + def.name);
        }
        types_.push_back(std::move(def));
    }

    Lexer lexer_;
    std::vector<TypeDef> types_;
    std::optional<std::string> query_type_name_;
    std::optional<std::string> mutation_type_name_;
};

}  // namespace

SchemaModel parse_sdl(std::string_view sdl_text) {
    return SdlParser(sdl_text).parse();
}

std::string render_sdl(const SchemaModel& schema) {
    std::ostringstream out;
    bool explicit_roots =
        schema.query_type_name() != "Query" ||
        (schema.mutation_type_name() && *schema.mutation_type_name() != "Mutation");
    if (explicit_roots) {
        out << "schema {\n  query: " << schema.query_type_name();
        if (schema.mutation_type_name()) {
            out << "\n  mutation: " << *schema.mutation_type_name();
        }
        out << "\n}\n\n";
    }
    bool first = true;
    for (const auto& name : schema.declaration_order()) {
        const TypeDef& def = schema.types().at(name);
        if (!first) {
            out << "\n";
        }
        first = false;
        switch (def.kind) {
            case TypeKind::Scalar: out << "scalar " << name << "\n"; break;
            case TypeKind::Enum: {
                out << "enum " << name << " {\n";
                for (const auto& v : def.enum_values) {
                    out << "  " << v << "\n";
                }
                out << "}\n";
                break;
            }
            case TypeKind::Union: {
                out << "union " << name << " = ";
                for (std::size_t i = 0; i < def.union_members.size(); ++i) {
                    if (i) {
                        out << " | ";
                    }
                    out << def.union_members[i];
                }
                out << "\n";
                break;
            }
            case TypeKind::InputObject: {
                out << "input " << name << " {\n";
                for (const auto& f : def.fields) {
                    out << "  " << f.name << ": " << f.type.to_string() << "\n";
                }
                out << "}\n";
                break;
            }
            case TypeKind::Object:
            case TypeKind::Interface: {
                out << (def.kind == TypeKind::Object ? "type " : "interface ") << name;
                if (!def.implemented_interfaces.empty()) {
                    out << " implements ";
                    for (std::size_t i = 0; i < def.implemented_interfaces.size(); ++i) {
                        if (i) {
                            out << " & ";
                        }
                        out << def.implemented_interfaces[i];
                    }
                }
                out << " {\n";
                for (const auto& f : def.fields) {
                    out << "  " << f.name;
                    if (!f.arguments.empty()) {
                        out << "(";
                        for (std::size_t i = 0; i < f.arguments.size(); ++i) {
                            if (i) {
                                out << ", ";
                            }
                            out << f.arguments[i].name << ": " << f.arguments[i].type.to_string();
                        }
                        out << ")";
                    }
                    out << ": " << f.type.to_string() << "\n";
                }
                out << "}\n";
                break;
            }
        }
    }
    return out.str();
}

}  // namespace gqlharvest::schema
