#include "gqlharvest/query/parser.hpp"

#include "gqlharvest/errors.hpp"
#include "gqlharvest/text/lexer.hpp"

#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace gqlharvest::query {
namespace {

using text::Token;
using text::TokenKind;

class QueryParser {
public:
    explicit QueryParser(std::string_view text) : lexer_(text) {}

    QueryDocument parse() {
        bool have_operation = false;
        while (!at_end()) {
            const Token& tok = lexer_.peek();
            if (tok.is_punct("{")) {
                if (have_operation) fail("a document must contain exactly one operation");
                doc_.operation_kind = OperationKind::Query;
                doc_.selection_set = parse_selection_set();
                have_operation = true;
            } else if (tok.is_name("query") || tok.is_name("mutation")) {
                if (have_operation) fail("a document must contain exactly one operation");
                parse_operation(tok.value == "mutation" ? OperationKind::Mutation
                                                       : OperationKind::Query);
                have_operation = true;
            } else if (tok.is_name("subscription")) {
                fail("subscription operations are not supported");
            } else if (tok.is_name("fragment")) {
                parse_fragment_definition();
            } else {
                fail("expected an operation or fragment definition");
            }
        }
        if (!have_operation) {
            fail("document contains no operation");
        }
        check_fragments();
        check_variables();
        return std::move(doc_);
    }

private:
    void parse_operation(OperationKind kind) {
        lexer_.next();  // operation keyword
        doc_.operation_kind = kind;
        if (lexer_.peek().kind == TokenKind::Name) {
            doc_.operation_name = lexer_.next().value;
        }
        if (lexer_.peek().is_punct("(")) {
            parse_variable_definitions();
        }
        skip_directives();
        doc_.selection_set = parse_selection_set();
    }

    void parse_variable_definitions() {
        expect_punct("(");
        if (lexer_.peek().is_punct(")")) fail("expected a variable definition");
        std::set<std::string> seen;
        while (!lexer_.peek().is_punct(")")) {
            expect_punct("$");
            std::string name = expect_name();
            if (!seen.insert(name).second) {
                fail("variable '$" + name + "' is declared twice");
            }
            expect_punct(":");
            schema::TypeRef type = parse_type();
            std::optional<Value> default_value;
            if (lexer_.peek().is_punct("=")) {
                lexer_.next();
                default_value = parse_value(/*constant=*/true);
            }
            skip_directives();
            doc_.variable_definitions.push_back(
                {std::move(name), std::move(type), std::move(default_value)});
        }
        lexer_.next();  // ')'
    }

    schema::TypeRef parse_type() {
        schema::TypeRef ref = [&] {
            if (lexer_.peek().is_punct("[")) {
                lexer_.next();
                schema::TypeRef inner = parse_type();
                expect_punct("]");
                return schema::TypeRef::list(inner);
            }
            return schema::TypeRef::named(expect_name());
        }();
        if (lexer_.peek().is_punct("!")) {
            lexer_.next();
            ref = schema::TypeRef::non_null(ref);
        }
        return ref;
    }

    SelectionSet parse_selection_set() {
        expect_punct("{");
        if (lexer_.peek().is_punct("}")) fail("expected a selection");
        SelectionSet set;
        while (!lexer_.peek().is_punct("}")) {
            set.items.push_back(parse_selection());
        }
        lexer_.next();  // '}'
        return set;
    }

    Selection parse_selection() {
        if (lexer_.peek().is_punct("...")) {
            lexer_.next();
            if (lexer_.peek().is_name("on")) {
                lexer_.next();
                InlineFragment frag;
                frag.type_condition = expect_name();
                skip_directives();
                frag.selections = std::make_unique<SelectionSet>(parse_selection_set());
                return frag;
            }
            if (lexer_.peek().kind == TokenKind::Name) {
                FragmentSpread spread;
                spread.name = lexer_.next().value;
                spread_uses_.push_back(spread.name);
                skip_directives();
                return spread;
            }
            if (lexer_.peek().is_punct("@") || lexer_.peek().is_punct("{")) {
                // Inline fragment without a type condition.
                InlineFragment frag;
                skip_directives();
                frag.selections = std::make_unique<SelectionSet>(parse_selection_set());
                return frag;
            }
            fail("expected a fragment name or type condition");
        }
        Field field;
        field.name = expect_name();
        if (lexer_.peek().is_punct(":")) {
            lexer_.next();
            field.alias = std::move(field.name);
            field.name = expect_name();
        }
        if (lexer_.peek().is_punct("(")) {
            field.arguments = parse_arguments();
        }
        skip_directives();
        if (lexer_.peek().is_punct("{")) {
            field.nested = std::make_unique<SelectionSet>(parse_selection_set());
        }
        return field;
    }

    std::vector<Argument> parse_arguments() {
        expect_punct("(");
        if (lexer_.peek().is_punct(")")) fail("expected an argument");
        std::vector<Argument> args;
        std::set<std::string> seen;
        while (!lexer_.peek().is_punct(")")) {
            Argument arg;
            arg.name = expect_name();
            if (!seen.insert(arg.name).second) {
                fail("argument '" + arg.name + "' appears twice");
            }
            expect_punct(":");
            arg.value = parse_value(/*constant=*/false);
            args.push_back(std::move(arg));
        }
        lexer_.next();  // ')'
        return args;
    }

    Value parse_value(bool constant) {
        const Token& tok = lexer_.peek();
        switch (tok.kind) {
            case TokenKind::IntValue:
                return Value::integer(lexer_.next().int_value);
            case TokenKind::FloatValue:
                return Value::floating(lexer_.next().float_value);
            case TokenKind::StringValue:
                return Value::string(lexer_.next().value);
            case TokenKind::Name:
                if (tok.value == "true") return lexer_.next(), Value::boolean(true);
                if (tok.value == "false") return lexer_.next(), Value::boolean(false);
                if (tok.value == "null") return lexer_.next(), Value::null();
                return Value::enum_value(lexer_.next().value);
            case TokenKind::Punct:
                if (tok.value == "$") {
                    if (constant) fail("variables are not allowed in default values");
                    lexer_.next();
                    std::string name = expect_name();
                    used_variables_.insert(name);
                    return Value::variable(std::move(name));
                }
                if (tok.value == "[") {
                    lexer_.next();
                    std::vector<Value> items;
                    while (!lexer_.peek().is_punct("]")) {
                        items.push_back(parse_value(constant));
                    }
                    lexer_.next();  // ']'
                    return Value::list(std::move(items));
                }
                if (tok.value == "{") {
                    lexer_.next();
                    std::vector<std::pair<std::string, Value>> fields;
                    std::set<std::string> seen;
                    while (!lexer_.peek().is_punct("}")) {
                        std::string name = expect_name();
                        if (!seen.insert(name).second) {
                            fail("input object field '" + name + "' appears twice");
                        }
                        expect_punct(":");
                        fields.emplace_back(std::move(name), parse_value(constant));
                    }
                    lexer_.next();  // '}'
                    return Value::object(std::move(fields));
                }
                break;
            case TokenKind::End:
                break;
        }
        fail("expected a value");
    }

    void skip_directives() {
        while (lexer_.peek().is_punct("@")) {
            lexer_.next();
            expect_name();
            if (lexer_.peek().is_punct("(")) {
                parse_arguments();  // parsed for variable tracking, then discarded
            }
        }
    }

    void parse_fragment_definition() {
        int line = lexer_.line();
        int column = lexer_.column();
        lexer_.next();  // 'fragment'
        std::string name = expect_name();
        if (name == "on") fail("'on' is not a valid fragment name");
        if (doc_.fragments.count(name)) {
            fail("fragment '" + name + "' is defined twice");
        }
        if (!lexer_.peek().is_name("on")) fail("expected 'on'");
        lexer_.next();
        FragmentDefinition def;
        def.type_condition = expect_name();
        skip_directives();
        def.selections = parse_selection_set();
        fragment_pos_.emplace(name, std::pair<int, int>{line, column});
        doc_.fragments.emplace(name, std::move(def));
        doc_.fragment_order.push_back(name);
    }

    // Every spread must name a defined fragment and the spread graph must be
    // acyclic, or expansion would not terminate.
    void check_fragments() const {
        for (const std::string& name : spread_uses_) {
            if (!doc_.fragments.count(name)) {
                throw UndefinedFragmentError("undefined fragment '" + name + "'");
            }
        }
        enum class Color { White, Gray, Black };
        std::map<std::string, Color> color;
        for (const auto& [name, def] : doc_.fragments) {
            (void)def;
            color[name] = Color::White;
        }
        auto dfs = [&](auto&& self, const std::string& name) -> void {
            color[name] = Color::Gray;
            std::vector<std::string> spreads;
            collect_spreads(doc_.fragments.at(name).selections, spreads);
            for (const std::string& target : spreads) {
                if (color.at(target) == Color::Gray) {
                    auto pos = fragment_pos_.at(target);
                    throw SyntaxError("fragment cycle through '" + target + "'", pos.first,
                                      pos.second);
                }
                if (color.at(target) == Color::White) self(self, target);
            }
            color[name] = Color::Black;
        };
        for (const auto& [name, def] : doc_.fragments) {
            (void)def;
            if (color.at(name) == Color::White) dfs(dfs, name);
        }
    }

    static void collect_spreads(const SelectionSet& set, std::vector<std::string>& out) {
        for (const Selection& sel : set.items) {
            if (const auto* field = std::get_if<Field>(&sel)) {
                if (field->nested) collect_spreads(*field->nested, out);
            } else if (const auto* spread = std::get_if<FragmentSpread>(&sel)) {
                out.push_back(spread->name);
            } else if (const auto* inl = std::get_if<InlineFragment>(&sel)) {
                collect_spreads(*inl->selections, out);
            }
        }
    }

    void check_variables() const {
        std::set<std::string> declared;
        for (const VariableDefinition& def : doc_.variable_definitions) {
            declared.insert(def.name);
        }
        for (const std::string& name : used_variables_) {
            if (!declared.count(name)) {
                throw UndeclaredVariableError("variable '$" + name +
                                              "' is used but never declared");
            }
        }
    }

    bool at_end() const { return lexer_.peek().kind == TokenKind::End; }

    [[noreturn]] void fail(const std::string& message) const {
        throw SyntaxError(message, lexer_.line(), lexer_.column());
    }

    Token expect_punct(const char* p) {
        if (!lexer_.peek().is_punct(p)) fail(std::string("expected '") + p + "'");
        return lexer_.next();
    }

    std::string expect_name() {
        if (lexer_.peek().kind != TokenKind::Name) fail("expected a name");
        return lexer_.next().value;
    }

    text::Lexer lexer_;
    QueryDocument doc_;
    std::vector<std::string> spread_uses_;
    std::set<std::string> used_variables_;
    std::map<std::string, std::pair<int, int>> fragment_pos_;
};

}  // namespace

QueryDocument parse_query(std::string_view text) { return QueryParser(text).parse(); }

}  // namespace gqlharvest::query
