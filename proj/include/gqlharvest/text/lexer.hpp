#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace gqlharvest::text {

enum class TokenKind {
    Name,
    IntValue,
    FloatValue,
    StringValue,  // value holds the decoded string
    Punct,        // value holds the punctuator text ("!", "(", "...", ...)
    End,
};

struct Token {
    TokenKind kind = TokenKind::End;
    std::string value;
    std::int64_t int_value = 0;
    double float_value = 0.0;
    int line = 1;
    int column = 1;

    bool is_punct(std::string_view p) const { return kind == TokenKind::Punct && value == p; }
    bool is_name(std::string_view n) const { return kind == TokenKind::Name && value == n; }
};

// Tokenizer for the GraphQL lexical grammar, shared by the SDL and query
// parsers. Commas and comments are treated as whitespace; block strings are
// supported for descriptions.
class Lexer {
public:
    explicit Lexer(std::string_view source);

    const Token& peek() const { return current_; }
    Token next();  // returns the current token and advances

    // Position of the token that would be returned by peek().
    int line() const { return current_.line; }
    int column() const { return current_.column; }

private:
    void advance();
    void skip_ignored();
    Token lex_string();
    Token lex_block_string();
    Token lex_number();
    Token lex_name();

    [[noreturn]] void fail(const std::string& message) const;

    std::string_view source_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int column_ = 1;
    Token current_;
};

}  // namespace gqlharvest::text
