#include "gqlharvest/text/lexer.hpp"

#include "gqlharvest/errors.hpp"

#include <cctype>
#include <charconv>
#include <sstream>
#include <vector>

namespace gqlharvest::text {

namespace {

bool is_name_start(char c) {
    return c == '_' || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

bool is_name_cont(char c) {
    return is_name_start(c) || (c >= '0' && c <= '9');
}

void append_utf8(std::string& out, std::uint32_t cp) {
    if (cp <= 0x7f) {
        out.push_back(static_cast<char>(cp));
    } else if (cp <= 0x7ff) {
        out.push_back(static_cast<char>(0xc0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
    } else if (cp <= 0xffff) {
        out.push_back(static_cast<char>(0xe0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
    } else {
        out.push_back(static_cast<char>(0xf0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3f)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
    }
}

}  // namespace

Lexer::Lexer(std::string_view source) : source_(source) {
    // Skip a UTF-8 BOM if present.
    if (source_.size() >= 3 && static_cast<unsigned char>(source_[0]) == 0xef &&
        static_cast<unsigned char>(source_[1]) == 0xbb &&
        static_cast<unsigned char>(source_[2]) == 0xbf) {
        pos_ = 3;
    }
    advance();
}

Token Lexer::next() {
    Token t = current_;
    advance();
    return t;
}

void Lexer::fail(const std::string& message) const {
    throw SyntaxError(message, line_, column_);
}

void Lexer::skip_ignored() {
    while (pos_ < source_.size()) {
        char c = source_[pos_];
        if (c == '\n') {
            ++pos_;
            ++line_;
            column_ = 1;
        } else if (c == ' ' || c == '\t' || c == '\r' || c == ',') {
            ++pos_;
            ++column_;
        } else if (c == '#') {
            while (pos_ < source_.size() && source_[pos_] != '\n') {
                ++pos_;
                ++column_;
            }
        } else {
            break;
        }
    }
}

void Lexer::advance() {
    skip_ignored();
    current_ = Token{};
    current_.line = line_;
    current_.column = column_;
    if (pos_ >= source_.size()) {
        current_.kind = TokenKind::End;
        return;
    }
    char c = source_[pos_];
    if (is_name_start(c)) {
        current_ = lex_name();
    } else if (c == '"') {
        if (source_.substr(pos_, 3) == "\"\"\"") {
            current_ = lex_block_string();
        } else {
            current_ = lex_string();
        }
    } else if (c == '-' || (c >= '0' && c <= '9')) {
        current_ = lex_number();
    } else if (c == '.') {
        if (source_.substr(pos_, 3) != "...") {
            fail("unexpected '.'");
        }
        current_.kind = TokenKind::Punct;
        current_.value = "...";
        pos_ += 3;
        column_ += 3;
    } else if (std::string_view("!$&():=@[]{}|").find(c) != std::string_view::npos) {
        current_.kind = TokenKind::Punct;
        current_.value = std::string(1, c);
        ++pos_;
        ++column_;
    } else {
        fail(std::string("unexpected character '") + c + "'");
    }
}

Token Lexer::lex_name() {
    Token t;
    t.kind = TokenKind::Name;
    t.line = line_;
    t.column = column_;
    std::size_t start = pos_;
    while (pos_ < source_.size() && is_name_cont(source_[pos_])) {
        ++pos_;
        ++column_;
    }
    t.value = std::string(source_.substr(start, pos_ - start));
    return t;
}

Token Lexer::lex_number() {
    Token t;
    t.line = line_;
    t.column = column_;
    std::size_t start = pos_;
    auto take_digits = [&] {
        std::size_t n = 0;
        while (pos_ < source_.size() && std::isdigit(static_cast<unsigned char>(source_[pos_]))) {
            ++pos_;
            ++column_;
            ++n;
        }
        return n;
    };
    if (pos_ < source_.size() && source_[pos_] == '-') {
        ++pos_;
        ++column_;
    }
    if (take_digits() == 0) {
        fail("malformed number");
    }
    bool is_float = false;
    if (pos_ < source_.size() && source_[pos_] == '.') {
        is_float = true;
        ++pos_;
        ++column_;
        if (take_digits() == 0) {
            fail("malformed number: digits expected after '.'");
        }
    }
    if (pos_ < source_.size() && (source_[pos_] == 'e' || source_[pos_] == 'E')) {
        is_float = true;
        ++pos_;
        ++column_;
        if (pos_ < source_.size() && (source_[pos_] == '+' || source_[pos_] == '-')) {
            ++pos_;
            ++column_;
        }
        if (take_digits() == 0) {
            fail("malformed number: digits expected in exponent");
        }
    }
    std::string_view text = source_.substr(start, pos_ - start);
    t.value = std::string(text);
    if (is_float) {
        t.kind = TokenKind::FloatValue;
        t.float_value = std::stod(t.value);
    } else {
        t.kind = TokenKind::IntValue;
        auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), t.int_value);
        if (ec != std::errc{} || p != text.data() + text.size()) {
            fail("integer out of range");
        }
    }
    return t;
}

Token Lexer::lex_string() {
    Token t;
    t.kind = TokenKind::StringValue;
    t.line = line_;
    t.column = column_;
    ++pos_;  // opening quote
    ++column_;
    std::string out;
    while (true) {
        if (pos_ >= source_.size()) {
            fail("unterminated string");
        }
        char c = source_[pos_];
        if (c == '"') {
            ++pos_;
            ++column_;
            break;
        }
        if (c == '\n') {
            fail("newline in string");
        }
        if (c == '\\') {
            if (pos_ + 1 >= source_.size()) {
                fail("unterminated escape");
            }
            char e = source_[pos_ + 1];
            pos_ += 2;
            column_ += 2;
            switch (e) {
                case '"': out.push_back('"'); break;
                case '\\': out.push_back('\\'); break;
                case '/': out.push_back('/'); break;
                case 'b': out.push_back('\b'); break;
                case 'f': out.push_back('\f'); break;
                case 'n': out.push_back('\n'); break;
                case 'r': out.push_back('\r'); break;
                case 't': out.push_back('\t'); break;
                case 'u': {
                    auto hex4 = [&]() -> std::uint32_t {
                        if (pos_ + 4 > source_.size()) {
                            fail("truncated \\u escape");
                        }
                        std::uint32_t v = 0;
                        for (int i = 0; i < 4; ++i) {
                            char h = source_[pos_ + static_cast<std::size_t>(i)];
                            v <<= 4;
                            if (h >= '0' && h <= '9') {
                                v |= static_cast<std::uint32_t>(h - '0');
                            } else if (h >= 'a' && h <= 'f') {
                                v |= static_cast<std::uint32_t>(h - 'a' + 10);
                            } else if (h >= 'A' && h <= 'F') {
                                v |= static_cast<std::uint32_t>(h - 'A' + 10);
                            } else {
                                fail("invalid \\u escape");
                            }
                        }
                        pos_ += 4;
                        column_ += 4;
                        return v;
                    };
                    std::uint32_t cp = hex4();
                    if (cp >= 0xd800 && cp <= 0xdbff && source_.substr(pos_, 2) == "\\u") {
                        pos_ += 2;
                        column_ += 2;
                        std::uint32_t low = hex4();
                        cp = 0x10000 + ((cp - 0xd800) << 10) + (low - 0xdc00);
                    }
                    append_utf8(out, cp);
                    break;
                }
                default: fail("unknown escape sequence");
            }
            continue;
        }
        out.push_back(c);
        ++pos_;
        ++column_;
    }
    t.value = std::move(out);
    return t;
}

Token Lexer::lex_block_string() {
    Token t;
    t.kind = TokenKind::StringValue;
    t.line = line_;
    t.column = column_;
    pos_ += 3;
    column_ += 3;
    std::string raw;
    while (true) {
        if (pos_ >= source_.size()) {
            fail("unterminated block string");
        }
        if (source_.substr(pos_, 4) == "\\\"\"\"") {
            raw += "\"\"\"";
            pos_ += 4;
            column_ += 4;
            continue;
        }
        if (source_.substr(pos_, 3) == "\"\"\"") {
            pos_ += 3;
            column_ += 3;
            break;
        }
        char c = source_[pos_];
        raw.push_back(c);
        ++pos_;
        if (c == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
    }
    // Common-indent removal per the block string value semantics.
    std::vector<std::string> lines;
    {
        std::string cur;
        for (char c : raw) {
            if (c == '\n') {
                lines.push_back(cur);
                cur.clear();
            } else if (c != '\r') {
                cur.push_back(c);
            }
        }
        lines.push_back(cur);
    }
    std::size_t common = std::string::npos;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::string& l = lines[i];
        std::size_t indent = l.find_first_not_of(" \t");
        if (indent != std::string::npos && indent < common) {
            common = indent;
        }
    }
    if (common != std::string::npos) {
        for (std::size_t i = 1; i < lines.size(); ++i) {
            if (lines[i].size() >= common) {
                lines[i].erase(0, common);
            } else {
                lines[i].clear();
            }
        }
    }
    while (!lines.empty() && lines.front().find_first_not_of(" \t") == std::string::npos) {
        lines.erase(lines.begin());
    }
    while (!lines.empty() && lines.back().find_first_not_of(" \t") == std::string::npos) {
        lines.pop_back();
    }
    std::string out;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (i) {
            out.push_back('\n');
        }
        out += lines[i];
    }
    t.value = std::move(out);
    return t;
}

}  // namespace gqlharvest::text
