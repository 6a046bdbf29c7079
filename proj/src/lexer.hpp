#pragma once

// Tokenizer shared by the formula and scenario parsers. Works on one line
// at a time; positions are reported relative to the whole input.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "eclc/formula.hpp"
#include "eclc/syntax.hpp"

namespace eclc::detail {

enum class Tok {
    Ident,
    Number,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Colon,
    Equals,
    Arrow,      // ->
    Turnstile,  // |- or ⊢
    Star,       // * or ⊗
    Lolli,      // -o or ⊸
    Amp,
    Bang,
    Lt,
    Gt,
    Tilde,
    End,
};

std::string describe(Tok kind);

struct Token {
    Tok kind = Tok::End;
    std::string text;
    unsigned line = 1;
    unsigned column = 1;
};

/// Tokenizes `line_text`. `line` and `column_offset` place it in the input;
/// the trailing End token sits just past the last character.
std::vector<Token> tokenize_line(std::string_view line_text, unsigned line, unsigned column_offset = 0);

class TokenCursor {
public:
    explicit TokenCursor(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

    const Token& peek(std::size_t ahead = 0) const {
        std::size_t i = pos_ + ahead;
        return i < tokens_.size() ? tokens_[i] : tokens_.back();
    }
    bool at(Tok kind) const { return peek().kind == kind; }
    bool at_end() const { return at(Tok::End); }
    const Token& next() {
        const Token& t = peek();
        if (pos_ + 1 < tokens_.size()) ++pos_;
        return t;
    }

    const Token& expect(Tok kind);
    std::string expect_ident(const std::string& what);
    [[noreturn]] void fail(const std::string& message, std::vector<std::string> expected = {}) const;
    [[noreturn]] void fail_at(const Token& where, const std::string& message,
                              std::vector<std::string> expected = {}) const;

private:
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

/// Parses one formula starting at the cursor, leaving the cursor on the
/// first token that does not continue it.
Formula parse_formula_tokens(TokenCursor& cursor, const FormulaSyntax& syntax);

double parse_real_token(TokenCursor& cursor, const std::string& what);
unsigned long long parse_unsigned_token(TokenCursor& cursor, const std::string& what);

}  // namespace eclc::detail
