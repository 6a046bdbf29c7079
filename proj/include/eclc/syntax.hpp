#pragma once

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "eclc/formula.hpp"

namespace eclc {

/// Syntax error or semantic error in scenario/formula text. Line and column
/// are 1-based; the column counts bytes.
class ParseError : public std::runtime_error {
public:
    ParseError(unsigned line, unsigned column, std::string message, std::vector<std::string> expected = {});

    unsigned line() const noexcept { return line_; }
    unsigned column() const noexcept { return column_; }
    const std::string& message() const noexcept { return message_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    unsigned line_;
    unsigned column_;
    std::string message_;
    std::vector<std::string> expected_;
};

/// Atom names in `classical_atoms` parse as non-coherent without a `~`.
struct FormulaSyntax {
    std::set<std::string, std::less<>> classical_atoms{"Classical", "Decohered"};
};

/// Grammar, loosest first:
///   F  ::= W ( "-o" F )?            right-associative, also "⊸"
///   W  ::= T ( "&" T )*             left-associative
///   T  ::= U ( "*" U )*             left-associative, also "⊗"
///   U  ::= "!" U | "<" real ">" U | "~"? atom | "(" F ")"
///   atom ::= ident ( "(" ident ( "," ident )* ")" )?
Formula parse_formula(std::string_view text, const FormulaSyntax& syntax = {});

/// Minimal-parenthesis rendering that parse_formula reads back to the same
/// tree (given the same syntax options).
std::string format_formula(const Formula& phi, const FormulaSyntax& syntax = {});

/// Shortest decimal text that reads back to exactly `value`.
std::string format_real(double value);
std::optional<double> parse_real(std::string_view text);

}  // namespace eclc
