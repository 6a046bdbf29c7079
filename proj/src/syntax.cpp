#include "eclc/syntax.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <system_error>

#include "lexer.hpp"

namespace eclc {

namespace {

std::string join_expected(const std::vector<std::string>& expected) {
    std::string out;
    for (std::size_t i = 0; i < expected.size(); ++i) {
        if (i) out += i + 1 == expected.size() ? " or " : ", ";
        out += expected[i];
    }
    return out;
}

std::string render_message(unsigned line, unsigned column, const std::string& message,
                           const std::vector<std::string>& expected) {
    std::string out = std::to_string(line) + ":" + std::to_string(column) + ": " + message;
    if (!expected.empty()) out += " (expected " + join_expected(expected) + ")";
    return out;
}

}  // namespace

ParseError::ParseError(unsigned line, unsigned column, std::string message, std::vector<std::string> expected)
    : std::runtime_error(render_message(line, column, message, expected)),
      line_(line),
      column_(column),
      message_(std::move(message)),
      expected_(std::move(expected)) {}

std::string format_real(double value) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
    if (ec != std::errc()) throw std::runtime_error("cannot format real");
    return std::string(buf, end);
}

std::optional<double> parse_real(std::string_view text) {
    double value = 0.0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || end != text.data() + text.size() || !std::isfinite(value)) return std::nullopt;
    return value;
}

namespace detail {

std::string describe(Tok kind) {
    switch (kind) {
    case Tok::Ident: return "identifier";
    case Tok::Number: return "number";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::Comma: return "','";
    case Tok::Colon: return "':'";
    case Tok::Equals: return "'='";
    case Tok::Arrow: return "'->'";
    case Tok::Turnstile: return "'|-'";
    case Tok::Star: return "'*'";
    case Tok::Lolli: return "'-o'";
    case Tok::Amp: return "'&'";
    case Tok::Bang: return "'!'";
    case Tok::Lt: return "'<'";
    case Tok::Gt: return "'>'";
    case Tok::Tilde: return "'~'";
    case Tok::End: return "end of line";
    }
    return "token";
}

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool number_start(char c) { return std::isdigit(static_cast<unsigned char>(c)) || c == '.'; }

}  // namespace

std::vector<Token> tokenize_line(std::string_view text, unsigned line, unsigned column_offset) {
    std::vector<Token> out;
    std::size_t i = 0;
    auto column = [&](std::size_t at) { return column_offset + static_cast<unsigned>(at) + 1; };
    auto push = [&](Tok kind, std::size_t start, std::size_t len) {
        out.push_back(Token{kind, std::string(text.substr(start, len)), line, column(start)});
        i = start + len;
    };
    while (i < text.size()) {
        const char c = text[i];
        if (c == ' ' || c == '\t' || c == '\r') {
            ++i;
            continue;
        }
        if (c == '#') break;
        if (ident_start(c)) {
            std::size_t j = i;
            while (j < text.size() && ident_char(text[j])) ++j;
            push(Tok::Ident, i, j - i);
            continue;
        }
        if (number_start(c) || (c == '-' && i + 1 < text.size() && number_start(text[i + 1]))) {
            std::size_t j = i + 1;
            while (j < text.size()) {
                char d = text[j];
                bool exponent_sign = (d == '+' || d == '-') && (text[j - 1] == 'e' || text[j - 1] == 'E');
                if (std::isdigit(static_cast<unsigned char>(d)) || d == '.' || d == 'e' || d == 'E' || exponent_sign)
                    ++j;
                else
                    break;
            }
            push(Tok::Number, i, j - i);
            continue;
        }
        auto starts = [&](std::string_view s) { return text.substr(i, s.size()) == s; };
        if (starts("->")) { push(Tok::Arrow, i, 2); continue; }
        if (starts("-o")) { push(Tok::Lolli, i, 2); continue; }
        if (starts("|-")) { push(Tok::Turnstile, i, 2); continue; }
        if (starts("⊗")) { push(Tok::Star, i, 3); continue; }
        if (starts("⊸")) { push(Tok::Lolli, i, 3); continue; }
        if (starts("⊢")) { push(Tok::Turnstile, i, 3); continue; }
        switch (c) {
        case '(': push(Tok::LParen, i, 1); continue;
        case ')': push(Tok::RParen, i, 1); continue;
        case '{': push(Tok::LBrace, i, 1); continue;
        case '}': push(Tok::RBrace, i, 1); continue;
        case ',': push(Tok::Comma, i, 1); continue;
        case ':': push(Tok::Colon, i, 1); continue;
        case '=': push(Tok::Equals, i, 1); continue;
        case '*': push(Tok::Star, i, 1); continue;
        case '&': push(Tok::Amp, i, 1); continue;
        case '!': push(Tok::Bang, i, 1); continue;
        case '<': push(Tok::Lt, i, 1); continue;
        case '>': push(Tok::Gt, i, 1); continue;
        case '~': push(Tok::Tilde, i, 1); continue;
        default:
            throw ParseError(line, column(i), std::string("unexpected character '") + c + "'");
        }
    }
    // End marker: on the comment sign, else on the last character of the line.
    std::size_t end_at = i < text.size() ? i : (text.empty() ? 0 : text.size() - 1);
    while (end_at > 0 && end_at < text.size() && text[end_at] == '\r') --end_at;
    out.push_back(Token{Tok::End, "", line, column(end_at)});
    return out;
}

const Token& TokenCursor::expect(Tok kind) {
    if (!at(kind)) fail("unexpected " + (at_end() ? describe(Tok::End) : "'" + peek().text + "'"), {describe(kind)});
    return next();
}

std::string TokenCursor::expect_ident(const std::string& what) {
    if (!at(Tok::Ident)) fail("unexpected " + (at_end() ? describe(Tok::End) : "'" + peek().text + "'"), {what});
    return next().text;
}

void TokenCursor::fail(const std::string& message, std::vector<std::string> expected) const {
    fail_at(peek(), message, std::move(expected));
}

void TokenCursor::fail_at(const Token& where, const std::string& message, std::vector<std::string> expected) const {
    throw ParseError(where.line, where.column, message, std::move(expected));
}

double parse_real_token(TokenCursor& cursor, const std::string& what) {
    if (!cursor.at(Tok::Number)) cursor.fail("expected " + what, {"number"});
    const Token& tok = cursor.peek();
    auto value = parse_real(tok.text);
    if (!value) cursor.fail("malformed number '" + tok.text + "'", {"number"});
    cursor.next();
    return *value;
}

unsigned long long parse_unsigned_token(TokenCursor& cursor, const std::string& what) {
    if (!cursor.at(Tok::Number)) cursor.fail("expected " + what, {"integer"});
    const Token& tok = cursor.peek();
    unsigned long long value = 0;
    auto [end, ec] = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), value);
    if (ec != std::errc() || end != tok.text.data() + tok.text.size())
        cursor.fail("expected a nonnegative integer for " + what + ", got '" + tok.text + "'", {"integer"});
    cursor.next();
    return value;
}

namespace {

const std::vector<std::string> kFormulaStart{"identifier", "'!'", "'<'", "'~'", "'('"};

Formula parse_lolli(TokenCursor& c, const FormulaSyntax& s);

Formula parse_atom(TokenCursor& c, const FormulaSyntax& s, bool forced_classical) {
    std::string name = c.expect_ident("atom name");
    std::vector<std::string> args;
    if (c.at(Tok::LParen)) {
        c.next();
        args.push_back(c.expect_ident("atom argument"));
        while (c.at(Tok::Comma)) {
            c.next();
            args.push_back(c.expect_ident("atom argument"));
        }
        c.expect(Tok::RParen);
    }
    bool coherent = !forced_classical && s.classical_atoms.count(name) == 0;
    return Formula::atom(std::move(name), std::move(args), coherent);
}

Formula parse_unary(TokenCursor& c, const FormulaSyntax& s) {
    switch (c.peek().kind) {
    case Tok::Bang:
        c.next();
        return Formula::bang(parse_unary(c, s));
    case Tok::Lt: {
        c.next();
        const Token at = c.peek();
        double budget = parse_real_token(c, "diamond budget");
        if (budget < 0.0) c.fail_at(at, "diamond budget must be nonnegative");
        c.expect(Tok::Gt);
        return Formula::diamond(budget, parse_unary(c, s));
    }
    case Tok::Tilde:
        c.next();
        return parse_atom(c, s, true);
    case Tok::Ident:
        return parse_atom(c, s, false);
    case Tok::LParen: {
        c.next();
        Formula inner = parse_lolli(c, s);
        c.expect(Tok::RParen);
        return inner;
    }
    default:
        c.fail(c.at_end() ? "formula ends too early" : "unexpected '" + c.peek().text + "'", kFormulaStart);
    }
}

Formula parse_tensor(TokenCursor& c, const FormulaSyntax& s) {
    Formula acc = parse_unary(c, s);
    while (c.at(Tok::Star)) {
        c.next();
        acc = Formula::tensor(acc, parse_unary(c, s));
    }
    return acc;
}

Formula parse_with(TokenCursor& c, const FormulaSyntax& s) {
    Formula acc = parse_tensor(c, s);
    while (c.at(Tok::Amp)) {
        c.next();
        acc = Formula::with(acc, parse_tensor(c, s));
    }
    return acc;
}

Formula parse_lolli(TokenCursor& c, const FormulaSyntax& s) {
    Formula head = parse_with(c, s);
    if (!c.at(Tok::Lolli)) return head;
    c.next();
    return Formula::lolli(head, parse_lolli(c, s));
}

}  // namespace

Formula parse_formula_tokens(TokenCursor& cursor, const FormulaSyntax& syntax) { return parse_lolli(cursor, syntax); }

}  // namespace detail

Formula parse_formula(std::string_view text, const FormulaSyntax& syntax) {
    if (text.find('\n') != std::string_view::npos) {
        auto nl = text.find('\n');
        throw ParseError(1, static_cast<unsigned>(nl) + 1, "a formula must fit on one line");
    }
    detail::TokenCursor cursor(detail::tokenize_line(text, 1));
    Formula result = detail::parse_formula_tokens(cursor, syntax);
    if (!cursor.at_end())
        cursor.fail("unexpected '" + cursor.peek().text + "' after formula", {"'*'", "'&'", "'-o'", "end of input"});
    return result;
}

namespace {

// Binding strength: -o 1, & 2, * 3, prefix operators 4.
void render(const Formula& f, int context, const FormulaSyntax& syntax, std::string& out) {
    auto binary = [&](int level, const char* op, int left_ctx, int right_ctx) {
        const bool paren = context > level;
        if (paren) out += '(';
        render(f.left(), left_ctx, syntax, out);
        out += op;
        render(f.right(), right_ctx, syntax, out);
        if (paren) out += ')';
    };
    switch (f.kind()) {
    case Formula::Kind::Atom:
        if (!f.coherent_flag() && syntax.classical_atoms.count(f.name()) == 0) out += '~';
        out += f.name();
        if (!f.args().empty()) {
            out += '(';
            for (std::size_t i = 0; i < f.args().size(); ++i) {
                if (i) out += ',';
                out += f.args()[i];
            }
            out += ')';
        }
        return;
    case Formula::Kind::Lolli:
        binary(1, " -o ", 2, 1);
        return;
    case Formula::Kind::With:
        binary(2, " & ", 2, 3);
        return;
    case Formula::Kind::Tensor:
        binary(3, " * ", 3, 4);
        return;
    case Formula::Kind::Bang:
        out += '!';
        render(f.inner(), 4, syntax, out);
        return;
    case Formula::Kind::Diamond:
        out += '<';
        out += format_real(f.budget());
        out += '>';
        render(f.inner(), 4, syntax, out);
        return;
    }
}

}  // namespace

std::string format_formula(const Formula& phi, const FormulaSyntax& syntax) {
    std::string out;
    render(phi, 1, syntax, out);
    return out;
}

}  // namespace eclc
