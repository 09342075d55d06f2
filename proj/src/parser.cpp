#include "liouville/parser.hpp"

#include <cctype>

namespace liouville {

namespace {

struct Lexer {
    const std::string& text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace((unsigned char)text[pos])) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= text.size();
    }
    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }
    bool accept(char c) {
        if (peek() == c) { ++pos; return true; }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) throw ParseError(pos, std::string("expected '") + c + "'");
    }
};

struct Parser {
    Lexer lex;
    const std::set<std::string>& names;

    Expr expression() {
        Expr e = term();
        for (;;) {
            if (lex.accept('+')) e = e + term();
            else if (lex.accept('-')) e = e - term();
            else return e;
        }
    }

    Expr term() {
        Expr e = unary();
        for (;;) {
            if (lex.accept('*')) e = e * unary();
            else if (lex.accept('/')) e = ex_div(e, unary());
            else return e;
        }
    }

    Expr unary() {
        if (lex.accept('-')) return -unary();
        if (lex.accept('+')) return unary();
        return power();
    }

    Expr power() {
        Expr base = primary();
        while (lex.accept('^')) base = ex_pow(base, exponent());
        return base;
    }

    long exponent() {
        bool parens = lex.accept('(');
        bool neg = lex.accept('-');
        std::size_t at = lex.pos;
        if (!std::isdigit((unsigned char)lex.peek()))
            throw ParseError(at, "exponent must be an integer");
        long v = 0;
        while (lex.pos < lex.text.size() && std::isdigit((unsigned char)lex.text[lex.pos])) {
            v = v * 10 + (lex.text[lex.pos] - '0');
            if (v > 1000000) throw ParseError(at, "exponent too large");
            ++lex.pos;
        }
        if (parens) lex.expect(')');
        return neg ? -v : v;
    }

    Expr primary() {
        char c = lex.peek();
        if (c == '(') {
            ++lex.pos;
            Expr e = expression();
            lex.expect(')');
            return e;
        }
        if (std::isdigit((unsigned char)c) || c == '.') return number();
        if (std::isalpha((unsigned char)c) || c == '_') return name();
        throw ParseError(lex.pos, "expected a number, name or parenthesized expression");
    }

    Expr number() {
        std::size_t start = lex.pos;
        bool saw_dot = false;
        while (lex.pos < lex.text.size()) {
            char c = lex.text[lex.pos];
            if (std::isdigit((unsigned char)c)) { ++lex.pos; continue; }
            if (c == '.' && !saw_dot) { saw_dot = true; ++lex.pos; continue; }
            break;
        }
        std::string tok = lex.text.substr(start, lex.pos - start);
        try {
            return ex_rational(rat_from_string(tok));
        } catch (const std::invalid_argument&) {
            throw ParseError(start, "bad numeric literal '" + tok + "'");
        }
    }

    Expr name() {
        std::size_t start = lex.pos;
        while (lex.pos < lex.text.size() &&
               (std::isalnum((unsigned char)lex.text[lex.pos]) || lex.text[lex.pos] == '_'))
            ++lex.pos;
        std::string id = lex.text.substr(start, lex.pos - start);
        if (id == "i") return ex_i();
        if (id == "exp" || id == "log" || id == "sin" || id == "cos" || id == "sqrt") {
            lex.expect('(');
            Expr arg = expression();
            lex.expect(')');
            if (id == "exp") return ex_exp(arg);
            if (id == "log") return ex_log(arg);
            if (id == "sin") return ex_sin(arg);
            if (id == "cos") return ex_cos(arg);
            return ex_sqrt(arg);
        }
        if (!names.count(id))
            throw ParseError(start, "unknown name '" + id + "'");
        return ex_var(id);
    }
};

} // namespace

Expr parse_expression(const std::string& text, const std::set<std::string>& known_names) {
    Parser p{Lexer{text}, known_names};
    Expr e = p.expression();
    if (!p.lex.eof()) throw ParseError(p.lex.pos, "trailing input");
    return e;
}

} // namespace liouville
