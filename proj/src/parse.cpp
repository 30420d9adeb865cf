#include "quadrica/parse.hpp"

#include <cctype>
#include <string>

#include "quadrica/error.hpp"

namespace quadrica {

namespace {

class Parser {
public:
    Parser(std::string_view text, const VarList& vars) : text_(text), vars_(vars) {}

    Poly run() {
        skip_ws();
        if (at_end()) throw ParseError(pos_, "empty expression");
        Poly p = expr();
        skip_ws();
        if (!at_end()) throw ParseError(pos_, std::string("unexpected '") + text_[pos_] + "'");
        return p;
    }

private:
    bool at_end() const { return pos_ >= text_.size(); }

    void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (!at_end() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Poly expr() {
        bool negate = accept('-');
        Poly acc = term();
        if (negate) acc = -acc;
        for (;;) {
            if (accept('+'))
                acc += term();
            else if (accept('-'))
                acc -= term();
            else
                return acc;
        }
    }

    Poly term() {
        Poly acc = factor();
        for (;;) {
            if (accept('*')) {
                acc *= factor();
            } else if (accept('/')) {
                skip_ws();
                std::size_t at = pos_;
                mpz_class d = nat();
                if (d == 0) throw ParseError(at, "division by zero");
                acc = acc.scaled(Rational(1, d));
            } else {
                return acc;
            }
        }
    }

    Poly factor() {
        Poly b = base();
        if (accept('^')) {
            skip_ws();
            std::size_t at = pos_;
            if (!at_end() && text_[pos_] == '-') throw ParseError(at, "negative exponent");
            mpz_class e = nat();
            if (e > kMaxExponent) throw ParseError(at, "exponent too large");
            b = b.pow(static_cast<unsigned>(e.get_ui()));
        }
        return b;
    }

    Poly base() {
        skip_ws();
        if (at_end()) throw ParseError(pos_, "unexpected end of input");
        char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) return Poly::constant(vars_, Rational(nat()));
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (!at_end() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            std::string name(text_.substr(start, pos_ - start));
            if (!vars_.index_of(name)) throw ParseError(start, "unknown variable '" + name + "'");
            return Poly::variable(vars_, name);
        }
        if (c == '(') {
            ++pos_;
            Poly inner = expr();
            if (!accept(')')) throw ParseError(pos_, "expected ')'");
            return inner;
        }
        throw ParseError(pos_, std::string("unexpected '") + c + "'");
    }

    mpz_class nat() {
        std::size_t start = pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) throw ParseError(start, "expected a non-negative integer");
        return mpz_class(std::string(text_.substr(start, pos_ - start)));
    }

    std::string_view text_;
    const VarList& vars_;
    std::size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(std::string_view text, const VarList& vars) { return Parser(text, vars).run(); }

}  // namespace quadrica
